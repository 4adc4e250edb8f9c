"""Bundled example problems."""
from __future__ import annotations

from importlib import resources
import json

from .errors import InputError
from .schema import Problem, parse_problem


def example_names() -> list[str]:
    files = resources.files("mixmult") / "corpus"
    names = [p.name[:-5] for p in files.iterdir() if p.name.endswith(".json")]
    return sorted(names, key=lambda n: (len(n), n))


def example_document(name: str) -> dict:
    path = resources.files("mixmult") / "corpus" / f"{name}.json"
    if not path.is_file():
        raise InputError(f"no bundled example {name!r}; choose from {example_names()}")
    return json.loads(path.read_text())


def load_example(name: str) -> Problem:
    return parse_problem(example_document(name))
