"""Command-line front end: JSON problem in, JSON report out.

Exit codes: 0 success or pass, 1 refused (undefined, unstable, inconclusive),
2 input error, 3 internal inconsistency or failed verification.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .corpus import example_document, example_names
from .errors import InputError, Inconsistency, Refused
from .harness import (
    Settings,
    example_settings,
    run_corpus,
    summarize,
    verify_additivity_reduction,
    verify_exact_sequence,
    verify_main,
    verify_positivity_equivalences,
    verify_rank_formula,
)
from .hilbert import hilbert_polynomial, maximal_support, mixed_multiplicity
from .koszul import chi, koszul_homology, validation_degrees
from .modules import Window, default_window, hilbert_F, hilbert_P
from .reductions import find_joint_reduction, is_joint_reduction, is_minimal_joint_reduction
from .schema import parse_problem

EXIT_OK, EXIT_REFUSED, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


class Outcome(Exception):
    """Carries a result together with a nonzero exit code."""

    def __init__(self, result, code: int):
        super().__init__(code)
        self.result, self.code = result, code


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _window(text: str | None) -> Window | None:
    if text is None:
        return None
    if ":" not in text:
        raise InputError(f"window must look like lo0,lo1:hi0,hi1, got {text!r}")
    lo, hi = text.split(":", 1)
    return Window(_ints(lo), _ints(hi))


def _read_input(args) -> tuple[dict, bytes]:
    if args.example:
        doc = example_document(args.example)
        raw = json.dumps(doc, sort_keys=True).encode()
        return doc, raw
    if args.input is None:
        raise InputError("give an input file, '-' for standard input, or --example NAME")
    raw = sys.stdin.buffer.read() if args.input == "-" else open(args.input, "rb").read()
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc


def _problem(args):
    doc, raw = _read_input(args)
    if args.field is not None:
        doc.setdefault("ring", {})
        if args.field.upper() in ("QQ", "Q"):
            doc["ring"]["field"] = {"rationals": True}
        elif args.field.isdigit():
            doc["ring"]["field"] = {"prime": int(args.field)}
        else:
            raise InputError(f"--field must be a prime or QQ, got {args.field!r}")
    if args.seed is not None:
        doc["seed"] = args.seed
    problem = parse_problem(doc)
    base = Settings(window=_window(args.window), reduction_window=_window(args.reduction_window),
                    seed=problem.spec.seed, attempts=args.attempts, truncation=args.trunc)
    s = example_settings(problem, base)
    s.seed = problem.spec.seed
    return problem, s, hashlib.sha256(raw).hexdigest()


def _type(args, problem) -> tuple[int, ...]:
    if args.type is not None:
        t = _ints(args.type)
    elif problem.spec.type is not None:
        t = tuple(problem.spec.type)
    else:
        raise InputError("this command needs --type k0,k1,...")
    if len(t) != problem.fam.d + 1:
        raise InputError(f"type {t} must have {problem.fam.d + 1} entries")
    return t


def _candidate(args, problem, s: Settings):
    if problem.candidate is not None:
        return problem.candidate
    t = _type(args, problem)
    r = find_joint_reduction(problem.fam, problem.M, t, s.seed, s.attempts, s.reduction_window, s.field)
    if not r.found:
        raise Outcome({"search": r.to_dict()}, EXIT_REFUSED)
    return r.candidate


# ------------------------------------------------------------------ commands


def cmd_hilbert(args, problem, s):
    w = s.window or default_window(problem.fam)
    fn = hilbert_P if args.fn == "P" else hilbert_F
    return fn(problem.fam, problem.M, w).to_dict()


def cmd_fit(args, problem, s):
    poly, _ = hilbert_polynomial(problem.fam, problem.M, s.window, args.fn)
    return poly.to_dict()


def cmd_mixedmult(args, problem, s):
    t = _type(args, problem)
    e = mixed_multiplicity(problem.fam, problem.M, t, s.window)
    if e is None:
        raise Outcome({"type": list(t), "value": "undefined"}, EXIT_REFUSED)
    return {"type": list(t), "value": e}


def cmd_support(args, problem, s):
    poly, _ = hilbert_polynomial(problem.fam, problem.M, s.window)
    return {"support": [{"type": list(k), "value": v} for k, v in maximal_support(poly)]}


def cmd_jointred(args, problem, s):
    fam, M = problem.fam, problem.M
    if args.action == "find":
        r = find_joint_reduction(fam, M, _type(args, problem), s.seed, s.attempts,
                                 s.reduction_window, s.field)
        if not r.found:
            raise Outcome(r.to_dict(), EXIT_REFUSED)
        return r.to_dict()
    if args.action == "test":
        if problem.candidate is None:
            raise InputError("jointred test needs a candidate in the input")
        return is_joint_reduction(problem.candidate, fam, M, s.reduction_window, s.seed).to_dict()
    c = _candidate(args, problem, s)
    cert = is_joint_reduction(c, fam, M, s.reduction_window, s.seed)
    if not cert.holds:
        raise Outcome({"certificate": cert.to_dict(), "minimal": None}, EXIT_REFUSED)
    rep = is_minimal_joint_reduction(c, fam, M, s.seed, s.attempts, s.reduction_window)
    return {"candidate": c.to_dict(), **rep.to_dict()}


def cmd_chi(args, problem, s):
    c = _candidate(args, problem, s)
    degrees = [_ints(d) for d in args.deg] if args.deg else None
    res = chi(c, problem.fam, problem.M, s.window, args.koszul_validate, degrees, s.truncation)
    return {"candidate": c.to_dict(), **res.to_dict()}


def cmd_koszul(args, problem, s):
    c = _candidate(args, problem, s)
    deg = _ints(args.deg) if args.deg else validation_degrees(c, problem.fam)[0]
    rep = koszul_homology(c, problem.fam, problem.M, deg, s.truncation)
    if not rep.stable:
        raise Outcome(rep.to_dict(), EXIT_REFUSED)
    return rep.to_dict()


def cmd_verify(args, problem, s):
    fam, M, N = problem.fam, problem.M, problem.N
    what = args.which
    if what == "rank":
        rep = verify_rank_formula(args.rank, fam, _type(args, problem), s)
    elif what in ("main", "exact"):
        if what == "exact" and N is None:
            raise InputError("verify exact needs a submodule in the input")
        t = _type(args, problem)
        rep = verify_main(M, N, fam, t, s) if what == "main" else verify_exact_sequence(M, N, fam, t, s)
    elif what == "positivity":
        rep = verify_positivity_equivalences(fam, M, _type(args, problem), s)
    else:
        rep = verify_additivity_reduction(fam, M, _type(args, problem), s)
    out = rep.to_dict()
    if rep.verdict == "fail":
        raise Outcome(out, EXIT_INCONSISTENT)
    if rep.verdict != "pass":
        raise Outcome(out, EXIT_REFUSED)
    return out


def cmd_corpus(args):
    names = args.names.split(",") if args.names else None
    base = Settings(seed=args.seed or 0, attempts=args.attempts, koszul=args.koszul)
    summary = summarize(run_corpus(names, base))
    if not summary["all_pass"]:
        raise Outcome(summary, EXIT_INCONSISTENT)
    return summary


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--example", help="use a bundled example (E1..E12) instead of a file")
    common.add_argument("--window", help="fit window lo0,lo1,...:hi0,hi1,...")
    common.add_argument("--reduction-window", help="window for joint-reduction tests")
    common.add_argument("--trunc", type=int, help="first truncation degree for Koszul homology")
    common.add_argument("--seed", type=int, help="random seed for generic elements")
    common.add_argument("--type", help="type index k0,k1,...,kd")
    common.add_argument("--attempts", type=int, default=8, help="random candidates per search")
    common.add_argument("--field", help="prime p or QQ")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="mixmult", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", parents=[common], help="tabulate P or F on a window")
    h.add_argument("--fn", choices=("P", "F"), default="P")
    f = sub.add_parser("fit", parents=[common], help="binomial-basis polynomial with certificate")
    f.add_argument("--fn", choices=("P", "F"), default="P")
    m = sub.add_parser("mixedmult", parents=[common], help="mixed multiplicity of maximal degrees")
    su = sub.add_parser("support", parents=[common], help="all defined maximal-degree multiplicities")
    j = sub.add_parser("jointred", parents=[common], help="find, test or check minimality")
    j.add_argument("action", choices=("find", "test", "minimal"))
    c = sub.add_parser("chi", parents=[common], help="Euler characteristic of a joint reduction")
    c.add_argument("--koszul-validate", action="store_true")
    c.add_argument("--deg", action="append", help="validation degree n0,n1,... (repeatable)")
    k = sub.add_parser("koszul", parents=[common], help="Koszul homology lengths at one degree")
    k.add_argument("--deg")
    v = sub.add_parser("verify", parents=[common], help="check a theorem on the input")
    v.add_argument("which", choices=("main", "positivity", "addred", "rank", "exact"))
    v.add_argument("--rank", type=int, default=2)
    for parser in (h, f, m, su, j, c, k, v):
        # declared last so it follows any action positional
        parser.add_argument("input", nargs="?", help="problem JSON file, or '-' for standard input")
    cr = sub.add_parser("corpus", help="run every check on the bundled examples")
    cr.add_argument("action", choices=("run", "list"))
    cr.add_argument("--names", help="comma-separated subset, e.g. E1,E4")
    cr.add_argument("--seed", type=int)
    cr.add_argument("--attempts", type=int, default=8)
    cr.add_argument("--koszul", action="store_true", help="also compare Koszul homology")
    cr.add_argument("--format", choices=("json", "text"), default="json")
    return p


COMMANDS = {"hilbert": cmd_hilbert, "fit": cmd_fit, "mixedmult": cmd_mixedmult,
            "support": cmd_support, "jointred": cmd_jointred, "chi": cmd_chi,
            "koszul": cmd_koszul, "verify": cmd_verify}


def _text(command: str, result) -> str:
    if command == "mixedmult":
        return str(result["value"])
    if command == "chi":
        return str(result["chi"])
    if isinstance(result, dict) and "verdict" in result:
        return result["verdict"]
    return json.dumps(result, sort_keys=True)


def _emit(args, envelope: dict, result):
    if args.format == "text":
        print(_text(args.command, result))
    else:
        envelope["result"] = result
        print(json.dumps(envelope, sort_keys=True, indent=2))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    envelope = {"command": args.command, "schema_version": 1}
    try:
        if args.command == "corpus":
            if args.action == "list":
                result = {"examples": example_names()}
            else:
                result = cmd_corpus(args)
            envelope["seed"] = args.seed or 0
            _emit(args, envelope, result)
            return EXIT_OK
        problem, s, digest = _problem(args)
        envelope.update({
            "input_sha256": digest, "seed": s.seed,
            "window": (s.window or default_window(problem.fam)).to_dict(),
            "reduction_window": s.reduction_window.to_dict() if s.reduction_window else None,
            "truncation": s.truncation, "field": problem.field.to_dict()})
        if args.command == "jointred":
            envelope["command"] = f"jointred {args.action}"
        if args.command == "verify":
            envelope["command"] = f"verify {args.which}"
        result = COMMANDS[args.command](args, problem, s)
        _emit(args, envelope, result)
        return EXIT_OK
    except Outcome as out:
        _emit(args, envelope, out.result)
        return out.code
    except InputError as exc:
        _error("input", exc)
        return EXIT_INPUT
    except Refused as exc:
        _error("refused", exc)
        return EXIT_REFUSED
    except Inconsistency as exc:
        _error("inconsistency", exc)
        return EXIT_INCONSISTENT
    except OSError as exc:
        _error("input", exc)
        return EXIT_INPUT


def _error(kind: str, exc: Exception):
    print(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
