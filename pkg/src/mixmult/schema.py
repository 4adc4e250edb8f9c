"""JSON problem format (schema_version 1) and its translation to library objects."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field as PField, ValidationError, model_validator

from .errors import InputError
from .field import Field
from .modules import DirectSum, IdealFamily, Subquotient, Window
from .monomial import MonomialIdeal, PolyElement, Ring
from .reductions import ReductionCandidate

SCHEMA_VERSION = 1

ExpList = list[list[int]]


class FieldSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    prime: Optional[int] = None
    rationals: Optional[bool] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.prime is None) == (not self.rationals):
            raise ValueError('field must be {"prime": p} or {"rationals": true}')
        return self


class RingSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    variables: list[str] = PField(min_length=1)
    field: FieldSpec = FieldSpec(prime=32003)


class ModuleSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    num: Union[Literal["unit"], ExpList] = "unit"
    den: Union[Literal["zero"], ExpList] = "zero"
    copies: int = PField(default=1, ge=1)


class SubmoduleSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    num: Union[Literal["unit"], ExpList]


class Term(BaseModel):
    model_config = ConfigDict(extra="forbid")
    coeff: Union[str, int]
    exps: list[int]


class CandidateSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    J: list[list[Term]] = []
    ideals: list[list[list[Term]]] = []


class WindowSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    lo: list[int]
    hi: list[int]


class ProblemSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    schema_version: Literal[1] = 1
    name: Optional[str] = None
    description: Optional[str] = None
    ring: RingSpec
    module: ModuleSpec = ModuleSpec()
    submodule: Optional[SubmoduleSpec] = None
    J: ExpList
    ideals: list[ExpList] = PField(min_length=1)
    candidate: Optional[CandidateSpec] = None
    window: Optional[WindowSpec] = None
    reduction_window: Optional[WindowSpec] = None
    truncation: Optional[int] = PField(default=None, ge=1)
    seed: int = 0
    type: Optional[list[int]] = None
    types: list[list[int]] = []
    homogeneous: bool = True

    @model_validator(mode="after")
    def _lengths(self):
        m = len(self.ring.variables)

        def check(vecs, what):
            if isinstance(vecs, str):
                return
            for v in vecs:
                if len(v) != m:
                    raise ValueError(f"{what}: exponent vector {v} has length {len(v)}, expected {m}")
                if any(a < 0 for a in v):
                    raise ValueError(f"{what}: negative exponent in {v}")

        check(self.module.num, "module.num")
        check(self.module.den, "module.den")
        if self.submodule:
            check(self.submodule.num, "submodule.num")
        check(self.J, "J")
        for i, a in enumerate(self.ideals):
            check(a, f"ideals[{i}]")
        if self.candidate:
            for elem in self.candidate.J + [e for l in self.candidate.ideals for e in l]:
                check([t.exps for t in elem], "candidate")
        d = len(self.ideals)
        for t in ([self.type] if self.type else []) + self.types:
            if len(t) != d + 1:
                raise ValueError(f"type {t} must have {d + 1} entries")
        for w in (self.window, self.reduction_window):
            if w and (len(w.lo) != d + 1 or len(w.hi) != d + 1):
                raise ValueError(f"window corners must have {d + 1} entries")
        return self


@dataclass
class Problem:
    spec: ProblemSpec
    ring: Ring
    fam: IdealFamily
    M: Subquotient | DirectSum
    N: Subquotient | None
    candidate: ReductionCandidate | None
    window: Window | None
    reduction_window: Window | None

    @property
    def field(self) -> Field:
        return self.ring.field


def _ideal(m: int, gens) -> MonomialIdeal:
    if gens == "unit":
        return MonomialIdeal.unit(m)
    if gens == "zero":
        return MonomialIdeal.zero(m)
    return MonomialIdeal(m, gens)


def _element(field: Field, m: int, terms: list[Term]) -> PolyElement:
    coeffs = {}
    for t in terms:
        c = field.parse(str(t.coeff))
        e = tuple(t.exps)
        coeffs[e] = field.add(coeffs.get(e, field(0)), c)
    return PolyElement(field, m, coeffs)


def parse_problem(data: dict) -> Problem:
    """Validate a decoded JSON document and build the library objects."""
    try:
        spec = ProblemSpec.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"schema violation: {exc}") from exc
    return build(spec)


def build(spec: ProblemSpec) -> Problem:
    fs = spec.ring.field
    try:
        field = Field(None) if fs.rationals else Field(fs.prime)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    ring = Ring(tuple(spec.ring.variables), field)
    m = ring.num_vars
    fam = IdealFamily(MonomialIdeal(m, spec.J), tuple(MonomialIdeal(m, a) for a in spec.ideals))
    base = Subquotient(_ideal(m, spec.module.num), _ideal(m, spec.module.den))
    M = base if spec.module.copies == 1 else DirectSum.power(base, spec.module.copies)
    N = None
    if spec.submodule is not None:
        if spec.module.copies != 1:
            raise InputError("submodules are only supported for a single summand")
        N = base.submodule(_ideal(m, spec.submodule.num))
    candidate = None
    if spec.candidate is not None:
        cs = spec.candidate
        if cs.ideals and len(cs.ideals) != fam.d:
            raise InputError(f"candidate lists {len(cs.ideals)} ideals, expected {fam.d}")
        lists = [tuple(_element(field, m, e) for e in cs.J)]
        for i in range(fam.d):
            elems = cs.ideals[i] if cs.ideals else []
            lists.append(tuple(_element(field, m, e) for e in elems))
        candidate = ReductionCandidate(field, tuple(lists)).validate(fam)
    win = Window(spec.window.lo, spec.window.hi) if spec.window else None
    rwin = Window(spec.reduction_window.lo, spec.reduction_window.hi) if spec.reduction_window else None
    return Problem(spec, ring, fam, M, N, candidate, win, rwin)
