"""Joint reductions: exact per-degree testing, randomized search, minimality,
and the intersection / filter-regularity conditions on single elements.

Index conventions: lists and ideals are indexed 0..d with 0 standing for J.
A candidate with sizes (h0, h1..hd) has type index (h0 - 1, h1..hd); a type
index with first entry -1 therefore means "no elements from J".
"""
from __future__ import annotations

from dataclasses import dataclass, field
import random

from .errors import InputError
from .field import Field
from .modules import IdealFamily, Module, Subquotient, Window, default_window, saturate_module
from .monomial import (
    MonomialIdeal,
    PolyElement,
    associated_primes,
    generic_element,
    ideal_product,
    mul,
)
from .truncation import TruncatedSpace, rank

DEFAULT_ATTEMPTS = 8
HEURISTIC_NOTE = "window test only: the equality is checked on finitely many degrees"

__all__ = [
    "ReductionCandidate", "ReductionCertificate", "SearchResult", "FCWitness",
    "generic_element", "joint_reduction_at", "is_joint_reduction",
    "find_joint_reduction", "is_minimal_joint_reduction", "weak_fc_check",
    "radical_contains_heuristic", "is_maximal_sequence", "reduction_window",
]


@dataclass(frozen=True)
class ReductionCandidate:
    field: Field
    lists: tuple[tuple[PolyElement, ...], ...]  # lists[0] from J, lists[i] from I_i

    @classmethod
    def generic(cls, fam: IdealFamily, sizes, field: Field, rng: random.Random):
        if len(sizes) != fam.d + 1 or any(s < 0 for s in sizes):
            raise InputError(f"sizes {sizes} do not fit d = {fam.d}")
        lists = tuple(tuple(generic_element(fam.ideal(i), field, rng) for _ in range(s))
                      for i, s in enumerate(sizes))
        return cls(field, lists)

    def validate(self, fam: IdealFamily):
        if len(self.lists) != fam.d + 1:
            raise InputError(f"candidate has {len(self.lists)} lists, expected {fam.d + 1}")
        for i, elems in enumerate(self.lists):
            for x in elems:
                if x.is_zero() or not x.in_ideal(fam.ideal(i)):
                    name = "J" if i == 0 else f"I_{i}"
                    raise InputError(f"element {x.to_str()} is not a nonzero element of {name}")
        return self

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.lists)

    @property
    def type_index(self) -> tuple[int, ...]:
        s = self.sizes
        return (s[0] - 1,) + s[1:]

    def elements(self):
        """(ideal index, element) pairs ordered I_1.., I_d.., then J."""
        out = [(i, x) for i in range(1, len(self.lists)) for x in self.lists[i]]
        return out + [(0, x) for x in self.lists[0]]

    def drop(self, i: int) -> "ReductionCandidate":
        lists = list(self.lists)
        lists[i] = lists[i][:-1]
        return ReductionCandidate(self.field, tuple(lists))

    def to_dict(self) -> dict:
        return {"J": [x.to_terms() for x in self.lists[0]],
                "ideals": [[x.to_terms() for x in l] for l in self.lists[1:]],
                "type": list(self.type_index)}


def sizes_of(t) -> tuple[int, ...]:
    return (t[0] + 1,) + tuple(t[1:])


@dataclass
class ReductionCertificate:
    window: Window
    cells: dict
    verdict: str
    seed: int | None = None
    note: str = HEURISTIC_NOTE

    @property
    def holds(self) -> bool:
        return self.verdict.startswith("holds")

    def to_dict(self) -> dict:
        return {"window": self.window.to_dict(), "verdict": self.verdict, "seed": self.seed,
                "note": self.note, "holds": self.holds,
                "cells": [{"cell": list(c), "ok": v} for c, v in self.cells.items()]}


@dataclass
class SearchResult:
    type_index: tuple[int, ...]
    candidate: ReductionCandidate | None
    certificate: ReductionCertificate | None
    attempts: list[str] = field(default_factory=list)
    seed: int | None = None

    @property
    def found(self) -> bool:
        return self.candidate is not None

    def to_dict(self) -> dict:
        return {"type": list(self.type_index), "found": self.found, "seed": self.seed,
                "candidate": self.candidate.to_dict() if self.candidate else None,
                "certificate": self.certificate.to_dict() if self.certificate else None,
                "attempt_log": self.attempts,
                "note": None if self.found else "none found: evidence, not proof, of nonexistence"}


def reduction_window(fam: IdealFamily) -> Window:
    return default_window(fam).extend(2)


def joint_reduction_at(c: ReductionCandidate, fam: IdealFamily, M: Module, deg) -> bool:
    """Nakayama test of J^n0 I^n M = sum of (list_i) times the i-shifted piece.

    With W = J^n0 I^n num, the minimal generators of W outside den form a
    basis of (W + den)/(mW + den); the equality holds iff the products of
    candidate elements with generators of the shifted pieces span that space.
    """
    deg = tuple(deg)
    F = c.field
    for s in M.summands:
        W = ideal_product(fam.power(deg[0], deg[1:]), s.num)
        basis = [g for g in W.gens if not s.den.contains(g)]
        if not basis:
            continue
        idx = {g: j for j, g in enumerate(basis)}
        rows = []
        for i, elems in enumerate(c.lists):
            if not elems or deg[i] < 1:
                continue
            shift = list(deg)
            shift[i] -= 1
            U = ideal_product(fam.power(shift[0], tuple(shift[1:])), s.num)
            for x in elems:
                for u in U.gens:
                    row = [0] * len(basis)
                    for e, coef in x.terms.items():
                        j = idx.get(mul(e, u))
                        if j is not None:
                            row[j] = F.add(row[j], coef)
                    rows.append(row)
        if len(rows) < len(basis) or rank(F, rows) < len(basis):
            return False
    return True


def is_joint_reduction(c, fam, M, window: Window | None = None, seed=None) -> ReductionCertificate:
    window = window or reduction_window(fam)
    cells = {}
    for cell in window.cells():
        ok = joint_reduction_at(c, fam, M, cell)
        cells[cell] = ok
        if not ok:
            return ReductionCertificate(window, cells, f"fails at cell {cell}", seed)
    return ReductionCertificate(window, cells, "holds (heuristic window)", seed)


def find_joint_reduction(fam, M, t, rng: random.Random | int | None = 0,
                         attempts: int = DEFAULT_ATTEMPTS, window: Window | None = None,
                         field: Field | None = None) -> SearchResult:
    """Try ``attempts`` generic candidates of type index t; return the first that passes."""
    seed = rng if isinstance(rng, int) else None
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    field = field or Field()
    t = tuple(t)
    sizes = sizes_of(t)
    log = []
    for a in range(attempts):
        c = ReductionCandidate.generic(fam, sizes, field, rng)
        cert = is_joint_reduction(c, fam, M, window, seed)
        if cert.holds:
            return SearchResult(t, c, cert, log, seed)
        log.append(f"attempt {a}: {cert.verdict}")
        if not any(sizes):
            break  # the empty candidate is the only one
    return SearchResult(t, None, None, log, seed)


def predecessors(t) -> list[tuple[int, ...]]:
    """Type indices obtained by removing one element from a nonempty list."""
    sizes = sizes_of(t)
    out = []
    for i, s in enumerate(sizes):
        if s > 0:
            smaller = list(sizes)
            smaller[i] -= 1
            out.append((smaller[0] - 1,) + tuple(smaller[1:]))
    return out


@dataclass
class MinimalityReport:
    minimal: bool
    searched: list[SearchResult]

    def to_dict(self) -> dict:
        return {"minimal": self.minimal, "searched": [r.to_dict() for r in self.searched]}


def is_minimal_joint_reduction(c: ReductionCandidate, fam, M, rng=0,
                               attempts: int = DEFAULT_ATTEMPTS,
                               window: Window | None = None) -> MinimalityReport:
    """Minimal iff no type just below c's type admits a joint reduction.

    Adding elements to a joint reduction keeps it one, so checking the
    immediate predecessors covers every smaller type.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    results = []
    for p in predecessors(c.type_index):
        r = find_joint_reduction(fam, M, p, rng, attempts, window, c.field)
        results.append(r)
        if r.found:
            return MinimalityReport(False, results)
    return MinimalityReport(True, results)


# ------------------------------------------------------------ weak-(FC) checks


@dataclass
class FCWitness:
    element: PolyElement
    index: int
    fc1: dict
    fc2: bool
    truncation: list[int] | None
    exact: bool
    stable: bool = True

    @property
    def fc1_holds(self) -> bool:
        return all(self.fc1.values())

    @property
    def holds(self) -> bool:
        return self.fc1_holds and self.fc2

    def to_dict(self) -> dict:
        return {"element": self.element.to_terms(), "index": self.index,
                "fc1": [{"cell": list(c), "ok": v} for c, v in self.fc1.items()],
                "fc1_holds": self.fc1_holds, "fc2": self.fc2, "holds": self.holds,
                "truncation": self.truncation, "exact": self.exact, "stable": self.stable}


def _filter_regular(x: PolyElement, fam: IdealFamily, M: Module) -> bool:
    """0_M : x inside 0_M : I^inf, i.e. x avoids every associated prime of M-bar."""
    Mbar, _ = saturate_module(M, fam)
    for s in Mbar.summands:
        for S in associated_primes(s.num, s.den):
            if not any(not any(e[v] for v in S) for e in x.terms):
                return False
    return True


def _fc1_monomial(x: PolyElement, i: int, fam, s: Subquotient, cell) -> bool:
    (u,) = x.terms
    shift = list(cell)
    shift[i] -= 1
    lhs = (s.num.times_monomial(u) + s.den) & (ideal_product(fam.power(cell[0], cell[1:]), s.num) + s.den)
    rhs = ideal_product(fam.power(shift[0], tuple(shift[1:])), s.num).times_monomial(u) + s.den
    return lhs == rhs


def _fc1_truncated(x: PolyElement, i: int, fam, s: Subquotient, cell, D: int) -> bool:
    """Compare dim(xM meet I^n M) with dim(x I^(n-e_i) M) inside M / m^D M."""
    F = x.field
    m = s.num.num_vars
    mD = MonomialIdeal.maximal(m) ** D
    V = TruncatedSpace(F, s.num, s.den + ideal_product(mD, s.num), D + s.num.max_degree())
    if not len(V):
        return True
    Y = V.members(ideal_product(fam.power(cell[0], cell[1:]), s.num))
    shift = list(cell)
    shift[i] -= 1
    Zsrc = V.members(ideal_product(fam.power(shift[0], tuple(shift[1:])), s.num))
    X_rows = [V.vector(x.times_monomial(u)) for u in V.basis]
    Z_rows = [V.vector(x.times_monomial(u)) for u in Zsrc]
    inY = set(Y)
    outside = [j for j, u in enumerate(V.basis) if u not in inY]
    dim_X = rank(F, X_rows)
    # dim(X + Y) = dim Y + rank of X projected away from the coordinates of Y
    dim_sum = len(Y) + rank(F, [[r[j] for j in outside] for r in X_rows])
    dim_meet = dim_X + len(Y) - dim_sum
    return dim_meet == rank(F, Z_rows)


def weak_fc_check(x: PolyElement, i: int, fam: IdealFamily, M: Module,
                  window: Window | None = None, D: int | None = None) -> FCWitness:
    """Check the intersection condition on a window and filter-regularity.

    Filter-regularity is decided exactly through associated primes. The
    intersection condition is exact monomial arithmetic for a monomial x and
    otherwise a truncated computation repeated at D, D+1, D+2.
    """
    if not 0 <= i <= fam.d:
        raise InputError(f"ideal index {i} out of range 0..{fam.d}")
    if x.is_zero() or not x.in_ideal(fam.ideal(i)):
        raise InputError(f"{x.to_str()} is not a nonzero element of ideal {i}")
    window = window or Window((1,) * (fam.d + 1), (3,) * (fam.d + 1))
    cells = [c for c in window.cells() if c[i] >= 1]
    if not cells:
        raise InputError(f"window has no cell with coordinate {i} >= 1")
    fc2 = _filter_regular(x, fam, M)
    if x.is_monomial():
        fc1 = {c: all(_fc1_monomial(x, i, fam, s, c) for s in M.summands) for c in cells}
        return FCWitness(x, i, fc1, fc2, None, True)
    if D is None:
        top = max(ideal_product(fam.power(c[0], c[1:]), s.num).max_degree()
                  for c in cells for s in M.summands)
        D = top + 2 * max(sum(e) for e in x.terms) + 2
    levels = [D, D + 1, D + 2]
    runs = [{c: all(_fc1_truncated(x, i, fam, s, c, L) for s in M.summands) for c in cells}
            for L in levels]
    stable = all(r == runs[0] for r in runs)
    return FCWitness(x, i, runs[-1], fc2, levels, False, stable)


# ------------------------------------------- maximality (heuristic, truncated)


def radical_contains_heuristic(elements, fam: IdealFamily, M: Module, power: int = 4,
                               slack: int = 2) -> bool:
    """Heuristic test of I inside the radical of Ann(M / (elements) M).

    Checks I^power num inside (elements) num + den modulo m^D num for three
    consecutive D beyond the generator degrees; exact monomial arithmetic is
    used when every element is a monomial.
    """
    I = fam.product
    elements = list(elements)
    for s in M.summands:
        target = ideal_product(I ** power, s.num)
        if all(x.is_monomial() for x in elements):
            sub = s.den
            for x in elements:
                sub = sub + s.num.times_monomial(next(iter(x.terms)))
            if not target.issubset(sub):
                return False
            continue
        if not elements:
            if not target.issubset(s.den):
                return False
            continue
        F = elements[0].field
        base = target.max_degree() + slack
        verdicts = []
        for D in (base, base + 1, base + 2):
            mD = MonomialIdeal.maximal(s.num_vars) ** D
            V = TruncatedSpace(F, s.num, s.den + ideal_product(mD, s.num), D + s.num.max_degree())
            X = [V.vector(x.times_monomial(u)) for x in elements for u in V.basis]
            G = [V.unit(u) for u in target.gens if u in V.index]
            r = rank(F, X)
            verdicts.append(rank(F, X + G) == r)
        if not all(verdicts):
            return False
    return True


def is_maximal_sequence(c: ReductionCandidate, fam: IdealFamily, M: Module, **kw) -> bool:
    """Maximality of the sequence I-elements..., J-elements (last one from J):
    I is not in the radical before the last element and is in it after."""
    elems = [x for _, x in c.elements()]
    if not elems:
        return False
    return (not radical_contains_heuristic(elems[:-1], fam, M, **kw)
            and radical_contains_heuristic(elems, fam, M, **kw))
