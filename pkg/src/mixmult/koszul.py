"""Koszul homology of graded pieces of the Rees module and the Euler characteristic.

The Rees module has piece I^n M at multidegree (n0, n), whatever n0 >= 0 is.
An element of I_i raises n_i by one and an element of J raises n0 by one.
Pieces are infinite dimensional, so each summand of the complex is cut at a
total monomial degree; the cut for a summand indexed by a subset S of the
elements is D minus the sum of the element orders in S, which keeps the cut
compatible with the differential (the truncated complex is a quotient complex).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct
from math import comb

from .errors import Inconsistency, InputError, Refused
from .hilbert import TypeIndex, difference_constant, hilbert_polynomial
from .modules import IdealFamily, Module, Window, default_window, hilbert_F
from .monomial import ideal_product
from .reductions import ReductionCandidate
from .truncation import TruncatedSpace, rank


@dataclass
class HomologyReport:
    deg: tuple[int, ...]
    lengths: list[int]
    levels: list[int]
    stable: bool
    history: list[list[int]] = field(default_factory=list)

    @property
    def euler(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.lengths))

    def to_dict(self) -> dict:
        return {"deg": list(self.deg), "lengths": self.lengths, "euler": self.euler,
                "truncation_levels": self.levels, "stable": self.stable,
                "history": self.history}


def _shift(deg, idx):
    out = list(deg)
    out[idx] -= 1
    return out


def _homology_at(c: ReductionCandidate, fam: IdealFamily, M: Module, deg, D: int) -> list[int]:
    elems = c.elements()
    r = len(elems)
    F = c.field
    orders = [x.order() for _, x in elems]
    lengths = [0] * (r + 1)
    for s in M.summands:
        # spaces[S] is the truncated piece attached to the subset S
        spaces = {}
        for p in range(r + 1):
            for S in combinations(range(r), p):
                d = list(deg)
                for j in S:
                    d = _shift(d, elems[j][0])
                if min(d) < 0:
                    spaces[S] = None
                    continue
                piece = ideal_product(fam.power(0, tuple(d[1:])), s.num)
                cut = D - sum(orders[j] for j in S)
                spaces[S] = TruncatedSpace(F, piece, s.den, max(cut, 0))
        dims = [sum(len(V) for S, V in spaces.items() if V is not None and len(S) == p)
                for p in range(r + 1)]
        ranks = [0] * (r + 2)  # ranks[p]: rank of the map K_p -> K_(p-1)
        for p in range(1, r + 1):
            targets = [S for S in combinations(range(r), p - 1)]
            offsets, total = {}, 0
            for T in targets:
                offsets[T] = total
                V = spaces[T]
                total += len(V) if V is not None else 0
            rows = []
            for S in combinations(range(r), p):
                V = spaces[S]
                if V is None:
                    continue
                for u in V.basis:
                    row = [F(0)] * total
                    for pos, j in enumerate(S):
                        T = S[:pos] + S[pos + 1:]
                        W = spaces[T]
                        sign = -1 if pos % 2 else 1
                        for e, coef in elems[j][1].times_monomial(u).items():
                            k = W.index.get(e) if W is not None else None
                            if k is not None:
                                k += offsets[T]
                                row[k] = F.add(row[k], F(sign) * coef)
                    rows.append(row)
            ranks[p] = rank(F, rows) if total else 0
        for p in range(r + 1):
            lengths[p] += dims[p] - ranks[p] - ranks[p + 1]
    return lengths


def default_truncation(c: ReductionCandidate, fam: IdealFamily, M: Module, deg) -> int:
    t = c.type_index
    piece = max(ideal_product(fam.power(0, tuple(deg[1:])), s.num).max_degree() for s in M.summands)
    gen = max([fam.J.max_degree()] + [a.max_degree() for a in fam.I])
    return piece + gen * (t[0] + sum(t[1:]) + 2)


def koszul_homology(c: ReductionCandidate, fam: IdealFamily, M: Module, deg,
                    D: int | None = None, budget: int = 4) -> HomologyReport:
    """Homology lengths of the truncated Koszul complex at ``deg``.

    Truncation levels D, D+2, ... are tried until two consecutive levels
    agree, giving up after ``budget`` levels.
    """
    deg = tuple(deg)
    if len(deg) != fam.d + 1 or min(deg) < 0:
        raise InputError(f"degree {deg} must have {fam.d + 1} natural entries")
    if D is None:
        D = default_truncation(c, fam, M, deg)
    history, levels = [], []
    for step in range(budget):
        L = D + 2 * step
        levels.append(L)
        history.append(_homology_at(c, fam, M, deg, L))
        if len(history) >= 2 and history[-1] == history[-2]:
            return HomologyReport(deg, history[-1], levels, True, history)
    return HomologyReport(deg, history[-1], levels, False, history)


def chi_oracle(t: TypeIndex, fam: IdealFamily, M: Module, window: Window | None = None) -> int | None:
    """Constant (k0+1, k)-difference of the fitted F polynomial, or None."""
    t = tuple(t)
    poly, table = hilbert_polynomial(fam, M, window, "F")
    if not poly.certificate.stable:
        raise Refused("F fit is not stable on its verification points")
    return difference_constant(table, poly, (t[0] + 1,) + t[1:])


def validation_degrees(c: ReductionCandidate, fam: IdealFamily, count: int = 2) -> list[tuple[int, ...]]:
    """Small degrees that leave every shifted piece at a nonnegative index."""
    base = tuple(s + 1 for s in c.sizes)
    return [tuple(b + j for b in base) for j in range(count)]


@dataclass
class ChiResult:
    value: int | None
    reports: list[HomologyReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"chi": self.value, "homology": [r.to_dict() for r in self.reports]}


def chi(c: ReductionCandidate, fam: IdealFamily, M: Module, window: Window | None = None,
        koszul_validate: bool = False, degrees=None, D: int | None = None) -> ChiResult:
    """Euler characteristic of a joint reduction, optionally cross-checked.

    The value comes from the difference of F. With ``koszul_validate`` the
    direct homology computation must agree at every listed degree.
    """
    value = chi_oracle(c.type_index, fam, M, window)
    if value is None:
        raise Inconsistency(
            f"difference of F is not constant for a joint reduction of type {c.type_index}; "
            "the window is likely too small")
    reports = []
    if koszul_validate:
        for deg in degrees or validation_degrees(c, fam):
            rep = koszul_homology(c, fam, M, deg, D)
            reports.append(rep)
            if not rep.stable:
                raise Refused(f"Koszul homology at {deg} did not stabilize over {rep.levels}")
            if rep.euler != value:
                raise Inconsistency(f"Koszul euler {rep.euler} at {deg} differs from {value}")
    return ChiResult(value, reports)


@dataclass
class GFCheck:
    outcome: str  # "true", "false" or "insufficient depth"
    cells: dict = field(default_factory=dict)
    failing: tuple | None = None

    def __bool__(self):
        return self.outcome == "true"

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "failing": list(self.failing) if self.failing else None,
                "cells": [{"cell": list(k), "alternating_F": a, "euler": b}
                          for k, (a, b) in self.cells.items()]}


def generating_function_check(c: ReductionCandidate, fam: IdealFamily, M: Module,
                              window: Window | None = None, D: int | None = None) -> GFCheck:
    """Cellwise: sum over j <= sizes of (-1)^|j| prod C(size_i, j_i) F(deg - j)
    equals the Koszul euler at deg, on every deep cell of the window."""
    window = window or default_window(fam)
    sizes = c.sizes
    deep = [cell for cell in window.cells()
            if all(x - s >= lo for x, s, lo in zip(cell, sizes, window.lo))]
    if not deep:
        return GFCheck("insufficient depth")
    table = hilbert_F(fam, M, window)
    cells = {}
    for cell in deep:
        alt = 0
        for j in iproduct(*(range(s + 1) for s in sizes)):
            coef = (-1) ** sum(j)
            for s, jj in zip(sizes, j):
                coef *= comb(s, jj)
            alt += coef * table[tuple(x - y for x, y in zip(cell, j))]
        rep = koszul_homology(c, fam, M, cell, D)
        if not rep.stable:
            raise Refused(f"Koszul homology at {cell} did not stabilize")
        cells[cell] = (alt, rep.euler)
        if alt != rep.euler:
            return GFCheck("false", cells, cell)
    return GFCheck("true", cells)
