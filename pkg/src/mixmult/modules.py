"""Monomial subquotient modules, lengths and multigraded Hilbert functions."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
import math

import numpy as np

from .errors import InputError
from .monomial import (
    Exp,
    MonomialIdeal,
    colon_saturate,
    ideal_power,
    ideal_product,
    ideal_product_all,
    minimal_primes,
)

NEG_INF = float("-inf")


@dataclass(frozen=True)
class Subquotient:
    """The A-module num/den for monomial ideals den ⊆ num."""

    num: MonomialIdeal
    den: MonomialIdeal

    def __post_init__(self):
        if self.num.num_vars != self.den.num_vars:
            raise InputError("num and den live in different rings")
        if not self.den.issubset(self.num):
            raise InputError(f"den {self.den} is not contained in num {self.num}")

    @classmethod
    def ring(cls, m: int) -> "Subquotient":
        return cls(MonomialIdeal.unit(m), MonomialIdeal.zero(m))

    @classmethod
    def quotient(cls, den: MonomialIdeal) -> "Subquotient":
        return cls(MonomialIdeal.unit(den.num_vars), den)

    @property
    def num_vars(self) -> int:
        return self.num.num_vars

    @property
    def summands(self) -> tuple["Subquotient", ...]:
        return (self,)

    def is_zero(self) -> bool:
        return self.num.issubset(self.den)

    def annihilator(self) -> MonomialIdeal:
        return self.den.colon(self.num)

    def submodule(self, num: MonomialIdeal) -> "Subquotient":
        """The submodule num/den of self (requires den ⊆ num ⊆ self.num)."""
        if not num.issubset(self.num):
            raise InputError("submodule numerator is not inside the module numerator")
        return Subquotient(num + self.den, self.den)

    def quotient_by(self, sub: "Subquotient") -> "Subquotient":
        return Subquotient(self.num, sub.num)


@dataclass(frozen=True)
class DirectSum:
    summands: tuple[Subquotient, ...]

    def __post_init__(self):
        if not self.summands:
            raise InputError("a direct sum needs at least one summand")
        if len({s.num_vars for s in self.summands}) != 1:
            raise InputError("summands live in different rings")

    @classmethod
    def power(cls, M: Subquotient, r: int) -> "DirectSum":
        return cls((M,) * r)

    @property
    def num_vars(self) -> int:
        return self.summands[0].num_vars

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.summands)

    def annihilator(self) -> MonomialIdeal:
        out = MonomialIdeal.unit(self.num_vars)
        for s in self.summands:
            out = out & s.annihilator()
        return out


Module = Subquotient | DirectSum


@dataclass(frozen=True)
class IdealFamily:
    """An m-primary ideal J together with ideals I_1..I_d."""

    J: MonomialIdeal
    I: tuple[MonomialIdeal, ...]

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        if not self.I:
            raise InputError("need at least one ideal I_1")
        m = self.J.num_vars
        if any(a.num_vars != m for a in self.I):
            raise InputError("ideals live in different rings")
        if not is_m_primary(self.J):
            raise InputError(f"J = {self.J} is not m-primary")
        if self.J.is_unit:
            raise InputError("J must be a proper ideal")

    @property
    def d(self) -> int:
        return len(self.I)

    @property
    def num_vars(self) -> int:
        return self.J.num_vars

    @property
    def product(self) -> MonomialIdeal:
        return ideal_product_all(self.I, self.num_vars)

    def power(self, n0: int, n: tuple[int, ...]) -> MonomialIdeal:
        """J^n0 * I_1^n1 * ... * I_d^nd."""
        out = ideal_power(self.J, n0)
        for a, k in zip(self.I, n):
            out = ideal_product(out, ideal_power(a, k))
        return out

    def ideal(self, i: int) -> MonomialIdeal:
        """Index 0 is J, 1..d are the I_i."""
        return self.J if i == 0 else self.I[i - 1]


def is_m_primary(a: MonomialIdeal) -> bool:
    m = a.num_vars
    pure = set()
    for g in a.gens:
        support = [i for i, x in enumerate(g) if x]
        if len(support) == 1:
            pure.add(support[0])
        elif not support:
            return True
    return len(pure) == m


@dataclass(frozen=True)
class Window:
    """Rectangular range of multidegrees (n0, n1..nd), inclusive."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(int(x) for x in self.lo))
        object.__setattr__(self, "hi", tuple(int(x) for x in self.hi))
        if len(self.lo) != len(self.hi):
            raise InputError("window corners have different lengths")
        if any(x < 0 for x in self.lo):
            raise InputError("window must be componentwise >= 0")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise InputError(f"empty window {self.lo}..{self.hi}")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    def cells(self):
        return iproduct(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def extend(self, k: int) -> "Window":
        return Window(self.lo, tuple(b + k for b in self.hi))

    def to_dict(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi)}


def default_window(fam: IdealFamily) -> Window:
    g = fam.J.max_degree() + sum(a.max_degree() for a in fam.I)
    lo = (2 * g,) * (fam.d + 1)
    return Window(lo, tuple(x + 4 for x in lo))


@dataclass
class HilbertTable:
    window: Window
    values: np.ndarray  # object dtype, exact ints
    label: str = "P"

    def __getitem__(self, cell) -> int:
        idx = tuple(c - a for c, a in zip(cell, self.window.lo))
        if any(i < 0 for i in idx):
            raise KeyError(cell)
        return self.values[idx]

    def to_dict(self) -> dict:
        return {"label": self.label, "window": self.window.to_dict(),
                "values": _nested(self.values)}


def _nested(a):
    if not isinstance(a, np.ndarray) or a.ndim == 0:
        return int(a)
    return [_nested(x) for x in a]


# ---------------------------------------------------------------- counting


def count_outside(A: MonomialIdeal, B: MonomialIdeal) -> int | None:
    """Number of monomials in A but not in B, or None when infinite.

    A monomial u = g*w of A (g a generator) with w_i >= a_i lies in B as soon as
    x_i^a_i * g does, so exponents are bounded by g_i + a_i: an exact box.
    """
    m = A.num_vars
    if A.is_zero:
        return 0
    bound = [0] * m
    for g in A.gens:
        for i in range(m):
            best = None
            for b in B.gens:
                if all(b[j] <= g[j] for j in range(m) if j != i):
                    need = max(b[i] - g[i], 0)
                    if best is None or need < best:
                        best = need
            if best is None:
                return None
            bound[i] = max(bound[i], g[i] + best)
    if m == 0 or any(x == 0 for x in bound):
        return 0
    inA = np.zeros(bound, dtype=bool)
    for g in A.gens:
        inA[tuple(slice(x, None) for x in g)] = True
    for b in B.gens:
        if all(x < y for x, y in zip(b, bound)):
            inA[tuple(slice(x, None) for x in b)] = False
    return int(inA.sum())


def krull_dim(M: Module) -> float:
    """Krull dimension of M; -inf for the zero module."""
    if M.is_zero():
        return NEG_INF
    primes = minimal_primes(M.annihilator())
    return M.num_vars - min(len(p) for p in primes)


def length(M: Module) -> float:
    """Length of M (a natural number) or math.inf."""
    if krull_dim(M) >= 1:
        return math.inf
    total = 0
    for s in M.summands:
        c = count_outside(s.num, s.den)
        if c is None:  # pragma: no cover - krull_dim already rules this out
            raise AssertionError("finite-dimensional module with infinite count")
        total += c
    return total


def _cell_P(fam: IdealFamily, s: Subquotient, cell) -> int:
    n0, n = cell[0], tuple(cell[1:])
    top = ideal_product(fam.power(n0, n), s.num) + s.den
    bot = ideal_product(fam.power(n0 + 1, n), s.num) + s.den
    return count_outside(top, bot)


def _cell_F(fam: IdealFamily, s: Subquotient, cell) -> int:
    n0, n = cell[0], tuple(cell[1:])
    top = ideal_product(fam.power(0, n), s.num) + s.den
    bot = ideal_product(fam.power(n0, n), s.num) + s.den
    return count_outside(top, bot)


def _table(fam, M, window, fn, label) -> HilbertTable:
    if len(window.lo) != fam.d + 1:
        raise InputError(f"window has {len(window.lo)} coordinates, expected {fam.d + 1}")
    if M.num_vars != fam.num_vars:
        raise InputError("module and ideals live in different rings")
    vals = np.empty(window.shape, dtype=object)
    for cell in window.cells():
        idx = tuple(c - a for c, a in zip(cell, window.lo))
        vals[idx] = sum(fn(fam, s, cell) for s in M.summands)
    return HilbertTable(window, vals, label)


def hilbert_P(fam: IdealFamily, M: Module, window: Window) -> HilbertTable:
    """Cells l(J^n0 I^n M / J^(n0+1) I^n M)."""
    return _table(fam, M, window, _cell_P, "P")


def hilbert_F(fam: IdealFamily, M: Module, window: Window) -> HilbertTable:
    """Cells l(I^n M / J^n0 I^n M)."""
    return _table(fam, M, window, _cell_F, "F")


def saturate_module(M: Module, fam: IdealFamily):
    """Return (M / 0_M : I^inf, its dimension q) with I = I_1...I_d."""
    I = fam.product
    bars = []
    for s in M.summands:
        K = colon_saturate(s.den, I) & s.num
        bars.append(Subquotient(s.num, K))
    Mbar = bars[0] if isinstance(M, Subquotient) else DirectSum(tuple(bars))
    return Mbar, krull_dim(Mbar)


def _project(a: MonomialIdeal, S: list[int]) -> MonomialIdeal:
    return MonomialIdeal(len(S), [tuple(g[i] for i in S) for g in a.gens])


def localized_length(M: Module, prime) -> int:
    """Length of M localized at the monomial prime (x_i : i in prime).

    Variables outside the prime become units, so each ideal is replaced by its
    projection onto the prime's coordinates.
    """
    S = sorted(prime)
    if frozenset(S) not in minimal_primes(M.annihilator()):
        raise InputError(f"prime {S} is not minimal over Ann(M)")
    total = 0
    for s in M.summands:
        num, den = _project(s.num, S), _project(s.den, S)
        if not S:
            total += int(not num.is_zero and den.is_zero)
            continue
        c = count_outside(num, den)
        if c is None:  # pragma: no cover - minimality guarantees finiteness
            raise AssertionError("infinite localized length at a minimal prime")
        total += c
    return total
