"""Exact polynomials in the product-binomial basis and their differences.

A type index is a tuple (k0, k1, ..., kd). A BinomialPoly stores integers
e[k] so that its value at (n0, n1..nd) is sum_k e[k] * prod_j C(n_j + k_j, k_j).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
import math

import numpy as np

from .errors import InputError, Inconsistency, UnstableFit, WindowTooSmall
from .modules import HilbertTable, Window, default_window, hilbert_F, hilbert_P

TypeIndex = tuple[int, ...]


def gen_binom(top: int, r: int) -> int:
    """C(top, r) for any integer top and r >= 0."""
    if r < 0:
        return 0
    if top >= 0:
        return math.comb(top, r)
    # C(-a, r) = (-1)^r C(a + r - 1, r)
    return (-1) ** r * math.comb(-top + r - 1, r)


def greater(h: TypeIndex, k: TypeIndex) -> bool:
    """h > k: componentwise >= with strict inequality somewhere."""
    return h != k and all(a >= b for a, b in zip(h, k))


@dataclass
class FittingCertificate:
    fit_window: Window
    verification_points: list[tuple[int, ...]]
    stable: bool
    max_total_degree: float
    mismatches: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "fit_window": self.fit_window.to_dict(),
            "verification_points": [list(c) for c in self.verification_points],
            "stable": self.stable,
            "max_total_degree": _deg_json(self.max_total_degree),
            "mismatches": [list(c) for c in self.mismatches],
        }


def _deg_json(x):
    return "-inf" if x == float("-inf") else int(x)


@dataclass
class BinomialPoly:
    d: int
    coeffs: dict[TypeIndex, int]
    certificate: FittingCertificate | None = None

    def __post_init__(self):
        self.coeffs = {tuple(k): int(v) for k, v in self.coeffs.items() if v != 0}
        for k in self.coeffs:
            if len(k) != self.d + 1:
                raise InputError(f"type index {k} has wrong length for d = {self.d}")

    def __call__(self, *cell) -> int:
        if len(cell) == 1 and isinstance(cell[0], tuple):
            cell = cell[0]
        total = 0
        for k, e in self.coeffs.items():
            term = e
            for n, kk in zip(cell, k):
                term *= gen_binom(n + kk, kk)
            total += term
        return total

    @property
    def total_degree(self) -> float:
        return max((sum(k) for k in self.coeffs), default=float("-inf"))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_dict(self) -> dict:
        out = {"d": self.d,
               "coeffs": [{"type": list(k), "value": v} for k, v in sorted(self.coeffs.items())]}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


def _check_type(t: TypeIndex, d: int):
    if len(t) != d + 1 or any(x < 0 for x in t):
        raise InputError(f"type index {t} must have {d + 1} natural entries")


def difference(obj, t: TypeIndex):
    """Iterated backward difference: k0 steps in n0 and k_i steps in n_i."""
    t = tuple(t)
    if isinstance(obj, BinomialPoly):
        _check_type(t, obj.d)
        # the difference of C(n+k, k) is C(n+k-1, k-1)
        shifted = {tuple(a - b for a, b in zip(k, t)): e
                   for k, e in obj.coeffs.items() if all(a >= b for a, b in zip(k, t))}
        return BinomialPoly(obj.d, shifted, obj.certificate)
    if isinstance(obj, HilbertTable):
        w = obj.window
        _check_type(t, len(w.lo) - 1)
        deficit = [max(0, k - (s - 1)) for k, s in zip(t, w.shape)]
        if any(deficit):
            raise WindowTooSmall(
                f"window {w.lo}..{w.hi} cannot take {t} backward steps; deficit {deficit}")
        vals = obj.values
        for axis, k in enumerate(t):
            for _ in range(k):
                vals = np.diff(vals, axis=axis)
        lo = tuple(a + k for a, k in zip(w.lo, t))
        return HilbertTable(Window(lo, w.hi), vals, obj.label)
    raise TypeError(f"cannot difference {type(obj).__name__}")


def _newton(values: np.ndarray) -> np.ndarray:
    """Forward-difference (Newton) coefficients along every axis."""
    c = values.copy()
    for axis in range(c.ndim):
        c = np.moveaxis(c, axis, 0)
        for k in range(1, c.shape[0]):
            c[k:] = c[k:] - c[k - 1:-1]
        c = np.moveaxis(c, 0, axis)
    return c


def _basis_change(base: int, width: int) -> np.ndarray:
    """T[a, k]: C(n - base, a) = sum_k T[a, k] C(n + k, k).

    The coefficient of C(n+k, k) in g is the k-th backward difference of g at
    n = -1, and the k-th difference of C(n - base, a) is C(n - base - k, a - k).
    """
    T = np.zeros((width, width), dtype=object)
    for a in range(width):
        for k in range(a + 1):
            T[a, k] = gen_binom(-1 - base - k, a - k)
    return T


def fit_binomial(table: HilbertTable, fit_window: Window | None = None):
    """Fit a BinomialPoly to a table; returns (poly, certificate).

    The interpolant is fitted on ``fit_window`` (default: the table window
    minus its top layer) and then checked on every remaining table cell. The
    certificate is stable only if all those verification cells agree.
    """
    w = table.window
    if fit_window is None:
        if any(s < 2 for s in w.shape):
            raise WindowTooSmall(f"window {w.lo}..{w.hi} leaves no verification layer")
        fit_window = Window(w.lo, tuple(h - 1 for h in w.hi))
    if fit_window.lo != w.lo or any(a > b for a, b in zip(fit_window.hi, w.hi)):
        raise InputError("fit window must share the table's low corner and lie inside it")

    sub = table.values[tuple(slice(0, s) for s in fit_window.shape)]
    c = _newton(sub)
    for axis, (base, width) in enumerate(zip(fit_window.lo, fit_window.shape)):
        T = _basis_change(base, width)
        c = np.tensordot(c, T, axes=([0], [0]))  # rotates axes; d+1 rotations restore order
    coeffs = {tuple(k): int(c[k]) for k in iproduct(*(range(s) for s in c.shape)) if c[k] != 0}
    poly = BinomialPoly(len(w.lo) - 1, coeffs)

    in_fit = lambda cell: all(x <= h for x, h in zip(cell, fit_window.hi))
    verification = [cell for cell in w.cells() if not in_fit(cell)]
    mismatches = [cell for cell in w.cells() if poly(cell) != table[cell]]
    cert = FittingCertificate(fit_window, verification, not mismatches and bool(verification),
                              poly.total_degree, mismatches)
    poly.certificate = cert
    return poly, cert


def _require_stable(p: BinomialPoly):
    if p.certificate is not None and not p.certificate.stable:
        raise UnstableFit("polynomial fit is not stable on its verification points")


def mixed_mult_maximal(p: BinomialPoly, t: TypeIndex) -> int | None:
    """e at type t when every coefficient strictly above t vanishes, else None."""
    _require_stable(p)
    t = tuple(t)
    _check_type(t, p.d)
    if any(greater(k, t) for k in p.coeffs):
        return None
    return p.coeffs.get(t, 0)


def maximal_support(p: BinomialPoly) -> list[tuple[TypeIndex, int]]:
    """All defined maximal-degree mixed multiplicities in the box [0, deg+1]^(d+1).

    Beyond that box every type is defined with value 0.
    """
    _require_stable(p)
    top = int(p.total_degree) + 1 if p.coeffs else 0
    out = []
    for t in iproduct(range(top + 1), repeat=p.d + 1):
        v = mixed_mult_maximal(p, t)
        if v is not None:
            out.append((t, v))
    return out


def difference_constant(table: HilbertTable, p: BinomialPoly, t: TypeIndex) -> int | None:
    """Constant value of the t-difference, or None when it is not constant.

    Both the table cells and the fitted coefficients must agree on constancy;
    otherwise the window is too small to decide.
    """
    dt = difference(table, t)
    cells = set(dt.values.flat)
    table_const = len(cells) == 1
    value = mixed_mult_maximal(p, t)
    if table_const != (value is not None):
        raise WindowTooSmall(
            f"table and fitted polynomial disagree on constancy of the {t}-difference; enlarge the window")
    if value is not None and cells != {value}:
        raise Inconsistency(f"{t}-difference: table constant {cells} but coefficient {value}")
    return value


@lru_cache(maxsize=512)
def hilbert_polynomial(fam, M, window: Window | None = None, fn: str = "P", margin: int = 2):
    """Tabulate P or F on ``window`` grown by ``margin`` and fit on ``window``.

    Returns (poly, table); the extra cells serve as verification points.
    """
    if fn not in ("P", "F"):
        raise InputError(f"unknown Hilbert function {fn!r}")
    window = window or default_window(fam)
    table = (hilbert_P if fn == "P" else hilbert_F)(fam, M, window.extend(margin))
    poly, _ = fit_binomial(table, fit_window=window)
    return poly, table


def mixed_multiplicity(fam, M, t: TypeIndex, window: Window | None = None) -> int | None:
    """Maximal-degree mixed multiplicity of M at type t, or None if undefined."""
    poly, table = hilbert_polynomial(fam, M, window)
    _require_stable(poly)
    return difference_constant(table, poly, tuple(t))
