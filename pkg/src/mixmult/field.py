"""Exact coefficient fields and rank computation.

Two fields are supported: a prime field GF(p) (default p = 32003) and the
rationals. Coefficients are plain Python ``int`` (reduced mod p) or
``fractions.Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
import random

import numpy as np

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """A prime field (``prime`` set) or the rationals (``prime is None``)."""

    def __init__(self, prime: int | None = DEFAULT_PRIME):
        if prime is not None and not _is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        self.prime = prime

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    def __eq__(self, other):
        return isinstance(other, Field) and other.prime == self.prime

    def __hash__(self):
        return hash(("Field", self.prime))

    def __repr__(self):
        return "QQ" if self.prime is None else f"GF({self.prime})"

    def to_dict(self) -> dict:
        return {"rationals": True} if self.prime is None else {"prime": self.prime}

    def __call__(self, value) -> int | Fraction:
        if self.prime is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % self.prime
            den = value.denominator % self.prime
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {self.prime}")
            return num * pow(den, -1, self.prime) % self.prime
        return int(value) % self.prime

    def parse(self, text: str) -> int | Fraction:
        return self(Fraction(text))

    def format(self, c) -> str:
        return str(c)

    def add(self, a, b):
        return a + b if self.prime is None else (a + b) % self.prime

    def mul(self, a, b):
        return a * b if self.prime is None else (a * b) % self.prime

    def random_nonzero(self, rng: random.Random):
        if self.prime is None:
            c = rng.randint(1, 10**6)
            return Fraction(c if rng.random() < 0.5 else -c)
        return rng.randrange(1, self.prime)

    def rank(self, rows) -> int:
        """Rank of a matrix given as a sequence of rows (or a 2-D array)."""
        if self.prime is None:
            return _rank_fraction([[Fraction(v) for v in r] for r in rows])
        a = np.array(rows, dtype=np.int64 if self.prime < 3_000_000_000 else object)
        if a.size == 0:
            return 0
        return _rank_mod_p(a % self.prime, self.prime)


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    # deterministic pivoting: first nonzero row at or below the current rank
    a = a.copy()
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c].copy()
        rows = np.nonzero(below)[0]
        if rows.size:
            idx = rows + r + 1
            a[idx] = (a[idx] - np.outer(below[rows], a[r])) % p
        r += 1
    return r


def _rank_fraction(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(r + 1, m):
            f = rows[i][c]
            if f:
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r
