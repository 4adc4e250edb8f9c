"""Monomials, polynomials and monomial ideals in k[x_1..x_m] localized at (x_1..x_m).

Exponent vectors are tuples of Python ints, so exponents never overflow.
Every input ideal is monomial and lies in the maximal ideal, so lengths and
quotients computed in the polynomial ring agree with the local ring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
import random

from .errors import InputError
from .field import Field

Exp = tuple[int, ...]


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def quo(a: Exp, b: Exp) -> Exp:
    """Exponent of a : b for monomials, i.e. a / gcd(a, b)."""
    return tuple(max(x - y, 0) for x, y in zip(a, b))


def grlex_key(e: Exp):
    return (sum(e), tuple(-x for x in e))


def minimalize(gens) -> tuple[Exp, ...]:
    out: list[Exp] = []
    for g in sorted(set(gens), key=grlex_key):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def monomials_of_degree(m: int, deg: int):
    if m == 0:
        if deg == 0:
            yield ()
        return
    if m == 1:
        yield (deg,)
        return
    for a in range(deg, -1, -1):
        for rest in monomials_of_degree(m - 1, deg - a):
            yield (a,) + rest


def monomials_below(m: int, deg: int):
    """All monomials in m variables of total degree < deg, grlex ascending."""
    for t in range(deg):
        yield from monomials_of_degree(m, t)


@dataclass(frozen=True)
class Ring:
    variables: tuple[str, ...]
    field: Field = field(default_factory=Field)

    def __post_init__(self):
        if len(self.variables) < 1:
            raise InputError("ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("variable names must be distinct")

    @classmethod
    def of(cls, names: str | list[str], prime: int | None = 32003) -> "Ring":
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        return cls(tuple(names), Field(prime))

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def monomial_str(self, e: Exp) -> str:
        parts = []
        for v, a in zip(self.variables, e):
            if a == 1:
                parts.append(v)
            elif a > 1:
                parts.append(f"{v}^{a}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain).

    The unit ideal has the single generator (0,...,0); the zero ideal has none.
    """

    num_vars: int
    gens: tuple[Exp, ...]

    def __init__(self, num_vars: int, gens=()):
        gens = [tuple(int(a) for a in g) for g in gens]
        for g in gens:
            if len(g) != num_vars:
                raise InputError(f"exponent vector {g} has length {len(g)}, expected {num_vars}")
            if any(a < 0 for a in g):
                raise InputError(f"negative exponent in {g}")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "gens", minimalize(gens))

    @classmethod
    def unit(cls, m: int) -> "MonomialIdeal":
        return cls(m, [(0,) * m])

    @classmethod
    def zero(cls, m: int) -> "MonomialIdeal":
        return cls(m, [])

    @classmethod
    def maximal(cls, m: int) -> "MonomialIdeal":
        return cls(m, [tuple(int(i == j) for j in range(m)) for i in range(m)])

    @classmethod
    def variables(cls, m: int, subset) -> "MonomialIdeal":
        return cls(m, [tuple(int(i == j) for j in range(m)) for i in subset])

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.num_vars,)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def max_exponents(self) -> Exp:
        return tuple(max((g[i] for g in self.gens), default=0) for i in range(self.num_vars))

    def contains(self, u: Exp) -> bool:
        return any(divides(g, u) for g in self.gens)

    __contains__ = contains

    def issubset(self, other: "MonomialIdeal") -> bool:
        _check_same(self, other)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _check_same(self, other)
        return MonomialIdeal(self.num_vars, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return ideal_power(self, n)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _check_same(self, other)
        return MonomialIdeal(self.num_vars, [lcm(a, b) for a in self.gens for b in other.gens])

    def times_monomial(self, u: Exp) -> "MonomialIdeal":
        return MonomialIdeal(self.num_vars, [mul(g, u) for g in self.gens])

    def colon_monomial(self, u: Exp) -> "MonomialIdeal":
        return MonomialIdeal(self.num_vars, [quo(g, u) for g in self.gens])

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """self : other."""
        _check_same(self, other)
        out = MonomialIdeal.unit(self.num_vars)
        for u in other.gens:
            out = out & self.colon_monomial(u)
        return out

    def to_str(self, ring: Ring | None = None) -> str:
        if self.is_zero:
            return "(0)"
        if ring is None:
            return "(" + ", ".join(str(list(g)) for g in self.gens) + ")"
        return "(" + ", ".join(ring.monomial_str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"MonomialIdeal{self.to_str()}"


def _check_same(a: MonomialIdeal, b: MonomialIdeal):
    if a.num_vars != b.num_vars:
        raise InputError(f"ring mismatch: {a.num_vars} vs {b.num_vars} variables")


@lru_cache(maxsize=4096)
def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _check_same(a, b)
    return MonomialIdeal(a.num_vars, [mul(g, h) for g in a.gens for h in b.gens])


@lru_cache(maxsize=4096)
def ideal_power(a: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise InputError("negative ideal power")
    if n == 0:
        return MonomialIdeal.unit(a.num_vars)
    return ideal_product(ideal_power(a, n - 1), a)


def ideal_product_all(ideals, m: int) -> MonomialIdeal:
    out = MonomialIdeal.unit(m)
    for a in ideals:
        out = ideal_product(out, a)
    return out


def colon_saturate(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """a : b^infinity."""
    _check_same(a, b)
    cur = a
    while True:
        nxt = cur.colon(b)
        if nxt == cur:
            return cur
        cur = nxt


def minimal_primes(a: MonomialIdeal) -> list[frozenset[int]]:
    """Minimal primes of a monomial ideal as sets of variable indices.

    A prime (x_i : i in S) contains ``a`` iff S meets the support of every
    generator, so the minimal primes are the minimal transversals of the
    supports. The zero ideal gives [frozenset()] (the zero prime); the unit
    ideal gives [].
    """
    if a.is_unit:
        return []
    covers: set[frozenset[int]] = {frozenset()}
    supports = sorted({frozenset(i for i, x in enumerate(g) if x) for g in a.gens}, key=len)
    for s in supports:
        nxt = set()
        for t in covers:
            if t & s:
                nxt.add(t)
            else:
                nxt.update(t | {v} for v in s)
        covers = {t for t in nxt if not any(o < t for o in nxt)}
    return sorted(covers, key=lambda t: (len(t), sorted(t)))


def associated_primes(num: MonomialIdeal, den: MonomialIdeal) -> list[frozenset[int]]:
    """Associated primes of the monomial module num/den.

    They are the prime ideals among den : u for monomials u in num \\ den. Both
    membership in num and den : u only depend on min(u, c) with c the
    componentwise maximal generator exponent, so a finite box suffices.
    """
    m = num.num_vars
    c = tuple(max(x, y) for x, y in zip(num.max_exponents(), den.max_exponents()))
    found = set()
    for u in iproduct(*(range(ci + 1) for ci in c)):
        if not num.contains(u) or den.contains(u):
            continue
        col = den.colon_monomial(u)
        if all(sum(g) == 1 for g in col.gens):
            found.add(frozenset(g.index(1) for g in col.gens))
    return sorted(found, key=lambda t: (len(t), sorted(t)))


class PolyElement:
    """Polynomial with exact coefficients; zero coefficients are never stored."""

    __slots__ = ("field", "terms", "num_vars")

    def __init__(self, field: Field, num_vars: int, terms=None):
        self.field = field
        self.num_vars = num_vars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != num_vars or any(a < 0 for a in e):
                raise InputError(f"bad exponent vector {e}")
            c = field(c)
            if c:
                clean[e] = field.add(clean.get(e, field(0)), c)
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def monomial(cls, field: Field, e: Exp, c=1) -> "PolyElement":
        return cls(field, len(e), {e: c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def order(self) -> int:
        """Lowest total degree of a term."""
        return min(sum(e) for e in self.terms)

    def times_monomial(self, u: Exp) -> dict[Exp, object]:
        return {mul(e, u): c for e, c in self.terms.items()}

    def scale(self, c) -> "PolyElement":
        c = self.field(c)
        return PolyElement(self.field, self.num_vars, {e: self.field.mul(v, c) for e, v in self.terms.items()})

    def in_ideal(self, a: MonomialIdeal) -> bool:
        return all(a.contains(e) for e in self.terms)

    def __eq__(self, other):
        return isinstance(other, PolyElement) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def to_terms(self) -> list[dict]:
        return [{"coeff": self.field.format(self.terms[e]), "exps": list(e)}
                for e in sorted(self.terms, key=grlex_key)]

    def to_str(self, ring: Ring | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grlex_key):
            mono = ring.monomial_str(e) if ring else str(list(e))
            parts.append(f"{self.terms[e]}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PolyElement({self.to_str()})"


def generic_element(a: MonomialIdeal, field: Field, rng: random.Random) -> PolyElement:
    """Random k-linear combination of the minimal generators, all coefficients nonzero."""
    if a.is_zero:
        raise InputError("generic element of the zero ideal")
    return PolyElement(field, a.num_vars, {g: field.random_nonzero(rng) for g in a.gens})
