"""Finite monomial bases of num/(den + degree >= D) and vectors over them."""
from __future__ import annotations

from .field import Field
from .monomial import Exp, MonomialIdeal, monomials_below


class TruncatedSpace:
    """k-span of the monomials u of ``num`` with u outside ``den`` and deg u < bound.

    Any term that falls outside the basis (into den, or at degree >= bound)
    is read as zero, which is exactly the quotient map.
    """

    def __init__(self, field: Field, num: MonomialIdeal, den: MonomialIdeal, bound: int):
        self.field = field
        self.bound = bound
        self.basis: list[Exp] = [u for u in monomials_below(num.num_vars, bound)
                                 if num.contains(u) and not den.contains(u)]
        self.index = {u: i for i, u in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def vector(self, terms: dict) -> list:
        row = [self.field(0)] * len(self.basis)
        for e, c in terms.items():
            j = self.index.get(e)
            if j is not None:
                row[j] = self.field.add(row[j], c)
        return row

    def unit(self, u: Exp) -> list:
        return self.vector({u: 1})

    def members(self, a: MonomialIdeal) -> list[Exp]:
        """Basis monomials lying in ``a`` (they span the image of a)."""
        return [u for u in self.basis if a.contains(u)]


def rank(field: Field, rows: list[list]) -> int:
    rows = [r for r in rows if any(r)]
    return field.rank(rows) if rows else 0
