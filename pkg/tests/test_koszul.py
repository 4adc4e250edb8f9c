import random

import pytest
from hypothesis import given, settings, strategies as st

from mixmult.errors import InputError
from mixmult.field import Field
from mixmult.koszul import (
    chi,
    chi_oracle,
    generating_function_check,
    koszul_homology,
    validation_degrees,
)
from mixmult.modules import IdealFamily, Subquotient, Window
from mixmult.monomial import MonomialIdeal, PolyElement
from mixmult.reductions import ReductionCandidate, find_joint_reduction

F = Field()
M2 = MonomialIdeal.maximal(2)
R2 = Subquotient.ring(2)
E1 = IdealFamily(M2, (M2,))
X1 = MonomialIdeal(1, [(1,)])
LINE = IdealFamily(X1, (X1,))
R1 = Subquotient.ring(1)
XY = MonomialIdeal(2, [(1, 1)])


def found(fam, M, t, seed=0):
    r = find_joint_reduction(fam, M, t, seed)
    assert r.found
    return r.candidate


def test_line_homology():
    # x is a nonzerodivisor on k[x], so only the bottom homology survives
    x = PolyElement.monomial(F, (1,))
    c = ReductionCandidate(F, ((x,), ()))
    rep = koszul_homology(c, LINE, R1, (2, 2))
    assert rep.stable and rep.lengths == [1, 0] and rep.euler == 1
    assert rep.euler == chi_oracle((0, 0), LINE, R1)


def test_homology_rejects_bad_degree():
    c = found(E1, R2, (1, 0))
    with pytest.raises(InputError):
        koszul_homology(c, E1, R2, (1, -1))


@pytest.mark.parametrize("t,expected", [((1, 0), 1), ((1, 1), 0), ((0, 1), 1)])
def test_chi_E1_both_routes(t, expected):
    c = found(E1, R2, t)
    res = chi(c, E1, R2, koszul_validate=True)
    assert res.value == expected
    assert len(res.reports) == 2
    assert all(r.euler == expected and r.stable for r in res.reports)


@pytest.mark.parametrize("t,expected", [((0, 0), 2), ((1, 0), 0), ((0, 1), 0)])
def test_chi_additive_on_R_mod_xy(t, expected):
    # R/(xy) has dimension one and P is eventually 2
    M = Subquotient.quotient(XY)
    N = Subquotient(MonomialIdeal(2, [(1, 0)]) + XY, XY)
    Q = Subquotient.quotient(XY + MonomialIdeal(2, [(1, 0)]))
    c = found(E1, M, t)
    whole = chi(c, E1, M, koszul_validate=True).value
    assert whole == chi(c, E1, N, koszul_validate=True).value + chi(c, E1, Q, koszul_validate=True).value
    assert whole == expected


@pytest.mark.parametrize("seed", [0, 1, 7, 123])
def test_chi_independent_of_reduction(seed):
    c = found(E1, R2, (1, 0), seed)
    assert chi(c, E1, R2, koszul_validate=True).value == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_chi_invariant_under_ideal_shift(m):
    shifted = Subquotient(M2 ** m, MonomialIdeal.zero(2))
    for t in [(1, 0), (0, 1)]:
        assert chi_oracle(t, E1, shifted) == chi_oracle(t, E1, R2)


def test_validation_degrees():
    c = found(E1, R2, (1, 1))
    assert validation_degrees(c, E1) == [(3, 2), (4, 3)]


@pytest.mark.parametrize("fam,M,t,window", [
    (LINE, R1, (0, 0), Window((1, 1), (3, 3))),
    (E1, R2, (1, 0), Window((2, 2), (5, 5))),
    (E1, R2, (0, 1), Window((2, 2), (5, 5))),
])
def test_generating_function_check(fam, M, t, window):
    c = found(fam, M, t)
    gf = generating_function_check(c, fam, M, window)
    assert gf.outcome == "true" and gf.cells
    assert all(a == b for a, b in gf.cells.values())


def test_generating_function_insufficient_depth():
    c = found(E1, R2, (1, 0))
    gf = generating_function_check(c, E1, R2, Window((0, 0), (0, 0)))
    assert gf.outcome == "insufficient depth" and not gf


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 2), (3, 2), (2, 3)]))
def test_lengths_nonnegative_and_euler_constant(seed, deg):
    c = ReductionCandidate.generic(E1, (1, 1), F, random.Random(seed))
    rep = koszul_homology(c, E1, R2, deg)
    assert rep.stable
    assert all(v >= 0 for v in rep.lengths)
    assert rep.euler == chi_oracle((0, 1), E1, R2)
