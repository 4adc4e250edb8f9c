import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixmult.errors import InputError
from mixmult.modules import (
    DirectSum,
    IdealFamily,
    Subquotient,
    Window,
    count_outside,
    hilbert_F,
    hilbert_P,
    length,
    localized_length,
    saturate_module,
)
from mixmult.monomial import MonomialIdeal

from oracles import brute_P, count_quotient


def I(*gens):
    return MonomialIdeal(len(gens[0]), gens)


X, Y = (1, 0), (0, 1)
M2 = I(X, Y)
R2 = Subquotient.ring(2)
E1 = IdealFamily(M2, (M2,))


@pytest.mark.parametrize("num,den,expected", [
    (M2, I((2, 0), (1, 1), (0, 2)), 2),
    (MonomialIdeal.unit(2), I((3, 0), Y), 3),
    (MonomialIdeal.unit(2), I(X), math.inf),
])
def test_length(num, den, expected):
    assert length(Subquotient(num, den)) == expected


def test_subquotient_requires_containment():
    with pytest.raises(InputError):
        Subquotient(I(X), I(Y))


def test_family_requires_primary_J():
    with pytest.raises(InputError):
        IdealFamily(I(X), (M2,))


def test_P_two_variables_matches_counting():
    w = Window((0, 0), (4, 4))
    table = hilbert_P(E1, R2, w)
    for cell in w.cells():
        # number of monomials of degree n0 + n in two variables
        degree = sum(cell)
        count = sum(1 for i in range(degree + 1))
        assert table[cell] == count == sum(cell) + 1


def test_P_annihilated_module_vanishes():
    fam = IdealFamily(M2, (I(X),))
    table = hilbert_P(fam, Subquotient.quotient(I(X)), Window((0, 1), (3, 4)))
    assert not table.values.any()


def test_P_of_R_mod_xy():
    table = hilbert_P(E1, Subquotient.quotient(I((1, 1))), Window((0, 0), (4, 4)))
    for cell in Window((0, 0), (4, 4)).cells():
        assert table[cell] == (1 if sum(cell) == 0 else 2)


@pytest.mark.parametrize("den,num", [((), None), (((1, 1),), None), (((2, 1),), None), (((1, 1),), ((1, 0),))])
def test_P_matches_brute_force(den, num):
    num_gens = num or [(0, 0)]
    M = Subquotient(MonomialIdeal(2, num_gens) + MonomialIdeal(2, den), MonomialIdeal(2, den))
    fam = IdealFamily(I((2, 0), (0, 1)), (I((1, 0), (0, 2)),))
    w = Window((0, 0), (2, 2))
    table = hilbert_P(fam, M, w)
    for cell in w.cells():
        expected = brute_P(fam.J.gens, [a.gens for a in fam.I], M.num.gens, M.den.gens, 2, cell, 20)
        assert table[cell] == expected


def test_F_two_variables():
    w = Window((0, 0), (4, 4))
    table = hilbert_F(E1, R2, w)
    for n0, n in w.cells():
        assert table[(n0, n)] == sum(t + 1 for t in range(n, n + n0))


def test_F_principal_one_variable():
    x = MonomialIdeal(1, [(1,)])
    table = hilbert_F(IdealFamily(x, (x,)), Subquotient.ring(1), Window((0, 0), (5, 5)))
    for n0, n in Window((0, 0), (5, 5)).cells():
        assert table[(n0, n)] == n0


def test_F_vanishes_at_n0_zero():
    table = hilbert_F(E1, Subquotient.quotient(I((2, 1))), Window((0, 0), (0, 5)))
    assert not table.values.any()


@pytest.mark.parametrize("den", [(), ((1, 1),), ((2, 0), (1, 1))])
def test_P_is_difference_of_F(den):
    M = Subquotient.quotient(MonomialIdeal(2, den)) if den else R2
    P = hilbert_P(E1, M, Window((0, 0), (4, 4)))
    F = hilbert_F(E1, M, Window((0, 0), (5, 4)))
    for n0, n in P.window.cells():
        assert P[(n0, n)] == F[(n0 + 1, n)] - F[(n0, n)]


def test_direct_sum_tables_add():
    A = Subquotient.quotient(I((1, 1)))
    B = Subquotient.quotient(I((2, 0)))
    w = Window((1, 1), (3, 3))
    total = hilbert_P(E1, DirectSum((A, B)), w).values
    assert np.array_equal(total, hilbert_P(E1, A, w).values + hilbert_P(E1, B, w).values)


@pytest.mark.parametrize("den,fam_I,expect_same,q", [
    (((1, 1),), M2, True, 1),
    (((1, 0),), I(X), False, float("-inf")),
    ((), M2, True, 2),
])
def test_saturate(den, fam_I, expect_same, q):
    M = Subquotient.quotient(MonomialIdeal(2, den)) if den else R2
    Mbar, qq = saturate_module(M, IdealFamily(M2, (fam_I,)))
    assert qq == q
    assert (Mbar == M) == expect_same
    if not expect_same:
        assert Mbar.is_zero()


@pytest.mark.parametrize("den,prime,expected", [
    (((1, 1),), {0}, 1),
    (((2, 1),), {0}, 2),
    (((2, 1),), {1}, 1),
    (((1, 0),), {0}, 1),
])
def test_localized_length(den, prime, expected):
    assert localized_length(Subquotient.quotient(MonomialIdeal(2, den)), prime) == expected


def test_localized_length_by_hand_inverting():
    # setting y = 1 in (x^2 y) leaves (x^2) in k(y)[x]: two standard monomials
    gens = [(2, 1)]
    inverted = [g[0] for g in gens]
    assert localized_length(Subquotient.quotient(I((2, 1))), {0}) == min(inverted)


def test_localized_length_rejects_non_minimal():
    with pytest.raises(InputError):
        localized_length(Subquotient.quotient(I((1, 1))), {0, 1})


gens2 = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3)


@settings(max_examples=50, deadline=None)
@given(gens2, gens2)
def test_count_outside_matches_box(g1, g2):
    A, B = MonomialIdeal(2, g1), MonomialIdeal(2, g2)
    c = count_outside(A, B)
    big, bigger = count_quotient(A.gens, B.gens, 2, 14), count_quotient(A.gens, B.gens, 2, 20)
    if c is None:
        assert bigger > big
    else:
        assert c == big == bigger


@settings(max_examples=50, deadline=None)
@given(gens2, gens2, gens2)
def test_length_additive(g1, g2, g3):
    C = MonomialIdeal(2, g1) + MonomialIdeal(2, [(4, 0), (0, 4)])
    B = C + MonomialIdeal(2, g2)
    A = B + MonomialIdeal(2, g3)
    assert length(Subquotient(A, C)) == length(Subquotient(A, B)) + length(Subquotient(B, C))
