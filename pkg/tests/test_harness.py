import json

import pytest

from mixmult.corpus import example_names, load_example
from mixmult.harness import (
    RETRY_HINT,
    Settings,
    run_example,
    summarize,
    type_grid,
    verify_additivity_reduction,
    verify_degree_law,
    verify_existence,
    verify_exact_sequence,
    verify_main,
    verify_positivity_equivalences,
    verify_rank_formula,
)
from mixmult.modules import IdealFamily, Subquotient
from mixmult.monomial import MonomialIdeal

M2 = MonomialIdeal.maximal(2)
E1 = IdealFamily(M2, (M2,))
R2 = Subquotient.ring(2)
XY = MonomialIdeal(2, [(1, 1)])


@pytest.mark.parametrize("t,e,minimal", [((1, 0), 1, True), ((0, 1), 1, True), ((1, 1), 0, False)])
def test_main_E1(t, e, minimal):
    rep = verify_main(R2, None, E1, t, Settings(koszul=True))
    assert rep.passed, rep.diagnostics
    assert rep.quantities["e"] == rep.quantities["chi"] == e
    assert rep.quantities["minimal"] == minimal
    assert all(v == e for v in rep.quantities["koszul_euler"])


def test_main_undefined_type():
    rep = verify_main(R2, None, E1, (0, 0))
    assert rep.verdict == "hypothesis not met"


def test_main_with_submodule():
    M = Subquotient.quotient(XY)
    N = Subquotient(MonomialIdeal(2, [(1, 0)]) + XY, XY)
    rep = verify_main(M, N, E1, (0, 0))
    assert rep.passed, rep.diagnostics
    q = rep.quantities
    assert (q["e"], q["e_N"], q["e_M_over_N"]) == (2, 1, 1)
    assert q["reduction_passes_to_N"] and q["reduction_passes_to_M/N"]


def test_exact_sequence():
    M = Subquotient.quotient(MonomialIdeal(2, [(2, 1)]))
    N = Subquotient(MonomialIdeal(2, [(1, 0)]) + M.den, M.den)
    rep = verify_exact_sequence(M, N, E1, (0, 0))
    assert rep.passed, rep.diagnostics
    assert rep.quantities["e"] == rep.quantities["e_N"] + rep.quantities["e_M_over_N"]


def test_failed_search_is_inconclusive():
    rep = verify_existence(E1, R2, (1, 0), Settings(attempts=0))
    assert rep.verdict == "inconclusive"
    assert RETRY_HINT in rep.diagnostics[0]


@pytest.mark.parametrize("t,positive", [((1, 0), True), ((1, 1), False)])
def test_positivity(t, positive):
    rep = verify_positivity_equivalences(E1, R2, t)
    assert rep.passed, rep.diagnostics
    assert set(rep.quantities["items"].values()) == {positive}
    assert set(rep.quantities["heuristic"].values()) == {positive}


@pytest.mark.parametrize("den,e,prime_sum,top_sum", [
    (((1, 1),), 2, 2, 2),
    (((2, 1),), 3, 3, 3),
])
def test_additivity_reduction(den, e, prime_sum, top_sum):
    M = Subquotient.quotient(MonomialIdeal(2, den))
    rep = verify_additivity_reduction(E1, M, (0, 0))
    assert rep.passed, rep.diagnostics
    q = rep.quantities
    assert (q["e"], q["prime_sum"], q["top_prime_sum"], q["chi"]) == (e, prime_sum, top_sum, e)


def test_additivity_reduction_embedded_component():
    # the embedded (x, y) component of R/(x^2, xy) is invisible to both sums
    M = Subquotient.quotient(MonomialIdeal(2, [(2, 0), (1, 1)]))
    rep = verify_additivity_reduction(E1, M, (0, 0))
    assert rep.passed and rep.quantities["e"] == 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_rank_formula(r):
    rep = verify_rank_formula(r, E1, (1, 0))
    assert rep.passed, rep.diagnostics
    assert rep.quantities["e_free"] == r and rep.quantities["chi_free"] == r


@pytest.mark.parametrize("t", type_grid(1))
def test_existence_E1(t):
    assert verify_existence(E1, R2, t).verdict == "pass"


def test_degree_law_E1():
    rep = verify_degree_law(E1, R2)
    assert rep.passed
    assert rep.quantities["deg_P"] == 1 and rep.quantities["q"] == 2


def test_type_grid():
    assert type_grid(1, 1, 1) == [(0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("name", example_names())
def test_corpus_example(name):
    problem = load_example(name)
    reps = run_example(problem, Settings(koszul=True))
    summary = summarize({name: reps})
    assert summary["all_pass"], [(r.theorem, r.inputs["type"], r.diagnostics) for r in reps
                                 if r.verdict not in ("pass", "hypothesis not met")]
    json.dumps([r.to_dict() for r in reps])
