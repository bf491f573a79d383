import pytest
from gmpy2 import mpq
from hypothesis import given, assume, settings, strategies as st

import closed_forms as cf
from isingpvi.series import SeriesError
from isingpvi.correlations import LOW, HIGH
from isingpvi import boundary as bd
from isingpvi.painleve import okamoto_params, okamoto_residual, corr_for_sigma

q = st.fractions(min_value=-5, max_value=5, max_denominator=9).map(mpq)
generic_n = st.tuples(q, q, q, q)


def _generic(n, branch):
    d = bd.branch_sum(n, branch)
    return d.denominator != 1 and all(x != 0 for x in n) and len({abs(x) for x in n}) == 4


@settings(max_examples=25)
@given(generic_n, st.integers(1, 4))
def test_first_coefficients_against_closed_forms(n, i):
    br = "B%d" % i
    assume(_generic(n, br))
    sol = bd.solve_analytic(n, br, {}, 4)
    want = [f(i, *n) for f in (cf.c0, cf.c1, cf.c2, cf.c3)]
    assert sol.coeffs[:4] == want
    assert list(bd.branch_seed(n, br)) == want


@settings(max_examples=10)
@given(generic_n, st.sampled_from(bd.BRANCHES))
def test_solution_satisfies_the_equation(n, br):
    assume(_generic(n, br))
    sol = bd.solve_analytic(n, br, {}, 5)
    assert sol.resonances == []
    # two derivatives cost two orders of the truncated series
    assert okamoto_residual(sol.series(), n, min(sol.verified, sol.order - 2)).is_zero()


def test_coincident_parameters_take_the_nonzero_root():
    # with n1 = n2 = n3 the t^2 coefficient vanishes and later ones decide
    n = (mpq(1), mpq(1), mpq(1), mpq(1, 2))
    sol = bd.solve_analytic(n, "B4", {}, 4)
    assert okamoto_residual(sol.series(), n, 2).is_zero()


@settings(max_examples=15)
@given(generic_n)
def test_branches_are_sign_flips_of_branch_four(n):
    n1, n2, n3, n4 = n
    for br, m in (("B1", (n1, n2, -n3, -n4)), ("B2", (-n1, n2, n3, -n4)), ("B3", (n1, -n2, n3, -n4))):
        assume(_generic(n, br))
        assert bd.solve_analytic(n, br, {}, 5).coeffs == bd.solve_analytic(m, "B4", {}, 5).coeffs


def test_c1_degenerate_branch_needs_a_constant():
    n = (mpq(1, 2), mpq(-1, 2), mpq(1, 3), mpq(-1, 3))      # branch sum 0 on B4
    with pytest.raises(bd.DegenerateBranch):
        bd.branch_seed(n, "B4")
    assert bd.branch_seed(n, "B4", strict=False)[1] is None


@pytest.mark.parametrize("d", [2, 3])
def test_integer_branch_sum_obstructs_generic_parameters(d):
    n = (mpq(1, 3), mpq(2, 5), mpq(3, 7))
    n = n + (d - sum(n),)
    with pytest.raises(bd.NoAnalyticSolution) as e:
        bd.solve_analytic(n, "B4", {}, d + 3)
    # the resonance sits where the factor D - (j - 1) vanishes
    assert "t^%d" % (d + 1) in str(e.value)


LOW_CASES = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4)]
HIGH_CASES = [(0, 2), (1, 3), (0, 4), (2, 4)]


@pytest.mark.parametrize("M,N", LOW_CASES)
def test_low_t_resonance_at_n_plus_one(M, N):
    n = okamoto_params(M, N, LOW)
    assert N + 1 in bd.resonances(n, "B1", N + 3)


@pytest.mark.parametrize("M,N", HIGH_CASES)
def test_high_t_resonance_at_n_plus_two(M, N):
    n = okamoto_params(M, N, HIGH)
    assert bd.resonances(n, "B2", N + 3) == [N + 2]


@pytest.mark.parametrize("M,N", [(1, 3), (0, 4), (2, 4)])
def test_high_t_third_branch_is_obstructed(M, N):
    # branch sum N - 1: the factor D - (j - 1) vanishes at j = N with nonzero obstruction
    n = okamoto_params(M, N, HIGH)
    assert bd.branch_sum(n, "B3") == N - 1
    with pytest.raises(bd.NoAnalyticSolution) as e:
        bd.solve_analytic(n, "B3", {}, N + 2)
    assert "t^%d" % N in str(e.value)


def test_low_t_first_and_fourth_branch_coincide():
    n = okamoto_params(1, 3, LOW)          # n3 = -n4
    a = bd.solve_analytic(n, "B1", {4: 0}, 6)
    b = bd.solve_analytic(n, "B4", {4: 0}, 6)
    assert a.coeffs == b.coeffs


LAMBDA = {
    (LOW, 0, 1): mpq(-1, 2 ** 6), (LOW, 0, 2): mpq(1, 2 ** 8), (LOW, 1, 2): mpq(-1, 2 ** 8),
    (LOW, 0, 3): mpq(-9, 2 ** 14), (LOW, 1, 3): mpq(15, 2 ** 14),
    (HIGH, 0, 2): mpq(3, 2 ** 14), (HIGH, 0, 4): mpq(5, 2 ** 20),
    # computed; a factor 3 away from the value usually quoted
    (HIGH, 1, 3): mpq(9, 2 ** 18),
}


@pytest.mark.parametrize("key", sorted(LAMBDA))
def test_lambda_coefficients(key):
    regime, M, N = key
    c = corr_for_sigma(M, N, regime, 3 * N + 6)
    m = bd.match_lambda(c)
    assert m.lambda_coeff == LAMBDA[key]
    branch, n = bd.correlation_branch(c)
    sol = bd.solve_analytic(n, branch, m.free, m.agrees_to)
    if regime == LOW:
        assert all(sol.coeffs[k] == 0 for k in range(2, N + 1))


def test_wrong_branch_is_reported():
    c = corr_for_sigma(0, 2, HIGH, 16)
    n = okamoto_params(0, 2, HIGH)
    sol = bd.solve_analytic(n, "B4", {1: 0}, 6)
    with pytest.raises(SeriesError):
        bd.match_lambda(c, sol)


def test_json_dump():
    n = okamoto_params(0, 2, LOW)
    sol = bd.solve_analytic(n, "B1", {3: mpq(1, 7)}, 6)
    j = sol.to_json()
    assert j["branch"] == "B1" and j["resonances"] == [{"order": 3, "value": "1/7"}]
    assert j["coeffs"][:3] == ["-3/8", "0", "0"]
