import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from isingpvi.series import SeriesK, SeriesError, T
from isingpvi.correlations import LOW, HIGH, corr_fw, corr_diag
from isingpvi import painleve as pv

O = 12
q = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonzero_t = q.filter(lambda x: x not in (0, 1))


def sigma(M, N, regime, order=O):
    return pv.sigma_from_corr(pv.corr_for_sigma(M, N, regime, order))


def test_sigma_at_origin():
    assert sigma(0, 2, LOW).series.t_coeff(0) == 0
    # C ~ t^(N/2): t(t-1) dlnC/dt -> -N/2, minus 1/4
    s = pv.sigma_from_corr(corr_diag(1, HIGH, 2 * O + 10))
    assert s.variant == "DiagHigh" and s.series.t_coeff(0) == mpq(-3, 4)
    assert sigma(0, 4, HIGH).series.t_coeff(0) == mpq(-9, 4)


def test_sigma_variant_guards():
    c = corr_fw(1, 2, LOW, 30)
    with pytest.raises(ValueError):
        pv.sigma_from_corr(c, "HighEven")
    with pytest.raises(ValueError):
        pv.sigma_from_corr(c, "DiagLow")
    with pytest.raises(SeriesError):
        pv.sigma_from_corr(corr_fw(1, 2, HIGH, 30, tilde=False))


def test_cosgrove_poly_by_hand():
    p = pv.CosgroveParams(1, 2, 3, 4, 5, 6)
    t, y, y1, y2 = mpq(2), mpq(1), mpq(3), mpq(1, 2)
    u = t * y1 - y                 # 5
    w = t * (t - 1) * y2           # 1
    inner = 3 * 25 - 9 * 5 + 25 + 2 * 15 + 3 * 9 + 4 * 5 + 5 * 3 + 6
    assert pv.cosgrove_poly(p, t, y, y1, y2) == w * w + 4 * inner


@given(nonzero_t, q, q, q, st.integers(0, 5), st.integers(1, 5))
def test_literal_equations_are_cosgrove(t, y, y1, y2, M, N):
    for fam in pv.FAMILIES:
        if fam == "JMDiag":
            M = N
        lhs = pv.family_poly(fam, M, N, mpq(t), mpq(y), mpq(y1), mpq(y2))
        rhs = pv.cosgrove_poly(pv.family_params(fam, M, N), mpq(t), mpq(y), mpq(y1), mpq(y2))
        assert lhs == rhs


@pytest.mark.parametrize("M,N,regime", [(0, 1, LOW), (1, 2, LOW), (2, 2, LOW), (0, 2, HIGH),
                                        (1, 3, HIGH), (1, 2, HIGH), (2, 3, HIGH), (3, 3, HIGH)])
def test_ode_residual_vanishes(M, N, regime):
    for rec in pv.verify_ode(M, N, regime, O):
        assert rec["order_verified"] == O, rec


def test_jimbo_miwa_on_diagonal():
    s = sigma(2, 2, LOW)
    assert pv.ode_residual(s, "JMDiag", 2, 2, O).is_zero()
    with pytest.raises(ValueError):
        pv.ode_residual(s, "JMDiag", 1, 2, O)


def test_perturbed_sigma_fails_at_the_perturbed_order():
    s = sigma(0, 2, HIGH)
    for j in (2, 5):
        bumped = s.series + SeriesK.monomial(mpq(1, 3), 2 * j, s.series.order, T)
        r = pv.ode_residual(bumped, "HighEvenMN", 0, 2, O)
        assert not r.is_zero() and r.valuation // 2 == j


def test_low_t_perturbation_surfaces_late():
    # at low T the linearization at t = 0 vanishes, so a bump at t^j shows up later
    s = sigma(1, 3, LOW)
    bumped = s.series + SeriesK.monomial(mpq(1, 3), 10, s.series.order, T)
    r = pv.ode_residual(bumped, "LowMN", 1, 3, O)
    assert not r.is_zero() and r.valuation // 2 > 5


def test_residual_order_is_enforced():
    s = pv.sigma_from_corr(corr_fw(0, 2, LOW, 12))
    with pytest.raises(SeriesError):
        pv.ode_residual(s, "LowMN", 0, 2, 20)


@pytest.mark.parametrize("M,N,regime", [(0, 3, LOW), (2, 4, HIGH), (0, 1, HIGH), (3, 3, LOW)])
def test_cosgrove_fit_recovers_family(M, N, regime):
    s = sigma(M, N, regime, 22)
    fit = pv.cosgrove_fit(s, 20)
    fam = pv.default_family(s.variant, M, N)
    assert fit.consistent and fit.nullity == 0
    assert fit.params == pv.family_params(fam, M, N)
    assert fit.margin >= 6


def test_cosgrove_fit_underdetermined_reports_nullspace():
    s = sigma(0, 2, LOW, 22)
    fit = pv.cosgrove_fit(s, 1)
    assert fit.nullity > 0 and len(fit.nullspace) == fit.nullity


@given(st.tuples(q, q, q, q), st.permutations(range(4)), st.sampled_from(
    [(1, 1, 1, 1), (-1, -1, 1, 1), (1, -1, -1, 1), (-1, 1, 1, -1), (-1, -1, -1, -1)]))
def test_canonical_is_invariant(n, perm, flips):
    m = [n[i] * f for i, f in zip(perm, flips)]
    assert pv.okamoto_canonical(m) == pv.okamoto_canonical(n)


@given(st.lists(q, min_size=1, max_size=4))
def test_rational_roots_recovers_roots(roots):
    c = [mpq(1)]
    for r in roots:
        c = [mpq(0)] + c
        for i in range(len(c) - 1):
            c[i] -= mpq(r) * c[i + 1]
    assert pv.rational_roots(c) == sorted(mpq(r) for r in roots)


def test_rational_roots_irrational():
    assert pv.rational_roots([-2, 0, 1]) is None


SHIFTS = {   # (M, N, regime): (a, b) in h = t(t-1) dlnC/dt + a t + b
    (1, 3, LOW): (mpq(-1, 2), mpq(-7, 8)),
    (0, 2, HIGH): (mpq(0), mpq(-5, 8)),
    (1, 2, HIGH): (mpq(-1, 4), mpq(-3, 8)),
}


@pytest.mark.parametrize("key", sorted(SHIFTS))
def test_h_shift_values(key):
    assert pv.h_shift(*key) == SHIFTS[key]


@pytest.mark.parametrize("M,N,regime", [(0, 2, LOW), (1, 3, LOW), (0, 2, HIGH), (1, 2, HIGH),
                                        (2, 4, HIGH), (1, 1, LOW)])
def test_okamoto_round_trip(M, N, regime):
    c = pv.corr_for_sigma(M, N, regime, 22)
    s = pv.sigma_from_corr(c)
    fit = pv.cosgrove_fit(s, 20)
    forms = pv.cosgrove_to_okamoto(fit.params, s)
    assert forms and forms[0].n == pv.okamoto_canonical(pv.okamoto_params(M, N, regime, c.tilde))
    assert pv.okamoto_residual(forms[0].hSeries, forms[0].n, 20).is_zero()
    h, n = pv.h_from_corr(c)
    assert pv.okamoto_residual(h, n, 20).is_zero()


def test_okamoto_residual_catches_wrong_parameters():
    h, n = pv.h_from_corr(pv.corr_for_sigma(0, 2, HIGH, 16))
    wrong = (n[0], n[1], n[2] + 1, n[3])
    assert not pv.okamoto_residual(h, wrong, 16).is_zero()


def test_c05_factors():
    from isingpvi.correlations import elliptic_poly_eval
    assert elliptic_poly_eval(pv.c05_factorized(), 20) == corr_fw(0, 5, LOW, 20).series
    n = pv.factor_params(5)
    assert pv.okamoto_canonical(n) == pv.okamoto_canonical((1, mpq(3, 2), mpq(-1, 2), 0))
    for i in (1, 2, 3, 4):
        assert pv.okamoto_residual(pv.factor_h(i, 5, 12), n, 12).is_zero()


@pytest.mark.parametrize("M,N", [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 3)])
def test_tau_function_route(M, N):
    h_tau, n_tau = pv.h_from_tau(M, N, O)
    h_c, n_c = pv.h_from_corr(pv.corr_for_sigma(M, N, LOW, O))
    assert pv.okamoto_canonical(n_tau) == pv.okamoto_canonical(n_c)
    assert h_tau.agrees(h_c, 2 * O)


@pytest.mark.parametrize("M,N", [(0, 2), (1, 3), (1, 1)])
def test_kramers_wannier(M, N):
    rep = pv.kw_checks(M, N, 12, points=10)
    assert rep["holds"]
    assert all(d["exponent"] == 0 for d in rep["dual"])


def test_dual_check_detects_a_wrong_partner():
    # duality needs M and N swapped; pairing the same (M, N) breaks it for M != N
    bad = 0
    for pt in itertools.islice(itertools.product([mpq(2), mpq(3, 5)], [mpq(1, 3)], [mpq(2)], [mpq(-1)]), 2):
        P = pv.family_poly("LowMN", 0, 2, *pt)
        Pd = pv.family_poly("LowMN", 0, 2, *pv.dual_point(*pt))
        bad += Pd != P
    assert bad
