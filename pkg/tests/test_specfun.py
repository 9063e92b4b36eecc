import math

import numpy as np
import pytest

from ldpmean import specfun as sf
from ldpmean.errors import NumericsError

from oracles import beta_cdf_quad, normal_cdf_quad, trunc_gauss_moment_quad


def test_log_gamma_reference_values():
    # references computed with 50-digit arithmetic
    assert math.isclose(sf.log_gamma(0.5), 0.57236494292470008707, rel_tol=1e-15)
    assert math.isclose(sf.log_gamma(10.0), 12.801827480081469611, rel_tol=1e-15)
    assert sf.log_gamma(1.0) == 0.0
    assert sf.log_gamma(2.0) == 0.0


def test_log_gamma_domain():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            sf.log_gamma(bad)


def test_log_beta_symmetry_and_value():
    assert sf.log_beta(2.0, 3.0) == sf.log_beta(3.0, 2.0)
    # B(2,3) = 1/12
    assert math.isclose(sf.log_beta(2.0, 3.0), -math.log(12.0), rel_tol=1e-14)


def test_reg_inc_beta_endpoints_and_midpoint():
    assert sf.reg_inc_beta(0.0, 3.0, 4.0) == 0.0
    assert sf.reg_inc_beta(1.0, 3.0, 4.0) == 1.0
    # exact symmetry value, also for very large shapes
    assert sf.reg_inc_beta(0.5, 2.0, 2.0) == 0.5
    assert sf.reg_inc_beta(0.5, 24999.5, 24999.5) == 0.5


def test_reg_inc_beta_closed_forms():
    # I_x(2,2) = x^2 (3 - 2x)
    for x in (0.1, 0.25, 0.5, 0.9):
        assert math.isclose(sf.reg_inc_beta(x, 2.0, 2.0), x * x * (3.0 - 2.0 * x), rel_tol=1e-13)
    assert math.isclose(sf.reg_inc_beta(0.25, 2.0, 2.0), 0.15625, rel_tol=1e-14)
    # I_x(1,1) = x
    assert math.isclose(sf.reg_inc_beta(0.37, 1.0, 1.0), 0.37, rel_tol=1e-14)
    # reference computed with 50-digit arithmetic
    assert math.isclose(sf.reg_inc_beta(0.6, 31.5, 31.5), 0.94490609874570535151, rel_tol=1e-13)


def test_reg_inc_beta_complement_symmetry():
    rng = np.random.default_rng(21)
    for _ in range(50):
        a = float(np.exp(rng.uniform(np.log(0.6), np.log(300.0))))
        b = float(np.exp(rng.uniform(np.log(0.6), np.log(300.0))))
        x = float(rng.uniform(0.02, 0.98))
        lhs = sf.reg_inc_beta(x, a, b)
        rhs = 1.0 - sf.reg_inc_beta(1.0 - x, b, a)
        assert abs(lhs - rhs) <= 1e-14


def test_reg_inc_beta_against_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(40):
        a = float(np.exp(rng.uniform(np.log(0.6), np.log(40.0))))
        b = float(np.exp(rng.uniform(np.log(0.6), np.log(40.0))))
        x = float(rng.uniform(0.02, 0.98))
        assert abs(sf.reg_inc_beta(x, a, b) - beta_cdf_quad(x, a, b)) <= 1e-10


def test_reg_inc_beta_domain():
    with pytest.raises(ValueError):
        sf.reg_inc_beta(-0.1, 2.0, 2.0)
    with pytest.raises(ValueError):
        sf.reg_inc_beta(1.1, 2.0, 2.0)
    with pytest.raises(ValueError):
        sf.reg_inc_beta(0.5, 0.0, 2.0)
    with pytest.raises(ValueError):
        sf.reg_inc_beta(0.5, 2.0, -1.0)


def test_inv_reg_inc_beta_round_trip_moderate():
    rng = np.random.default_rng(3)
    for _ in range(60):
        a = float(np.exp(rng.uniform(np.log(0.6), np.log(200.0))))
        b = float(np.exp(rng.uniform(np.log(0.6), np.log(200.0))))
        y = float(rng.uniform(1e-4, 1.0 - 1e-4))
        x = sf.inv_reg_inc_beta(y, a, b)
        assert 0.0 < x < 1.0
        assert abs(sf.reg_inc_beta(x, a, b) - y) <= 1e-11


def test_inv_reg_inc_beta_deep_tails():
    # tail targets must be hit with small relative residual
    for y, a in ((1e-12, 31.5), (6.3e-16, 24999.5), (1e-20, 15.5), (1e-8, 0.5)):
        x = sf.inv_reg_inc_beta(y, a, a)
        back = sf.reg_inc_beta(x, a, a)
        assert abs(back - y) <= 1e-10 * y


def test_inv_reg_inc_beta_endpoints_and_midpoint():
    assert sf.inv_reg_inc_beta(0.0, 3.0, 5.0) == 0.0
    assert sf.inv_reg_inc_beta(1.0, 3.0, 5.0) == 1.0
    assert sf.inv_reg_inc_beta(0.5, 17.5, 17.5) == 0.5


def test_inv_reg_inc_beta_monotone():
    ys = np.linspace(0.01, 0.99, 33)
    xs = [sf.inv_reg_inc_beta(float(y), 4.5, 9.0) for y in ys]
    assert all(x1 < x2 for x1, x2 in zip(xs, xs[1:]))


def test_std_normal_cdf_reference_and_quadrature():
    assert sf.std_normal_cdf(0.0) == 0.5
    # reference computed with 50-digit arithmetic
    assert math.isclose(sf.std_normal_cdf(1.0), 0.84134474606854294859, rel_tol=1e-15)
    for x in (-5.5, -2.0, -0.3, 0.7, 3.1, 5.9):
        assert abs(sf.std_normal_cdf(x) - normal_cdf_quad(x)) <= 1e-13


def test_std_normal_pdf_values():
    assert math.isclose(sf.std_normal_pdf(0.0), 0.39894228040143267794, rel_tol=1e-15)
    assert sf.std_normal_pdf(50.0) == 0.0  # underflows cleanly


def test_inv_std_normal_cdf_forward_residual():
    # |cdf(quantile(p)) - p| small across the full representable range
    ps = np.concatenate(
        [
            np.geomspace(1e-15, 0.4, 300),
            np.linspace(0.4, 0.6, 50),
            1.0 - np.geomspace(1e-15, 0.4, 300),
        ]
    )
    worst = 0.0
    for p in ps:
        x = sf.inv_std_normal_cdf(float(p))
        worst = max(worst, abs(sf.std_normal_cdf(x) - p))
    assert worst <= 1e-12


def test_inv_std_normal_cdf_round_trip():
    # left half-line: cdf values carry full relative precision, so the
    # round trip through the quantile is tight
    for x in np.linspace(-6.0, 0.0, 61):
        p = sf.std_normal_cdf(float(x))
        assert abs(sf.inv_std_normal_cdf(p) - x) <= 1e-9
    # right tail: cdf values sit next to 1.0, where the float grid spacing
    # itself costs spacing(p)/pdf(x) in x; allow exactly that floor
    for x in np.linspace(0.0, 6.0, 61)[1:]:
        p = sf.std_normal_cdf(float(x))
        floor = np.spacing(p) / sf.std_normal_pdf(float(x))
        assert abs(sf.inv_std_normal_cdf(p) - x) <= max(1e-9, floor)


def test_inv_std_normal_cdf_domain():
    for bad in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            sf.inv_std_normal_cdf(bad)


def test_trunc_gauss_moments_reference_values():
    # references computed with 50-digit arithmetic
    m_above, s_above, m_below, s_below = sf.trunc_gauss_moments(1.0, 1.0)
    assert math.isclose(m_above, 1.5251352761609812091, rel_tol=1e-13)
    assert math.isclose(s_above, 2.5251352761609812091, rel_tol=1e-13)
    m_above2, _, _, _ = sf.trunc_gauss_moments(1.0, 2.0)
    assert math.isclose(m_above2, 2.2821555407361289618, rel_tol=1e-13)
    # symmetric threshold: E[U | U >= 0] = sigma * sqrt(2/pi)
    m_above0, s_above0, m_below0, s_below0 = sf.trunc_gauss_moments(0.0, 1.0)
    assert math.isclose(m_above0, 0.79788456080286535588, rel_tol=1e-14)
    assert m_below0 == -m_above0
    assert s_above0 == 1.0 and s_below0 == 1.0


def test_trunc_gauss_moments_identities():
    # total mean zero and total second moment sigma^2, mass-weighted
    for sigma in (1.0, 0.125, 0.01767766952966369):
        for g in (-6.0, -2.5, -1.0, -0.25, 0.0, 0.4, 1.0, 3.0, 6.0):
            gamma = g * sigma
            m_above, s_above, m_below, s_below = sf.trunc_gauss_moments(gamma, sigma)
            mass_above = 0.5 * math.erfc(g / math.sqrt(2.0))
            mass_below = 0.5 * math.erfc(-g / math.sqrt(2.0))
            mean = mass_above * m_above + mass_below * m_below
            second = mass_above * s_above + mass_below * s_below
            assert abs(mean) <= 1e-10 * sigma
            assert abs(second - sigma * sigma) <= 1e-10 * sigma * sigma


def test_trunc_gauss_moments_against_quadrature():
    for sigma in (1.0, 0.1767766952966369):
        for gamma in (-1.5 * sigma, -0.3 * sigma, 0.0, 0.8 * sigma, 2.5 * sigma):
            m_above, s_above, m_below, s_below = sf.trunc_gauss_moments(gamma, sigma)
            assert abs(m_above - trunc_gauss_moment_quad(gamma, sigma, 1, True)) <= 1e-10
            assert abs(s_above - trunc_gauss_moment_quad(gamma, sigma, 2, True)) <= 1e-10
            assert abs(m_below - trunc_gauss_moment_quad(gamma, sigma, 1, False)) <= 1e-10
            assert abs(s_below - trunc_gauss_moment_quad(gamma, sigma, 2, False)) <= 1e-10


def test_trunc_gauss_moments_errors():
    with pytest.raises(ValueError):
        sf.trunc_gauss_moments(0.0, 0.0)
    with pytest.raises(ValueError):
        sf.trunc_gauss_moments(math.inf, 1.0)
    with pytest.raises(NumericsError):
        sf.trunc_gauss_moments(40.0, 1.0)  # tail mass below 1e-300


def test_tolerances_validation():
    with pytest.raises(ValueError):
        sf.Tolerances(abs_tol=0.0)
    with pytest.raises(ValueError):
        sf.Tolerances(rel_tol=-1e-9)
    with pytest.raises(ValueError):
        sf.Tolerances(max_iter=0)
    t = sf.Tolerances(max_iter=500)
    assert t.max_iter == 500


def test_vectorized_kernels_match_scalar():
    rng = np.random.default_rng(5)
    xs = rng.uniform(0.001, 0.999, size=200)
    for a, b in ((31.5, 31.5), (2.0, 5.0), (1023.5, 1023.5)):
        # the batched continued fraction iterates until every lane settles,
        # so lanes that settle early drift a few more rounding steps
        vec = sf._reg_inc_beta_vec(xs, a, b)
        scal = np.array([sf.reg_inc_beta(float(x), a, b) for x in xs])
        np.testing.assert_allclose(vec, scal, rtol=1e-11, atol=1e-300)
    ys = np.concatenate([rng.uniform(1e-6, 1.0 - 1e-6, size=100), [1e-12, 0.5, 1.0 - 1e-10]])
    for a in (31.5, 1023.5):
        vec = sf._inv_reg_inc_beta_vec(ys, a, a)
        scal = np.array([sf.inv_reg_inc_beta(float(y), a, a) for y in ys])
        np.testing.assert_allclose(vec, scal, rtol=0, atol=2e-13)
    # small shapes fall back to the scalar path inside the vec kernel
    vec = sf._inv_reg_inc_beta_vec(ys[:20], 0.5, 0.5)
    scal = np.array([sf.inv_reg_inc_beta(float(y), 0.5, 0.5) for y in ys[:20]])
    np.testing.assert_array_equal(vec, scal)
    ps = rng.uniform(1e-12, 1.0 - 1e-12, size=300)
    vq = sf._inv_std_normal_cdf_vec(ps)
    sq = np.array([sf.inv_std_normal_cdf(float(p)) for p in ps])
    np.testing.assert_allclose(vq, sq, rtol=0, atol=1e-13)
    vc = sf._std_normal_cdf_vec(vq)
    sc = np.array([sf.std_normal_cdf(float(x)) for x in vq])
    np.testing.assert_array_equal(vc, sc)
