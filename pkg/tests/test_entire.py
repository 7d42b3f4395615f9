"""Growth analysis: moments, Taylor data, order/type fits, products, counting."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad as scipy_quad
from scipy.special import gammaln

from stftuniq import (
    CanonicalProduct,
    EvaluationOverflowError,
    InsufficientDataError,
    InvalidParameterError,
    TaylorSeries,
    ZeroAtOriginError,
    build_counterexample_product,
    counterexample_eval,
    counterexample_growth_coefficient,
    counterexample_log_magnitudes,
    estimate_order,
    estimate_type,
    jensen_integral,
    make_generalized_gaussian,
    make_modulated_generalized_gaussian,
    moment_integral,
    predicted_growth,
    strip_growth_fit,
    taylor_coefficients,
    weierstrass_factor,
    zero_count_bound,
)
from stftuniq.entire import DegenerateFitError, canonical_product_eval, canonical_product_log_magnitudes

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


# ---------------------------------------------------------------- moments

def test_moment_closed_values():
    assert math.isclose(moment_integral(0, 1.0, 2.0), math.sqrt(math.pi), rel_tol=1e-14)
    assert math.isclose(moment_integral(0, math.pi, 2.0), 1.0, rel_tol=1e-14)
    assert math.isclose(moment_integral(2, 1.0, 2.0), math.sqrt(math.pi) / 2.0, rel_tol=1e-14)


@pytest.mark.parametrize("a,m", [(1.0, 2.0), (2.0, 1.5)])
@pytest.mark.parametrize("n", [0, 1, 2, 5, 10])
def test_moment_against_adaptive_quadrature(n, a, m):
    closed = moment_integral(n, a, m)
    ref, _ = scipy_quad(lambda x: x**n * math.exp(-a * x**m), 0.0, math.inf,
                        epsabs=0.0, epsrel=1e-12, limit=200)
    assert abs(closed - 2.0 * ref) / closed < 1e-9


def test_moment_validation_and_overflow():
    for args in ((-1, 1.0, 2.0), (1.5, 1.0, 2.0), (2, 0.0, 2.0), (2, 1.0, 0.5)):
        with pytest.raises(InvalidParameterError):
            moment_integral(*args)
    with pytest.raises(EvaluationOverflowError):
        moment_integral(300000, 0.5, 1.5)


# ----------------------------------------------------------- Taylor data

def test_taylor_gaussian_window_leading_coefficients():
    series = taylor_coefficients(make_generalized_gaussian(1.0, 2.0), 40)
    assert series.truncation == 40
    assert len(series.coefficients) == 41
    c = series.coefficients
    assert abs(c[0] - math.sqrt(math.pi)) < 1e-12
    assert c[1] == 0.0
    want_c2 = -math.pi**2 * math.sqrt(math.pi)
    assert abs(c[2] - want_c2) / abs(want_c2) < 1e-9
    # even real profile: every odd coefficient is pinned, not just small
    assert all(c[n] == 0.0 for n in range(1, 41, 2))


def test_taylor_modulated_window_breaks_symmetry():
    series = taylor_coefficients(make_modulated_generalized_gaussian(1.5, 2.0, 0.8), 12)
    odd = np.abs(np.asarray(series.coefficients)[1::2])
    assert odd.max() > 1e-3


def test_taylor_coefficient_envelope():
    # |c_n| <= (2 pi)^n / n! * M_n with M_n the absolute moment
    series = taylor_coefficients(make_generalized_gaussian(1.0, 2.0), 40)
    for n, cn in enumerate(series.coefficients):
        if cn == 0.0:
            continue
        log_bound = (n * math.log(2.0 * math.pi) - gammaln(n + 1)
                     + math.log(moment_integral(n, 1.0, 2.0)))
        assert math.log(abs(cn)) <= log_bound + 1e-10


def test_series_validation():
    with pytest.raises(InvalidParameterError):
        TaylorSeries(np.ones(3), truncation=4)
    with pytest.raises(InvalidParameterError):
        TaylorSeries(np.ones(2), truncation=1)
    with pytest.raises(InvalidParameterError):
        TaylorSeries(np.array([1.0, np.nan, 0.5]), truncation=2)


# ------------------------------------------------------- order and type

def test_estimate_order_exponential():
    c = np.array([1.0 / math.factorial(n) for n in range(61)])
    est = estimate_order(TaylorSeries(c, truncation=60))
    assert abs(est.order - 1.0) < 0.03
    assert len(est.n_used) >= 10


def test_estimate_order_even_lacunary():
    # sum z^{2k} / k! = exp(z^2), order 2
    c = np.zeros(81)
    c[0::2] = [1.0 / math.factorial(k) for k in range(41)]
    est = estimate_order(TaylorSeries(c, truncation=80))
    assert abs(est.order - 2.0) < 0.05


@pytest.mark.parametrize("m,a", [(1.5, 1.0), (2.0, 1.0), (3.0, 2.0)])
def test_estimate_order_window_transforms(m, a):
    series = taylor_coefficients(make_generalized_gaussian(a, m), 80)
    want = m / (m - 1.0)
    est = estimate_order(series)
    assert abs(est.order - want) / want < 0.03


def test_estimate_order_polynomial_is_zero():
    c = np.zeros(41)
    c[0], c[3] = 1.0, -2.0
    est = estimate_order(TaylorSeries(c, truncation=40))
    assert est.order == 0.0


def test_estimate_order_needs_data():
    c = np.zeros(41)
    c[[0, 5, 10, 15, 20, 25, 30, 35, 40]] = 1e-3
    with pytest.raises(InsufficientDataError):
        estimate_order(TaylorSeries(c, truncation=40))


def test_estimate_type_exponential():
    c = np.array([1.0 / math.factorial(n) for n in range(61)])
    est = estimate_type(TaylorSeries(c, truncation=60), 1.0)
    assert abs(est.type - 1.0) < 0.05


@pytest.mark.parametrize("m,a", [(1.5, 1.0), (2.0, 1.0), (3.0, 2.0)])
def test_estimate_type_window_transforms(m, a):
    series = taylor_coefficients(make_generalized_gaussian(a, m), 80)
    pred = predicted_growth(m, a)
    est = estimate_type(series, pred.order)
    assert abs(est.type - pred.type) / pred.type < 0.05


def test_estimate_type_polynomial_is_zero():
    c = np.zeros(41)
    c[0] = 1.0
    assert estimate_type(TaylorSeries(c, truncation=40), 1.0).type == 0.0


def test_predicted_growth_values():
    g = predicted_growth(2.0, math.pi)
    assert math.isclose(g.order, 2.0, rel_tol=1e-14)
    assert math.isclose(g.type, math.pi, rel_tol=1e-14)
    g = predicted_growth(2.0, 1.0)
    assert math.isclose(g.type, math.pi**2, rel_tol=1e-14)
    g = predicted_growth(1.5, 1.0)
    assert math.isclose(g.order, 3.0, rel_tol=1e-14)
    assert math.isclose(g.type, 36.748179769244224, rel_tol=1e-12)
    for m, a in ((1.0, 1.0), (0.8, 1.0), (2.0, 0.0)):
        with pytest.raises(InvalidParameterError):
            predicted_growth(m, a)


# ------------------------------------------------- Jensen and zero counts

def test_jensen_reference_values():
    assert jensen_integral(lambda z: np.ones_like(z), 5.0) == 0.0
    val = jensen_integral(lambda z: 1.0 - z * z, 2.0, n_theta=4096)
    assert abs(val - 2.0 * math.log(2.0)) < 1e-10
    # e^z has mean log-modulus equal to log|f(0)| on every circle
    assert abs(jensen_integral(np.exp, 3.0, n_theta=256)) < 1e-14


def test_jensen_monotone_in_radius():
    vals = [jensen_integral(np.cos, r, n_theta=2048) for r in (1.0, 2.0, 4.0, 8.0)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert all(v >= -1e-12 for v in vals)


def test_jensen_guards():
    with pytest.raises(ZeroAtOriginError):
        jensen_integral(lambda z: z, 1.0)
    with pytest.raises(InvalidParameterError):
        jensen_integral(np.exp, 0.0)
    with pytest.raises(InvalidParameterError):
        jensen_integral(np.exp, 1.0, n_theta=32)
    with pytest.warns(RuntimeWarning):
        val = jensen_integral(lambda z: 1.0 - z, 1.0)
    assert val == -math.inf


def test_zero_count_bound():
    assert zero_count_bound(lambda z: 1.0, 1.0, 2.0, 4.0, math.pi, 2.0) == 20
    assert zero_count_bound(lambda z: 1.0, 3.0, 2.0, 1.0, 0.0, 2.0) == 0
    counts = [zero_count_bound(np.exp, r, 2.0, 1.0, 1.0, 1.0) for r in (1.0, 2.0, 4.0)]
    assert counts == sorted(counts)
    for args in ((0.0, 2.0, 1.0, 1.0, 1.0), (1.0, 1.0, 1.0, 1.0, 1.0),
                 (1.0, 2.0, 0.0, 1.0, 1.0), (1.0, 2.0, 1.0, -1.0, 1.0),
                 (1.0, 2.0, 1.0, 1.0, 0.0)):
        with pytest.raises(InvalidParameterError):
            zero_count_bound(lambda z: 1.0, *args)


# ------------------------------------------------------ canonical products

def test_weierstrass_factor_values():
    assert weierstrass_factor(0.0, 3) == 1.0
    assert weierstrass_factor(1.0, 2) == 0.0
    want = 0.5 * math.exp(0.5)
    assert math.isclose(weierstrass_factor(0.5, 1).real, want, rel_tol=1e-15)
    with pytest.raises(InvalidParameterError):
        weierstrass_factor(0.5, -1)
    with pytest.raises(InvalidParameterError):
        weierstrass_factor(0.5, 1.5)


@pytest.mark.parametrize("p", [0, 1, 2])
@pytest.mark.parametrize("radius", [0.3, 0.5])
def test_weierstrass_log_bound(p, radius):
    # |log G(u; p)| <= |u|^{p+1} / (1 - |u|) on |u| <= 1/2
    for angle in np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False):
        u = radius * cmath.exp(1j * angle)
        g = weierstrass_factor(u, p)
        bound = radius ** (p + 1) / (1.0 - radius)
        assert abs(cmath.log(g)) <= bound + 1e-13


def test_product_matches_sinh():
    zeros = np.arange(1, 201, dtype=float) ** 2
    prod = CanonicalProduct(zeros=zeros, genus=0, truncation=200)
    val = canonical_product_eval(prod, -1.0)
    want = math.sinh(math.pi) / math.pi
    assert abs(val - want) / want < 0.01
    assert abs(val.imag) == 0.0


def test_product_exact_zeros_and_origin():
    zeros = np.arange(1, 101, dtype=float) ** 2
    prod = CanonicalProduct(zeros=zeros, genus=0, truncation=100)
    assert canonical_product_eval(prod, zeros[7]) == 0.0
    assert canonical_product_eval(prod, 0.0) == 1.0
    logs = canonical_product_log_magnitudes(prod, np.array([zeros[7], 4.5]))
    assert logs[0] == -math.inf and math.isfinite(logs[1])
    rooted = CanonicalProduct(zeros=zeros, genus=0, truncation=100, origin_multiplicity=2)
    assert canonical_product_eval(rooted, 0.0) == 0.0


def test_product_banded_matches_direct():
    zeros = np.arange(1, 100001, dtype=float) ** 2
    prod = CanonicalProduct(zeros=zeros, genus=0, truncation=100000)
    direct = canonical_product_eval(prod, -1.0)
    banded = canonical_product_log_magnitudes(prod, np.array([-1.0]))[0]
    assert abs(banded - math.log(abs(direct))) < 1e-10


def test_product_overflow_guard():
    zeros = 0.01 * np.arange(1, 2001, dtype=float)
    prod = CanonicalProduct(zeros=zeros, genus=1, truncation=2000)
    with pytest.raises(EvaluationOverflowError):
        canonical_product_eval(prod, 1e4)


def test_product_validation():
    with pytest.raises(InvalidParameterError):
        CanonicalProduct(zeros=np.array([1.0, 1.0, 2.0]), genus=0, truncation=3)
    with pytest.raises(InvalidParameterError):
        CanonicalProduct(zeros=np.array([-1.0, 2.0]), genus=0, truncation=2)
    with pytest.raises(InvalidParameterError):
        CanonicalProduct(zeros=np.array([1.0, 2.0]), genus=0, truncation=0)
    with pytest.raises(InvalidParameterError):
        CanonicalProduct(zeros=np.array([1.0, 2.0]), genus=-1, truncation=2)


# --------------------------------------------------------- counterexamples

def test_counterexample_vanishes_exactly():
    lam = 1.1 * np.arange(1, 2001, dtype=float) ** (1.0 / 3.0)
    assert counterexample_eval(lam, 3.0, lam[0]) == 0.0
    assert counterexample_eval(lam, 3.0, -lam[56]) == 0.0
    off = counterexample_eval(lam, 3.0, 0.5 * (lam[0] + lam[1]))
    assert off != 0.0


def test_counterexample_log_magnitudes_match_direct():
    lam = 1.1 * np.arange(1, 20001, dtype=float) ** (1.0 / 3.0)
    zs = np.array([0.7 + 0.2j, -2.3 + 1.1j, 3.9, 2.5j])
    logs = counterexample_log_magnitudes(lam, 3.0, zs)
    for z, lv in zip(zs, logs):
        direct = counterexample_eval(lam, 3.0, z)
        assert abs(lv - math.log(abs(direct))) < 1e-10


def test_counterexample_growth_stays_below_envelope():
    # zeros 10% sparser than the non-uniqueness threshold demands
    lam = 1.1 * np.arange(1, 1000001, dtype=float) ** (1.0 / 3.0)
    coeff, samples = counterexample_growth_coefficient(lam, 3.0, (2.0, 3.0, 4.0),
                                                       n_theta=32)
    assert 0.0 < coeff < math.pi
    assert len(samples) == 3
    assert all(math.isfinite(v) for _, v in samples)


def test_counterexample_genus_and_validation():
    lam = np.arange(1, 101, dtype=float) ** 0.5
    assert build_counterexample_product(lam, 2.0).genus == 1
    assert build_counterexample_product(lam, 3.9).genus == 1
    assert build_counterexample_product(lam, 4.0).genus == 2
    with pytest.raises(InvalidParameterError):
        build_counterexample_product(lam, 1.0)
    with pytest.raises(InvalidParameterError):
        build_counterexample_product(np.array([2.0, 1.0, 3.0]), 2.0)


def test_counterexample_density_warning():
    # too sparse to clear the non-uniqueness threshold for (rho=2, b=pi)
    lam = 0.5 * np.arange(1, 101, dtype=float) ** 0.5
    with pytest.warns(RuntimeWarning):
        build_counterexample_product(lam, 2.0, b=math.pi)


def test_counterexample_irregular_sequence_warning():
    lam = np.arange(1, 65, dtype=float)
    with pytest.warns(RuntimeWarning):
        counterexample_growth_coefficient(lam, 3.0, (2.0, 3.0), n_theta=16)


# ------------------------------------------------------------- strip fits

def test_strip_fit_recovers_gaussian_profile():
    grid = np.linspace(-2.0, 2.0, 41)
    fit = strip_growth_fit(lambda z: np.exp(-math.pi * z * z), 2.0, grid, grid)
    assert abs(fit.a_fit - math.pi) < 1e-10
    assert abs(fit.b_fit - math.pi) < 1e-10
    assert abs(fit.c_fit - 1.0) < 1e-10
    assert fit.rho == 2.0
    assert 0.0 <= fit.residual < 1e-9


def test_strip_fit_constant_function():
    grid = np.linspace(-2.0, 2.0, 21)
    fit = strip_growth_fit(lambda z: np.ones_like(z), 2.0, grid, grid)
    assert abs(fit.a_fit) < 1e-12 and abs(fit.b_fit) < 1e-12
    assert abs(fit.c_fit - 1.0) < 1e-12


def test_strip_fit_degenerate():
    grid = np.linspace(-1.0, 1.0, 11)
    with pytest.raises(DegenerateFitError):
        strip_growth_fit(lambda z: np.zeros_like(z), 2.0, grid, grid)
