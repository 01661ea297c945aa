import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import Polynomial
from scipy import integrate, special

from dunkl_dihedral import classical
from dunkl_dihedral.classical import (
    chebyshev, chebyshev_vw, gegenbauer, generalized_gegenbauer, jacobi, pochhammer,
)
from dunkl_dihedral.errors import InvalidParameter

ts = st.floats(-1, 1)
lams = st.sampled_from([0.3, 0.5, 1.0, 1.7, 2.5])


# --- Chebyshev -------------------------------------------------------------

def test_chebyshev_examples():
    assert chebyshev("T", 3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert chebyshev("U", -1, 0.3) == 0.0
    for k in range(2, 9):
        for j in range(1, k):
            assert abs(chebyshev("U", k - 1, math.cos(j * math.pi / k))) < 1e-13


def test_chebyshev_rejects_low_index():
    with pytest.raises(InvalidParameter):
        chebyshev("U", -2, 0.1)
    with pytest.raises(InvalidParameter):
        chebyshev("T", -1, 0.1)


@given(st.integers(0, 40), st.floats(0.01, math.pi - 0.01))
def test_chebyshev_trig_forms(n, th):
    t = math.cos(th)
    assert chebyshev("T", n, t) == pytest.approx(math.cos(n * th), abs=1e-13 * max(1, n))
    assert chebyshev("U", n - 1, t) * math.sin(th) == pytest.approx(math.sin(n * th), abs=1e-13 * max(1, n))


@given(st.integers(0, 30), st.floats(0.05, math.pi - 0.05))
def test_third_and_fourth_kind(n, th):
    t = math.cos(th)
    assert chebyshev_vw("V", n, t) == pytest.approx(math.cos((n + 0.5) * th) / math.cos(th / 2), abs=1e-11)
    assert chebyshev_vw("W", n, t) == pytest.approx(math.sin((n + 0.5) * th) / math.sin(th / 2), abs=1e-11)


# --- Gegenbauer --------------------------------------------------------------

def test_gegenbauer_examples():
    assert gegenbauer(2, 1.0, 0.37) == pytest.approx(4 * 0.37**2 - 1)
    assert gegenbauer(2, 1.0, 1.0) == pytest.approx(pochhammer(2, 2) / 2)
    assert gegenbauer(0, 0.7, 0.2) == 1.0
    assert gegenbauer(-1, 0.7, 0.2) == 0.0


def test_gegenbauer_power_series_coefficient():
    # coefficient of r^5 in (1 - 0.6 r + r^2)^(-0.7): binomial series in u = -0.6 r + r^2
    a, N = 0.7, 5
    u = Polynomial([0.0, -0.6, 1.0])
    series = Polynomial([0.0])
    term = Polynomial([1.0])
    for j in range(N + 1):
        series = series + special.binom(-a, j) * term
        term = (term * u).cutdeg(N)
    assert gegenbauer(5, 0.7, 0.3) == pytest.approx(series.coef[5], abs=1e-14)


@given(st.integers(0, 25), lams, ts)
def test_gegenbauer_matches_scipy(n, lam, t):
    assert gegenbauer(n, lam, t) == pytest.approx(special.eval_gegenbauer(n, lam, t), rel=1e-10, abs=1e-10)


@given(st.integers(0, 30), lams)
def test_gegenbauer_at_one(n, lam):
    assert gegenbauer(n, lam, 1.0) == pytest.approx(pochhammer(2 * lam, n) / math.factorial(n), rel=1e-12)


@given(st.integers(0, 15), st.sampled_from([0.5, 1.0, 2.5]), ts)
def test_gegenbauer_contiguous_relation(m, lam, t):
    lhs = gegenbauer(m, lam + 1, t) - t * gegenbauer(m - 1, lam + 1, t)
    assert lhs == pytest.approx((m + 2 * lam) / (2 * lam) * gegenbauer(m, lam, t), abs=1e-11)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.5])
def test_gegenbauer_generating_functions(lam):
    rng = np.random.default_rng(3)
    t = rng.uniform(-1, 1, 20)
    r, N = 0.3, 60
    tab = classical.gegenbauer_table(N, lam, t)
    powers = r ** np.arange(N + 1)
    first = powers @ tab
    second = ((np.arange(N + 1) + lam) / lam * powers) @ tab
    np.testing.assert_allclose(first, (1 - 2 * r * t + r * r) ** (-lam), atol=1e-10)
    np.testing.assert_allclose(second, (1 - r * r) / (1 - 2 * r * t + r * r) ** (lam + 1), atol=1e-10)


# --- Jacobi --------------------------------------------------------------------

def test_jacobi_examples():
    assert jacobi(0, 0.3, 0.9, 0.2) == 1.0
    a, b, t = 0.4, -0.3, 0.55
    assert jacobi(1, a, b, t) == pytest.approx((a + b + 2) * t / 2 + (a - b) / 2)
    assert jacobi(1, 0.0, 0.0, 1.0) == 1.0


def test_jacobi_against_gram_schmidt():
    # orthogonalise 1, t, t^2 for (1-t)^0.5 (1+t)^-0.5 on a 64-point rule
    x, w = special.roots_jacobi(64, 0.5, -0.5)
    basis = [np.ones_like(x), x, x * x]
    ortho = []
    for v in basis:
        for q in ortho:
            v = v - (v * q * w).sum() / (q * q * w).sum() * q
        ortho.append(v)
    q2 = ortho[2]  # monic degree 2, as values at the nodes
    coef = np.polyfit(x, q2, 2)
    monic_at = np.polyval(coef, 0.4)
    p = jacobi(2, 0.5, -0.5, 0.4)
    lead = special.poch(2 + 0.5 - 0.5 + 1, 2) / (2**2 * math.factorial(2))  # leading coefficient of P_2
    assert p == pytest.approx(lead * monic_at, rel=1e-12)


@given(st.integers(0, 20), st.floats(-0.9, 3), st.floats(-0.9, 3), ts)
def test_jacobi_matches_scipy(n, a, b, t):
    assert jacobi(n, a, b, t) == pytest.approx(special.eval_jacobi(n, a, b, t), rel=1e-9, abs=1e-9)


@given(st.integers(0, 20), st.floats(-0.9, 3), st.floats(-0.9, 3))
def test_jacobi_at_one(n, a, b):
    assert jacobi(n, a, b, 1.0) == pytest.approx(pochhammer(a + 1, n) / math.factorial(n), rel=1e-11)


@given(st.integers(0, 12), st.floats(0.05, math.pi - 0.05))
def test_half_angle_ratios(j, th):
    c = 4**j * math.factorial(j) ** 2 / math.factorial(2 * j)
    t = math.cos(th)
    assert math.cos((j + 0.5) * th) / math.cos(th / 2) == pytest.approx(c * jacobi(j, -0.5, 0.5, t), abs=1e-11)
    assert math.sin((j + 0.5) * th) / math.sin(th / 2) == pytest.approx(c * jacobi(j, 0.5, -0.5, t), abs=1e-11)


# --- generalised Gegenbauer ---------------------------------------------------

@given(st.integers(0, 8), lams, st.floats(0, 2 * math.pi))
def test_generalized_gegenbauer_equal_parameters(m, lam, th):
    lhs = generalized_gegenbauer(2 * m, lam, lam, math.cos(th))
    assert lhs == pytest.approx(gegenbauer(m, lam, math.cos(2 * th)), abs=1e-10)


def test_generalized_gegenbauer_trivial_cases():
    assert generalized_gegenbauer(0, 0.8, 0.3, 0.4) == 1.0
    assert generalized_gegenbauer(-1, 0.8, 0.3, 0.4) == 0.0
    # mu = 0 is C_n^lam once both sides are normalised at t = 1
    a = generalized_gegenbauer(4, 1.0, 0.0, 0.2) / generalized_gegenbauer(4, 1.0, 0.0, 1.0)
    b = gegenbauer(4, 1.0, 0.2) / gegenbauer(4, 1.0, 1.0)
    assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize("lam,mu", [(0.5, 0.5), (1.0, 0.3), (1.7, 1.2)])
def test_generalized_gegenbauer_orthogonality(lam, mu):
    # weight |t|^{2mu} (1-t^2)^{lam-1/2} on t > 0 becomes s^{mu-1/2} (1-s)^{lam-1/2} under s = t^2,
    # which a Jacobi rule in 2s - 1 integrates exactly; parity supplies the negative half
    x, wt = special.roots_jacobi(30, lam - 0.5, mu - 0.5)
    t = np.sqrt((1 + x) / 2)
    P = np.array([generalized_gegenbauer(n, lam, mu, t) for n in range(9)])
    par = (-1.0) ** np.arange(9)
    G = (P * wt) @ P.T * (1 + np.outer(par, par))
    d = np.sqrt(np.diag(G))
    assert np.abs(G / np.outer(d, d) - np.eye(9)).max() < 1e-12


def test_generalized_gegenbauer_parameter_checks():
    with pytest.raises(InvalidParameter):
        generalized_gegenbauer(2, -0.6, 0.2, 0.1)
    with pytest.raises(InvalidParameter):
        generalized_gegenbauer(2, 0.6, -0.2, 0.1)


# --- constants -------------------------------------------------------------------

def test_pochhammer_and_log_gamma():
    assert pochhammer(2 * 0.3 + 1, 0) == 1.0
    assert pochhammer(2.0, 3) == 24.0
    assert classical.log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)


def test_a_lambda_k_normalises_the_simplex_mass():
    # lam Gamma(lam)^k / Gamma(k lam + 1) is the simplex mass; at k=2, lam=1 it is 1/2
    printed = 1.0 * math.gamma(1.0) ** 2 / math.gamma(3.0)
    assert printed == 0.5
    assert classical.simplex_mass(2, 1.0) == pytest.approx(printed, rel=1e-15)
    assert classical.a_lambda_k(2, 1.0) == pytest.approx(2.0, rel=1e-15)
    for lam in (0.4, 1.0, 2.5):
        direct, _ = integrate.quad(lambda u: (1 - u) ** lam * u ** (lam - 1), 0, 1)
        assert classical.a_lambda_k(2, lam) * direct == pytest.approx(1.0, abs=1e-8)
        for k in range(1, 7):
            assert classical.a_lambda_k(k, lam) * classical.simplex_mass(k, lam) == pytest.approx(1.0, abs=1e-14)


def test_a_lambda_k_rejects_nonpositive():
    with pytest.raises(InvalidParameter):
        classical.a_lambda_k(3, 0.0)
    with pytest.raises(InvalidParameter):
        classical.constants("a_lambda_k", k=3, lam=-1.0)


def test_circle_mass_closed_form():
    assert classical.circle_mass(1.0) == pytest.approx(math.pi, rel=1e-15)
    for lam, k in ((0.3, 1), (1.5, 3), (2.0, 5)):
        num, _ = integrate.quad(lambda th: abs(math.sin(k * th)) ** (2 * lam), 0, 2 * math.pi, limit=200)
        assert classical.circle_mass(lam) == pytest.approx(num, rel=1e-9)
        assert classical.c_circle(lam) * num == pytest.approx(1.0, rel=1e-9)


def test_circle_mass_at_zero_is_two_pi():
    # the normaliser of d theta must be 1/(2 pi)
    assert classical.c_circle(0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert classical.c_circle_two(0.0, 0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)


def test_interval_constants():
    # (1 - t^2)^0 on [-1, 1] has mass 2
    assert classical.c_interval(1.0) == pytest.approx(0.5, rel=1e-15)
    assert classical.b_minus(1, 0.5) == pytest.approx(1 / classical.mass_minus(1, 0.5))
    for lam in (0.5, 1.0, 2.5):
        for k in (1, 2, 3):
            f = lambda t: abs(chebyshev("U", k - 1, t)) ** (2 * lam) * (1 - t * t) ** (lam + 0.5)
            num, _ = integrate.quad(f, -1, 1, limit=200, points=[math.cos(j * math.pi / k) for j in range(1, k)] or None)
            assert classical.mass_plus(k, lam) == pytest.approx(num, rel=1e-8)


def test_constants_lookup():
    assert classical.constants("pochhammer", a=1.5, n=2) == pytest.approx(1.5 * 2.5)
    assert classical.constants("c_circle", lam=1.0) == pytest.approx(1 / math.pi)
    with pytest.raises(InvalidParameter):
        classical.constants("nope")
