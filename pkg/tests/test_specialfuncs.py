import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from calogero_eop import specialfuncs as sf
from calogero_eop.errors import ParameterError


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 12), st.floats(-0.9, 8.0), st.floats(0.0, 20.0))
def test_laguerre_matches_scipy(n, alpha, x):
    ref = special.eval_genlaguerre(n, alpha, x)
    assert sf.laguerre(n, alpha, x) == pytest.approx(ref, rel=1e-10, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 12), st.floats(-0.9, 6.0), st.floats(-0.9, 6.0), st.floats(-1.0, 1.0))
def test_jacobi_matches_scipy(n, a, b, z):
    ref = special.eval_jacobi(n, a, b, z)
    assert sf.jacobi(n, a, b, z) == pytest.approx(ref, rel=1e-9, abs=1e-9)


def test_jacobi_complex_against_mpmath():
    for n, a, b, z in [(3, -2.3 + 0.1, -2.3 - 0.1, 0.7j), (5, 1.5, -0.5, 2.0 - 1.0j),
                       (4, -1.8, -2.4, -3.5j)]:
        ref = complex(mpmath.jacobi(n, a, b, z))
        assert sf.jacobi(n, a, b, z) == pytest.approx(ref, rel=1e-11)


def test_jacobi_at_recurrence_singularity():
    # n + alpha + beta = 0 makes a recurrence denominator vanish; the
    # polynomial itself is finite (mpmath's hypergeometric form is the oracle)
    n, a, b = 3, -1.0, -2.0
    for z in (-0.5, 0.25, 0.9):
        w = (z - 1) / 2
        ref = sum(mpmath.rf(a + k + 1, n - k) * mpmath.rf(n + a + b + 1, k)
                  / (mpmath.factorial(k) * mpmath.factorial(n - k)) * w ** k
                  for k in range(n + 1))
        assert sf.jacobi(n, a, b, z) == pytest.approx(float(ref), rel=1e-12, abs=1e-14)


def test_negative_index_is_zero():
    assert sf.laguerre(-1, 2.0, 1.3) == 0.0
    assert sf.jacobi(-1, 0.5, 0.5, 0.1) == 0.0
    assert sf.jacobi_coeffs(-1, 0.5, 0.5) == []


def test_vectorized_shapes():
    z = np.linspace(-1, 1, 7)
    assert sf.jacobi(3, 0.5, 1.5, z).shape == (7,)
    assert sf.laguerre(2, 0.5, z).shape == (7,)


def test_coefficient_forms_match_values():
    z = np.linspace(-1, 1, 9)
    c = [float(v) for v in sf.jacobi_coeffs(4, 1.5, -0.5)]
    assert np.allclose(np.polyval(c[::-1], z), sf.jacobi(4, 1.5, -0.5, z), rtol=1e-12)
    c = [float(v) for v in sf.laguerre_coeffs(3, 2.5, scale=-1)]
    assert np.allclose(np.polyval(c[::-1], z), sf.laguerre(3, 2.5, -z), rtol=1e-12)


def test_polynomial_rep():
    p = sf.PolynomialRep("z", (1.0, -3.0, 2.0))
    assert p.degree == 2
    assert p(2.0) == pytest.approx(3.0)
    assert sorted(p.roots()) == pytest.approx([0.5, 1.0])
    assert p.deriv()(1.0) == pytest.approx(1.0)
    assert p.deriv(3)(np.array([1.0, 2.0 + 1j])).tolist() == [0, 0]
    assert p.monic().coeffs[-1] == 1.0
    with pytest.raises(ValueError):
        sf.PolynomialRep("x", (1.0,))
    with pytest.raises(ValueError):
        sf.PolynomialRep("z", (1.0, 0.0))


def _radial_residual_mp(Q, D, lam, n, r):
    """Schroedinger residual of the assembled radial function at one r,
    differentiated with mpmath (independent of every finite-difference path)."""
    with mpmath.workdps(30):
        return _radial_residual_body(Q, D, lam, n, r)


def _radial_residual_body(Q, D, lam, n, r):
    Om = mpmath.sqrt(1.5)
    c38 = mpmath.sqrt(mpmath.mpf(3) / 8)

    def poly(coeffs, x):
        return mpmath.polyval([mpmath.mpf(v) for v in coeffs[::-1]], x)

    def R(x):
        t = c38 * x * x
        return x ** (lam + 0.5) * mpmath.exp(-Om * x * x / 4) * poly(Q.coeffs, t) / poly(D, t)

    def V(x):
        t = c38 * x * x
        m = len(D) - 1
        d = mpmath.laguerre(m, lam - 1, -t)
        L1 = mpmath.laguerre(m - 1, lam, -t) / d if m >= 1 else 0
        L2 = mpmath.laguerre(m - 2, lam + 1, -t) / d if m >= 2 else 0
        rat = (-2 * m * Om - 1.5 * x * x * L2 + Om * (Om * x * x + 2 * lam - 2) * L1
               + 3 * x * x * L1 ** 2)
        return 0.375 * x * x + (lam * lam - 0.25) / (x * x) + rat

    E = Om * (2 * n + lam + 1)
    r = mpmath.mpf(r)
    return abs(-mpmath.diff(R, r, 2) + (V(r) - E) * R(r)) / abs(E * R(r))


def test_xm_laguerre_m1_lambda6():
    spec = sf.EOPSpec("xm_laguerre", 0, 1, (6.0,))
    Q, D = sf.build_eop_with_denominator(spec)
    assert Q.degree == 1
    assert Q.coeffs[-1] == pytest.approx(1.0)
    for r in (0.7, 1.9, 3.2):
        assert _radial_residual_mp(Q, [float(v) for v in D.coeffs], 6.0, 0, r) < 1e-12


@pytest.mark.parametrize("n,m,lam", [(1, 1, 6.0), (2, 2, 4.5), (3, 2, 7.25)])
def test_xm_laguerre_general(n, m, lam):
    Q, D = sf.build_eop_with_denominator(sf.EOPSpec("xm_laguerre", n, m, (lam,)))
    assert Q.degree - D.degree == n
    for r in (0.8, 2.1):
        assert _radial_residual_mp(Q, [float(v) for v in D.coeffs], lam, n, r) < 1e-12


def test_xp_jacobi_p1_scarf_example():
    Q = sf.build_eop(sf.EOPSpec("xp_jacobi", 0, 1, (1.5, 1.5)))
    # alpha = beta makes the X_1 denominator constant, so Q drops to degree 0
    assert Q.degree == 0
    Q = sf.build_eop(sf.EOPSpec("xp_jacobi", 0, 1, (1.5, 2.5)))
    assert Q.degree == 1
    assert Q.coeffs[-1] == pytest.approx(1.0)


def test_build_eop_deterministic_and_cached():
    spec = sf.EOPSpec("xp_jacobi", 2, 2, (2.0, 3.5))
    a = sf.build_eop(spec)
    b = sf.build_eop(sf.EOPSpec("xp_jacobi", 2, 2, (2.0, 3.5)))
    assert a == b


def test_eop_spec_validation():
    with pytest.raises(ValueError):
        sf.EOPSpec("xm_hermite", 0, 1, (1.0,))
    with pytest.raises(ValueError):
        sf.EOPSpec("xm_laguerre", -1, 1, (1.0,))
    with pytest.raises(ParameterError):
        sf.build_eop(sf.EOPSpec("xm_laguerre", 0, 1, (-1.0,)))


def test_y_polynomial_vanishes_at_l_equal_p():
    A, B = 8.37, 2.25
    for p in range(0, 4):
        assert sf.y_poly_rep(p, p, A, B) is None
        z = np.array([0.3j, -1.2j])
        assert np.allclose(sf.y_poly(p, p, A, B, z), 0.0, atol=1e-10)


def test_y_polynomial_p0_is_classical():
    A, B = 8.37, 2.25
    for ell in (1, 2, 3):
        al, bl = sf.eckart_ab(ell, A, B)
        z = np.array([0.4j, 1.5j, -0.2j])
        ratio = sf.y_poly(ell, 0, A, B, z) / sf.jacobi(ell - 1, al, bl, z)
        assert np.allclose(ratio, ratio[0], rtol=1e-10)


def test_eckart_parameters():
    al, bl = sf.eckart_ab(2, 6.0, 0.0)
    assert al == bl == pytest.approx(-3.0)
    with pytest.raises(ParameterError):
        sf.eckart_ab(0, 3.0, 1.0)
    assert sf.q_poly(0, 6.0, 1.0, 0.5j) == 1.0
    al, bl = sf.eckart_ab(1, 6.0, 1.0)
    assert sf.q_poly(1, 6.0, 1.0, 0.5j) == pytest.approx(complex(mpmath.jacobi(1, al, bl, 0.5j)))
    assert math.isfinite(abs(sf.q_poly(2, 6.0, 1.0, 2j)))
