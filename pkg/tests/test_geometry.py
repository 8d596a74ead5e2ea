import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from calogero_eop import geometry
from calogero_eop.errors import DegenerateConfigurationError, DomainError, SingularConfigurationError

coord = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


def _distinct(x1, x2, x3, gap=1e-2):
    return min(abs(x1 - x2), abs(x2 - x3), abs(x3 - x1)) > gap


@settings(max_examples=200, deadline=None)
@given(coord, coord, coord)
def test_jacobi_round_trip(x1, x2, x3):
    if not _distinct(x1, x2, x3):
        return
    c = geometry.Config3(x1, x2, x3)
    back = geometry.from_jacobi(geometry.to_jacobi(c))
    assert np.allclose(back.as_tuple(), c.as_tuple(), atol=1e-12, rtol=1e-12)


@settings(max_examples=200, deadline=None)
@given(coord, coord, coord)
def test_jacobi_definitions(x1, x2, x3):
    if not _distinct(x1, x2, x3):
        return
    j = geometry.to_jacobi(geometry.Config3(x1, x2, x3))
    # oracle: the defining linear maps
    assert j.x == pytest.approx((x1 - x2) / math.sqrt(2), abs=1e-12)
    assert j.y == pytest.approx((x1 + x2 - 2 * x3) / math.sqrt(6), abs=1e-12)
    assert j.R == pytest.approx((x1 + x2 + x3) / 3, abs=1e-12)
    assert -math.pi < j.phi <= math.pi


def test_polar_pair_differences_and_wolfes_terms():
    rng = np.random.default_rng(3)
    for _ in range(100):
        c = geometry.Config3(*rng.uniform(-3, 3, 3))
        j = geometry.to_jacobi(c)
        assert np.allclose(geometry.pair_differences(j), geometry.config_pair_differences(c),
                           atol=1e-12)
        s = geometry.wolfes_combinations(c)
        expect = [math.sqrt(6) * j.r * math.cos(j.phi + 2 * math.pi * k / 3) for k in range(3)]
        assert np.allclose(s, expect, atol=1e-12)


def test_inverse_square_sums():
    rng = np.random.default_rng(4)
    for _ in range(100):
        c = geometry.Config3(*rng.uniform(-3, 3, 3))
        j = geometry.to_jacobi(c)
        d = geometry.config_pair_differences(c)
        s = geometry.wolfes_combinations(c)
        lhs_d = sum(v ** -2 for v in d)
        lhs_s = sum(v ** -2 for v in s)
        assert lhs_d == pytest.approx(4.5 / (j.r ** 2 * math.sin(3 * j.phi) ** 2), rel=1e-10)
        assert lhs_s == pytest.approx(1.5 / (j.r ** 2 * math.cos(3 * j.phi) ** 2), rel=1e-10)


def test_degenerate_configurations():
    with pytest.raises(DegenerateConfigurationError):
        geometry.to_jacobi(geometry.Config3(1.0, 1.0, 1.0))
    with pytest.raises(SingularConfigurationError):
        geometry.Config3(0.0, 0.0, 1.0).require_distinct()
    with pytest.raises(SingularConfigurationError):
        geometry.xi_scarf_reciprocal(geometry.Config3(0.0, 0.0, 1.0))


def test_identities_hold_on_random_angles():
    rng = np.random.default_rng(0)
    phi = geometry.random_pole_avoiding_angles(rng, 10000)
    res = geometry.check_identities(phi)
    scale = geometry.identity_scale(phi)
    assert set(res) == set(geometry.IDENTITY_NAMES)
    for name in geometry.IDENTITY_NAMES:
        assert np.max(res[name] / scale[name]) <= 1e-12, name


def test_identities_against_mpmath():
    import mpmath
    phi = 0.3
    res = geometry.check_identities(phi)
    with mpmath.workdps(40):
        p = mpmath.mpf(phi)
        sh = [p + 2 * mpmath.pi * k / 3 for k in range(3)]
        exact = mpmath.fsum(1 / mpmath.sin(a) ** 2 for a in sh) - 9 / mpmath.sin(3 * p) ** 2
        assert abs(exact) < 1e-30
    assert res["sum_cosec2"] < 1e-12


def test_identities_reject_poles():
    with pytest.raises(DomainError):
        geometry.check_identities(math.pi / 6 + 1e-9)
    assert geometry.pole_distance(math.pi / 3) == pytest.approx(0.0, abs=1e-15)


def test_pole_avoiding_sampler():
    phi = geometry.random_pole_avoiding_angles(np.random.default_rng(1), 5000)
    assert phi.shape == (5000,)
    assert np.all(geometry.pole_distance(phi) >= geometry.POLE_EXCLUSION)


def test_scarf_xi_worked_point():
    c = geometry.Config3(1.0, 0.0, -1.0)
    for form in range(geometry.xi_forms("SCARF")):
        assert geometry.xi("SCARF", c, form) == pytest.approx(-1.0, abs=1e-14)


@pytest.mark.parametrize("family,expected", [
    ("SCARF", lambda p: -math.sin(3 * p)),
    ("PT2", lambda p: math.cos(3 * p) ** 2),
    ("PT", lambda p: -math.cos(3 * p)),
    ("PT_RM", lambda p: math.tan(3 * p)),
    ("PT_ECKART", lambda p: 1 / math.tan(3 * p)),
])
def test_xi_forms_match_angle(family, expected):
    rng = np.random.default_rng(7)
    n = 0
    while n < 200:
        c = geometry.Config3(*rng.uniform(-3, 3, 3))
        vals = geometry.config_pair_differences(c) + geometry.wolfes_combinations(c)
        if min(abs(v) for v in vals) < 1e-2:
            continue
        n += 1
        ref = expected(geometry.to_jacobi(c).phi)
        for form in range(geometry.xi_forms(family)):
            got = geometry.xi(family, c, form)
            assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref))


def test_xi_angular_values_and_poles():
    assert geometry.xi_angular("SCARF", 0.1) == pytest.approx(-math.sin(0.3))
    assert geometry.xi_angular("PT_ECKART", 0.2) == pytest.approx(1j / math.tan(0.6))
    z = geometry.xi_angular("PT_RM", np.array([0.1, -0.2]))
    assert np.allclose(z, 1j * np.tan([0.3, -0.6]))
    with pytest.raises(DomainError):
        geometry.xi_angular("PT_ECKART", 0.0)
    with pytest.raises(ValueError):
        geometry.xi("SCARF", geometry.Config3(1, 0, -1), form=5)
