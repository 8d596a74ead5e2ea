"""Jacobi/polar coordinates for three particles on a line.

The relative motion of three particles is described by

    x = (x1 - x2)/sqrt(2),   y = (x1 + x2 - 2 x3)/sqrt(6),
    x = r sin(phi),          y = r cos(phi),

so that every pair difference and every "Wolfes" combination
x_i + x_j - 2 x_k becomes a trigonometric function of phi scaled by r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfigurationError, DomainError, SingularConfigurationError

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)
TWO_PI_3 = 2.0 * math.pi / 3.0

# distance (radians) kept from any pole when sweeping identities
POLE_EXCLUSION = 1e-6


@dataclass(frozen=True)
class Config3:
    x1: float
    x2: float
    x3: float

    def as_tuple(self):
        return (self.x1, self.x2, self.x3)

    def require_distinct(self):
        if self.x1 == self.x2 or self.x2 == self.x3 or self.x3 == self.x1:
            raise SingularConfigurationError(
                f"coincident particles in {self.as_tuple()}")


@dataclass(frozen=True)
class JacobiCoords:
    R: float
    r: float
    phi: float

    @property
    def x(self):
        return self.r * math.sin(self.phi)

    @property
    def y(self):
        return self.r * math.cos(self.phi)


def to_jacobi(c: Config3) -> JacobiCoords:
    """Centre of mass, radius and angle of a configuration.

    phi = atan2(x, y) lies in (-pi, pi]; whether it belongs to a family's
    sector is checked by the caller.
    """
    x1, x2, x3 = c.as_tuple()
    x = (x1 - x2) / SQRT2
    y = (x1 + x2 - 2.0 * x3) / SQRT6
    r = math.hypot(x, y)
    if r == 0.0:
        raise DegenerateConfigurationError(f"all particles coincide at {x1!r}")
    phi = math.atan2(x, y)
    if phi == -math.pi:
        phi = math.pi
    return JacobiCoords(R=(x1 + x2 + x3) / 3.0, r=r, phi=phi)


def from_jacobi(j: JacobiCoords) -> Config3:
    """Inverse of :func:`to_jacobi`."""
    x, y = j.x, j.y
    # x1 - x2 = sqrt2 x ; x1 + x2 - 2 x3 = sqrt6 y ; x1 + x2 + x3 = 3 R
    x3 = j.R - SQRT6 * y / 3.0
    s12 = 3.0 * j.R - x3
    d12 = SQRT2 * x
    return Config3(0.5 * (s12 + d12), 0.5 * (s12 - d12), x3)


def pair_differences(j: JacobiCoords):
    """(x1-x2, x2-x3, x3-x1) from (r, phi)."""
    k = SQRT2 * j.r
    return (k * math.sin(j.phi),
            k * math.sin(j.phi + TWO_PI_3),
            k * math.sin(j.phi + 2.0 * TWO_PI_3))


def config_pair_differences(c: Config3):
    x1, x2, x3 = c.as_tuple()
    return (x1 - x2, x2 - x3, x3 - x1)


def wolfes_combinations(c: Config3):
    """(x1+x2-2x3, x2+x3-2x1, x3+x1-2x2), the cyclic partners of d12, d23, d31.

    In polar form these are sqrt(6) r cos(phi + 2 pi k/3), k = 0, 1, 2.
    """
    x1, x2, x3 = c.as_tuple()
    return (x1 + x2 - 2.0 * x3, x2 + x3 - 2.0 * x1, x3 + x1 - 2.0 * x2)


def _nonzero(values, what):
    for v in values:
        if v == 0.0:
            raise SingularConfigurationError(f"{what} vanishes")


# -- configuration-space xi -------------------------------------------------

def xi_scarf_product(c: Config3) -> float:
    """xi = 4/(2 sqrt2 r^3) (x1-x2)(x2-x3)(x3-x1)."""
    j = to_jacobi(c)
    d12, d23, d31 = config_pair_differences(c)
    return 4.0 / (2.0 * SQRT2 * j.r ** 3) * d12 * d23 * d31


def xi_scarf_reciprocal(c: Config3) -> float:
    """xi = -3/(sqrt2 r) (sum 1/(x_i - x_j))^-1, cyclic pairs."""
    j = to_jacobi(c)
    d = config_pair_differences(c)
    _nonzero(d, "pair difference")
    s = sum(1.0 / v for v in d)
    if s == 0.0:
        raise SingularConfigurationError("sum of inverse pair differences vanishes")
    return -3.0 / (SQRT2 * j.r) / s


def xi_pt2_reciprocal(c: Config3) -> float:
    """xi = 9/(6 r^2) [sum 1/(x_i+x_j-2x_k)]^-2  (equals cos^2 3phi)."""
    j = to_jacobi(c)
    s = wolfes_combinations(c)
    _nonzero(s, "Wolfes combination")
    t = sum(1.0 / v for v in s)
    if t == 0.0:
        raise SingularConfigurationError("sum of inverse Wolfes combinations vanishes")
    return 9.0 / (6.0 * j.r ** 2) / t ** 2


def xi_pt2_product(c: Config3) -> float:
    """xi = (4/(6 sqrt6))^2 r^-6 [prod (x_i+x_j-2x_k)]^2."""
    j = to_jacobi(c)
    s1, s2, s3 = wolfes_combinations(c)
    return (4.0 / (6.0 * SQRT6)) ** 2 / j.r ** 6 * (s1 * s2 * s3) ** 2


def xi_pt_reciprocal(c: Config3) -> float:
    """xi = (3/sqrt6) r^-1 [sum 1/(x_i+x_j-2x_k)]^-1  (equals -cos 3phi)."""
    j = to_jacobi(c)
    s = wolfes_combinations(c)
    _nonzero(s, "Wolfes combination")
    t = sum(1.0 / v for v in s)
    if t == 0.0:
        raise SingularConfigurationError("sum of inverse Wolfes combinations vanishes")
    return 3.0 / SQRT6 / j.r / t


def xi_pt_product(c: Config3) -> float:
    """xi = -4/(6 sqrt6 r^3) prod (x_i+x_j-2x_k)."""
    j = to_jacobi(c)
    s1, s2, s3 = wolfes_combinations(c)
    return -4.0 / (6.0 * SQRT6 * j.r ** 3) * s1 * s2 * s3


def xi_rosen_morse(c: Config3) -> float:
    """xi = (1/sqrt3) sum (x1-x2)/(x1+x2-2x3) + c.p.  (equals tan 3phi)."""
    d = config_pair_differences(c)
    s = wolfes_combinations(c)
    _nonzero(s, "Wolfes combination")
    return sum(a / b for a, b in zip(d, s)) / SQRT3


def xi_eckart(c: Config3) -> float:
    """xi = 1/(3 sqrt3) sum (x1+x2-2x3)/(x1-x2) + c.p.  (equals cot 3phi)."""
    d = config_pair_differences(c)
    s = wolfes_combinations(c)
    _nonzero(d, "pair difference")
    return sum(b / a for a, b in zip(d, s)) / (3.0 * SQRT3)


_XI_FORMS = {
    "SCARF": (xi_scarf_product, xi_scarf_reciprocal),
    "PT2": (xi_pt2_reciprocal, xi_pt2_product),
    "PT": (xi_pt_reciprocal, xi_pt_product),
    "PT_RM": (xi_rosen_morse,),
    "PT_ECKART": (xi_eckart,),
}


def _family_key(family) -> str:
    return getattr(family, "name", family)


def xi(family, c: Config3, form: int = 0) -> float:
    """Configuration-space xi of a family; ``form`` picks the alternative
    expression where two are given (SCARF, PT2, PT)."""
    forms = _XI_FORMS[_family_key(family)]
    if not 0 <= form < len(forms):
        raise ValueError(f"{_family_key(family)} has {len(forms)} xi form(s)")
    return forms[form](c)


def xi_forms(family):
    return len(_XI_FORMS[_family_key(family)])


# -- angular variable --------------------------------------------------------

def xi_angular(family, phi):
    """The family's angular variable as a function of phi.

    SCARF returns xi = -sin 3phi; PT2 z = cos 6phi; PT z = cos 3phi;
    PT_RM z = i tan 3phi; PT_ECKART z = i cot 3phi.  Accepts scalars or arrays.
    """
    key = _family_key(family)
    phi = np.asarray(phi, dtype=float)
    if key == "SCARF":
        out = -np.sin(3.0 * phi)
    elif key == "PT2":
        out = np.cos(6.0 * phi)
    elif key == "PT":
        out = np.cos(3.0 * phi)
    elif key == "PT_RM":
        c = np.cos(3.0 * phi)
        if np.any(np.abs(c) < 1e-300):
            raise DomainError("tan(3 phi) pole")
        out = 1j * np.tan(3.0 * phi)
    elif key == "PT_ECKART":
        s = np.sin(3.0 * phi)
        if np.any(np.abs(s) < 1e-15):
            raise DomainError("cot(3 phi) pole")
        out = 1j * np.cos(3.0 * phi) / s
    else:
        raise ValueError(f"unknown family {family!r}")
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


# -- trigonometric identities -------------------------------------------------

IDENTITY_NAMES = (
    "prod_sin",
    "sum_cosec",
    "sum_sec2",
    "sum_sec_tan",
    "sum_cosec2",
    "sum_cot",
)


def pole_distance(phi):
    """Distance from phi to the nearest pole of any of the six identities.

    All poles sit on the lattice phi = k pi/6.
    """
    phi = np.asarray(phi, dtype=float)
    step = math.pi / 6.0
    return np.abs(phi - step * np.round(phi / step))


def _split_constant(value, bits=36):
    """Cody-Waite split of a positive constant into three doubles whose
    leading parts carry few enough bits that k * part is exact for small k."""
    import mpmath
    with mpmath.workdps(60):
        v = mpmath.mpf(value) if not callable(value) else value()
        parts = []
        for _ in range(2):
            e = mpmath.floor(mpmath.log(v, 2))
            q = mpmath.mpf(2) ** (e - bits + 1)
            head = mpmath.floor(v / q) * q
            parts.append(float(head))
            v = v - head
        parts.append(float(v))
    return tuple(parts)


_PI6 = _split_constant(lambda: __import__("mpmath").pi / 6)
_SIN_PI6 = np.array([math.sin(k * math.pi / 6) if k % 6 else 0.0 for k in range(12)])
_SIN_PI6[[3, 9]] = [1.0, -1.0]
_COS_PI6 = np.roll(_SIN_PI6, -3)


def _lattice_reduce(phi):
    """phi = k pi/6 + delta with |delta| <= pi/12, delta to full relative accuracy."""
    k = np.round(phi / (math.pi / 6.0))
    delta = ((phi - k * _PI6[0]) - k * _PI6[1]) - k * _PI6[2]
    return k.astype(np.int64), delta


def _lattice_sincos(n, delta):
    """sin and cos of n pi/6 + delta from exact lattice values."""
    n = np.mod(n, 12)
    sd, cd = np.sin(delta), np.cos(delta)
    return _SIN_PI6[n] * cd + _COS_PI6[n] * sd, _COS_PI6[n] * cd - _SIN_PI6[n] * sd


def check_identities(phi):
    """Absolute residuals |LHS - RHS| of the six three-angle identities.

    Angles are reduced against the pole lattice k pi/6 before the shifted
    sines and cosines are formed, so terms near a pole keep full relative
    accuracy.  Returns a dict name -> residual (array if phi is an array).
    """
    phi = np.asarray(phi, dtype=float)
    if np.any(pole_distance(phi) < POLE_EXCLUSION):
        raise DomainError("phi within the pole exclusion radius")
    k, delta = _lattice_reduce(phi)
    s, c = _lattice_sincos(k[..., None] + 4 * np.arange(3), delta[..., None])
    s3, c3 = _lattice_sincos(3 * k, 3.0 * delta)
    res = {
        "prod_sin": np.prod(s, axis=-1) + 0.25 * s3,
        "sum_cosec": np.sum(1.0 / s, axis=-1) - 3.0 / s3,
        "sum_sec2": np.sum(1.0 / c ** 2, axis=-1) - 9.0 / c3 ** 2,
        "sum_sec_tan": np.sum(s / c ** 2, axis=-1) + 9.0 * s3 / c3 ** 2,
        "sum_cosec2": np.sum(1.0 / s ** 2, axis=-1) - 9.0 / s3 ** 2,
        "sum_cot": np.sum(c / s, axis=-1) - 3.0 * c3 / s3,
    }
    out = {}
    for name, v in res.items():
        v = np.abs(v)
        out[name] = float(v) if v.ndim == 0 else v
    return out


def identity_scale(phi):
    """Magnitude of the right-hand sides, used to express residuals relative
    to the size of the terms being compared."""
    phi = np.asarray(phi, dtype=float)
    s3, c3 = np.abs(np.sin(3.0 * phi)), np.abs(np.cos(3.0 * phi))
    return {
        "prod_sin": np.maximum(0.25 * s3, 1.0),
        "sum_cosec": np.maximum(3.0 / s3, 1.0),
        "sum_sec2": np.maximum(9.0 / c3 ** 2, 1.0),
        "sum_sec_tan": np.maximum(9.0 * s3 / c3 ** 2, 1.0),
        "sum_cosec2": np.maximum(9.0 / s3 ** 2, 1.0),
        "sum_cot": np.maximum(3.0 * c3 / s3, 1.0),
    }


def random_pole_avoiding_angles(rng, n, lo=-math.pi, hi=math.pi):
    """Uniform angles with every sample at least POLE_EXCLUSION from a pole."""
    out = np.empty(0)
    while out.size < n:
        draw = rng.uniform(lo, hi, size=2 * n)
        draw = draw[pole_distance(draw) >= POLE_EXCLUSION]
        out = np.concatenate([out, draw])
    return out[:n]
