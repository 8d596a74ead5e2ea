"""The five potential families: parameter maps, three-body potentials and
their separated radial/angular forms.

Angular potentials are written in the family variable z (see
``FamilySpec.z``).  For the three real families z satisfies
(dz/dphi)^2 = delta (1 - z^2), z'' = -delta z, and every X_p rational term is

    delta * [-2pc - c (a + b + (a - b + 1) z) N/D + c^2 (1 - z^2) N^2 / (2 D^2)],

c = a - b - p + 1, N = P_{p-1}^(-a,b)(z), D = P_p^(-a-1,b-1)(z).  The two
PT-symmetric families share a single convention (A_E, B_E) with z = i cot 3phi
(Eckart) or z = i tan 3phi (Rosen-Morse); their X_p term is

    -18 (1 - z^2) [2 z q'/q - (1 - z^2)(q''/q - (q'/q)^2) - p],  q = q_p(z).
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .errors import DomainError, ParameterError
from .specialfuncs import jacobi, jacobi_denominator, laguerre, q_poly_rep

SQRT32 = math.sqrt(1.5)
SQRT38 = math.sqrt(3.0 / 8.0)


class FamilyId(str, enum.Enum):
    SCARF = "SCARF"
    PT2 = "PT2"
    PT = "PT"
    PT_RM = "PT_RM"
    PT_ECKART = "PT_ECKART"

    @property
    def is_complex(self):
        return self in (FamilyId.PT_RM, FamilyId.PT_ECKART)


REAL_FAMILIES = (FamilyId.SCARF, FamilyId.PT2, FamilyId.PT)
PT_FAMILIES = (FamilyId.PT_RM, FamilyId.PT_ECKART)


def as_family(family) -> FamilyId:
    if isinstance(family, FamilyId):
        return family
    try:
        return FamilyId(str(family).upper())
    except ValueError:
        raise ParameterError(
            f"unknown family {family!r}; expected one of {[f.value for f in FamilyId]}") from None


@dataclass(frozen=True)
class FamilySpec:
    family: FamilyId
    domain: tuple
    delta: float
    z_name: str
    xi_name: str
    description: str

    def z(self, phi):
        """Angular variable used by the Jacobi-type equation."""
        phi = np.asarray(phi, dtype=float)
        f = self.family
        if f is FamilyId.SCARF:
            out = np.sin(3.0 * phi)
        elif f is FamilyId.PT2:
            out = np.cos(6.0 * phi)
        elif f is FamilyId.PT:
            out = np.cos(3.0 * phi)
        elif f is FamilyId.PT_RM:
            out = 1j * np.tan(3.0 * phi)
        else:
            out = 1j / np.tan(3.0 * phi)
        out = np.asarray(out)
        return out[()] if out.ndim == 0 else out

    def in_domain(self, phi):
        lo, hi = self.domain
        phi = np.asarray(phi, dtype=float)
        return (phi > lo) & (phi < hi)

    def require_domain(self, phi):
        if not np.all(self.in_domain(phi)):
            lo, hi = self.domain
            raise DomainError(f"{self.family.value}: phi outside the open sector ({lo:.6g}, {hi:.6g})")


FAMILY_SPECS = {
    FamilyId.SCARF: FamilySpec(FamilyId.SCARF, (-math.pi / 6, math.pi / 6), 9.0,
                               "sin(3phi)", "-sin(3phi)", "RE trigonometric Scarf"),
    FamilyId.PT2: FamilySpec(FamilyId.PT2, (0.0, math.pi / 6), 36.0,
                             "cos(6phi)", "cos^2(3phi)", "RE trigonometric Poschl-Teller II"),
    FamilyId.PT: FamilySpec(FamilyId.PT, (0.0, math.pi / 3), 9.0,
                            "cos(3phi)", "-cos(3phi)", "RE trigonometric Poschl-Teller"),
    FamilyId.PT_RM: FamilySpec(FamilyId.PT_RM, (-math.pi / 6, math.pi / 6), -9.0,
                               "i tan(3phi)", "tan(3phi)", "RE PT-symmetric trigonometric Rosen-Morse"),
    FamilyId.PT_ECKART: FamilySpec(FamilyId.PT_ECKART, (0.0, math.pi / 3), 9.0,
                                   "i cot(3phi)", "cot(3phi)", "RE PT-symmetric trigonometric Eckart"),
}


def family_spec(family) -> FamilySpec:
    return FAMILY_SPECS[as_family(family)]


@dataclass(frozen=True)
class Couplings:
    omega: float = 1.0
    g: float = 4.0
    f1: float = 0.0
    m: int = 1
    p: int = 1

    def __post_init__(self):
        for name in ("omega", "g", "f1"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParameterError(f"{name} must be a finite real number")
        if not self.omega > 0:
            raise ParameterError("omega > 0 required")
        if not self.g > -0.5:
            raise ParameterError("g > -1/2 required")
        if int(self.m) != self.m or self.m < 0:
            raise ParameterError("m must be an integer >= 0")
        if int(self.p) != self.p or self.p < 0:
            raise ParameterError("p must be an integer >= 0")


@dataclass(frozen=True)
class SpectralParams:
    """Derived constants.  For the PT families ``A_E``/``B_E`` hold the shared
    Eckart-convention pair used by q_p, y and lambda; ``A``/``B`` are as
    printed for the family."""

    family: FamilyId
    g: float
    f1: float
    A: float = float("nan")
    B: float = float("nan")
    alpha: float = float("nan")
    beta: float = float("nan")
    zeta: float = float("nan")
    a: float = float("nan")
    delta: float = float("nan")
    k1: complex = 0.0
    k2: complex = 0.0
    k3: complex = 0.0
    k4: complex = 0.0
    A_E: float = float("nan")
    B_E: float = float("nan")
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def K(self):
        """Coefficient of the inverse-square wall term (= 9g/2 for every family)."""
        return 4.5 * self.g


def solve_params(family, c: Couplings) -> SpectralParams:
    """Map (g, f1) to the family's spectral parameters."""
    fam = as_family(family)
    g, f1 = float(c.g), float(c.f1)
    if not g > -0.5:
        raise ParameterError("g > -1/2 required")
    if fam is FamilyId.SCARF:
        if not abs(f1) < g + 0.5:
            raise ParameterError("f1 < g+1/2 required (|f1| < g + 1/2 for real zeta)")
        zeta = math.sqrt((1 + 2 * g) ** 2 - 4 * f1 * f1)
        S = math.sqrt(2 * (1 + 2 * g + zeta))
        A = (24 + 12 * S) / 16
        B = 3 * f1 / S
        alpha = A / 3 - B / 3 - 0.5
        beta = A / 3 + B / 3 - 0.5
        k2 = 2 * A - 3
        k3 = 2 * B
        return SpectralParams(fam, g, f1, A=A, B=B, alpha=alpha, beta=beta, zeta=zeta,
                              delta=9.0, k1=2 * k2, k2=k2, k3=k3, k4=2 * (k2 * k2 - k3 * k3))
    if fam is FamilyId.PT2:
        if not f1 > -0.5:
            raise ParameterError("f1 > -1/2 required (alpha = sqrt(1+2 f1)/2 real)")
        alpha = 0.5 * math.sqrt(1 + 2 * f1)
        beta = 0.5 * math.sqrt(1 + 2 * g)
        return SpectralParams(fam, g, f1, alpha=alpha, beta=beta, delta=36.0,
                              k1=2 * (beta + alpha), k2=2 * beta, k3=-2 * (beta - alpha),
                              k4=2 * ((beta + alpha) ** 2 - (beta - alpha) ** 2))
    if fam is FamilyId.PT:
        if not f1 < g + 0.5:
            raise ParameterError("f1 < g+1/2 required")
        if not f1 > -(g + 0.5):
            raise ParameterError("f1 > -(g+1/2) required")
        # alpha pairs with (1 - z), z = cos 3phi: the printed alpha/beta are swapped
        alpha = math.sqrt(0.5 * (g - f1 + 0.5))
        beta = math.sqrt(0.5 * (g + f1 + 0.5))
        return SpectralParams(fam, g, f1, alpha=alpha, beta=beta, delta=9.0,
                              k1=2 * (beta + alpha), k2=beta + alpha, k3=beta - alpha,
                              k4=2 * ((beta + alpha) ** 2 - (beta - alpha) ** 2))
    B = 9.0 * f1 / 4.0
    root = math.sqrt(1 + 2 * g)
    if fam is FamilyId.PT_RM:
        A = 1.5 * (root - 1)
        K = A * (A + 3)
        if K == 0:
            raise ParameterError("g != 0 required (A(A+3) = 0)")
        L = K * K - B * B
        return SpectralParams(fam, g, f1, A=A, B=B, a=0.5 * root, delta=-9.0,
                              k1=4 * B * L / K ** 2, k2=B, k3=1j * K, k4=2 * L ** 2 / K ** 2,
                              A_E=A + 3, B_E=-B)
    a = 0.5 * root
    A = 1.5 + 3 * a
    K = A * (A - 3)
    if K == 0:
        raise ParameterError("g != 0 required (A(A-3) = 0)")
    L = K * K - B * B
    return SpectralParams(fam, g, f1, A=A, B=B, a=a, delta=9.0,
                          k1=-4j * B * L / K ** 2, k2=1j * B, k3=K, k4=2 * L ** 2 / K ** 2,
                          A_E=A, B_E=B)


def coupling_roundtrip(family, sp: SpectralParams):
    """Relative residuals of the defining relations between (g, f1) and the
    solved constants (for SCARF: A(A-3)+B^2 = 9g/2 and B(2A-3) = 9f1/2)."""
    fam = as_family(family)
    g, f1 = sp.g, sp.f1
    if fam is FamilyId.SCARF:
        pairs = {"A(A-3)+B^2=9g/2": (sp.A * (sp.A - 3) + sp.B ** 2, 4.5 * g),
                 "B(2A-3)=9f1/2": (sp.B * (2 * sp.A - 3), 4.5 * f1)}
    elif fam is FamilyId.PT2:
        pairs = {"4alpha^2-1=2f1": (4 * sp.alpha ** 2 - 1, 2 * f1),
                 "4beta^2-1=2g": (4 * sp.beta ** 2 - 1, 2 * g)}
    elif fam is FamilyId.PT:
        pairs = {"alpha^2+beta^2-1/2=g": (sp.alpha ** 2 + sp.beta ** 2 - 0.5, g),
                 "beta^2-alpha^2=f1": (sp.beta ** 2 - sp.alpha ** 2, f1)}
    elif fam is FamilyId.PT_RM:
        pairs = {"A(A+3)=9g/2": (sp.A * (sp.A + 3), 4.5 * g), "B=9f1/4": (sp.B, 2.25 * f1)}
    else:
        pairs = {"A(A-3)=9g/2": (sp.A * (sp.A - 3), 4.5 * g), "B=9f1/4": (sp.B, 2.25 * f1)}
    return {k: abs(a - b) / max(1.0, abs(b)) for k, (a, b) in pairs.items()}


# -- validity of the extension denominators ---------------------------------

@functools.lru_cache(maxsize=256)
def _real_denominator_ok(alpha, beta, p):
    D = [float(v) for v in jacobi_denominator(p, alpha, beta)]
    while len(D) > 1 and abs(D[-1]) < 1e-14 * max(abs(v) for v in D):
        D.pop()
    if len(D) == 1:
        return D[0] != 0.0
    roots = np.roots(D[::-1])
    real = roots[np.abs(roots.imag) < 1e-9 * np.maximum(1.0, np.abs(roots))].real
    return not np.any((real >= -1 - 1e-12) & (real <= 1 + 1e-12))


@functools.lru_cache(maxsize=256)
def _pt_denominator_ok(A_E, B_E, p):
    if p == 0:
        return True
    q = q_poly_rep(p, A_E, B_E)
    if q.degree == 0:
        return True
    roots = q.roots()
    # z = i cot / i tan sweeps the whole imaginary axis
    return not np.any(np.abs(roots.real) < 1e-10 * np.maximum(1.0, np.abs(roots)))


def check_extension(family, sp: SpectralParams, p: int):
    """Raise ParameterError if the X_p denominator vanishes on the domain."""
    fam = as_family(family)
    if p == 0:
        return
    if fam in REAL_FAMILIES:
        if not _real_denominator_ok(sp.alpha, sp.beta, int(p)):
            raise ParameterError(
                f"{fam.value}: P_{p}^(-alpha-1,beta-1) has a zero in [-1, 1]; "
                f"the X_{p} potential is singular for these couplings")
    else:
        if A_E_s(sp, p) == 0:
            raise ParameterError(f"A/3 - 1 + {p} vanishes")
        if not _pt_denominator_ok(sp.A_E, sp.B_E, int(p)):
            raise ParameterError(
                f"{fam.value}: q_{p} has a zero on the imaginary axis (f1 = 0 makes "
                f"the rational term singular); choose f1 != 0")


def A_E_s(sp, n):
    return sp.A_E / 3.0 - 1.0 + n


# -- lambda_ell ---------------------------------------------------------------

LAMBDA_VARIANTS = ("verified", "printed", "squared")


def lambda_squared(family, sp: SpectralParams, ell: int, variant: str = "verified"):
    """lambda_ell^2 for the family.

    For PT_ECKART and PT_RM the ``variant`` selects between the verified
    closed form and the forms as printed (see spectra.lambda_ell).
    """
    fam = as_family(family)
    ell = int(ell)
    if ell < 0:
        raise ParameterError("ell >= 0 required")
    if fam is FamilyId.SCARF:
        return (sp.A + 3 * ell) ** 2
    if fam is FamilyId.PT2:
        return 9 * (sp.alpha + sp.beta + 1 + 2 * ell) ** 2
    if fam is FamilyId.PT:
        return 9 * ((sp.alpha + sp.beta + 1) / 2 + ell) ** 2
    if variant not in LAMBDA_VARIANTS:
        raise ParameterError(f"unknown lambda variant {variant!r}")
    if fam is FamilyId.PT_RM and variant == "printed":
        s = sp.A + 3 - 3 * ell
        if s == 0:
            raise ParameterError(f"A + 3 - 3*{ell} vanishes")
        return s * s + sp.B ** 2 / (s * s)
    if fam is FamilyId.PT_ECKART and variant in ("printed", "squared"):
        u = ell + sp.a - 0.5
        if u == 0:
            raise ParameterError(f"ell + a - 1/2 vanishes for ell = {ell}")
        first = 9 * u if variant == "printed" else 9 * u * u
        return first - 9 * sp.f1 ** 2 / (16 * u * u)
    s = 3 * A_E_s(sp, ell)
    if s == 0:
        raise ParameterError(f"A/3 - 1 + {ell} vanishes")
    return s * s + sp.B_E ** 2 / (s * s)


# -- radial potential ----------------------------------------------------------

def radial_rational(c: Couplings, lam, r, m=None, form="auto"):
    """V_rat^(1)(m, r).  m = 1 uses the closed form with a, b, c1, c2;
    ``form='general'`` forces the X_m expression for every m."""
    m = c.m if m is None else int(m)
    r = np.asarray(r, dtype=float)
    w = c.omega
    if m == 0:
        return np.zeros_like(r)[()]
    if m == 1 and form != "general":
        a = 2 * w * w
        b3 = SQRT32 * w
        c2 = 2 * lam
        c1 = -4 * SQRT32 * w * c2
        return ((3 * a * r * r + c1) / (b3 * r * r + c2) ** 2)[()]
    t = SQRT38 * w * r * r
    D = laguerre(m, lam - 1, -t)
    L1 = laguerre(m - 1, lam, -t) / D
    L2 = laguerre(m - 2, lam + 1, -t) / D
    out = (-2 * m * SQRT32 * w - 1.5 * w * w * r * r * L2
           + SQRT32 * w * (SQRT32 * w * r * r + 2 * lam - 2) * L1
           + 3 * w * w * r * r * L1 ** 2)
    return out[()]


def radial_potential(c: Couplings, lambda_ell, r, m=None):
    """V(r) = (3/8) w^2 r^2 + (lambda^2 - 1/4)/r^2 + V_rat^(1)(m, r)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r > 0 required")
    if not lambda_ell > 0:
        raise ParameterError("lambda_ell > 0 required")
    v = 0.375 * c.omega ** 2 * r * r + (lambda_ell ** 2 - 0.25) / (r * r)
    return (v + radial_rational(c, lambda_ell, r, m))[()]


# -- angular potential -----------------------------------------------------------

def angular_conventional(family, sp: SpectralParams, phi):
    """V_Con(phi) as printed, in terms of g and f1."""
    fam = as_family(family)
    phi = np.asarray(phi, dtype=float)
    g, f1 = sp.g, sp.f1
    s, c = np.sin(3 * phi), np.cos(3 * phi)
    if fam is FamilyId.SCARF:
        out = 4.5 * g / c ** 2 - 4.5 * f1 * s / c ** 2
    elif fam is FamilyId.PT2:
        out = 4.5 * g / c ** 2 + 4.5 * f1 / s ** 2
    elif fam is FamilyId.PT:
        out = 4.5 * g / s ** 2 - 4.5 * f1 * c / s ** 2
    elif fam is FamilyId.PT_RM:
        out = sp.A * (sp.A + 3) / c ** 2 - 2j * sp.B * s / c
    else:
        out = 4.5 * g / s ** 2 + 4.5j * f1 * c / s
    return out[()]


def _real_rational_z(sp, p, z):
    a, b = sp.alpha, sp.beta
    cc = a - b - p + 1
    N = jacobi(p - 1, -a, b, z)
    D = jacobi(p, -a - 1, b - 1, z)
    Q = N / D
    return -2 * p * cc - cc * (a + b + (a - b + 1) * z) * Q + cc * cc * (1 - z * z) / 2 * Q * Q


def _q_log_derivs(sp, p, z):
    q = q_poly_rep(p, sp.A_E, sp.B_E)
    qv = q(z)
    return q.deriv(1)(z) / qv, q.deriv(2)(z) / qv


def _pt_rational_z(sp, p, z):
    d1, d2 = _q_log_derivs(sp, p, z)
    chi = 1 - z * z
    return -18 * chi * (2 * z * d1 - chi * (d2 - d1 * d1) - p)


def _k_form(sp, xi):
    """delta [k1/(k2 + k3 xi) -+ k4/(k2 + k3 xi)^2] (X_1 display form, phi part)."""
    den = sp.k2 + sp.k3 * xi
    sign = 1.0 if sp.family in PT_FAMILIES else -1.0
    return sp.delta * (sp.k1 / den + sign * sp.k4 / den ** 2)


def x1_display_offset(sp: SpectralParams):
    """Constant by which the PT X_1 display potential lies below the
    general-p term at p = 1: 18 (1 - B^2/K^2)."""
    K = sp.A_E * (sp.A_E - 3)
    return 18.0 * (1.0 - sp.B ** 2 / K ** 2)


def angular_rational(family, sp: SpectralParams, p, phi, x1_display=False):
    fam = as_family(family)
    spec = FAMILY_SPECS[fam]
    phi = np.asarray(phi, dtype=float)
    if p == 0:
        return np.zeros_like(phi, dtype=complex if fam.is_complex else float)[()]
    if x1_display:
        if p != 1:
            raise ParameterError("the X_1 display form exists only for p = 1")
        return np.asarray(_k_form(sp, xi_of_phi(fam, phi)))[()]
    z = spec.z(phi)
    if fam in REAL_FAMILIES:
        return (spec.delta * _real_rational_z(sp, p, z))[()]
    return _pt_rational_z(sp, p, z)[()]


def xi_of_phi(fam, phi):
    """Configuration-space xi expressed through phi."""
    if fam is FamilyId.SCARF:
        return -np.sin(3 * phi)
    if fam is FamilyId.PT2:
        return np.cos(3 * phi) ** 2
    if fam is FamilyId.PT:
        return -np.cos(3 * phi)
    if fam is FamilyId.PT_RM:
        return np.tan(3 * phi)
    return 1.0 / np.tan(3 * phi)


def angular_potential(family, sp: SpectralParams, p, phi, check_domain=True, x1_display=False):
    """V(phi) = V_Con(phi) + V_rat^(2)(p, phi)."""
    fam = as_family(family)
    if check_domain:
        FAMILY_SPECS[fam].require_domain(phi)
    check_extension(fam, sp, p)
    out = angular_conventional(fam, sp, phi)
    return (out + angular_rational(fam, sp, p, phi, x1_display))[()]


# -- three-body potential -----------------------------------------------------

def threebody_potential(family, c: Couplings, cfg, ell=0, lambda_variant="verified",
                        x1_display=False):
    """Full three-body V at a configuration.

    V_rat^(1) depends on lambda_ell, so the potential is specific to the
    angular level ``ell`` whose radial problem it extends.
    """
    fam = as_family(family)
    sp = solve_params(fam, c)
    check_extension(fam, sp, c.p)
    if not isinstance(cfg, geometry.Config3):
        cfg = geometry.Config3(*cfg)
    cfg.require_distinct()
    j = geometry.to_jacobi(cfg)
    r = j.r
    d = geometry.config_pair_differences(cfg)
    S = geometry.wolfes_combinations(cfg)
    if any(v == 0.0 for v in S) and fam in (FamilyId.SCARF, FamilyId.PT2, FamilyId.PT_RM, FamilyId.PT):
        raise geometry.SingularConfigurationError("a Wolfes combination vanishes")
    g, f1, w = c.g, c.f1, c.omega
    v_h = w * w / 8.0 * sum(x * x for x in d)
    inv_d2 = sum(1.0 / (x * x) for x in d)
    if fam is FamilyId.SCARF:
        v = 3 * g * sum(1.0 / (s * s) for s in S)
        v += 3 * f1 / (math.sqrt(2) * r) * sum(x / (s * s) for x, s in zip(d, S))
    elif fam is FamilyId.PT2:
        v = 3 * g * sum(1.0 / (s * s) for s in S) + f1 * inv_d2
    elif fam is FamilyId.PT:
        v = g * inv_d2 - f1 / (math.sqrt(6) * r) * sum(s / (x * x) for x, s in zip(d, S))
    elif fam is FamilyId.PT_RM:
        v = 3 * g * sum(1.0 / (s * s) for s in S)
        v += -3 * math.sqrt(3) / (2 * r * r) * 1j * f1 * sum(x / s for x, s in zip(d, S))
    else:
        v = g * inv_d2 + math.sqrt(3) / (2 * r * r) * 1j * f1 * sum(s / x for x, s in zip(d, S))
    lam = math.sqrt(lambda_squared(fam, sp, ell, lambda_variant))
    v_rat1 = float(radial_rational(c, lam, r))
    xi = geometry.xi(fam.value, cfg)
    v_rat2 = _threebody_rational2(fam, sp, c.p, xi, r, inv_d2, x1_display)
    return v_h + v + v_rat1 + v_rat2


def _threebody_rational2(fam, sp, p, xi, r, inv_d2, x1_display):
    if p == 0:
        return 0.0
    if x1_display:
        if p != 1:
            raise ParameterError("the X_1 display form exists only for p = 1")
        return complex(_k_form(sp, xi)) / (r * r) if fam.is_complex else float(_k_form(sp, xi)) / (r * r)
    if fam is FamilyId.SCARF or fam is FamilyId.PT:
        z = -xi
    elif fam is FamilyId.PT2:
        z = 2 * xi - 1
    else:
        z = 1j * xi
    if fam in REAL_FAMILIES:
        return float(sp.delta * _real_rational_z(sp, p, z)) / (r * r)
    d1, d2 = _q_log_derivs(sp, p, z)
    if fam is FamilyId.PT_ECKART:
        return complex(-4 * inv_d2 * (2j * xi * d1 - (2 * r * r / 9) * inv_d2 * (d2 - d1 * d1) - p))
    return complex(-18 / (r * r) * (1 + xi * xi) * (2j * xi * d1 - (1 + xi * xi) * (d2 - d1 * d1) - p))


def separability_check(family, c: Couplings, cfg, ell=0, x1_display=False):
    """Relative residual |V3 - (3/8)w^2 r^2 - V_rat1(r) - V(phi)/r^2| / scale.

    The angular part is evaluated without a sector check: separation is an
    algebraic identity valid wherever every term is finite.
    """
    fam = as_family(family)
    if not isinstance(cfg, geometry.Config3):
        cfg = geometry.Config3(*cfg)
    v3 = threebody_potential(fam, c, cfg, ell=ell, x1_display=x1_display)
    sp = solve_params(fam, c)
    j = geometry.to_jacobi(cfg)
    r = j.r
    lam = math.sqrt(lambda_squared(fam, sp, ell))
    parts = [0.375 * c.omega ** 2 * r * r,
             float(radial_rational(c, lam, r)),
             complex(angular_potential(fam, sp, c.p, j.phi, check_domain=False,
                                       x1_display=x1_display)) / (r * r)]
    scale = max(sum(abs(x) for x in parts), abs(v3), 1e-300)
    return abs(v3 - sum(parts)) / scale


def pt_reflect(family, phi):
    """Parity used for the PT check: reflection about the sector centre."""
    fam = as_family(family)
    lo, hi = FAMILY_SPECS[fam].domain
    return (lo + hi) - np.asarray(phi, dtype=float)


def random_sector_configs(family, rng, n, r_range=(0.5, 3.0), margin=1e-3):
    """Random nondegenerate configurations whose angle lies inside the sector."""
    fam = as_family(family)
    lo, hi = FAMILY_SPECS[fam].domain
    out = []
    while len(out) < n:
        phi = rng.uniform(lo + margin, hi - margin)
        r = rng.uniform(*r_range)
        R = rng.uniform(-2.0, 2.0)
        cfg = geometry.from_jacobi(geometry.JacobiCoords(R=R, r=r, phi=phi))
        S = geometry.wolfes_combinations(cfg)
        d = geometry.config_pair_differences(cfg)
        if min(abs(v) for v in S + d) < 1e-6:
            continue
        out.append(cfg)
    return out


__all__ = [
    "FamilyId", "FamilySpec", "FAMILY_SPECS", "Couplings", "SpectralParams",
    "solve_params", "lambda_squared", "radial_potential", "radial_rational",
    "angular_potential", "angular_conventional", "angular_rational",
    "threebody_potential", "separability_check", "check_extension",
    "x1_display_offset", "family_spec", "as_family", "pt_reflect",
    "random_sector_configs", "coupling_roundtrip", "xi_of_phi", "REAL_FAMILIES", "PT_FAMILIES",
]
