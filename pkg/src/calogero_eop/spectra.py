"""Closed-form eigenvalues and assembled analytic eigenfunctions.

The three-body wavefunction separates as psi = R(r)/sqrt(r) * Phi(phi) with

    E_{n,l} = sqrt(3/2) omega (2n + lambda_l + 1)

for every family; the families differ only in lambda_l and Phi.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import DomainError, ParameterError
from .families import (
    FAMILY_SPECS,
    PT_FAMILIES,
    FamilyId,
    REAL_FAMILIES,
    Couplings,
    SpectralParams,
    as_family,
    check_extension,
    lambda_squared,
    solve_params,
)
from .specialfuncs import EOPSpec, build_eop_with_denominator, eckart_ab, q_poly, y_poly

SQRT32 = math.sqrt(1.5)
SQRT38 = math.sqrt(3.0 / 8.0)
MAX_ELL_SCAN = 32


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    ell: int

    def __post_init__(self):
        if self.n < 0 or self.ell < 0:
            raise ParameterError("quantum numbers must be non-negative")


def lambda_ell(family, sp: SpectralParams, ell: int, variant: str = "verified") -> float:
    """lambda_l > 0.

    ``variant`` matters only for the PT families: 'verified' is the form
    confirmed by the residual oracle; 'printed' and (Eckart only) 'squared'
    reproduce the formulas as printed.
    """
    fam = as_family(family)
    if fam is FamilyId.PT_RM and variant == "squared":
        raise ParameterError("the 'squared' variant exists only for PT_ECKART")
    lam2 = lambda_squared(fam, sp, ell, variant)
    if not lam2 > 0:
        raise ParameterError(
            f"lambda_{ell}^2 = {lam2:.6g} <= 0: level outside the validity range"
            + (" (f1 < 4(l+a-1/2) violated)" if fam in PT_FAMILIES else ""))
    return math.sqrt(lam2)


def missing_levels(family, p: int):
    """Angular indices absent from the spectrum (EOP index gaps).

    For the PT families y_{l,p} vanishes identically at l = p (including
    p = 0, where y_{l,0} is proportional to P_{l-1}).  The real
    X_p families keep every l (the gap is in polynomial degree, not in l).
    """
    fam = as_family(family)
    if fam in PT_FAMILIES:
        return [p]
    return []


@functools.lru_cache(maxsize=256)
def _valid_ells_cached(fam, sp, p, lmax):
    out = []
    gaps = set(missing_levels(fam, p))
    for ell in range(lmax + 1):
        if ell in gaps:
            continue
        try:
            if lambda_squared(fam, sp, ell) > 0:
                out.append(ell)
        except ParameterError:
            continue
    return tuple(out)


def valid_ells(family, sp: SpectralParams, p: int, lmax: int = MAX_ELL_SCAN):
    """Angular levels in the validity range (lambda^2 > 0, gaps removed)."""
    return list(_valid_ells_cached(as_family(family), sp, int(p), int(lmax)))


def energy(c: Couplings, qn: QuantumNumbers, lambda_ell: float) -> float:
    if not lambda_ell > 0:
        raise ParameterError("lambda_ell > 0 required")
    return SQRT32 * c.omega * (2 * qn.n + lambda_ell + 1)


# -- radial --------------------------------------------------------------------

def _radial_pieces(lam, n, m):
    return build_eop_with_denominator(EOPSpec("xm_laguerre", int(n), int(m), (float(lam),)))


def radial_wavefunction(c: Couplings, lambda_ell: float, n: int, r, m=None):
    """Unnormalized R_{n,l}(m, r) = r^(lam+1/2) exp(-sqrt(3/2) w r^2/4) Q(t)/D(t),
    t = sqrt(3/8) w r^2, D = L_m^(lam-1)(-t) and Q the monic X_m polynomial."""
    m = c.m if m is None else int(m)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r > 0 required")
    if not lambda_ell > 0:
        raise ParameterError("lambda_ell > 0 required")
    Q, D = _radial_pieces(lambda_ell, n, m)
    t = SQRT38 * c.omega * r * r
    env = np.exp((lambda_ell + 0.5) * np.log(r) - 0.25 * SQRT32 * c.omega * r * r)
    return (env * Q(t) / D(t))[()]


# -- angular -------------------------------------------------------------------

def _real_angular_pieces(sp, ell, p):
    return build_eop_with_denominator(EOPSpec("xp_jacobi", int(ell), int(p), (sp.alpha, sp.beta)))


def angular_wavefunction(family, sp: SpectralParams, ell: int, p: int, phi, check_domain=True):
    """Unnormalized Phi_l(p, phi)."""
    fam = as_family(family)
    spec = FAMILY_SPECS[fam]
    if check_domain:
        spec.require_domain(phi)
    check_extension(fam, sp, p)
    z = spec.z(np.asarray(phi, dtype=float))
    if fam in REAL_FAMILIES:
        Q, D = _real_angular_pieces(sp, ell, p)
        w = (1 - z) ** ((sp.alpha + 0.5) / 2) * (1 + z) ** ((sp.beta + 0.5) / 2)
        return (w * Q(z) / D(z))[()]
    if ell in missing_levels(fam, p):
        raise ParameterError(f"{fam.value}: level l = {ell} is absent for p = {p} (y vanishes)")
    al, bl = eckart_ab(ell, sp.A_E, sp.B_E)
    pref = (1 - z) ** (al / 2) * (1 + z) ** (bl / 2)
    return (pref * y_poly(ell, p, sp.A_E, sp.B_E, z) / q_poly(p, sp.A_E, sp.B_E, z))[()]


# -- assembled eigenfunction ----------------------------------------------------

def radial_extent(c: Couplings, lambda_ell: float, n: int, decades=41.0):
    """r_max: the documented heuristic sqrt(4*41/Omega), extended when the
    envelope r^(lam+1/2+2n) exp(-Omega r^2/4) has not yet fallen by e^-41
    from its peak."""
    Om = SQRT32 * c.omega
    r_max = math.sqrt(4 * 41.0 / Om)
    k = lambda_ell + 0.5 + 2 * n
    peak_r = math.sqrt(2 * k / Om)
    logenv = lambda r: k * math.log(r) - 0.25 * Om * r * r
    top = logenv(peak_r)
    r = max(r_max, peak_r)
    while logenv(r) - top > -decades:
        r *= 1.02
    return max(r_max, r)


@dataclass(frozen=True)
class Eigenfunction:
    family: object
    couplings: Couplings
    qn: QuantumNumbers
    lam: float
    energy: float
    norm_r: float = 1.0
    norm_phi: float = 1.0

    @property
    def params(self):
        return solve_params(self.family, self.couplings)

    def radial(self, r):
        return self.norm_r * radial_wavefunction(self.couplings, self.lam, self.qn.n, r)

    def angular(self, phi, check_domain=True):
        return self.norm_phi * angular_wavefunction(self.family, self.params, self.qn.ell,
                                                    self.couplings.p, phi, check_domain)

    def __call__(self, cfg):
        return full_wavefunction(self, cfg)


def make_eigenfunction(family, c: Couplings, n: int, ell: int, normalize=True,
                       variant="verified") -> Eigenfunction:
    """Assemble psi_{n,l}; with ``normalize`` both factors are L^2-normalized
    by adaptive quadrature (modulus norm for the PT families)."""
    fam = as_family(family)
    sp = solve_params(fam, c)
    check_extension(fam, sp, c.p)
    if ell in missing_levels(fam, c.p):
        raise ParameterError(f"{fam.value}: level l = {ell} is absent for p = {c.p}")
    lam = lambda_ell(fam, sp, ell, variant)
    qn = QuantumNumbers(int(n), int(ell))
    ef = Eigenfunction(fam, c, qn, lam, energy(c, qn, lam))
    if not normalize:
        return ef
    from .numverify import quadrature  # numverify depends on this module
    r_hi = radial_extent(c, lam, n)
    nr = quadrature(lambda r: ef.radial(r) ** 2, (0.0, r_hi), reltol=1e-10)
    lo, hi = FAMILY_SPECS[fam].domain
    nphi = quadrature(lambda ph: abs(ef.angular(ph, check_domain=False)) ** 2, (lo, hi),
                      reltol=1e-10)
    return Eigenfunction(fam, c, qn, lam, ef.energy, 1.0 / math.sqrt(nr), 1.0 / math.sqrt(nphi))


def full_wavefunction(ef: Eigenfunction, cfg) -> complex:
    """psi(cfg) = (R(r)/sqrt(r)) Phi(phi); phi outside the sector is an error."""
    if not isinstance(cfg, geometry.Config3):
        cfg = geometry.Config3(*cfg)
    j = geometry.to_jacobi(cfg)
    spec = FAMILY_SPECS[as_family(ef.family)]
    if not spec.in_domain(j.phi):
        raise DomainError(f"phi = {j.phi:.6g} is not inside the {spec.family.value} sector")
    val = ef.radial(j.r) / math.sqrt(j.r) * ef.angular(j.phi)
    return complex(val) if np.iscomplexobj(val) else float(val)
