"""Classical and exceptional orthogonal polynomials.

Classical Laguerre/Jacobi values come from three-term recurrences and accept
complex arguments and parameters.  Exceptional X_m Laguerre and X_p Jacobi
polynomials are not written down in closed form; they are built by
substituting the wavefunction ansatz

    prefactor * Q(x) / D(x)

into the exact Schroedinger equation with the closed-form energy, clearing
denominators, and solving the resulting homogeneous linear system for the
coefficients of Q in high precision.  A one-dimensional nullspace is both the
construction and the proof that the claimed level exists.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import ConstructionError, ParameterError

# working precision (decimal digits) for nullspace solves
EOP_DPS = 50


# -- classical polynomials: evaluation --------------------------------------

def laguerre(n, alpha, x):
    """Generalized Laguerre L_n^(alpha)(x) by the three-term recurrence.

    ``L_{-1} = 0`` so that index underflow (m - 2 < 0) is well defined.
    """
    n = int(n)
    x = np.asarray(x)
    if n < 0:
        return np.zeros_like(x, dtype=np.result_type(x, alpha, float))[()]
    prev = np.zeros_like(x, dtype=np.result_type(x, alpha, float))
    cur = np.ones_like(prev)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur[()]


def _jacobi_explicit_coeffs(n, a, b, dps=None):
    """Coefficients of P_n^(a,b) in powers of w = (z - 1)/2.

    P_n = sum_k (a+k+1)_{n-k} (n+a+b+1)_k / (k! (n-k)!) w^k, which is a
    polynomial in a and b and therefore defined for every parameter pair.
    """
    rf = mpmath.rf
    with mpmath.workdps(dps or mpmath.mp.dps):
        return [rf(a + k + 1, n - k) * rf(n + a + b + 1, k)
                / (mpmath.factorial(k) * mpmath.factorial(n - k))
                for k in range(n + 1)]


def jacobi(n, alpha, beta, z):
    """Jacobi P_n^(alpha,beta)(z), standard normalization, P_{-1} = 0.

    Uses the three-term recurrence.  Where a recurrence denominator vanishes
    (e.g. n + alpha + beta = 0) the explicit finite sum is used instead; the
    polynomial itself is defined for all parameters.
    """
    n = int(n)
    z = np.asarray(z)
    dt = np.result_type(z, alpha, beta, float)
    if n < 0:
        return np.zeros_like(z, dtype=dt)[()]
    a, b = alpha, beta
    prev = np.ones_like(z, dtype=dt)
    if n == 0:
        return prev[()]
    cur = (a - b) / 2 + (a + b + 2) * z / 2
    for k in range(2, n + 1):
        s = 2 * k + a + b
        den = 2 * k * (k + a + b) * (s - 2)
        if abs(den) < 1e-12:
            w = (z - 1) / 2
            c = [complex(v) if isinstance(v, mpmath.mpc) else float(v)
                 for v in _jacobi_explicit_coeffs(n, a, b, dps=30)]
            out = np.zeros_like(z, dtype=np.result_type(dt, *[type(v) for v in c]))
            for coef in reversed(c):
                out = out * w + coef
            return out[()]
        c1 = (s - 1) * (s * (s - 2) * z + a * a - b * b)
        c2 = 2 * (k + a - 1) * (k + b - 1) * s
        prev, cur = cur, (c1 * cur - c2 * prev) / den
    return np.asarray(cur, dtype=np.result_type(cur, dt))[()]


# -- polynomial arithmetic on coefficient lists (ascending degree) -----------

def _padd(*ps):
    n = max(len(p) for p in ps)
    out = [mpmath.mpf(0)] * n
    for p in ps:
        for i, v in enumerate(p):
            out[i] += v
    return out


def _pmul(p, q):
    if not p or not q:
        return []
    out = [mpmath.mpf(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _pscale(c, p):
    return [c * v for v in p]


def _pder(p):
    return [i * p[i] for i in range(1, len(p))]


def _compose_affine(p, c0, c1):
    """p(c0 + c1 x) as a coefficient list in x."""
    out = []
    base = [mpmath.mpf(1)]
    lin = [c0, c1]
    for v in p:
        out = _padd(out, _pscale(v, base))
        base = _pmul(base, lin)
    return out


def jacobi_coeffs(n, alpha, beta, dps=EOP_DPS):
    """Monomial coefficients (in z) of P_n^(alpha,beta); [] for n < 0."""
    if n < 0:
        return []
    with mpmath.workdps(dps):
        w = _jacobi_explicit_coeffs(n, mpmath.mpmathify(alpha), mpmath.mpmathify(beta))
        half = mpmath.mpf(1) / 2
        return _compose_affine(w, -half, half)


def laguerre_coeffs(n, alpha, scale=1, dps=EOP_DPS):
    """Monomial coefficients (in t) of L_n^(alpha)(scale * t); [] for n < 0."""
    if n < 0:
        return []
    with mpmath.workdps(dps):
        alpha = mpmath.mpmathify(alpha)
        scale = mpmath.mpmathify(scale)
        return [(-1) ** k * mpmath.rf(alpha + k + 1, n - k)
                / (mpmath.factorial(n - k) * mpmath.factorial(k)) * scale ** k
                for k in range(n + 1)]


# -- PolynomialRep -------------------------------------------------------------

def _to_scalar(v):
    if isinstance(v, mpmath.mpc) or isinstance(v, complex):
        c = complex(v)
        return c if c.imag != 0.0 else c.real
    return float(v)


@dataclass(frozen=True)
class PolynomialRep:
    """Polynomial in a named variable ('t' or 'z'), ascending coefficients."""

    variable: str
    coeffs: tuple

    def __post_init__(self):
        if self.variable not in ("t", "z"):
            raise ValueError(f"variable must be 't' or 'z', got {self.variable!r}")
        if not self.coeffs:
            raise ValueError("empty coefficient list")
        if self.coeffs[-1] == 0:
            raise ValueError("leading coefficient is zero")

    @classmethod
    def from_mp(cls, variable, coeffs):
        return cls(variable, tuple(_to_scalar(c) for c in coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_complex(self):
        return any(isinstance(c, complex) for c in self.coeffs)

    def __call__(self, x):
        x = np.asarray(x)
        dt = complex if self.is_complex else float
        out = np.zeros_like(x, dtype=np.result_type(x, dt))
        for c in reversed(self.coeffs):
            out = out * x + c
        return out[()]

    def deriv(self, k=1):
        c = list(self.coeffs)
        for _ in range(k):
            c = [i * c[i] for i in range(1, len(c))]
        if not c:
            c = [0.0]
        # derivative of a constant is the zero polynomial; keep a placeholder
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if c == [0.0]:
            return _ZeroPoly(self.variable)
        return PolynomialRep(self.variable, tuple(c))

    def monic(self):
        lead = self.coeffs[-1]
        return PolynomialRep(self.variable, tuple(c / lead for c in self.coeffs))

    def roots(self):
        return np.roots(np.asarray(self.coeffs[::-1], dtype=complex if self.is_complex else float))


class _ZeroPoly:
    def __init__(self, variable):
        self.variable = variable
        self.coeffs = (0.0,)
        self.degree = -1

    def __call__(self, x):
        x = np.asarray(x)
        return np.zeros_like(x, dtype=np.result_type(x, float))[()]

    def deriv(self, k=1):
        return self


# -- exceptional polynomials by nullspace -------------------------------------

@dataclass(frozen=True)
class EOPSpec:
    """kind: 'xm_laguerre' (params = (lam,)) or 'xp_jacobi' (params = (alpha, beta))."""

    kind: str
    n: int
    ext: int
    params: tuple

    def __post_init__(self):
        if self.kind not in ("xm_laguerre", "xp_jacobi"):
            raise ValueError(f"unknown EOP kind {self.kind!r}")
        if self.n < 0 or self.ext < 0:
            raise ValueError("n and ext must be non-negative")

    @property
    def degree(self):
        return self.n + self.ext


def laguerre_denominator(m, lam, dps=EOP_DPS):
    """Coefficients in t of L_m^(lam-1)(-t)."""
    return laguerre_coeffs(m, mpmath.mpmathify(lam) - 1, scale=-1, dps=dps)


def jacobi_denominator(p, alpha, beta, dps=EOP_DPS):
    """Coefficients in z of P_p^(-alpha-1, beta-1)(z)."""
    with mpmath.workdps(dps):
        a, b = mpmath.mpmathify(alpha), mpmath.mpmathify(beta)
        return jacobi_coeffs(p, -a - 1, b - 1, dps=dps)


def _radial_system(n, m, lam):
    """Columns: residual polynomial of the cleared radial equation for Q = t^k.

    Radial equation in t for u = Q/D (R = t^(lam/2+1/4) e^(-t/2) u):
        -2t u'' + (2t - 2 lam - 2) u' + (Rt - 2n) u = 0,
        Rt = -2m - 2t D''/D + (2t + 2lam - 2) D'/D + 4t (D'/D)^2,
    multiplied through by D^3.
    """
    D = laguerre_denominator(m, lam)
    D1, D2 = _pder(D), _pder(_pder(D))
    t = [mpmath.mpf(0), mpmath.mpf(1)]
    lin = [-2 * lam - 2, mpmath.mpf(2)]
    DD = _pmul(D, D)
    Rhat = _padd(_pscale(-2 * m - 2 * n, DD),
                 _pscale(-2, _pmul(t, _pmul(D2, D))),
                 _pmul([2 * lam - 2, mpmath.mpf(2)], _pmul(D1, D)),
                 _pscale(4, _pmul(t, _pmul(D1, D1))))
    return D, _assemble(n + m, lambda Q, Q1, Q2: _padd(
        _pscale(-2, _pmul(t, _padd(_pmul(Q2, DD),
                                    _pscale(-2, _pmul(Q1, _pmul(D1, D))),
                                    _pscale(-1, _pmul(Q, _pmul(D2, D))),
                                    _pscale(2, _pmul(Q, _pmul(D1, D1)))))),
        _pmul(lin, _padd(_pmul(Q1, DD), _pscale(-1, _pmul(Q, _pmul(D1, D))))),
        _pmul(Rhat, Q)))


def _jacobi_system(ell, p, alpha, beta):
    """Same construction for the angular equation in z (weight exponents
    (alpha+1/2)/2, (beta+1/2)/2):
        -(1-z^2) u'' + [(alpha-beta) + (alpha+beta+2) z] u' + (R - l(l+alpha+beta+1)) u = 0,
        R = -2pc - c(alpha+beta+(alpha-beta+1)z) N/D + c^2 (1-z^2) N^2 / (2 D^2),
    c = alpha - beta - p + 1, N = P_{p-1}^(-alpha,beta), D = P_p^(-alpha-1,beta-1).
    """
    a, b = alpha, beta
    D = jacobi_denominator(p, a, b)
    N = jacobi_coeffs(p - 1, -a, b)
    D1, D2 = _pder(D), _pder(_pder(D))
    c = a - b - p + 1
    chi = [mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(-1)]
    lin = [a - b, a + b + 2]
    DD = _pmul(D, D)
    Rhat = _padd(_pscale(-2 * p * c - ell * (ell + a + b + 1), DD),
                 _pscale(-c, _pmul([a + b, a - b + 1], _pmul(N, D))),
                 _pscale(c * c / 2, _pmul(chi, _pmul(N, N))))
    return D, _assemble(ell + p, lambda Q, Q1, Q2: _padd(
        _pscale(-1, _pmul(chi, _padd(_pmul(Q2, DD),
                                     _pscale(-2, _pmul(Q1, _pmul(D1, D))),
                                     _pscale(-1, _pmul(Q, _pmul(D2, D))),
                                     _pscale(2, _pmul(Q, _pmul(D1, D1)))))),
        _pmul(lin, _padd(_pmul(Q1, DD), _pscale(-1, _pmul(Q, _pmul(D1, D))))),
        _pmul(Rhat, Q)))


def _assemble(deg, op):
    cols = []
    for k in range(deg + 1):
        Q = [mpmath.mpf(0)] * k + [mpmath.mpf(1)]
        Q1 = _pder(Q)
        Q2 = _pder(Q1)
        cols.append(op(Q, Q1, Q2))
    rows = max(len(c) for c in cols)
    M = mpmath.matrix(rows, deg + 1)
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            M[i, j] = v
    return M


def _nullvector(M):
    """Unique (up to scale) null vector of M, or ConstructionError."""
    _, S, V = mpmath.svd_r(M, full_matrices=True) if M.rows >= M.cols else (None, None, None)
    if S is None:
        raise ConstructionError("underdetermined coefficient system")
    svals = [abs(S[i]) for i in range(len(S))]
    scale = max(svals + [mpmath.mpf(1)])
    tol = scale * mpmath.mpf(10) ** (-(EOP_DPS // 2))
    # svd_r returns V with rows as right singular vectors, singular values descending
    null = [i for i, s in enumerate(svals) if s <= tol]
    ncols = M.cols
    nsmall = len(null) + max(0, ncols - len(svals))
    if nsmall != 1:
        raise ConstructionError(f"nullspace dimension {nsmall} (expected 1)")
    idx = null[0] if null else ncols - 1
    return [V[idx, j] for j in range(ncols)]


@functools.lru_cache(maxsize=512)
def _build_eop_cached(kind, n, ext, params):
    with mpmath.workdps(EOP_DPS):
        mp_params = tuple(mpmath.mpf(repr(float(v))) if isinstance(v, float) else mpmath.mpmathify(v)
                          for v in params)
        if kind == "xm_laguerre":
            (lam,) = mp_params
            D, M = _radial_system(n, ext, lam)
            var = "t"
        else:
            alpha, beta = mp_params
            D, M = _jacobi_system(n, ext, alpha, beta)
            var = "z"
        vec = _nullvector(M)
        tiny = max(abs(v) for v in vec) * mpmath.mpf(10) ** (-(EOP_DPS // 2))
        while len(vec) > 1 and abs(vec[-1]) <= tiny:
            vec = vec[:-1]
        dscale = max(abs(v) for v in D)
        D = list(D)
        while len(D) > 1 and abs(D[-1]) <= dscale * mpmath.mpf(10) ** (-(EOP_DPS // 2)):
            D.pop()
        # a denominator that loses degree (c = 0 in the Jacobi case) lowers
        # deg Q by the same amount; deg Q - deg D is always the level index
        if len(vec) - len(D) != n:
            raise ConstructionError(
                f"deg Q - deg D = {len(vec) - len(D)}, expected {n}")
        Q = [v / vec[-1] for v in vec]
        return PolynomialRep.from_mp(var, Q), PolynomialRep.from_mp(var, D)


def build_eop(spec: EOPSpec):
    """Monic Q of degree n + ext for the given ansatz (see module docstring)."""
    return build_eop_with_denominator(spec)[0]


def build_eop_with_denominator(spec: EOPSpec):
    """(Q, D) with D the ansatz denominator in its classical normalization."""
    if spec.kind == "xm_laguerre" and not float(spec.params[0]) > 0:
        raise ParameterError("xm_laguerre requires lambda > 0")
    params = tuple(float(v) for v in spec.params)
    return _build_eop_cached(spec.kind, int(spec.n), int(spec.ext), params)


# -- PT-symmetric y polynomials ----------------------------------------------

def eckart_ab(n, A, B):
    """(alpha_n, beta_n) = -s + (B/9)/s, -s - (B/9)/s with s = A/3 - 1 + n."""
    s = A / 3.0 - 1.0 + n
    if s == 0:
        raise ParameterError(f"A/3 - 1 + {n} vanishes")
    return -s + (B / 9.0) / s, -s - (B / 9.0) / s


def _bilinear_coeff(k, a, b):
    den = 2 * k + a + b
    if abs(den) < 1e-14:
        raise ParameterError(f"2*{k} + alpha + beta vanishes")
    return 2.0 * (k + a) * (k + b) / den


def q_poly(p, A, B, z):
    """q_p(z) = P_p^(alpha_p, beta_p)(z)."""
    if p == 0:
        return np.ones_like(np.asarray(z, dtype=complex))[()]
    ap, bp = eckart_ab(p, A, B)
    return jacobi(p, ap, bp, z)


def q_poly_rep(p, A, B):
    ap, bp = eckart_ab(p, A, B) if p > 0 else (0.0, 0.0)
    return PolynomialRep.from_mp("z", jacobi_coeffs(p, ap, bp))


def y_poly(ell, p, A, B, z):
    """Two-term bilinear combination of classical Jacobi polynomials.

    y = C_l q_p P_{l-1}^(a_l,b_l) - C_p q~_{p-1} P_l^(a_l,b_l), with
    C_k = 2(k+a_k)(k+b_k)/(2k+a_k+b_k) and q~_{p-1} = P_{p-1}^(a_p,b_p).
    (A, B) are in the Eckart convention.
    """
    if p < 0:
        raise ParameterError("p >= 0 required")
    al, bl = eckart_ab(ell, A, B)
    ap, bp = eckart_ab(p, A, B)
    z = np.asarray(z, dtype=complex)
    first = 0.0
    if ell > 0:
        first = _bilinear_coeff(ell, al, bl) * jacobi(p, ap, bp, z) * jacobi(ell - 1, al, bl, z)
    second = _bilinear_coeff(p, ap, bp) * jacobi(p - 1, ap, bp, z) * jacobi(ell, al, bl, z)
    return (first - second)[()] if np.ndim(first - second) == 0 else first - second


def y_poly_rep(ell, p, A, B):
    """Coefficient form of y_poly; None when it vanishes identically."""
    al, bl = eckart_ab(ell, A, B)
    ap, bp = eckart_ab(p, A, B)
    with mpmath.workdps(EOP_DPS):
        first = []
        if ell > 0:
            first = _pscale(mpmath.mpf(_bilinear_coeff(ell, al, bl)),
                            _pmul(jacobi_coeffs(p, ap, bp), jacobi_coeffs(ell - 1, al, bl)))
        second = _pscale(-mpmath.mpf(_bilinear_coeff(p, ap, bp)),
                         _pmul(jacobi_coeffs(p - 1, ap, bp), jacobi_coeffs(ell, al, bl)))
        y = _padd(first, second) if (first or second) else []
        scale = max([abs(v) for v in y] + [mpmath.mpf(1)])
        while y and abs(y[-1]) <= scale * mpmath.mpf(10) ** -30:
            y.pop()
    if not y:
        return None
    return PolynomialRep.from_mp("z", y)
