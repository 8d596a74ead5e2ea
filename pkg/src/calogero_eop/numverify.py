"""Independent numerical verification.

Finite-difference discretization of the separated radial/angular problems,
a bisection + inverse-iteration tridiagonal eigensolver (kernels in
``kernels``), Richardson-extrapolated residual norms and adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import kernels
from .errors import GridError, NullFunctionError, ParameterError, QuadratureError, SolverError
from .families import (
    FAMILY_SPECS,
    PT_FAMILIES,
    Couplings,
    FamilyId,
    angular_potential,
    as_family,
    lambda_squared,
    radial_potential,
    solve_params,
    threebody_potential,
)
from .specialfuncs import y_poly_rep
from .spectra import (
    QuantumNumbers,
    angular_wavefunction,
    energy,
    lambda_ell,
    make_eigenfunction,
    missing_levels,
    radial_extent,
    radial_wavefunction,
    valid_ells,
)

SQRT32 = math.sqrt(1.5)


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-12
    xi: float = 1e-10
    params: float = 1e-10
    separability: float = 1e-9
    radial_spectrum_2048: float = 1e-3
    radial_spectrum_4096: float = 3e-4
    angular_spectrum: float = 1e-3
    residual: float = 1e-6
    pt_residual: float = 1e-5
    perturbation_gain: float = 1e3
    perturbation: float = 0.01
    overlap: float = 1e-6
    quad_reltol: float = 1e-9
    eig_residual: float = 1e-10
    pt_imag: float = 1e-6
    radial_lo: float = 1e-4
    grid_points: int = 2048
    dense_points: int = 512


TOL = Tolerances()


# -- grids and matrices ------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``npoints`` interior nodes and Dirichlet ends.

    h = (hi - lo)/(npoints + 1); node i is lo + i h, i = 1..npoints.
    """

    lo: float
    hi: float
    npoints: int
    kind: str = "generic"

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise GridError(f"invalid domain ({self.lo}, {self.hi})")
        if int(self.npoints) != self.npoints or self.npoints < 64:
            raise GridError("npoints >= 64 required")
        if self.kind == "radial" and self.lo < TOL.radial_lo:
            raise GridError(f"radial grids need lo >= {TOL.radial_lo}")

    @property
    def h(self):
        return (self.hi - self.lo) / (self.npoints + 1)

    @property
    def nodes(self):
        return self.lo + self.h * np.arange(1, self.npoints + 1)


def radial_grid(c: Couplings, lam: float, npoints: int, nmax: int = 3) -> GridSpec:
    return GridSpec(TOL.radial_lo, radial_extent(c, lam, nmax), npoints, "radial")


def angular_grid(family, npoints: int) -> GridSpec:
    lo, hi = FAMILY_SPECS[as_family(family)].domain
    return GridSpec(lo, hi, npoints, "angular")


@dataclass(frozen=True)
class TridiagMatrix:
    diag: np.ndarray
    off: np.ndarray
    grid: GridSpec

    @property
    def is_complex(self):
        return np.iscomplexobj(self.diag) or np.iscomplexobj(self.off)

    def dense(self):
        n = len(self.diag)
        out = np.zeros((n, n), dtype=np.result_type(self.diag, self.off))
        out[np.arange(n), np.arange(n)] = self.diag
        out[np.arange(n - 1), np.arange(1, n)] = self.off
        out[np.arange(1, n), np.arange(n - 1)] = self.off
        return out

    def matvec(self, v):
        out = self.diag * v
        out[:-1] += self.off * v[1:]
        out[1:] += self.off * v[:-1]
        return out

    def norm(self):
        a = np.abs(self.diag)
        a[:-1] += np.abs(self.off)
        a[1:] += np.abs(self.off)
        return float(np.max(a))


@dataclass(frozen=True)
class Eigenpair:
    value: complex
    samples: np.ndarray
    residual: float = 0.0


def discretize(potential, grid: GridSpec) -> TridiagMatrix:
    """-d^2/dx^2 + V, three-point stencil, Dirichlet rows eliminated."""
    x = grid.nodes
    V = np.asarray(potential(x))
    if V.shape != x.shape:
        V = np.broadcast_to(V, x.shape).copy()
    bad = ~np.isfinite(V)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise GridError(f"potential is not finite at x = {x[i]!r} (node {i + 1})")
    h2 = grid.h ** 2
    return TridiagMatrix(2.0 / h2 + V, np.full(grid.npoints - 1, -1.0 / h2), grid)


def _orient(v):
    big = np.abs(v) > 1e-3 * np.max(np.abs(v))
    first = v[np.flatnonzero(big)[0]]
    return v if first > 0 else -v


def eigen_tridiag(mat: TridiagMatrix, k: int, maxit: int = 400):
    """k lowest eigenpairs of a real symmetric tridiagonal matrix.

    Bisection on Sturm counts gives the eigenvalues, inverse iteration the
    vectors (Gram-Schmidt inside clusters).  Samples are normalized so that
    sum(v^2) h = 1.
    """
    if mat.is_complex:
        raise SolverError("eigen_tridiag needs a real symmetric matrix; use dense_eigvals")
    d = np.ascontiguousarray(mat.diag, dtype=float)
    e = np.ascontiguousarray(mat.off, dtype=float)
    n = len(d)
    k = int(k)
    if not 1 <= k <= n:
        raise ParameterError(f"1 <= k <= {n} required")
    e2 = e * e
    rad = np.zeros(n)
    rad[:-1] += np.abs(e)
    rad[1:] += np.abs(e)
    lo, hi = float(np.min(d - rad)), float(np.max(d + rad))
    vals, iters = kernels.bisect_lowest(d, e2, k, lo, hi, 0.0, maxit)
    if iters < 0:
        raise SolverError(f"bisection did not converge in {maxit} iterations")
    tnorm = mat.norm()
    h = mat.grid.h if mat.grid is not None else 1.0
    rng = np.random.default_rng(20240611)
    start = rng.uniform(-1.0, 1.0, n)
    out, prev = [], []
    for lam in vals:
        x = start.copy()
        cluster = [v for (l2, v) in prev if abs(l2 - lam) <= 1e-3 * max(1.0, abs(lam))]
        res = np.inf
        for it in range(1, 9):
            x = kernels.solve_shifted(d, e, float(lam), x)
            for v in cluster:
                x -= np.dot(v, x) * v
            x /= np.linalg.norm(x)
            res = np.linalg.norm(mat.matvec(x) - lam * x) / tnorm
            if res <= TOL.eig_residual:
                break
        else:
            raise SolverError(f"inverse iteration residual {res:.3g} after {it} iterations")
        prev.append((lam, x.copy()))
        out.append(Eigenpair(float(lam), _orient(x) / math.sqrt(h), float(res)))
    return out


def dense_eigvals(mat: TridiagMatrix, k: int | None = None):
    """All (or the k lowest by real part) eigenvalues via a dense solve.

    Intended for the small complex PT matrices only (n <= 512).
    """
    n = len(mat.diag)
    if n > TOL.dense_points:
        raise ParameterError(f"dense solves are limited to n <= {TOL.dense_points}")
    w = np.linalg.eigvals(mat.dense())
    w = w[np.lexsort((w.imag, w.real))]
    return w if k is None else w[:k]


# -- residual ------------------------------------------------------------------------

def _second_difference(f, x, d):
    return (f(x + d) - 2 * f(x) + f(x - d)) / (d * d)


def residual(psi, E, potential, grid: GridSpec, stencil: str = "richardson") -> float:
    """||(-D^2 + V) psi - E psi|| / ||psi|| on the grid nodes.

    ``stencil='second'`` is the plain three-point stencil of
    :func:`discretize` at spacing h.  'richardson' (default) extrapolates the
    same three-point stencil: over sub-steps h, h/2, h/4 (sixth order) when
    ``psi`` is callable, over h and 2h (fourth order) when ``psi`` is an array
    of node samples.  Two nodes next to each boundary are excluded.
    """
    x = grid.nodes
    f = np.asarray(psi(x) if callable(psi) else psi)
    V = np.asarray(potential(x) if callable(potential) else potential)
    if f.shape != x.shape:
        raise GridError("psi samples do not match the grid")
    if not np.all(np.isfinite(f)) or not np.all(np.isfinite(V)):
        raise GridError("psi or V not finite on the grid")
    h = grid.h
    norm = math.sqrt(float(np.sum(np.abs(f) ** 2) * h))
    if norm < 1e-300:
        raise NullFunctionError("psi vanishes on the grid")
    c = slice(2, -2)
    xc = x[c]
    if stencil == "second":
        d2 = (f[1:-3] - 2 * f[2:-2] + f[3:-1]) / h ** 2
    elif stencil != "richardson":
        raise ValueError(f"unknown stencil {stencil!r}")
    elif callable(psi):
        d = [_second_difference(psi, xc, h / k) for k in (1, 2, 4)]
        r1 = [(4 * d[1] - d[0]) / 3, (4 * d[2] - d[1]) / 3]
        d2 = (16 * r1[1] - r1[0]) / 15
    else:
        d2h = (f[1:-3] - 2 * f[2:-2] + f[3:-1]) / h ** 2
        d22h = (f[:-4] - 2 * f[2:-2] + f[4:]) / (4 * h * h)
        d2 = (4 * d2h - d22h) / 3
    r = -d2 + V[c] * f[c] - E * f[c]
    return math.sqrt(float(np.sum(np.abs(r) ** 2) * h)) / norm


# -- quadrature ----------------------------------------------------------------------

def _quad_real(f, lo, hi, reltol, abstol, limit):
    out = integrate.quad(f, lo, hi, epsabs=abstol, epsrel=reltol, limit=limit, full_output=1)
    y, err = out[0], out[1]
    if len(out) > 3:
        if err > max(abstol, 10 * reltol * abs(y)):
            raise QuadratureError(f"quadrature did not converge: {out[3].splitlines()[0]}",
                                  estimate=y, error=err)
    return y, err


def quadrature(f, domain, reltol: float = TOL.quad_reltol, abstol: float = 0.0, limit: int = 500):
    """Adaptive Gauss-Kronrod integral of a real or complex f over (lo, hi);
    infinite limits are allowed."""
    lo, hi = domain
    if not lo < hi:
        raise ValueError("lo < hi required")
    mid = 0.5 * (lo + hi) if math.isfinite(lo) and math.isfinite(hi) else (
        lo + 1.0 if math.isfinite(lo) else (hi - 1.0 if math.isfinite(hi) else 0.0))
    if np.iscomplexobj(np.asarray(f(mid))):
        re, _ = _quad_real(lambda x: float(np.real(f(x))), lo, hi, reltol, abstol, limit)
        im, _ = _quad_real(lambda x: float(np.imag(f(x))), lo, hi, reltol, abstol, limit)
        return complex(re, im)
    y, _ = _quad_real(lambda x: float(f(x)), lo, hi, reltol, abstol, limit)
    return y


# -- verification drivers ----------------------------------------------------------------

def _match(analytic, numeric, tol):
    """Pair each analytic value with the nearest numeric one."""
    rows, used = [], set()
    numeric = list(numeric)
    for label, a in analytic:
        if not numeric:
            rows.append({"label": label, "analytic": a, "numeric": None, "rel_err": None,
                         "present": False})
            continue
        j = int(np.argmin([abs(a - v) for v in numeric]))
        rel = abs(a - numeric[j]) / abs(a)
        ok = rel <= tol and j not in used
        if ok:
            used.add(j)
        rows.append({"label": label, "analytic": a, "numeric": numeric[j],
                     "rel_err": rel, "present": ok})
    extra = [v for j, v in enumerate(numeric) if j not in used]
    return rows, extra


def spectrum_match(family, c: Couplings, channel: str, k: int, npoints: int | None = None,
                   ell: int = 0, variant: str = "verified", tol: float | None = None,
                   dense: bool = True):
    """Compare k analytic levels against the numerics.

    radial: E_n = sqrt(3/2) w (2n + lambda_l + 1) vs. diagonalization.
    angular (real families): lambda_l^2 vs. diagonalization.
    angular (PT families): residual mode, plus an optional small dense
    complex diagonalization for the reality check and gap detection.
    """
    fam = as_family(family)
    sp = solve_params(fam, c)
    npoints = npoints or TOL.grid_points
    k = int(k)
    if k < 1:
        raise ParameterError("k >= 1 required")
    report = {"family": fam.value, "channel": channel, "k": k, "npoints": npoints}
    if channel == "radial":
        lam = lambda_ell(fam, sp, ell, variant)
        tol = tol if tol is not None else (TOL.radial_spectrum_4096 if npoints >= 4096
                                           else TOL.radial_spectrum_2048)
        grid = radial_grid(c, lam, npoints, k - 1)
        mat = discretize(lambda r: radial_potential(c, lam, r), grid)
        num = [p.value for p in eigen_tridiag(mat, k)]
        ana = [(f"n={n}", energy(c, QuantumNumbers(n, ell), lam)) for n in range(k)]
        rows, extra = _match(ana, num, tol)
        report.update(mode="diagonalization", ell=ell, lambda_ell=lam, rows=rows,
                      missing=[r["label"] for r in rows if not r["present"]])
    elif channel == "angular" and fam not in PT_FAMILIES:
        tol = tol if tol is not None else TOL.angular_spectrum
        ells = valid_ells(fam, sp, c.p)[:k]
        grid = angular_grid(fam, npoints)
        mat = discretize(lambda ph: angular_potential(fam, sp, c.p, ph), grid)
        num = [p.value for p in eigen_tridiag(mat, k)]
        ana = [(f"l={l}", lambda_squared(fam, sp, l)) for l in ells]
        rows, extra = _match(ana, num, tol)
        report.update(mode="diagonalization", rows=rows, unexplained=extra,
                      missing=[r["label"] for r in rows if not r["present"]])
    elif channel == "angular":
        tol = tol if tol is not None else TOL.pt_residual
        report.update(mode="residual", **_pt_angular_report(fam, c, sp, k, npoints, tol, dense))
        rows = report["rows"]
    else:
        raise ParameterError(f"unknown channel {channel!r}")
    errs = [r["rel_err"] for r in rows if r.get("rel_err") is not None and r["present"]]
    report["tol"] = tol
    report["max_rel_err"] = max(errs) if errs else None
    report["passed"] = bool(report.get("passed", True)) and all(
        r["present"] for r in rows if r.get("expected", True))
    return report


def _pt_angular_report(fam, c, sp, k, npoints, tol, dense):
    grid = angular_grid(fam, npoints)
    pot = angular_potential(fam, sp, c.p, grid.nodes)
    variants = ("verified", "printed", "squared") if fam is FamilyId.PT_ECKART else ("verified", "printed")
    gaps = missing_levels(fam, c.p)
    rows = []
    ok = True
    for ell in range(k + len([g for g in gaps if g < k + len(gaps)])):
        if ell in gaps:
            vanishes = y_poly_rep(ell, c.p, sp.A_E, sp.B_E) is None
            rows.append({"label": f"l={ell}", "analytic": _safe_lam2(fam, sp, ell), "present": False,
                         "expected": False, "y_vanishes": vanishes})
            ok = ok and vanishes
            continue
        psi = _angular_callable(fam, sp, ell, c.p)
        res = {}
        for v in variants:
            try:
                res[v] = residual(psi, lambda_squared(fam, sp, ell, v), pot, grid)
            except ParameterError:
                res[v] = None
        lam2 = lambda_squared(fam, sp, ell)
        present = res["verified"] is not None and res["verified"] <= tol
        ok = ok and present
        rows.append({"label": f"l={ell}", "analytic": lam2, "present": present,
                     "rel_err": None, "residuals": res,
                     "printed_bound": _printed_bound(fam, sp, ell)})
    out = {"rows": rows, "passed": ok, "gaps": gaps}
    if dense:
        npts = min(npoints, 400)
        g2 = angular_grid(fam, npts)
        mat = discretize(lambda ph: angular_potential(fam, sp, c.p, ph), g2)
        w = dense_eigvals(mat, k + len(gaps) + 2)
        lams = [r["analytic"] for r in rows if r["present"]]
        dtol = 5e-3
        matched = [bool(np.min(np.abs(w.real - a)) / a <= dtol) for a in lams]
        gap_vals = [r["analytic"] for r in rows if not r.get("expected", True)]
        gap_absent = [bool(np.min(np.abs(w.real - a)) / a > dtol) for a in gap_vals]
        low = w[: len(lams)]
        max_imag = float(np.max(np.abs(low.imag) / np.abs(low.real)))
        out["dense"] = {"npoints": npts, "eigenvalues_re": [float(v) for v in w.real],
                        "eigenvalues_im": [float(v) for v in w.imag],
                        "max_rel_imag": max_imag, "levels_matched": matched,
                        "gap_levels_absent": gap_absent, "tol": dtol}
        out["passed"] = out["passed"] and all(matched) and all(gap_absent) and max_imag <= TOL.pt_imag
    return out


def _angular_callable(fam, sp, ell, p):
    return lambda ph: angular_wavefunction(fam, sp, ell, p, ph, check_domain=False)


def _radial_callable(c, lam, n):
    return lambda r: radial_wavefunction(c, lam, n, r)


def _safe_lam2(fam, sp, ell):
    try:
        return lambda_squared(fam, sp, ell)
    except ParameterError:
        return None


def _printed_bound(fam, sp, ell):
    """Whether f1 < 4(l + a - 1/2) holds (the stated reality condition)."""
    return bool(sp.f1 < 4 * (ell + sp.a - 0.5))


def eigenfunction_residuals(family, c: Couplings, nmax: int, lmax: int, npoints: int | None = None):
    """Residual rows for every valid (n <= nmax, l <= lmax): radial and
    angular channel, plus the 1% energy-perturbation gain."""
    fam = as_family(family)
    sp = solve_params(fam, c)
    npoints = npoints or TOL.grid_points
    tol = TOL.pt_residual if fam in PT_FAMILIES else TOL.residual
    rows = []
    ells = [l for l in valid_ells(fam, sp, c.p) if l <= lmax]
    agrid = angular_grid(fam, npoints)
    apot = angular_potential(fam, sp, c.p, agrid.nodes)
    for ell in ells:
        lam2 = lambda_squared(fam, sp, ell)
        phi = _angular_callable(fam, sp, ell, c.p)
        r0 = residual(phi, lam2, apot, agrid)
        r1 = residual(phi, lam2 * (1 + TOL.perturbation), apot, agrid)
        rows.append(_res_row("angular", None, ell, lam2, r0, r1, tol))
        lam = math.sqrt(lam2)
        rgrid = radial_grid(c, lam, npoints, nmax)
        rpot = radial_potential(c, lam, rgrid.nodes)
        for n in range(nmax + 1):
            E = energy(c, QuantumNumbers(n, ell), lam)
            R = _radial_callable(c, lam, n)
            r0 = residual(R, E, rpot, rgrid)
            r1 = residual(R, E * (1 + TOL.perturbation), rpot, rgrid)
            rows.append(_res_row("radial", n, ell, E, r0, r1, tol))
    return rows


def _res_row(channel, n, ell, E, r0, r1, tol):
    gain = r1 / r0 if r0 > 0 else float("inf")
    return {"channel": channel, "n": n, "ell": ell, "eigenvalue": E, "residual": r0,
            "perturbed_residual": r1, "gain": gain,
            "passed": bool(r0 <= tol and gain >= TOL.perturbation_gain)}


def adjudicate_lambda(family, c: Couplings, lmax: int = 3, npoints: int | None = None):
    """Residual of each printed/verified lambda^2 variant against the
    analytic Phi_l; the variant with a vanishing residual is the true one."""
    fam = as_family(family)
    if fam not in PT_FAMILIES:
        raise ParameterError("lambda variants exist only for the PT families")
    sp = solve_params(fam, c)
    npoints = npoints or TOL.grid_points
    grid = angular_grid(fam, npoints)
    pot = angular_potential(fam, sp, c.p, grid.nodes)
    variants = ("verified", "printed", "squared") if fam is FamilyId.PT_ECKART else ("verified", "printed")
    levels = []
    for ell in range(lmax + 1):
        if ell in missing_levels(fam, c.p):
            levels.append({"ell": ell, "absent": True})
            continue
        psi = _angular_callable(fam, sp, ell, c.p)
        entry = {"ell": ell, "absent": False, "lambda2": {}, "residual": {}}
        for v in variants:
            try:
                lam2 = lambda_squared(fam, sp, ell, v)
                entry["lambda2"][v] = lam2
                entry["residual"][v] = residual(psi, lam2, pot, grid)
            except ParameterError:
                entry["lambda2"][v] = None
                entry["residual"][v] = None
        levels.append(entry)
    def ok(v):
        return all(e["absent"] or (e["residual"][v] is not None and e["residual"][v] <= TOL.pt_residual)
                   for e in levels)
    matches = [v for v in variants if ok(v)]
    return {"family": fam.value, "couplings": _couplings_dict(c), "levels": levels,
            "variants": list(variants), "matching_variants": matches,
            "adopted": "verified" if "verified" in matches else None}


def _couplings_dict(c):
    return {"omega": c.omega, "g": c.g, "f1": c.f1, "m": c.m, "p": c.p}


def orthogonality(family, c: Couplings, nmax: int = 3, lmax: int = 2, ell: int = 0):
    """Largest normalized radial (fixed l) and angular overlaps for n != n', l != l'."""
    fam = as_family(family)
    sp = solve_params(fam, c)
    efs = {n: make_eigenfunction(fam, c, n, ell) for n in range(nmax + 1)}
    lam = efs[0].lam
    r_hi = radial_extent(c, lam, nmax)
    radial = []
    for n in range(nmax + 1):
        for n2 in range(n + 1, nmax + 1):
            ov = quadrature(lambda r: efs[n].radial(r) * efs[n2].radial(r), (0.0, r_hi), abstol=1e-13)
            radial.append({"n": n, "n2": n2, "overlap": abs(ov)})
    ells = [l for l in valid_ells(fam, sp, c.p) if l <= lmax]
    afs = {l: make_eigenfunction(fam, c, 0, l) for l in ells}
    lo, hi = FAMILY_SPECS[fam].domain
    angular = []
    for i, l in enumerate(ells):
        for l2 in ells[i + 1:]:
            ov = quadrature(lambda ph: afs[l].angular(ph, False) * afs[l2].angular(ph, False),
                            (lo, hi), abstol=1e-13)
            angular.append({"ell": l, "ell2": l2, "overlap": abs(ov)})
    return {"radial": radial, "angular": angular,
            "max_radial": max([x["overlap"] for x in radial] or [0.0]),
            "max_angular": max([x["overlap"] for x in angular] or [0.0])}


def threebody_residual(family, c: Couplings, n: int, ell: int, cfg, h: float = 2e-3) -> float:
    """|(-sum_i d^2/dx_i^2 + V - E) psi| / |E psi| at one configuration,
    fourth-order finite differences in the particle coordinates."""
    from . import geometry
    fam = as_family(family)
    ef = make_eigenfunction(fam, c, n, ell)
    if not isinstance(cfg, geometry.Config3):
        cfg = geometry.Config3(*cfg)
    x0 = np.array(cfg.as_tuple(), dtype=float)

    def psi(x):
        return ef(geometry.Config3(*x))

    f0 = psi(x0)
    lap = 0.0
    for i in range(3):
        e = np.zeros(3)
        e[i] = 1.0
        d1 = (psi(x0 + h * e) - 2 * f0 + psi(x0 - h * e)) / h ** 2
        d2 = (psi(x0 + 2 * h * e) - 2 * f0 + psi(x0 - 2 * h * e)) / (4 * h * h)
        lap += (4 * d1 - d2) / 3
    V = threebody_potential(fam, c, cfg, ell=ell)
    return abs(-lap + V * f0 - ef.energy * f0) / abs(ef.energy * f0)


__all__ = [
    "Tolerances", "TOL", "GridSpec", "TridiagMatrix", "Eigenpair", "discretize",
    "eigen_tridiag", "dense_eigvals", "residual", "quadrature", "spectrum_match",
    "eigenfunction_residuals", "adjudicate_lambda", "orthogonality",
    "threebody_residual", "radial_grid", "angular_grid",
]
