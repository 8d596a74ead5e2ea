"""Pure-Python/numpy fallback for the compiled ``_core`` kernels.

Same algorithms and signatures.  Sturm sequences are inherently sequential
along the matrix, so the fallback vectorizes across shifts instead: all k
eigenvalues are refined simultaneously by multisection.
"""

import numpy as np

EPS = np.finfo(float).eps
TINY = np.finfo(float).tiny


def _pivmin(e2, scale):
    m = max(1.0, float(np.max(e2))) if len(e2) else 1.0
    return TINY * m * 1e20 + EPS * EPS * scale


def _counts(d, e2, xs, pivmin):
    xs = np.asarray(xs, dtype=float)
    q = d[0] - xs
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    c = (q < 0).astype(np.int64)
    for i in range(1, len(d)):
        q = d[i] - xs - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        c += q < 0
    return c


def sturm_count(d, e2, x):
    """Number of eigenvalues strictly below x."""
    d = np.asarray(d, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    scale = float(np.max(np.abs(d)))
    return int(_counts(d, e2, [x], _pivmin(e2, scale))[0])


def bisect_lowest(d, e2, k, lo, hi, abstol, maxit, sections=15):
    """k lowest eigenvalues; returns (values, sweeps) or (values, -1)."""
    d = np.asarray(d, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    pivmin = _pivmin(e2, max(abs(lo), abs(hi)))
    a = np.full(k, float(lo))
    b = np.full(k, float(hi))
    idx = np.arange(k)
    frac = np.arange(1, sections + 1) / (sections + 1)
    sweeps = 0
    while True:
        width = b - a
        active = width > 2.0 * EPS * np.maximum(np.abs(a), np.abs(b)) + abstol
        if not active.any():
            break
        sweeps += 1
        if sweeps > maxit:
            return 0.5 * (a + b), -1
        ai = np.flatnonzero(active)
        pts = a[ai, None] + width[ai, None] * frac[None, :]
        cnt = _counts(d, e2, pts.ravel(), pivmin).reshape(pts.shape)
        j = idx[ai, None]
        # bracket of eigenvalue j: largest point with count <= j, smallest with count > j
        below = cnt <= j
        stuck = True
        for r, jj in enumerate(ai):
            nb = np.flatnonzero(below[r])
            na = np.flatnonzero(~below[r])
            new_a = pts[r, nb[-1]] if nb.size else a[jj]
            new_b = pts[r, na[0]] if na.size else b[jj]
            if new_a != a[jj] or new_b != b[jj]:
                stuck = False
            a[jj], b[jj] = new_a, new_b
        if stuck:
            break
    return 0.5 * (a + b), sweeps


def solve_shifted(d, e, shift, rhs):
    """Solve (T - shift I) x = rhs with partial-pivoting tridiagonal LU."""
    n = len(d)
    dd = [float(v) - shift for v in d]
    dl = [float(v) for v in e]
    du = [float(v) for v in e]
    du2 = [0.0] * max(n - 2, 0)
    piv = [0] * max(n - 1, 0)
    b = [float(v) for v in rhs]
    tnorm = max([abs(v) for v in dd] + [abs(v) for v in dl] + [1e-300])
    tiny = EPS * tnorm
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
            if dd[i] == 0.0:
                dd[i] = tiny
            fact = dl[i] / dd[i]
            dl[i] = fact
            dd[i + 1] -= fact * du[i]
        else:
            piv[i] = 1
            fact = dd[i] / dl[i]
            dd[i] = dl[i]
            dl[i] = fact
            temp = du[i]
            du[i] = dd[i + 1]
            dd[i + 1] = temp - fact * dd[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
    if dd[n - 1] == 0.0:
        dd[n - 1] = tiny
    for i in range(n - 1):
        if piv[i] == 0:
            b[i + 1] -= dl[i] * b[i]
        else:
            temp = b[i]
            b[i] = b[i + 1]
            b[i + 1] = temp - dl[i] * b[i]
    b[n - 1] /= dd[n - 1]
    if n > 1:
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2]
    for i in range(n - 3, -1, -1):
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i]
    return np.array(b)
