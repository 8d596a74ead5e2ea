# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the symmetric tridiagonal eigensolver.

Mirrors ``_core_py`` exactly; see that module for the algorithms.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, fmax

cnp.import_array()

cdef double EPS = 2.220446049250313e-16


cdef inline double _pivmin(const double[:] e2, double scale):
    cdef Py_ssize_t i
    cdef double m = 1.0
    for i in range(e2.shape[0]):
        if e2[i] > m:
            m = e2[i]
    return 2.2250738585072014e-308 * m * 1e20 + EPS * EPS * scale


cdef Py_ssize_t _count(const double[:] d, const double[:] e2, double x, double pivmin) nogil:
    cdef Py_ssize_t n = d.shape[0], i, c = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        c += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            c += 1
    return c


def sturm_count(double[:] d, double[:] e2, double x):
    """Number of eigenvalues strictly below x."""
    cdef double scale = 0.0
    cdef Py_ssize_t i
    for i in range(d.shape[0]):
        scale = fmax(scale, fabs(d[i]))
    return int(_count(d, e2, x, _pivmin(e2, scale)))


def bisect_lowest(double[:] d, double[:] e2, Py_ssize_t k, double lo, double hi,
                  double abstol, Py_ssize_t maxit):
    """k lowest eigenvalues by bisection inside the Gershgorin interval [lo, hi].

    Returns (values, iterations); iterations == -1 signals non-convergence.
    """
    cdef Py_ssize_t n = d.shape[0], j, it, c, total = 0
    cdef double a, b, mid, scale = fmax(fabs(lo), fabs(hi))
    cdef double pivmin = _pivmin(e2, scale)
    out = np.empty(k, dtype=np.float64)
    cdef double[:] o = out
    a = lo
    for j in range(k):
        b = hi
        it = 0
        with nogil:
            while b - a > 2.0 * EPS * fmax(fabs(a), fabs(b)) + abstol:
                mid = 0.5 * (a + b)
                if mid == a or mid == b:
                    break
                c = _count(d, e2, mid, pivmin)
                if c > j:
                    b = mid
                else:
                    a = mid
                it += 1
                if it > maxit:
                    break
        if it > maxit:
            return out, -1
        total += it
        o[j] = 0.5 * (a + b)
        # next eigenvalue is not below this one's lower bracket
    return out, total


def solve_shifted(double[:] d, double[:] e, double shift, double[:] rhs):
    """Solve (T - shift I) x = rhs, T symmetric tridiagonal, LU with partial
    pivoting (row interchanges); exactly zero pivots are replaced by
    eps * ||T||."""
    cdef Py_ssize_t n = d.shape[0], i
    cdef double fact, temp, tnorm = 0.0
    dl_a = np.empty(max(n - 1, 0)); du_a = np.empty(max(n - 1, 0))
    du2_a = np.zeros(max(n - 2, 0)); dd_a = np.empty(n); b_a = np.array(rhs, dtype=np.float64)
    piv_a = np.zeros(max(n - 1, 0), dtype=np.intp)
    cdef double[:] dl = dl_a, du = du_a, du2 = du2_a, dd = dd_a, b = b_a
    cdef Py_ssize_t[:] piv = piv_a
    for i in range(n):
        dd[i] = d[i] - shift
        tnorm = fmax(tnorm, fabs(dd[i]))
    for i in range(n - 1):
        dl[i] = e[i]
        du[i] = e[i]
        tnorm = fmax(tnorm, fabs(e[i]))
    cdef double tiny = EPS * fmax(tnorm, 1e-300)
    with nogil:
        for i in range(n - 1):
            if fabs(dd[i]) >= fabs(dl[i]):
                piv[i] = 0
                if dd[i] == 0.0:
                    dd[i] = tiny
                fact = dl[i] / dd[i]
                dl[i] = fact
                dd[i + 1] = dd[i + 1] - fact * du[i]
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
                b[i + 1] = b[i + 1] - dl[i] * b[i]
            else:
                temp = b[i]
                b[i] = b[i + 1]
                b[i + 1] = temp - dl[i] * b[i]
        b[n - 1] = b[n - 1] / dd[n - 1]
        if n > 1:
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2]
        i = n - 3
        while i >= 0:
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i]
            i -= 1
    return b_a
