import math

import numpy as np
import pytest

from calogero_eop import geometry
from calogero_eop.errors import GridError, NullFunctionError, ParameterError, QuadratureError, SolverError
from calogero_eop.families import Couplings
from calogero_eop.numverify import (
    TOL,
    GridSpec,
    TridiagMatrix,
    adjudicate_lambda,
    dense_eigvals,
    discretize,
    eigen_tridiag,
    eigenfunction_residuals,
    orthogonality,
    quadrature,
    residual,
    spectrum_match,
    threebody_residual,
)


def test_grid_validation():
    g = GridSpec(0.0, 1.0, 99)
    assert g.h == pytest.approx(0.01)
    assert g.nodes[0] == pytest.approx(0.01) and g.nodes[-1] == pytest.approx(0.99)
    with pytest.raises(GridError):
        GridSpec(1.0, 0.0, 100)
    with pytest.raises(GridError):
        GridSpec(0.0, 1.0, 10)
    with pytest.raises(GridError):
        GridSpec(0.0, math.inf, 100)
    with pytest.raises(GridError):
        GridSpec(0.0, 5.0, 100, "radial")


def test_discretize_rejects_infinite_potential():
    with np.errstate(divide="ignore"), pytest.raises(GridError, match="x = "):
        discretize(lambda x: 1 / (x - 0.5), GridSpec(0.0, 1.0, 99))


def test_harmonic_oscillator_levels():
    grid = GridSpec(-10.0, 10.0, 2047)
    pairs = eigen_tridiag(discretize(lambda x: x * x, grid), 5)
    assert [p.value for p in pairs] == pytest.approx([1, 3, 5, 7, 9], rel=1e-4)
    for p in pairs:
        assert np.sum(p.samples ** 2) * grid.h == pytest.approx(1.0)
    # ground state is positive and even
    v0 = pairs[0].samples
    assert v0[1023] > 0 and np.allclose(v0, v0[::-1], atol=1e-8)


def test_eigen_tridiag_matches_lapack():
    rng = np.random.default_rng(2)
    n = 300
    grid = GridSpec(0.0, 1.0, n)
    mat = TridiagMatrix(rng.normal(size=n), rng.normal(size=n - 1), grid)
    ref = np.linalg.eigvalsh(mat.dense())[:8]
    pairs = eigen_tridiag(mat, 8)
    assert [p.value for p in pairs] == pytest.approx(ref, abs=1e-10)
    for p, lam in zip(pairs, ref):
        v = p.samples
        assert np.linalg.norm(mat.matvec(v) - lam * v) <= 1e-8 * np.linalg.norm(v) * mat.norm()


def test_degenerate_eigenvalues_give_orthogonal_vectors():
    # two identical blocks decoupled by a zero off-diagonal: every level is double
    n = 200
    grid = GridSpec(0.0, 1.0, 2 * n)
    block = np.linspace(0.0, 3.0, n)
    off = np.full(2 * n - 1, -0.7)
    off[n - 1] = 0.0
    mat = TridiagMatrix(np.concatenate([block, block]), off, grid)
    pairs = eigen_tridiag(mat, 6)
    vals = [p.value for p in pairs]
    assert vals[0] == pytest.approx(vals[1], abs=1e-12)
    V = np.array([p.samples for p in pairs]) * math.sqrt(grid.h)
    assert np.allclose(V @ V.T, np.eye(6), atol=1e-9)


def test_solver_errors():
    grid = GridSpec(0.0, 1.0, 100)
    cmat = TridiagMatrix(np.ones(100, dtype=complex), np.zeros(99), grid)
    with pytest.raises(SolverError):
        eigen_tridiag(cmat, 1)
    with pytest.raises(ParameterError):
        eigen_tridiag(TridiagMatrix(np.ones(100), np.zeros(99), grid), 0)
    big = GridSpec(0.0, 1.0, 600)
    with pytest.raises(ParameterError):
        dense_eigvals(TridiagMatrix(np.ones(600), np.zeros(599), big))


def test_dense_eigvals_complex():
    grid = GridSpec(0.0, math.pi, 255)
    mat = discretize(lambda x: np.zeros_like(x, dtype=complex), grid)
    assert mat.is_complex
    w = dense_eigvals(mat, 3)
    # discrete particle in a box: (2/h sin(k h/2))^2
    k = np.arange(1, 4)
    assert np.allclose(w, (2 / grid.h * np.sin(k * grid.h / 2)) ** 2, rtol=1e-10)


def test_residual_exact_discrete_pair():
    grid = GridSpec(0.0, 1.0, 200)
    V = lambda x: 50 * (x - 0.5) ** 2
    pair = eigen_tridiag(discretize(V, grid), 1)[0]
    assert residual(pair.samples, pair.value, V, grid, stencil="second") <= 1e-9


def test_residual_analytic_pair():
    grid = GridSpec(0.0, 1.0, 512)
    psi = lambda x: np.sin(math.pi * x)
    E = math.pi ** 2
    zero = lambda x: np.zeros_like(x)
    assert residual(psi, E, zero, grid) <= 1e-8
    assert residual(psi(grid.nodes), E, zero, grid) <= 1e-5
    assert residual(psi, 1.01 * E, zero, grid) >= 1e-3
    with pytest.raises(NullFunctionError):
        residual(np.zeros(512), E, zero, grid)
    with pytest.raises(GridError):
        residual(np.ones(10), E, zero, grid)
    with pytest.raises(ValueError):
        residual(psi, E, zero, grid, stencil="ninth")


def test_quadrature():
    assert quadrature(lambda x: math.exp(-x * x), (0.0, math.inf)) == pytest.approx(
        math.sqrt(math.pi) / 2, rel=1e-12)
    z = quadrature(lambda x: np.exp(1j * x), (0.0, 1.0))
    assert z == pytest.approx(complex(math.sin(1.0), 1 - math.cos(1.0)), rel=1e-12)
    with pytest.raises(QuadratureError) as info:
        quadrature(lambda x: math.sin(1 / x) / x, (0.0, 1.0), limit=5)
    assert info.value.estimate is not None
    with pytest.raises(ValueError):
        quadrature(lambda x: x, (1.0, 0.0))


def test_radial_spectrum_match():
    rep = spectrum_match("SCARF", Couplings(1.0, 4.0, 0.0, 1, 1), "radial", 4, npoints=2048)
    assert rep["passed"] and rep["max_rel_err"] <= TOL.radial_spectrum_2048
    assert [r["analytic"] for r in rep["rows"]] == pytest.approx(
        [math.sqrt(1.5) * (2 * n + 7) for n in range(4)])


def test_angular_spectrum_match_real():
    rep = spectrum_match("SCARF", Couplings(1.0, 4.0, 0.0, 1, 1), "angular", 3)
    assert rep["passed"]
    assert [r["analytic"] for r in rep["rows"]] == pytest.approx([36.0, 81.0, 144.0])
    assert rep["missing"] == []


def test_angular_spectrum_pt_residual_mode():
    rep = spectrum_match("PT_ECKART", Couplings(1.0, 10.0, 1.0, 1, 1), "angular", 3)
    assert rep["mode"] == "residual" and rep["passed"]


def test_eigenfunction_residuals_and_gain():
    rows = eigenfunction_residuals("SCARF", Couplings(1.0, 10.0, 1.5, 1, 1), 1, 1)
    assert rows and all(r["passed"] for r in rows)
    assert all(r["residual"] <= TOL.residual for r in rows)
    assert all(r["gain"] >= TOL.perturbation_gain for r in rows)


def test_adjudication_prefers_verified_form():
    out = adjudicate_lambda("PT_ECKART", Couplings(1.0, 10.0, 1.0, 1, 1), lmax=3)
    assert out["adopted"] == "verified"
    assert out["matching_variants"] == ["verified"]
    with pytest.raises(ParameterError):
        adjudicate_lambda("SCARF", Couplings(1.0, 4.0, 0.0, 1, 1))


def test_orthogonality_scarf():
    out = orthogonality("SCARF", Couplings(1.0, 10.0, 1.5, 1, 1), nmax=2, lmax=2)
    assert out["max_radial"] <= TOL.overlap and out["max_angular"] <= TOL.overlap


@pytest.mark.parametrize("family,g,f1", [("SCARF", 4.0, 0.0), ("PT_ECKART", 10.0, 1.0)])
def test_threebody_residual(family, g, f1):
    c = Couplings(1.0, g, f1, 1, 1)
    ell = 0
    phi = 0.1 if family == "SCARF" else 0.8
    cfg = geometry.from_jacobi(geometry.JacobiCoords(0.3, 1.8, phi))
    assert threebody_residual(family, c, 1, ell, cfg) <= 1e-4
