"""Smoother, prolongations, and the variable V-cycle preconditioner."""

import numpy as np
import pytest
import scipy.sparse as sp
import scipy.linalg as la

from vlapmg import mesh, derham, multigrid


def _random_spd(n, seed):
    rng = np.random.default_rng(seed)
    Q = rng.standard_normal((n, n))
    A = Q @ Q.T + n * np.eye(n)
    return sp.csr_matrix(A)


def _gs_reference(A, x0, b, direction):
    """Textbook component loop, the oracle for the compiled sweep."""
    A = A.toarray()
    x = x0.copy()
    order = range(len(b)) if direction == 'forward' else range(len(b) - 1, -1, -1)
    for i in order:
        s = A[i] @ x - A[i, i] * x[i]
        x[i] = (b[i] - s) / A[i, i]
    return x


def test_smoothing_schedule():
    assert multigrid.smoothing_schedule(5, 2).tolist() == [11, 7, 5, 3, 2]
    assert multigrid.smoothing_schedule(3, 3).tolist() == [7, 5, 3]
    assert multigrid.smoothing_schedule(1, 2).tolist() == [2]
    sched = multigrid.smoothing_schedule(8, 2)
    assert sched[-1] == 2 and np.all(np.diff(sched) <= 0)


@pytest.mark.parametrize('direction', ['forward', 'backward'])
def test_gauss_seidel_matches_reference(direction):
    A = _random_spd(40, seed=1)
    rng = np.random.default_rng(2)
    b = rng.standard_normal(40)
    x0 = rng.standard_normal(40)
    got = multigrid.gauss_seidel_sweep(A, x0.copy(), b, direction)
    want = _gs_reference(A, x0, b, direction)
    assert np.allclose(got, want, rtol=1e-13)


def test_gauss_seidel_is_triangular_solve():
    # one forward sweep == x + tril(A)^{-1} (b - A x)
    A = _random_spd(25, seed=3)
    rng = np.random.default_rng(4)
    b, x0 = rng.standard_normal(25), rng.standard_normal(25)
    got = multigrid.gauss_seidel_sweep(A, x0.copy(), b, 'forward')
    L = np.tril(A.toarray())
    want = x0 + la.solve_triangular(L, b - A @ x0, lower=True)
    assert np.allclose(got, want, rtol=1e-12)


def test_gauss_seidel_rejects_bad_input():
    with pytest.raises(ValueError):
        multigrid.gauss_seidel_sweep(_random_spd(4, 0), np.zeros(4),
                                     np.zeros(4), 'sideways')
    A = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 2.0]]))
    with pytest.raises(ValueError):
        multigrid.gauss_seidel_sweep(A, np.zeros(2), np.ones(2))


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_commuting_prolongations(domain, any4):
    """grad/curl of interpolated functions == interpolation of grad/curl,
    down to the last bit."""
    hier, levels = any4[domain]
    for c, f in zip(hier.meshes, hier.meshes[1:]):
        Pv = multigrid.prolongation('vertex', c, f)
        Pe = multigrid.prolongation('edge', c, f)
        P0 = multigrid.prolongation('p0', c, f)
        Gc = derham.differential_matrix(c, 'grad')
        Gf = derham.differential_matrix(f, 'grad')
        Cc = derham.differential_matrix(c, 'curl')
        Cf = derham.differential_matrix(f, 'curl')
        d1 = (Gf @ Pv - Pe @ Gc)
        d2 = (Cf @ Pe - P0 @ Cc)
        assert d1.nnz == 0 or np.max(np.abs(d1.data)) == 0.0
        assert d2.nnz == 0 or np.max(np.abs(d2.data)) == 0.0


def test_vertex_prolongation_reproduces_linears():
    c = mesh.build_coarse('lshape')
    f = mesh.refine(c)
    P = multigrid.prolongation('vertex', c, f)
    for a, b2, g in ((1.0, 0.0, 0.0), (0.2, -1.3, 0.7)):
        fc = a + b2 * c.vertices[:, 0] + g * c.vertices[:, 1]
        ff = a + b2 * f.vertices[:, 0] + g * f.vertices[:, 1]
        assert np.allclose(P @ fc, ff, rtol=0, atol=1e-15)


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_edge_prolongation_reproduces_constant_fields(domain):
    # tangential line-integral DoFs of a constant field F: (p_hi - p_lo) . F
    c = mesh.build_coarse(domain)
    f = mesh.refine(c)
    P = multigrid.prolongation('edge', c, f)
    for F in (np.array([1.0, 0.0]), np.array([-0.4, 2.2])):
        dof_c = (c.vertices[c.edges[:, 1]] - c.vertices[c.edges[:, 0]]) @ F
        dof_f = (f.vertices[f.edges[:, 1]] - f.vertices[f.edges[:, 0]]) @ F
        assert np.allclose(P @ dof_c, dof_f, rtol=0, atol=1e-14)


def test_p0_prolongation_shares_mass():
    c = mesh.build_coarse('square')
    f = mesh.refine(c)
    P = multigrid.prolongation('p0', c, f)
    assert P.shape == (f.nt, c.nt)
    assert np.allclose(P.toarray().sum(axis=0), np.ones(c.nt))
    assert np.all(P.data == 0.25)


def test_prolongation_rejects_non_refinement():
    c = mesh.build_coarse('square')
    with pytest.raises(ValueError):
        multigrid.prolongation('vertex', c, c)


def test_hierarchy_shapes(square4):
    _, levels = square4
    eh = multigrid.edge_hierarchy(levels)
    assert len(eh.matrices) == 4 and len(eh.prolongations) == 3
    for k, P in enumerate(eh.prolongations):
        assert P.shape == (eh.matrices[k + 1].shape[0], eh.matrices[k].shape[0])
    vh = multigrid.vertex_hierarchy(levels)
    for k, lv in enumerate(levels):
        assert vh.matrices[k].shape[0] == len(lv.interior_vertices)


def test_vcycle_single_level_is_exact_solve(square4):
    _, levels = square4
    hier = multigrid.edge_hierarchy(levels[:1])
    vc = multigrid.VCycle(hier, mJ=2)
    A = hier.matrices[0].toarray()
    rng = np.random.default_rng(5)
    r = rng.standard_normal(A.shape[0])
    assert np.allclose(vc(r), np.linalg.solve(A, r), rtol=1e-12)


def test_vcycle_handles_empty_coarse_level(lshape4):
    # the coarsest L-shape level has no interior vertices at all
    _, levels = lshape4
    vh = multigrid.vertex_hierarchy(levels)
    assert vh.matrices[0].shape == (0, 0)
    vc = multigrid.VCycle(vh, mJ=2)
    r = np.random.default_rng(6).standard_normal(vh.matrices[-1].shape[0])
    y = vc(r)
    assert y.shape == r.shape and np.all(np.isfinite(y))
    assert r @ y > 0


def test_vcycle_is_linear(square4):
    _, levels = square4
    hier = multigrid.edge_hierarchy(levels[:3])
    vc = multigrid.VCycle(hier, mJ=2)
    rng = np.random.default_rng(7)
    r, s = rng.standard_normal((2, hier.matrices[-1].shape[0]))
    assert np.allclose(vc(2.5 * r - s), 2.5 * vc(r) - vc(s), rtol=1e-11)


def test_vcycle_symmetric_positive(square4):
    _, levels = square4
    hier = multigrid.edge_hierarchy(levels)
    vc = multigrid.VCycle(hier, mJ=2)
    n = hier.matrices[-1].shape[0]
    rng = np.random.default_rng(8)
    for _ in range(20):
        x, y = rng.standard_normal((2, n))
        lhs, rhs = vc(x) @ y, x @ vc(y)
        assert abs(lhs - rhs) <= 1e-12 * (np.linalg.norm(vc(x)) * np.linalg.norm(y)
                                          + np.linalg.norm(x) * np.linalg.norm(vc(y)))
        assert vc(x) @ x > 0


def test_vcycle_error_contraction(square4):
    """As a preconditioner B for A, the error propagator I - BA must be a
    contraction in the A-norm: spec(BA) = spec(L^T B L) for A = L L^T lies in
    (0, 2), well away from both ends."""
    _, levels = square4
    hier = multigrid.edge_hierarchy(levels)
    A = hier.matrices[-1].toarray()
    vc = multigrid.VCycle(hier, mJ=2)
    B = np.column_stack([vc(col) for col in np.eye(A.shape[0])])
    L = la.cholesky(A, lower=True)
    lam = la.eigvalsh(L.T @ B @ L)
    assert lam.min() > 0.0
    assert np.max(np.abs(1.0 - lam)) < 0.5


def test_nlevels_argument(square4):
    _, levels = square4
    hier = multigrid.edge_hierarchy(levels)
    vc2 = multigrid.VCycle(hier, nlevels=2, mJ=2)
    n2 = hier.matrices[1].shape[0]
    r = np.random.default_rng(9).standard_normal(n2)
    sub = multigrid.edge_hierarchy(levels[:2])
    vc_sub = multigrid.VCycle(sub, mJ=2)
    assert np.allclose(vc2(r), vc_sub(r), rtol=1e-13)
