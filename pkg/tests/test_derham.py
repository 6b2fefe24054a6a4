"""Incidence/mass assembly against exact symbolic integration, and the
structural identities the solvers lean on."""

import numpy as np
import pytest
import scipy.sparse as sp
import sympy

from vlapmg import mesh, derham


def _tiny_mesh(points, tris):
    return mesh.TriMesh(np.asarray(points, dtype=float),
                        np.asarray(tris, dtype=np.int64), 1.0)


def _whitney_mass_exact(m):
    """Edge mass matrix by exact symbolic integration, one triangle at a time.

    phi_e = lam_i grad(lam_j) - lam_j grad(lam_i) for global edge e = (i, j)
    with i < j; integration over each triangle via the affine map to the
    reference simplex.
    """
    x, y = sympy.symbols('x y')
    M = sympy.zeros(m.ne, m.ne)
    for t in range(m.nt):
        vid = m.triangles[t]
        p = [sympy.Matrix(m.vertices[v]) for v in vid]
        J = sympy.Matrix.hstack(p[1] - p[0], p[2] - p[0])
        detJ = J.det()
        lams = [1 - x - y, x, y]
        grads = []
        for k in range(3):
            gref = sympy.Matrix([sympy.diff(lams[k], x), sympy.diff(lams[k], y)])
            grads.append(J.T.inv() * gref)
        phis = []
        for a, b in ((0, 1), (0, 2), (1, 2)):
            lo, hi = sorted((vid[a], vid[b]))
            sign = 1 if vid[a] == lo else -1
            phis.append(sign * (lams[a] * grads[b] - lams[b] * grads[a]))
        for s in range(3):
            for r in range(3):
                val = sympy.integrate(
                    sympy.integrate((phis[s].T * phis[r])[0, 0] * detJ,
                                    (y, 0, 1 - x)), (x, 0, 1))
                M[m.tri_edges[t, s], m.tri_edges[t, r]] += val
    return np.array(M.evalf(17), dtype=float)


def test_edge_mass_matches_symbolic_oracle():
    # two triangles, one of them skewed, sharing a diagonal
    m = _tiny_mesh([[0, 0], [1, 0], [0.3, 1.1], [-0.7, 0.8]],
                   [[0, 1, 2], [0, 2, 3]])
    exact = _whitney_mass_exact(m)
    got = derham.assemble_mass(m, 'edge').toarray()
    assert np.max(np.abs(got - exact)) < 1e-14


def test_reference_element_masses():
    m = _tiny_mesh([[0, 0], [1, 0], [0, 1]], [[0, 1, 2]])
    Mv = derham.assemble_mass(m, 'vertex').toarray()
    assert np.allclose(Mv * 24, np.ones((3, 3)) + np.eye(3), rtol=0, atol=1e-15)
    Mf = derham.assemble_mass(m, 'face').toarray()
    assert np.allclose(Mf, [[2.0]])
    Me = derham.assemble_mass(m, 'edge').toarray()
    assert np.allclose(np.diag(Me), [1 / 3, 1 / 3, 1 / 6], rtol=1e-15)


def test_vertex_mass_integrates_constants():
    # row sums of Mv = integral of the hat functions; total = domain area
    for dom, area in (('square', 1.0), ('lshape', 3.0), ('crack', 2.0)):
        m = mesh.build_hierarchy(dom, 3).meshes[-1]
        Mv = derham.assemble_mass(m, 'vertex')
        assert abs(Mv.sum() - area) < 1e-13


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_complex_is_exact(domain, any4):
    """curl o grad = 0 as an integer identity on every level."""
    _, levels = any4[domain]
    for lv in levels:
        CG = (lv.C @ lv.G)
        assert CG.nnz == 0 or np.max(np.abs(CG.data)) == 0
        assert lv.C.data.dtype.kind == 'i' and lv.G.data.dtype.kind == 'i'


def test_grad_rows():
    m = mesh.build_coarse('square')
    G = derham.differential_matrix(m, 'grad').toarray()
    for e, (lo, hi) in enumerate(m.edges):
        row = np.zeros(m.nv)
        row[lo], row[hi] = -1, 1
        assert np.array_equal(G[e], row)


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_curl_column_sums(domain):
    """Interior edges get opposite induced signs from their two triangles."""
    m = mesh.build_hierarchy(domain, 3).meshes[-1]
    C = derham.differential_matrix(m, 'curl')
    colsum = np.asarray(np.abs(C).sum(axis=0)).ravel() \
        - np.abs(np.asarray(C.sum(axis=0)).ravel())
    # interior: |+1| + |-1| - |0| = 2; boundary: 1 - 1 = 0
    assert np.array_equal(colsum != 0, ~m.edge_is_boundary)


def test_stiffness_is_gram_of_gradients(square_l3):
    lv = square_l3
    D = lv.Ap - lv.G.T @ lv.Me @ lv.G
    assert np.max(np.abs(D.toarray())) < 1e-14
    assert (lv.Ap - lv.Ap.T).nnz == 0


def test_scaled_gradient_block(square_l3):
    lv = square_l3
    assert np.max(np.abs((lv.B - (lv.Me @ lv.G).T).toarray())) == 0.0


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_bitwise_symmetry(domain, any4):
    _, levels = any4[domain]
    lv = levels[-1]
    for M in (lv.Mv, lv.Me, lv.Ap, derham.schur_lumped(lv)):
        assert (M - M.T).nnz == 0


def test_masses_positive_definite(square_l3):
    lv = square_l3
    for M in (lv.Mv, lv.Me):
        lam = np.linalg.eigvalsh(M.toarray())
        assert lam.min() > 0.0
    assert np.all(lv.mv_lumped > 0) and np.all(lv.me_lumped > 0)


def test_face_mass_is_inverse_area():
    m = mesh.build_coarse('crack')
    assert np.allclose(derham.assemble_mass(m, 'face').diagonal(),
                       1.0 / m.signed_areas(), rtol=1e-15)


def test_schur_lumped_spd(square_l3):
    A = derham.schur_lumped(square_l3)
    lam = np.linalg.eigvalsh(A.toarray())
    assert lam.min() > 0.0


def test_lumped_vs_exact_schur_equivalence(square_l3):
    """Rayleigh ratios of the lumped against the consistent Schur operator
    stay inside a fixed interval [1/4, 4]."""
    lv = square_l3
    At = derham.schur_lumped(lv)
    Ax = derham.SchurExact(lv)
    rng = np.random.default_rng(7)
    for _ in range(100):
        u = rng.standard_normal(At.shape[0])
        ratio = (u @ (At @ u)) / (u @ Ax.apply(u))
        assert 0.25 <= ratio <= 4.0


def test_schur_exact_operator(square_l3):
    lv = square_l3
    Ax = derham.SchurExact(lv)
    D = Ax.dense()
    assert np.max(np.abs(D - D.T)) < 1e-12
    u = np.random.default_rng(0).standard_normal(Ax.n)
    assert np.allclose(D @ u, Ax(u), rtol=1e-12)
    with pytest.raises(ValueError):
        Ax.apply(np.zeros(Ax.n + 1))


def test_interior_sets_respect_slit():
    lv = derham.assemble(mesh.build_hierarchy('crack', 3).meshes[-1])
    m = lv.mesh
    on_slit = (np.abs(m.vertices[:, 1]) < 1e-14) & (m.vertices[:, 0] > 1e-14)
    assert not np.any(on_slit[lv.interior_vertices])
    ev = m.vertices[m.edges].mean(axis=1)
    slit_edge = (np.abs(ev[:, 1]) < 1e-14) & (ev[:, 0] > 1e-14)
    assert not np.any(slit_edge[lv.interior_edges])


def test_lump_mass_rejects_sign_loss():
    bad = sp.csr_matrix(np.array([[1.0, 2.0], [2.0, -3.0]]))
    with pytest.raises(ValueError):
        derham.lump_mass(bad, 'edge')
    with pytest.raises(ValueError):
        derham.lump_mass(sp.eye(3), 'volume')


def test_write_matrix_roundtrip(tmp_path):
    rng = np.random.default_rng(3)
    A = sp.random(7, 5, density=0.4, random_state=3, format='csr')
    path = tmp_path / 'mat.txt'
    derham.write_matrix(A, str(path))
    lines = path.read_text().strip().split('\n')
    nr, nc, nnz = map(int, lines[0].split())
    assert (nr, nc, nnz) == (7, 5, A.nnz)
    B = np.zeros((nr, nc))
    for line in lines[1:]:
        i, j, v = line.split()
        B[int(i), int(j)] = float(v)
    assert np.array_equal(B, A.toarray())


def test_differential_matrix_rejects_unknown():
    m = mesh.build_coarse('square')
    with pytest.raises(ValueError):
        derham.differential_matrix(m, 'div')
    with pytest.raises(ValueError):
        derham.assemble_mass(m, 'volume')
