"""Discrete de Rham complex on one mesh level.

Spaces (all lowest order):

* S_h  - P1 Lagrange elements, one DoF per vertex;
* U_h  - Whitney edge elements phi_e = lam_i grad(lam_j) - lam_j grad(lam_i)
         for the global edge e = (i, j), i < j, with unit tangential
         line-integral DoF along i -> j;
* W_h  - scaled indicators chi_T with integral one, i.e. value 1/|T|.

Differential matrices are pure signed incidence, so curl-after-grad vanishes
as an integer identity (C @ G == 0); all metric information lives in the mass
matrices.  The scaled gradient B = G^T M_e and the lumped Schur complement
A~ = B^T diag(M~_v)^{-1} B + C^T M_f C are the building blocks of every solver
in this package: A~ restricted to interior edges is an explicit sparse SPD
matrix, while the exact Schur complement (with the consistent M_v inverse) is
kept as an operator for verification only, since M_v^{-1} is dense.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

__all__ = ['DeRhamLevel', 'assemble', 'differential_matrix', 'assemble_mass',
           'lump_mass', 'schur_lumped', 'SchurExact', 'p1_stiffness',
           'write_matrix']

# base traversal signs of the local edge slots (a,b), (a,c), (b,c) along the
# counterclockwise boundary a -> b -> c -> a
_SLOT_TRAVERSAL = np.array([1, -1, 1])


def _slot_orientation(mesh):
    """+1 where a local slot pair already runs low index -> high index."""
    pairs = mesh.triangles[:, [[0, 1], [0, 2], [1, 2]]]
    return np.where(pairs[:, :, 0] < pairs[:, :, 1], 1, -1)


def _geometry(mesh):
    """Areas and the constant barycentric gradients of every triangle.

    grads[t, i] = grad(lam_i) on triangle t, computed as
    perp(p_{i+2} - p_{i+1}) / (2 |T|) with perp(x, y) = (-y, x).
    """
    p = mesh.vertices[mesh.triangles]          # (nt, 3, 2)
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    area = 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
    edge = p[:, [2, 0, 1]] - p[:, [1, 2, 0]]   # opposite edge of each vertex
    grads = np.stack((-edge[:, :, 1], edge[:, :, 0]), axis=2)
    grads /= (2.0 * area)[:, None, None]
    return area, grads


def differential_matrix(mesh, which):
    """Signed incidence matrix of grad (edges x vertices) or curl (triangles x edges).

    grad: G[e, hi] = +1 at the edge head, G[e, lo] = -1 at the tail.
    curl: C[T, e] = +1 where the CCW boundary of T runs along e's global
    orientation, -1 against it.  Entries are integers; C @ G == 0 exactly.
    """
    if which == 'grad':
        ne = mesh.ne
        rows = np.repeat(np.arange(ne), 2)
        cols = mesh.edges.ravel()
        vals = np.tile(np.array([-1, 1], dtype=np.int64), ne)
        return sp.csr_matrix((vals, (rows, cols)), shape=(ne, mesh.nv))
    if which == 'curl':
        signs = _SLOT_TRAVERSAL[None, :] * _slot_orientation(mesh)
        rows = np.repeat(np.arange(mesh.nt), 3)
        return sp.csr_matrix((signs.ravel().astype(np.int64),
                              (rows, mesh.tri_edges.ravel())),
                             shape=(mesh.nt, mesh.ne))
    raise ValueError("which must be 'grad' or 'curl', got %r" % (which,))


def assemble_mass(mesh, space):
    """Mass matrix of the vertex, edge, or face space (exact integrals).

    vertex: P1 local block |T|/12 * [[2,1,1],[1,2,1],[1,1,2]];
    edge:   Whitney 1-form products, assembled with the global edge
            orientation baked into the local signs;
    face:   diag(1/|T|) for the chi_T basis normalized to unit integral.
    """
    area, grads = _geometry(mesh)
    if np.any(area <= 0.0):
        raise ValueError('degenerate triangle: nonpositive area')

    if space == 'face':
        return sp.diags(1.0 / area).tocsr()

    if space == 'vertex':
        local = (np.ones((3, 3)) + np.eye(3)) / 12.0
        blocks = area[:, None, None] * local[None]
        rows = np.repeat(mesh.triangles, 3, axis=1).reshape(-1)
        cols = np.tile(mesh.triangles, (1, 3)).reshape(-1)
        M = sp.csr_matrix((blocks.reshape(-1), (rows, cols)),
                          shape=(mesh.nv, mesh.nv))
        M.sum_duplicates()
        return M

    if space == 'edge':
        # S[i,j] = int lam_i lam_j = |T| (1 + delta_ij) / 12
        S = (np.ones((3, 3)) + np.eye(3)) / 12.0
        gg = np.einsum('tik,tjk->tij', grads, grads)        # grad dot grad
        slots = np.array([[0, 1], [0, 2], [1, 2]])
        local = np.empty((mesh.nt, 3, 3))
        for s, (a, b) in enumerate(slots):
            for t, (c, d) in enumerate(slots):
                local[:, s, t] = (gg[:, b, d] * S[a, c] - gg[:, b, c] * S[a, d]
                                  - gg[:, a, d] * S[b, c] + gg[:, a, c] * S[b, d])
        local *= area[:, None, None]
        orient = _slot_orientation(mesh).astype(float)
        local *= orient[:, :, None] * orient[:, None, :]
        rows = np.repeat(mesh.tri_edges, 3, axis=1).reshape(-1)
        cols = np.tile(mesh.tri_edges, (1, 3)).reshape(-1)
        M = sp.csr_matrix((local.reshape(-1), (rows, cols)),
                          shape=(mesh.ne, mesh.ne))
        M.sum_duplicates()
        return M

    raise ValueError("space must be 'vertex', 'edge' or 'face', got %r" % (space,))


def p1_stiffness(mesh):
    """P1 stiffness matrix; equals G^T M_e G exactly (Whitney interpolation of
    gradients of P1 functions is exact), assembled directly so the matrix is
    bitwise symmetric."""
    area, grads = _geometry(mesh)
    local = np.einsum('tik,tjk->tij', grads, grads) * area[:, None, None]
    rows = np.repeat(mesh.triangles, 3, axis=1).reshape(-1)
    cols = np.tile(mesh.triangles, (1, 3)).reshape(-1)
    A = sp.csr_matrix((local.reshape(-1), (rows, cols)), shape=(mesh.nv, mesh.nv))
    A.sum_duplicates()
    return A


def lump_mass(M, space):
    """Diagonal lumping, returned as a 1-d array of the diagonal.

    vertex space: row sums (the patch-area lumping, exact for int(phi_v));
    edge space: the diagonal of M (row sums of the Whitney mass are not
    sign-guaranteed).  Every lumped entry must come out positive.
    """
    M = sp.csr_matrix(M)
    if space == 'vertex':
        d = np.asarray(M.sum(axis=1)).ravel()
    elif space == 'edge':
        d = M.diagonal().copy()
    else:
        raise ValueError("space must be 'vertex' or 'edge', got %r" % (space,))
    if np.any(d <= 0.0):
        raise ValueError('nonpositive lumped mass entry (orientation or '
                         'assembly bug): min %g' % d.min())
    return d


class DeRhamLevel:
    """All per-level matrices plus the interior DoF index sets.

    Full-space matrices: G, C, Mv, Me, Mf, the lumped diagonals mv_lumped and
    me_lumped (1-d arrays), B = G^T Me, Sc = C^T Mf C, and Ap = P1 stiffness.
    ``interior_vertices`` / ``interior_edges`` index the DoFs away from the
    domain boundary (slit copies included in the boundary).
    """

    def __init__(self, mesh):
        self.mesh = mesh
        self.G = differential_matrix(mesh, 'grad')
        self.C = differential_matrix(mesh, 'curl')
        self.Mv = assemble_mass(mesh, 'vertex')
        self.Me = assemble_mass(mesh, 'edge')
        self.Mf = assemble_mass(mesh, 'face')
        self.mv_lumped = lump_mass(self.Mv, 'vertex')
        self.me_lumped = lump_mass(self.Me, 'edge')
        self.B = (self.Me @ self.G).T.tocsr()
        self.Ap = p1_stiffness(mesh)
        self.interior_vertices = np.flatnonzero(~mesh.vertex_is_boundary)
        self.interior_edges = np.flatnonzero(~mesh.edge_is_boundary)

    # -- interior restrictions ------------------------------------------------
    def B_int(self):
        """B on interior vertices x interior edges."""
        return self.B[self.interior_vertices][:, self.interior_edges].tocsr()

    def G_int(self):
        """G on interior edges x interior vertices."""
        return self.G[self.interior_edges][:, self.interior_vertices].tocsr()

    def Mv_int(self):
        return self.Mv[self.interior_vertices][:, self.interior_vertices].tocsr()

    def Me_int(self):
        return self.Me[self.interior_edges][:, self.interior_edges].tocsr()

    def Ap_int(self):
        return self.Ap[self.interior_vertices][:, self.interior_vertices].tocsr()

    def mv_lumped_int(self):
        return self.mv_lumped[self.interior_vertices]

    def curl_stiffness_int(self):
        """C^T M_f C on interior edges, assembled as W^T W (bitwise symmetric)."""
        W = sp.diags(np.sqrt(self.Mf.diagonal())) @ self.C[:, self.interior_edges]
        return (W.T @ W).tocsr()

    @property
    def dof_total(self):
        """Reported size dim S_h + dim U_h, boundary DoFs included."""
        return self.mesh.nv + self.mesh.ne


def assemble(mesh):
    """Assemble the whole complex on one mesh level."""
    return DeRhamLevel(mesh)


def schur_lumped(level):
    """Lumped Schur complement A~ = B^T diag(mv~)^{-1} B + C^T M_f C on
    interior edges - an explicit sparse SPD matrix, assembled as a sum of two
    W^T W products so that it is bitwise symmetric."""
    Bi = level.B_int()
    W = sp.diags(1.0 / np.sqrt(level.mv_lumped_int())) @ Bi
    A = (W.T @ W + level.curl_stiffness_int()).tocsr()
    A.sum_duplicates()
    return A


class SchurExact:
    """The consistent Schur complement A = B^T M_v^{-1} B + C^T M_f C on
    interior edges, as an operator (M_v^{-1} is dense, so the matrix is never
    formed; the inner solve is a sparse factorization of interior M_v)."""

    def __init__(self, level):
        self.level = level
        self.Bi = level.B_int()
        self.Sc = level.curl_stiffness_int()
        self._mv_solve = spla.factorized(level.Mv_int().tocsc())
        self.n = self.Bi.shape[1]
        self.shape = (self.n, self.n)

    def apply(self, u):
        u = np.asarray(u, dtype=float)
        if u.shape != (self.n,):
            raise ValueError('expected interior edge vector of length %d, got %r'
                             % (self.n, u.shape))
        return self.Bi.T @ self._mv_solve(self.Bi @ u) + self.Sc @ u

    __call__ = apply

    def dense(self):
        """Materialize the operator column by column (verification sizes only)."""
        A = np.empty((self.n, self.n))
        e = np.zeros(self.n)
        for j in range(self.n):
            e[j] = 1.0
            A[:, j] = self.apply(e)
            e[j] = 0.0
        return A


def write_matrix(M, path):
    """Dump a sparse matrix as text: ``nrows ncols nnz`` then one
    ``i j value`` line per entry with 17 significant digits, sorted by (i, j)."""
    M = sp.coo_matrix(M)
    order = np.lexsort((M.col, M.row))
    with open(path, 'w') as f:
        f.write('%d %d %d\n' % (M.shape[0], M.shape[1], M.nnz))
        for k in order:
            f.write('%d %d %.17g\n' % (M.row[k], M.col[k], M.data[k]))
