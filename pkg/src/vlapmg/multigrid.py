"""Variable V-cycle preconditioner with point Gauss-Seidel smoothing.

The hierarchy is non-inherited: the level-k operator is assembled on the
level-k mesh (never a Galerkin triple product).  One cycle on level k runs

* m_k forward Gauss-Seidel sweeps (zero initial guess),
* one recursive correction on level k-1 restricted by the prolongation
  transpose,
* m_k backward Gauss-Seidel sweeps,

with a dense Cholesky solve on the coarsest level.  The smoothing counts
m_k = ceil(1.5**(J-k) * m_J) grow geometrically toward the coarse levels.
Pairing forward pre-sweeps with backward post-sweeps makes a single cycle a
symmetric positive definite operator, so it can sit inside MINRES; it is
exposed strictly as a one-application preconditioner (iterating it, or using
a W-cycle, would destroy that property).
"""

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from . import derham
from .mesh import _find_edges

__all__ = ['smoothing_schedule', 'gauss_seidel_sweep', 'prolongation',
           'MGHierarchy', 'VCycle', 'vcycle', 'edge_hierarchy',
           'vertex_hierarchy']

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:                                  # pragma: no cover
    _HAVE_NUMBA = False

if _HAVE_NUMBA:
    @njit(cache=True)
    def _gs_forward(indptr, indices, data, diag, x, b):
        for i in range(x.shape[0]):
            s = b[i]
            for jj in range(indptr[i], indptr[i + 1]):
                j = indices[jj]
                if j != i:
                    s -= data[jj] * x[j]
            x[i] = s / diag[i]

    @njit(cache=True)
    def _gs_backward(indptr, indices, data, diag, x, b):
        for i in range(x.shape[0] - 1, -1, -1):
            s = b[i]
            for jj in range(indptr[i], indptr[i + 1]):
                j = indices[jj]
                if j != i:
                    s -= data[jj] * x[j]
            x[i] = s / diag[i]


class _Smoother:
    """Prepared CSR data for in-place Gauss-Seidel sweeps on one matrix."""

    def __init__(self, A):
        A = sp.csr_matrix(A)
        A.sort_indices()
        self.diag = A.diagonal().copy()
        if self.diag.size and np.any(self.diag == 0.0):
            raise ValueError('zero diagonal entry; Gauss-Seidel undefined')
        self.indptr = A.indptr
        self.indices = A.indices
        self.data = A.data
        if not _HAVE_NUMBA:
            self._lower = sp.tril(A, 0).tocsr()
            self._upper = sp.triu(A, 0).tocsr()
            self._A = A

    def forward(self, x, b):
        if _HAVE_NUMBA:
            _gs_forward(self.indptr, self.indices, self.data, self.diag, x, b)
        else:
            # (D+L) x_new = b - U x_old, as a correction from the current x
            from scipy.sparse.linalg import spsolve_triangular
            x += spsolve_triangular(self._lower, b - self._A @ x, lower=True)

    def backward(self, x, b):
        if _HAVE_NUMBA:
            _gs_backward(self.indptr, self.indices, self.data, self.diag, x, b)
        else:
            from scipy.sparse.linalg import spsolve_triangular
            x += spsolve_triangular(self._upper, b - self._A @ x, lower=False)


def gauss_seidel_sweep(A, x, b, direction='forward'):
    """One point Gauss-Seidel sweep over the fixed DoF ordering of A.

    Updates x in place when it is a contiguous float64 array (and always
    returns the swept vector).  direction is 'forward' (ascending rows) or
    'backward' (descending).
    """
    if direction not in ('forward', 'backward'):
        raise ValueError("direction must be 'forward' or 'backward'")
    sm = _Smoother(A)
    x = np.ascontiguousarray(x, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    if direction == 'forward':
        sm.forward(x, b)
    else:
        sm.backward(x, b)
    return x


def smoothing_schedule(J, mJ=2):
    """m_k = ceil(1.5**(J-k) * mJ) for k = 1..J (index 0 is the coarsest level,
    where the count is unused because the solve there is direct)."""
    assert J >= 1 and mJ >= 1, 'need J >= 1 and mJ >= 1'
    k = np.arange(1, J + 1)
    return np.ceil(1.5 ** (J - k) * mJ).astype(int)


# midpoint of local edge slot s, in barycentric coordinates of the parent
_MID_BARY = np.array([[0.5, 0.5, 0.0],     # slot 0: (a, b)
                      [0.5, 0.0, 0.5],     # slot 1: (a, c)
                      [0.0, 0.5, 0.5]])    # slot 2: (b, c)
_SLOTS = np.array([[0, 1], [0, 2], [1, 2]])


def prolongation(space, coarse, fine):
    """Nested-space inclusion matrix from a mesh to its red refinement.

    space 'vertex': linear interpolation - identity on old vertices, 1/2 from
    each endpoint at midpoints.  space 'edge': the fine tangential
    line-integral DoFs of coarse Whitney functions; a half edge inherits +-1/2
    from its parent edge and the three medial edges of a coarse triangle pick
    up +-1/4 from each of its edges.  space 'p0': 1/4 to each of the four
    children (unit-integral normalization).  Raises if fine is not the
    refinement of coarse.
    """
    if fine.nv != coarse.nv + coarse.ne or fine.nt != 4 * coarse.nt:
        raise ValueError('fine mesh is not the red refinement of coarse mesh')

    if space == 'vertex':
        rows = np.concatenate((np.arange(coarse.nv),
                               np.repeat(coarse.nv + np.arange(coarse.ne), 2)))
        cols = np.concatenate((np.arange(coarse.nv), coarse.edges.ravel()))
        vals = np.concatenate((np.ones(coarse.nv), np.full(2 * coarse.ne, 0.5)))
        return sp.csr_matrix((vals, (rows, cols)), shape=(fine.nv, coarse.nv))

    if space == 'p0':
        rows = np.arange(fine.nt)
        cols = np.repeat(np.arange(coarse.nt), 4)
        vals = np.full(fine.nt, 0.25)
        return sp.csr_matrix((vals, (rows, cols)), shape=(fine.nt, coarse.nt))

    if space == 'edge':
        return _edge_prolongation(coarse, fine)

    raise ValueError("space must be 'vertex', 'edge' or 'p0', got %r" % (space,))


def _edge_prolongation(coarse, fine):
    # half edges: coarse edge e = (i, j) splits at m = coarse.nv + e into the
    # stored fine edges (i, m) and (j, m); integrating the parent Whitney
    # function from i to m gives +1/2, from j to m gives -1/2
    m = coarse.nv + np.arange(coarse.ne)
    lo_half = _find_edges(fine, np.sort(
        np.column_stack((coarse.edges[:, 0], m)), axis=1))
    hi_half = _find_edges(fine, np.sort(
        np.column_stack((coarse.edges[:, 1], m)), axis=1))
    rows = [lo_half, hi_half]
    cols = [np.arange(coarse.ne), np.arange(coarse.ne)]
    vals = [np.full(coarse.ne, 0.5), np.full(coarse.ne, -0.5)]

    # medial edges: the central child of coarse triangle T is fine triangle
    # 4T+3; its three edges each inherit +-1/4 from all three coarse edges of
    # T, with the sign given by the exact line integral
    # w = lam_p(P) lam_q(Q) - lam_p(Q) lam_q(P) between the fine endpoints
    # P -> Q (stored orientation) for the coarse edge (p, q) (global
    # orientation).
    nt = coarse.nt
    medial = fine.tri_edges[3::4]                     # (nt, 3)
    stored = fine.edges[medial]                       # (nt, 3, 2) fine vertex ids
    # fine midpoint id -> local slot of the coarse edge it bisects
    ce = stored - coarse.nv                           # coarse edge ids, (nt, 3, 2)
    slot = np.argmax(ce[:, :, :, None] == coarse.tri_edges[:, None, None, :],
                     axis=3)                          # (nt, 3, 2) in {0,1,2}
    bary = _MID_BARY[slot]                            # (nt, 3, 2, 3)
    P, Q = bary[:, :, 0, :], bary[:, :, 1, :]         # (nt, 3, 3)

    pairs = coarse.triangles[:, _SLOTS]               # (nt, 3, 2)
    orient = np.where(pairs[:, :, 0] < pairs[:, :, 1], 1.0, -1.0)
    w = np.empty((nt, 3, 3))                          # (tri, fine slot, coarse slot)
    for s, (u, v) in enumerate(_SLOTS):
        w[:, :, s] = P[:, :, u] * Q[:, :, v] - Q[:, :, u] * P[:, :, v]
    w *= orient[:, None, :]

    rows.append(np.repeat(medial.ravel(), 3))
    cols.append(np.tile(coarse.tri_edges, (1, 3)).reshape(-1))
    vals.append(w.reshape(-1))

    return sp.csr_matrix((np.concatenate(vals),
                          (np.concatenate(rows), np.concatenate(cols))),
                         shape=(fine.ne, coarse.ne))


class MGHierarchy:
    """Interior operators plus inter-level transfers, coarsest first.

    matrices[k] is the level-(k+1) operator on its interior DoFs;
    prolongations[k] maps level k+1 interior DoFs to level k+2 (so there is
    one fewer transfer than there are levels).  Restriction is always the
    prolongation transpose.
    """

    def __init__(self, matrices, prolongations):
        assert len(prolongations) == len(matrices) - 1, \
            'need one prolongation per level pair'
        for k, P in enumerate(prolongations):
            assert P.shape == (matrices[k + 1].shape[0], matrices[k].shape[0]), \
                'prolongation %d has shape %s' % (k, (P.shape,))
        self.matrices = [sp.csr_matrix(A) for A in matrices]
        self.prolongations = [sp.csr_matrix(P) for P in prolongations]

    def __len__(self):
        return len(self.matrices)


class VCycle:
    """One application of the variable V-cycle on the top ``nlevels`` levels.

    The instance is a linear operator r -> e (callable, with .apply); it is
    symmetric positive definite and is meant to be applied exactly once per
    preconditioner invocation.
    """

    def __init__(self, hier, nlevels=None, mJ=2):
        J = len(hier) if nlevels is None else nlevels
        assert 1 <= J <= len(hier), 'nlevels out of range'
        self.mats = hier.matrices[:J]
        self.P = hier.prolongations[:J - 1]
        self.R = [p.T.tocsr() for p in self.P]
        self.m = smoothing_schedule(J, mJ)
        self.smoothers = [_Smoother(A) for A in self.mats]
        n1 = self.mats[0].shape[0]
        self._coarse = (scipy.linalg.cho_factor(self.mats[0].toarray())
                        if n1 > 0 else None)
        self.n = self.mats[-1].shape[0]
        self.shape = (self.n, self.n)

    def apply(self, r):
        r = np.ascontiguousarray(r, dtype=float)
        assert r.shape == (self.n,), 'residual has wrong length'
        return self._cycle(len(self.mats) - 1, r)

    __call__ = apply

    def _cycle(self, k, f):
        if k == 0:
            if self._coarse is None:
                return np.zeros_like(f)
            return scipy.linalg.cho_solve(self._coarse, f)
        A = self.mats[k]
        sm = self.smoothers[k]
        x = np.zeros_like(f)
        for _ in range(self.m[k]):
            sm.forward(x, f)
        coarse_r = self.R[k - 1] @ (f - A @ x)
        x += self.P[k - 1] @ self._cycle(k - 1, coarse_r)
        for _ in range(self.m[k]):
            sm.backward(x, f)
        return x


def vcycle(hier, r, nlevels=None, mJ=2):
    """Convenience wrapper: build the operator and apply it once."""
    return VCycle(hier, nlevels=nlevels, mJ=mJ).apply(r)


def edge_hierarchy(levels):
    """Lumped-Schur hierarchy on interior edge DoFs.

    levels: consecutive DeRhamLevel objects, coarsest first.  Every A~_k is
    assembled on its own mesh; the transfers are the Whitney edge inclusions
    restricted to interior DoFs on both sides.
    """
    mats = [derham.schur_lumped(lv) for lv in levels]
    prols = []
    for c, f in zip(levels[:-1], levels[1:]):
        P = prolongation('edge', c.mesh, f.mesh)
        prols.append(P[f.interior_edges][:, c.interior_edges].tocsr())
    return MGHierarchy(mats, prols)


def vertex_hierarchy(levels):
    """P1 stiffness hierarchy on interior vertex DoFs (for the scalar
    potential solves of the Maxwell triangular preconditioner)."""
    mats = [lv.Ap_int() for lv in levels]
    prols = []
    for c, f in zip(levels[:-1], levels[1:]):
        P = prolongation('vertex', c.mesh, f.mesh)
        prols.append(P[f.interior_vertices][:, c.interior_vertices].tocsr())
    return MGHierarchy(mats, prols)
