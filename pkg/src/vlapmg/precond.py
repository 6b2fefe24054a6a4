"""Block diagonal and block triangular preconditioners for the saddle systems.

Every inexact inner solve is one application of a variable V-cycle (or any
other callable approximate inverse handed in, e.g. an exact factorization
for identity checks).  The diagonal variants are symmetric positive definite
and drive MINRES; the triangular variants approximate the true block inverse
and drive GMRES.  With exact inner solves the triangular variants invert
their systems exactly - a property the test-suite pins down - because the
lumped Schur operator A~ = Bs^T D^{-1} Bs + Sc is exactly the Schur
complement the block factorization asks for, and because A~ G = B^T D^{-1} Ap
holds identically (discrete commutator; uses C G = 0).
"""

import numpy as np

from .krylov import _as_apply

__all__ = ['diag_vlap', 'tri_vlap', 'diag_maxwell', 'tri_maxwell']


class _BlockPrecond:
    """Base: split/concatenate plumbing for 2x2 block preconditioners."""

    def __init__(self, n1, n2):
        self.n1, self.n2 = n1, n2
        self.shape = (n1 + n2, n1 + n2)

    def apply(self, r):
        r = np.asarray(r, dtype=float)
        assert r.shape == (self.n1 + self.n2,), 'residual has wrong length'
        x1, x2 = self._blocks(r[:self.n1], r[self.n1:])
        return np.concatenate((x1, x2))

    __call__ = apply


class _DiagVlap(_BlockPrecond):
    def __init__(self, mv, Bmg, n_edge):
        super().__init__(mv.shape[0], n_edge)
        self.mv, self.Bmg = mv, Bmg

    def _blocks(self, g, f):
        return g / self.mv, self.Bmg(f)


class _TriVlap(_BlockPrecond):
    def __init__(self, mv, Bs, Bmg):
        super().__init__(mv.shape[0], Bs.shape[1])
        self.mv, self.Bs, self.Bmg = mv, Bs, Bmg

    def _blocks(self, g, f):
        y1 = -g / self.mv
        y2 = self.Bmg(f - self.Bs.T @ y1)
        return y1 + (self.Bs @ y2) / self.mv, y2


class _DiagMaxwell(_BlockPrecond):
    def __init__(self, mv, Bmg_edge, n_edge):
        super().__init__(n_edge, mv.shape[0])
        self.mv, self.Bmg_edge = mv, Bmg_edge

    def _blocks(self, f, g):
        return self.Bmg_edge(f), g / self.mv


class _TriMaxwell(_BlockPrecond):
    def __init__(self, mv, Bi, Gi, Ap, Bmg_edge, Bmg_vertex):
        super().__init__(Bi.shape[1], Bi.shape[0])
        self.mv, self.Bi, self.Gi, self.Ap = mv, Bi, Gi, Ap
        self.Bmg_edge, self.Bmg_vertex = Bmg_edge, Bmg_vertex

    def _blocks(self, f, g):
        y1 = self.Bmg_edge(f)
        y2 = self.Bmg_vertex(g - self.Bi @ y1)
        return y1 + self.Gi @ y2, -(self.Ap @ y2) / self.mv


def _check_kind(system, wanted, name):
    if system.kind not in wanted:
        raise ValueError('%s expects a %s system, got %r'
                         % (name, ' or '.join(wanted), system.kind))


def diag_vlap(system, Bmg):
    """SPD block diagonal preconditioner diag(D^{-1}, Bmg) for either
    vector-Laplacian saddle system.  Bmg approximates A~^{-1} (one V-cycle,
    or any callable/matrix)."""
    _check_kind(system, ('curl_vlap', 'div_vlap'), 'diag_vlap')
    return _DiagVlap(system.mv, _as_apply(Bmg, 'Bmg'), system.Sc.shape[0])


def tri_vlap(system, Bmg):
    """Block triangular preconditioner for GMRES; exact inverse of the
    saddle matrix when Bmg solves A~ exactly."""
    _check_kind(system, ('curl_vlap', 'div_vlap'), 'tri_vlap')
    return _TriVlap(system.mv, system.Bs, _as_apply(Bmg, 'Bmg'))


def diag_maxwell(system, Bmg_edge):
    """SPD block diagonal preconditioner diag(Bmg, D^{-1}) for the
    constrained system."""
    _check_kind(system, ('maxwell',), 'diag_maxwell')
    return _DiagMaxwell(system.mv, _as_apply(Bmg_edge, 'Bmg_edge'),
                        system.Atilde.shape[0])


def tri_maxwell(system, Bmg_edge, Bmg_vertex):
    """Block triangular preconditioner for the constrained system.

    The multiplier update rides on the discrete gradient: the edge
    correction is G y2 with y2 from a scalar (P1 stiffness) solve, and the
    multiplier block is -D^{-1} Ap y2.  Exact inner solves give the exact
    inverse.
    """
    _check_kind(system, ('maxwell',), 'tri_maxwell')
    level = system.level
    return _TriMaxwell(system.mv, system.Bi, level.G_int(), level.Ap_int(),
                       _as_apply(Bmg_edge, 'Bmg_edge'),
                       _as_apply(Bmg_vertex, 'Bmg_vertex'))
