"""Saddle-point systems for the vector Laplacian and the mixed Maxwell form.

All systems live on interior degrees of freedom (homogeneous essential
boundary conditions are imposed by dropping boundary rows/columns).  With
the lumped vertex mass D = diag(mv), the signed divergence-like coupling
Bs (interior vertices x interior edges) and the weak-curl stiffness
Sc = C^T M_f C, the two vector-Laplacian systems are

    [ -D   Bs ] [sigma]   [ 0 ]
    [ Bs^T Sc ] [  u  ] = [ f ],

with Bs = +B for the tangential (curl) form and Bs = -B for the normal
(div) form - the two are images of each other under a quarter-turn rotation
of the plane, which is why their Schur complements coincide and the
constant-field load yields the same coefficient vector in both.  The
Maxwell form eliminates nothing and keeps the multiplier:

    [ A~   B^T ] [u]   [ f ]
    [ B    0   ] [p] = [ 0 ].

Loads are line integrals of Whitney functions against a constant field.
"""

import numpy as np
import scipy.sparse as sp

from . import derham
from .mesh import _EDGE_SLOTS

__all__ = ['SaddleSystem', 'load_vector', 'build_curl_saddle',
           'build_div_saddle', 'build_maxwell']


class SaddleSystem:
    """A 2x2 block operator with its right-hand side.

    kind is 'curl_vlap', 'div_vlap' or 'maxwell'.  n1/n2 are the block sizes
    (first/second unknown); matvec acts on the concatenated vector.  The
    attributes mv, Bs, Sc (vector Laplacian) or Atilde, Bi (Maxwell) expose
    the blocks the preconditioners need.
    """

    def __init__(self, kind, level, rhs, **blocks):
        self.kind = kind
        self.level = level
        self.rhs = rhs
        for name, val in blocks.items():
            setattr(self, name, val)
        if kind == 'maxwell':
            self.n1, self.n2 = self.Atilde.shape[0], self.Bi.shape[0]
        else:
            self.n1, self.n2 = self.mv.shape[0], self.Sc.shape[0]
        self.shape = (self.n1 + self.n2, self.n1 + self.n2)

    @property
    def dof_total(self):
        """Size of the full (boundary-inclusive) discrete system, the number
        reported in the benchmark tables."""
        return self.level.dof_total

    def split(self, z):
        return z[:self.n1], z[self.n1:]

    def matvec(self, z):
        a, b = self.split(np.asarray(z, dtype=float))
        if self.kind == 'maxwell':
            top = self.Atilde @ a + self.Bi.T @ b
            bot = self.Bi @ a
        else:
            top = -(self.mv * a) + self.Bs @ b
            bot = self.Bs.T @ a + self.Sc @ b
        return np.concatenate((top, bot))

    __call__ = matvec

    def __matmul__(self, z):
        return self.matvec(z)

    def tosparse(self):
        """Assembled sparse form (handy for small direct solves and tests)."""
        if self.kind == 'maxwell':
            Z = sp.csr_matrix((self.n2, self.n2))
            return sp.bmat([[self.Atilde, self.Bi.T], [self.Bi, Z]],
                           format='csr')
        D = sp.diags(self.mv)
        return sp.bmat([[-D, self.Bs], [self.Bs.T, self.Sc]], format='csr')


def load_vector(level, field=(1.0, 1.0)):
    """Integrals of the Whitney edge functions against a constant field,
    restricted to interior edges.

    On each triangle, int_T phi_(a,b) = (|T|/3)(grad lam_b - grad lam_a).
    """
    mesh = level.mesh
    area, grads = derham._geometry(mesh)
    orient = derham._slot_orientation(mesh)
    c = np.asarray(field, dtype=float)
    assert c.shape == (2,), 'field must be a constant 2-vector'

    f = np.zeros(mesh.ne)
    for s, (a, b) in enumerate(_EDGE_SLOTS):
        contrib = (area / 3.0) * ((grads[:, b] - grads[:, a]) @ c) * orient[:, s]
        np.add.at(f, mesh.tri_edges[:, s], contrib)
    return f[level.interior_edges]


def build_curl_saddle(level):
    """Tangential (H0(curl)) vector-Laplacian saddle system on interior DoFs."""
    return SaddleSystem('curl_vlap', level,
                        rhs=np.concatenate((np.zeros(level.interior_vertices.size),
                                            load_vector(level, (1.0, 1.0)))),
                        mv=level.mv_lumped_int(),
                        Bs=level.B_int(),
                        Sc=level.curl_stiffness_int())


def build_div_saddle(level):
    """Normal (H0(div)) vector-Laplacian saddle system on interior DoFs.

    The quarter-turn (x, y) -> (-y, x) maps the tangential problem onto this
    one: the flux basis functions are the rotated tangential ones, so the
    mass and stiffness blocks coincide, the coupling flips sign, and the
    constant-field load has the same coefficient vector as in the tangential
    case.
    """
    return SaddleSystem('div_vlap', level,
                        rhs=np.concatenate((np.zeros(level.interior_vertices.size),
                                            load_vector(level, (1.0, 1.0)))),
                        mv=level.mv_lumped_int(),
                        Bs=-level.B_int(),
                        Sc=level.curl_stiffness_int())


def build_maxwell(level, Atilde=None):
    """Constrained (Maxwell-type) system: lumped Schur operator plus the
    divergence constraint via a scalar multiplier.

    Pass Atilde to reuse an operator already assembled for the multigrid
    hierarchy; by default it is assembled here.
    """
    if Atilde is None:
        Atilde = derham.schur_lumped(level)
    return SaddleSystem('maxwell', level,
                        rhs=np.concatenate((load_vector(level, (1.0, 1.0)),
                                            np.zeros(level.interior_vertices.size))),
                        Atilde=Atilde,
                        Bi=level.B_int(),
                        mv=level.mv_lumped_int())
