"""Triangulations of the three benchmark domains and their refinement hierarchies.

Domains (each with a structured right-triangle coarse mesh at h = 1/2):

* ``square``  the unit square (0,1)^2,
* ``lshape``  the L-shape (-1,1)^2 minus the closed quadrant [0,1] x [-1,0],
* ``crack``   the slit diamond {|x|+|y| < 1} minus the segment {0 <= x <= 1, y = 0}.

The slit is represented by vertex/edge duplication: every lattice point on the
open segment (0,1) x {0} exists twice (a top and a bottom copy), the endpoint
(1,0) is likewise doubled, and the tip at the origin is a single vertex.  Both
copies are boundary entities, so the homogeneous-trace spaces see the slit as a
genuine boundary.

Uniform (red) refinement splits every triangle into four congruent children by
edge midpoints; the label ``h`` halves per level.  Counterclockwise triangle
orientation and the global low-index -> high-index edge orientation are
preserved on every level.
"""

import numpy as np

__all__ = ['TriMesh', 'MeshHierarchy', 'build_coarse', 'refine',
           'build_hierarchy', 'write_mesh', 'DOMAINS']

DOMAINS = ('square', 'lshape', 'crack')

# local edge slots of a triangle (a, b, c): slot 0 = (a,b), 1 = (a,c), 2 = (b,c)
_EDGE_SLOTS = np.array([[0, 1], [0, 2], [1, 2]])


class TriMesh:
    """One mesh level: vertices, CCW triangles, derived edges and boundary flags.

    Attributes
    ----------
    vertices : (nv, 2) float array
    triangles : (nt, 3) int array, counterclockwise vertex triples
    edges : (ne, 2) int array, rows (lo, hi) with lo < hi, sorted
        lexicographically; the global edge orientation is lo -> hi
    tri_edges : (nt, 3) int array, global edge index of each local slot
    vertex_is_boundary, edge_is_boundary : bool arrays
    h : float, the mesh-size label of this level (1/2 on the coarse level)
    """

    def __init__(self, vertices, triangles, h):
        self.vertices = np.ascontiguousarray(vertices, dtype=float)
        self.triangles = np.ascontiguousarray(triangles, dtype=np.int64)
        self.h = float(h)
        assert self.h > 0.0, 'mesh size label must be positive'
        assert self.vertices.ndim == 2 and self.vertices.shape[1] == 2
        assert self.triangles.ndim == 2 and self.triangles.shape[1] == 3

        areas = self.signed_areas()
        assert np.all(areas > 0.0), \
            'all triangles must be counterclockwise: min signed area %g' % areas.min()

        self._build_edges()

    @property
    def nv(self):
        return self.vertices.shape[0]

    @property
    def ne(self):
        return self.edges.shape[0]

    @property
    def nt(self):
        return self.triangles.shape[0]

    def signed_areas(self):
        """Signed area of every triangle (positive iff counterclockwise)."""
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def _build_edges(self):
        pairs = self.triangles[:, _EDGE_SLOTS]          # (nt, 3, 2)
        lo = pairs.min(axis=2)
        hi = pairs.max(axis=2)
        key = lo.astype(np.int64) * self.nv + hi
        uniq, inverse = np.unique(key.ravel(), return_inverse=True)
        self.edges = np.column_stack((uniq // self.nv, uniq % self.nv))
        self.tri_edges = inverse.reshape(self.nt, 3)

        counts = np.bincount(inverse, minlength=len(uniq))
        assert counts.max() <= 2, 'an edge is shared by more than two triangles'
        self.edge_is_boundary = counts == 1
        self.vertex_is_boundary = np.zeros(self.nv, dtype=bool)
        self.vertex_is_boundary[self.edges[self.edge_is_boundary].ravel()] = True

    def euler_characteristic(self):
        return self.nv - self.ne + self.nt


class MeshHierarchy:
    """Nested levels produced by repeated red refinement of a coarse mesh.

    ``meshes[0]`` is the coarsest level (level 1, h = 1/2); ``meshes[-1]`` the
    finest.  Parent maps: the children of coarse triangle T are the fine
    triangles 4T..4T+3 (corner children at vertices a, b, c, then the central
    one), and ``edge_children[k][e]`` holds the two fine edge indices of coarse
    edge e between levels k and k+1, ordered (low endpoint half, high endpoint
    half).  The fine vertex ``coarse.nv + e`` is the midpoint of coarse edge e.
    """

    def __init__(self, domain, meshes, edge_children):
        self.domain = domain
        self.meshes = meshes
        self.edge_children = edge_children

    def __len__(self):
        return len(self.meshes)


def build_coarse(domain):
    """Coarse mesh of one of the benchmark domains at h = 1/2.

    square -> 9 vertices / 16 edges / 8 triangles; lshape -> 8/13/6;
    crack -> the slit-diamond template refined once (15/30/16), which puts
    exactly one duplicated lattice point, (1/2, 0), inside the slit.
    """
    if domain == 'square':
        return _grid_mesh(0.0, 1.0, 2, keep=lambda x0, y0: True)
    if domain == 'lshape':
        return _grid_mesh(-1.0, 1.0, 2,
                          keep=lambda x0, y0: not (x0 >= 0.0 and y0 < 0.0))
    if domain == 'crack':
        return refine(_crack_template())
    raise ValueError('unknown domain %r; expected one of %s' % (domain, (DOMAINS,)))


def _grid_mesh(lo, hi, n, keep):
    """Structured n x n grid on [lo,hi]^2, cells split along the SW-NE diagonal.

    ``keep(x0, y0)`` decides from its lower-left corner whether a cell belongs
    to the domain.  Unused vertices are dropped; the remaining ones keep their
    row-major (y-outer) ordering.
    """
    step = (hi - lo) / n
    xs = lo + step * np.arange(n + 1)
    X, Y = np.meshgrid(xs, xs, indexing='xy')
    verts = np.column_stack((X.ravel(), Y.ravel()))

    tris = []
    for j in range(n):
        for i in range(n):
            if not keep(xs[i], xs[j]):
                continue
            a = j * (n + 1) + i
            b = a + 1
            c = a + n + 2
            d = a + n + 1
            tris.append((a, b, c))
            tris.append((a, c, d))
    tris = np.array(tris, dtype=np.int64)

    used = np.zeros(len(verts), dtype=bool)
    used[tris.ravel()] = True
    renum = np.cumsum(used) - 1
    return TriMesh(verts[used], renum[tris], 0.5)


def _crack_template():
    """Four-triangle slit diamond; vertex 5 duplicates (1,0) for the lower lip."""
    verts = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0],
                      [0.0, -1.0], [0.0, 0.0], [1.0, 0.0]])
    tris = np.array([[4, 0, 1], [4, 1, 2], [4, 2, 3], [4, 3, 5]])
    return TriMesh(verts, tris, 1.0)


def refine(coarse):
    """Red refinement: every triangle is split into four by its edge midpoints.

    Fine vertex numbering: the coarse vertices keep their indices, and the
    midpoint of coarse edge e becomes vertex ``coarse.nv + e``.  Children of
    triangle (a, b, c) are emitted in the order (a, m_ab, m_ac),
    (m_ab, b, m_bc), (m_ac, m_bc, c), (m_ab, m_bc, m_ac) - all counterclockwise.
    """
    mids = 0.5 * (coarse.vertices[coarse.edges[:, 0]]
                  + coarse.vertices[coarse.edges[:, 1]])
    verts = np.vstack((coarse.vertices, mids))

    a, b, c = coarse.triangles.T
    mab = coarse.nv + coarse.tri_edges[:, 0]
    mac = coarse.nv + coarse.tri_edges[:, 1]
    mbc = coarse.nv + coarse.tri_edges[:, 2]
    children = np.stack([
        np.column_stack((a, mab, mac)),
        np.column_stack((mab, b, mbc)),
        np.column_stack((mac, mbc, c)),
        np.column_stack((mab, mbc, mac)),
    ], axis=1).reshape(-1, 3)

    return TriMesh(verts, children, coarse.h / 2.0)


def _edge_children(coarse, fine):
    """Fine edge ids of each coarse edge's two halves, as an (ne, 2) array."""
    m = coarse.nv + np.arange(coarse.ne)
    lo_half = np.sort(np.column_stack((coarse.edges[:, 0], m)), axis=1)
    hi_half = np.sort(np.column_stack((coarse.edges[:, 1], m)), axis=1)
    return np.column_stack((_find_edges(fine, lo_half), _find_edges(fine, hi_half)))


def _find_edges(mesh, pairs):
    """Indices of (lo, hi) vertex pairs in ``mesh.edges`` (rows must exist)."""
    keys = mesh.edges[:, 0] * mesh.nv + mesh.edges[:, 1]
    want = pairs[:, 0] * mesh.nv + pairs[:, 1]
    idx = np.searchsorted(keys, want)
    assert np.all(keys[idx] == want), 'edge lookup failed: pair not present'
    return idx


def build_hierarchy(domain, nlevels):
    """Build ``nlevels`` nested levels of the given domain (level 1 coarsest).

    The finest level carries h = 2**-nlevels.  nlevels must be >= 1.
    """
    if nlevels < 1:
        raise ValueError('nlevels must be >= 1, got %d' % nlevels)
    meshes = [build_coarse(domain)]
    edge_children = []
    for _ in range(nlevels - 1):
        fine = refine(meshes[-1])
        edge_children.append(_edge_children(meshes[-1], fine))
        meshes.append(fine)
    return MeshHierarchy(domain, meshes, edge_children)


def write_mesh(mesh, path):
    """Dump one level as text: header ``V E F h``, then per-vertex lines
    ``x y bflag``, per-edge lines ``v0 v1 bflag``, per-triangle lines
    ``v0 v1 v2``, in index order."""
    with open(path, 'w') as f:
        f.write('%d %d %d %.17g\n' % (mesh.nv, mesh.ne, mesh.nt, mesh.h))
        for (x, y), bf in zip(mesh.vertices, mesh.vertex_is_boundary):
            f.write('%.17g %.17g %d\n' % (x, y, bf))
        for (v0, v1), bf in zip(mesh.edges, mesh.edge_is_boundary):
            f.write('%d %d %d\n' % (v0, v1, bf))
        for v0, v1, v2 in mesh.triangles:
            f.write('%d %d %d\n' % (v0, v1, v2))
