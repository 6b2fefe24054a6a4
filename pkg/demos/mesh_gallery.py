# Build the three benchmark domains and look at what refinement does to them.
#
#   python demos/mesh_gallery.py          # prints the size table
#   python demos/mesh_gallery.py --plot   # also writes mesh_gallery.png

import sys

from vlapmg import mesh

DOMAINS = ('square', 'lshape', 'crack')


def size_table(nlevels=6):
    print('%-8s %-5s %8s %8s %8s %10s' % ('domain', 'level', 'verts',
                                          'edges', 'tris', 'h'))
    for domain in DOMAINS:
        hier = mesh.build_hierarchy(domain, nlevels)
        for k, m in enumerate(hier.meshes, start=1):
            print('%-8s %-5d %8d %8d %8d %10.5f' % (domain, k, m.nv, m.ne,
                                                    m.nt, m.h))
        print()


def boundary_report(level=3):
    # the crack domain carries a slit: mesh points on the open segment are
    # duplicated (one copy per side) and all slit copies sit on the boundary
    for domain in DOMAINS:
        m = mesh.build_hierarchy(domain, level).meshes[-1]
        nb = int(m.vertex_is_boundary.sum())
        print('%-8s L%d: %d boundary vertices of %d' % (domain, level, nb,
                                                        m.nv))


def plot(fname='mesh_gallery.png', level=3):
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, domain in zip(axes, DOMAINS):
        m = mesh.build_hierarchy(domain, level).meshes[-1]
        ax.triplot(m.vertices[:, 0], m.vertices[:, 1], m.triangles,
                   lw=0.5, color='steelblue')
        b = m.vertex_is_boundary
        ax.plot(m.vertices[b, 0], m.vertices[b, 1], '.', ms=2, color='crimson')
        ax.set_title('%s (h = 1/%d)' % (domain, round(1 / m.h)))
        ax.set_aspect('equal')
    fig.tight_layout()
    fig.savefig(fname, dpi=150)
    print('wrote', fname)


if __name__ == '__main__':
    size_table()
    boundary_report()
    if '--plot' in sys.argv[1:]:
        plot()
