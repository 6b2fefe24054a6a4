# Iteration-count tables for the vector Laplacian on all three domains.
#
# Each table pairs the MINRES/block-diagonal column (D) with the
# GMRES(20)/block-triangular column (T).  The default level ranges stop one
# refinement short of the largest runs; set FULL = True for the complete
# tables (the finest meshes take a few minutes in total).

from vlapmg import cli

FULL = False
RANGES = {'square': (5, 8), 'lshape': (5, 8), 'crack': (4, 7)}


def main():
    for domain, (lo, hi) in RANGES.items():
        if not FULL:
            hi -= 1
        recs = []
        for kind in ('diag', 'tri'):
            recs += cli.run_cells(domain, (lo, hi), problem='curl',
                                  precond_kind=kind)
        print('## %s, tangential vector Laplacian\n' % domain)
        print(cli.emit(recs, 'md'))


if __name__ == '__main__':
    main()
