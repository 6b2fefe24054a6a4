# One saddle-point solve, step by step: assemble, precondition, iterate.
#
# The tangential vector Laplacian on the square at h = 1/32, solved twice --
# MINRES with the block diagonal preconditioner, then GMRES(20) with the
# block triangular one.  Both inner blocks are a single variable V-cycle.

import numpy as np

from vlapmg import derham, krylov, mesh, multigrid, precond, problems

J = 5                                       # h = 1/2^J


def main():
    hier = mesh.build_hierarchy('square', J)
    levels = [derham.assemble(m) for m in hier.meshes]
    top = levels[-1]
    print('mesh: %d vertices, %d edges (h = 1/%d)'
          % (top.mesh.nv, top.mesh.ne, round(1 / top.mesh.h)))

    system = problems.build_curl_saddle(top)
    print('saddle system: %d multiplier + %d field unknowns'
          % (system.mv.size, system.rhs.size - system.mv.size))

    ehier = multigrid.edge_hierarchy(levels)
    vc = multigrid.VCycle(ehier, mJ=2)
    print('V-cycle sweeps per level (coarse to fine):', vc.m)

    P = precond.diag_vlap(system, vc)
    rep = krylov.minres(system, system.rhs, M=P, tol=1e-8)
    print('\nMINRES + block diagonal: %d iterations, %.2fs, relres %.2e'
          % (rep.iterations, rep.seconds, rep.relres))
    for k in range(0, len(rep.residuals), 5):
        print('   it %3d   relres %.3e' % (k, rep.residuals[k]))

    P = precond.tri_vlap(system, vc)
    rep2 = krylov.gmres(system, system.rhs, M=P, tol=1e-8, restart=20)
    print('\nGMRES(20) + block triangular: %d iterations, %.2fs, relres %.2e'
          % (rep2.iterations, rep2.seconds, rep2.relres))

    dx = np.linalg.norm(rep.x - rep2.x) / np.linalg.norm(rep.x)
    print('\nthe two solutions agree to %.2e' % dx)


if __name__ == '__main__':
    main()
