# The divergence-constrained problem and where its solution lives.
#
# Solves the constrained (Maxwell-type) system at h = 1/32 with the block
# triangular preconditioner, then checks two things the discretization is
# supposed to deliver exactly: the field satisfies the divergence constraint,
# and its Hodge decomposition carries no gradient component.

import numpy as np

from vlapmg import derham, krylov, mesh, multigrid, precond, problems, verify

J = 5


def main():
    hier = mesh.build_hierarchy('square', J)
    levels = [derham.assemble(m) for m in hier.meshes]
    top = levels[-1]

    ehier = multigrid.edge_hierarchy(levels)
    vhier = multigrid.vertex_hierarchy(levels)
    system = problems.build_maxwell(top, Atilde=ehier.matrices[-1])

    P = precond.tri_maxwell(system, multigrid.VCycle(ehier),
                            multigrid.VCycle(vhier))
    rep = krylov.gmres(system, system.rhs, M=P, tol=1e-8, restart=20)
    print('GMRES(20): %d iterations, relres %.2e, converged=%s'
          % (rep.iterations, rep.relres, rep.converged))

    u, p = system.split(rep.x)
    print('constraint  |B u| / |u|     = %.2e' % (
        np.linalg.norm(system.Bi @ u) / np.linalg.norm(u)))
    print('multiplier  |p|             = %.2e  (zero in exact arithmetic)'
          % np.linalg.norm(p))

    parts = verify.hodge_decompose(top, u)
    print('Hodge split |gradient part| = %.2e' % np.linalg.norm(parts.grad_part))
    print('            |complement|    = %.2e' % np.linalg.norm(parts.complement))
    print('            orthogonality   = %.2e' % parts.defect)

    # the same solve with the diagonal preconditioner lands on the same field
    P = precond.diag_maxwell(system, multigrid.VCycle(ehier))
    rep2 = krylov.minres(system, system.rhs, M=P, tol=1e-8)
    u2, _ = system.split(rep2.x)
    print('\nMINRES + block diagonal: %d iterations, fields agree to %.2e'
          % (rep2.iterations, np.linalg.norm(u - u2) / np.linalg.norm(u)))


if __name__ == '__main__':
    main()
