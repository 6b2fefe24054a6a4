"""Mixed finite element solvers for the 2D vector Laplacian.

The package discretizes the vector Laplacian in H0(curl) / H0(div) with the
lowest-order Whitney complex (P1 Lagrange -> edge elements -> piecewise
constants), assembles the resulting saddle-point systems, and solves them with
preconditioned MINRES / restarted GMRES.  The approximate inverses inside the
block preconditioners are single applications of a variable V-cycle with point
Gauss-Seidel smoothing on non-inherited (per-level assembled) Schur operators.
"""

from . import mesh, derham, multigrid, krylov, problems, precond, verify

__version__ = '0.1.0'

__all__ = ['mesh', 'derham', 'multigrid', 'krylov', 'problems', 'precond',
           'verify', '__version__']
