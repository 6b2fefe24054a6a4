"""Preconditioned MINRES and right-preconditioned restarted GMRES.

Both solvers stop on the *unpreconditioned* relative residual
||b - A x|| / ||b|| <= tol, measured with a true matvec (MINRES pays one
extra A-application per step for this; GMRES recomputes the true residual at
every restart and once at the end).  Iteration counts are Lanczos steps for
MINRES and total inner steps across all restart cycles for GMRES, so the
numbers are comparable across restart lengths.

Operators and preconditioners may be sparse matrices, dense arrays, or
callables taking and returning a vector.
"""

import time

import numpy as np
import scipy.sparse as sp

__all__ = ['SolveReport', 'minres', 'gmres']


class SolveReport:
    """Outcome of one Krylov solve."""

    def __init__(self, x, iterations, relres, seconds, converged,
                 residuals=None, stagnated=False):
        self.x = x
        self.iterations = iterations
        self.relres = relres
        self.seconds = seconds
        self.converged = converged
        self.residuals = residuals if residuals is not None else []
        self.stagnated = stagnated

    def __repr__(self):
        return ('SolveReport(iterations=%d, relres=%.3e, seconds=%.3g, '
                'converged=%s)' % (self.iterations, self.relres,
                                   self.seconds, self.converged))


def _as_apply(op, name):
    if op is None:
        # a fresh copy: solvers update Lanczos/Arnoldi vectors in place and
        # must never find the "preconditioned" vector aliasing its source
        return lambda v: np.array(v, dtype=float)
    if sp.issparse(op) or isinstance(op, np.ndarray):
        return lambda v: op @ v
    if callable(op):
        return op
    raise TypeError('%s must be a matrix or a callable, got %r'
                    % (name, type(op)))


def minres(A, b, M=None, tol=1e-8, maxit=None, x0=None):
    """MINRES for symmetric A with a symmetric positive definite
    preconditioner M (applied as an approximate inverse).

    Stops when the true residual norm ||b - A x|| falls below tol * ||b||.
    Raises ValueError if the preconditioner reveals itself indefinite
    (a nonpositive Lanczos inner product).
    """
    A = _as_apply(A, 'A')
    M = _as_apply(M, 'M')
    b = np.ascontiguousarray(b, dtype=float)
    n = b.shape[0]
    maxit = n if maxit is None else int(maxit)

    t0 = time.perf_counter()
    normb = np.linalg.norm(b)
    if normb == 0.0:
        return SolveReport(np.zeros(n), 0, 0.0, time.perf_counter() - t0,
                           True, [0.0])

    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    r = b - A(x) if x0 is not None else b.copy()
    residuals = [np.linalg.norm(r) / normb]
    if residuals[0] <= tol:
        return SolveReport(x, 0, residuals[0], time.perf_counter() - t0,
                           True, residuals)

    # coupled two-term recurrences; v carries the unpreconditioned Lanczos
    # vector scaled by gamma, z the preconditioned one normalized in the
    # M-inner product
    v_old = np.zeros(n)
    v = r
    z = M(v)
    gamma2 = np.dot(z, v)
    if not gamma2 > 0.0:
        raise ValueError('preconditioner is not positive definite '
                         '(<Mr, r> = %.3e)' % gamma2)
    gamma_old, gamma = 1.0, np.sqrt(gamma2)
    eta = gamma
    s_old = s = 0.0
    c_old = c = 1.0
    w_old = np.zeros(n)
    w = np.zeros(n)

    it = 0
    converged = False
    tiny = np.finfo(float).eps * normb
    while it < maxit:
        it += 1
        z /= gamma
        Az = A(z)
        delta = np.dot(Az, z)
        v_new = Az - (delta / gamma) * v - (gamma / gamma_old) * v_old
        z_new = M(v_new)
        gamma2 = np.dot(z_new, v_new)
        if gamma2 < -1e-13 * max(np.linalg.norm(v_new), 1.0):
            raise ValueError('preconditioner is not positive definite '
                             '(<Mv, v> = %.3e at step %d)' % (gamma2, it))
        gamma_new = np.sqrt(max(gamma2, 0.0))

        a0 = c * delta - c_old * s * gamma
        a1 = np.hypot(a0, gamma_new)
        a2 = s * delta + c_old * c * gamma
        a3 = s_old * gamma
        c_new = a0 / a1
        s_new = gamma_new / a1

        w_new = (z - a3 * w_old - a2 * w) / a1
        x = x + (c_new * eta) * w_new
        eta = -s_new * eta

        relres = np.linalg.norm(b - A(x)) / normb
        residuals.append(relres)
        if relres <= tol:
            converged = True
            break
        if gamma_new <= tiny:          # Krylov space exhausted
            break

        v_old, v = v, v_new
        z = z_new
        gamma_old, gamma = gamma, gamma_new
        c_old, c = c, c_new
        s_old, s = s, s_new
        w_old, w = w, w_new

    return SolveReport(x, it, residuals[-1], time.perf_counter() - t0,
                       converged, residuals)


def gmres(A, b, M=None, tol=1e-8, restart=20, maxit=None, x0=None):
    """Restarted GMRES with right preconditioning: solves A M y = b,
    x = M y, so the minimized residual is the true one.

    The Arnoldi residual estimate steers the inner loop; the outer loop
    recomputes the true residual, restarts from it, and flags stagnation
    when a full cycle fails to reduce it.  iterations counts inner steps
    across all cycles.
    """
    A = _as_apply(A, 'A')
    M = _as_apply(M, 'M')
    b = np.ascontiguousarray(b, dtype=float)
    n = b.shape[0]
    maxit = n if maxit is None else int(maxit)
    restart = max(1, min(int(restart), n))

    t0 = time.perf_counter()
    normb = np.linalg.norm(b)
    if normb == 0.0:
        return SolveReport(np.zeros(n), 0, 0.0, time.perf_counter() - t0,
                           True, [0.0])

    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    it = 0
    converged = False
    stagnated = False
    residuals = []
    beta_prev = np.inf

    while True:
        r = b - A(x)
        beta = np.linalg.norm(r)
        residuals.append(beta / normb)
        if beta <= tol * normb:
            converged = True
            break
        if it >= maxit:
            break
        if beta >= beta_prev * (1.0 - 1e-12):
            stagnated = True
            break
        beta_prev = beta

        V = np.zeros((restart + 1, n))
        H = np.zeros((restart + 1, restart))
        cs = np.zeros(restart)
        sn = np.zeros(restart)
        g = np.zeros(restart + 1)
        V[0] = r / beta
        g[0] = beta

        k = 0
        for i in range(restart):
            if it >= maxit:
                break
            it += 1
            w = A(M(V[i]))
            for j in range(i + 1):                    # modified Gram-Schmidt
                H[j, i] = np.dot(w, V[j])
                w -= H[j, i] * V[j]
            H[i + 1, i] = np.linalg.norm(w)

            for j in range(i):                        # previous rotations
                h0 = cs[j] * H[j, i] + sn[j] * H[j + 1, i]
                H[j + 1, i] = -sn[j] * H[j, i] + cs[j] * H[j + 1, i]
                H[j, i] = h0
            rho = np.hypot(H[i, i], H[i + 1, i])
            if rho == 0.0:                            # singular column: drop it
                k = i
                break
            cs[i] = H[i, i] / rho
            sn[i] = H[i + 1, i] / rho
            H[i, i] = rho
            g[i + 1] = -sn[i] * g[i]
            g[i] = cs[i] * g[i]
            k = i + 1

            if H[i + 1, i] == 0.0:                    # lucky breakdown
                break
            V[i + 1] = w / H[i + 1, i]
            if abs(g[i + 1]) <= tol * normb:
                break

        if k > 0:
            y = np.zeros(k)
            for i in range(k - 1, -1, -1):
                y[i] = (g[i] - H[i, i + 1:k] @ y[i + 1:k]) / H[i, i]
            x = x + M(V[:k].T @ y)
        else:
            # the cycle produced no usable direction at all
            stagnated = True
            break

    relres = residuals[-1]
    return SolveReport(x, it, relres, time.perf_counter() - t0,
                       converged, residuals, stagnated=stagnated)
