"""
Primal log-barrier method for the epigraph form of the direction subproblem

    minimize τ  over (v, u, τ)
    subject to  aᵢᵀv + bᵢᵀu + vᵀAᵢv + uᵀBᵢu ≤ τ     (i = 1..m)
                −u ≤ v ≤ u,  u ≤ R

The data are rescaled so the largest coefficient is one; the returned τ is
in the original units.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .constants import CONVERGED, MAX_ITERATIONS

logger = logging.getLogger(__name__)

BARRIER_REDUCTION = 0.2
CENTERING_TOL = 1e-10
LINE_SEARCH_ALPHA = 0.25
LINE_SEARCH_BETA = 0.5
MAX_HALVINGS = 60


@dataclass(frozen=True)
class BarrierResult:
    v: np.ndarray
    u: np.ndarray
    tau: float
    status: str
    kkt_residual: float
    newton_iterations: int


class _Epigraph(object):
    def __init__(self, a, b, A, B, u_bound: float):
        scale = max(
            1.0,
            float(np.max(np.abs(a), initial=0.0)),
            float(np.max(np.abs(b), initial=0.0)),
            float(np.max(np.abs(A), initial=0.0)),
            float(np.max(np.abs(B), initial=0.0)),
        )
        self.scale = scale
        self.a, self.b = a / scale, b / scale
        self.A, self.B = A / scale, B / scale
        self.m, self.n = a.shape
        self.u_bound = u_bound

        n = self.n
        self.size = 2 * n + 1
        self.count = self.m + 3 * n

        # Gradients of the 3n linear constraints: v - u, -v - u, u - R
        linear = np.zeros((3 * n, self.size))
        eye = np.eye(n)
        linear[:n, :n], linear[:n, n:2 * n] = eye, -eye
        linear[n:2 * n, :n], linear[n:2 * n, n:2 * n] = -eye, -eye
        linear[2 * n:, n:2 * n] = eye
        self.linear = linear

    def split(self, z):
        n = self.n
        return z[:n], z[n:2 * n], z[2 * n]

    def quadratic_parts(self, v, u):
        Av = np.einsum("ijk,k->ij", self.A, v)
        Bu = np.einsum("ijk,k->ij", self.B, u)
        values = self.a @ v + self.b @ u + Av @ v + Bu @ u
        return values, Av, Bu

    def constraints(self, z) -> np.ndarray:
        v, u, tau = self.split(z)
        quadratic, _, _ = self.quadratic_parts(v, u)
        return np.concatenate([
            quadratic - tau,
            v - u,
            -v - u,
            u - self.u_bound,
        ])

    def barrier(self, z, t: float) -> float:
        f = self.constraints(z)
        if np.any(f >= 0):
            return np.inf
        return t * z[-1] - float(np.sum(np.log(-f)))

    def derivatives(self, z, t: float):
        v, u, tau = self.split(z)
        n = self.n
        quadratic, Av, Bu = self.quadratic_parts(v, u)
        f = np.concatenate([quadratic - tau, v - u, -v - u, u - self.u_bound])

        D = np.zeros((self.count, self.size))
        D[:self.m, :n] = self.a + 2.0 * Av
        D[:self.m, n:2 * n] = self.b + 2.0 * Bu
        D[:self.m, 2 * n] = -1.0
        D[self.m:] = self.linear

        weights = -1.0 / f
        gradient = D.T @ weights
        gradient[-1] += t

        hessian = (D * weights[:, None] ** 2).T @ D
        curvature = 2.0 * weights[:self.m]
        hessian[:n, :n] += np.tensordot(curvature, self.A, axes=1)
        hessian[n:2 * n, n:2 * n] += np.tensordot(curvature, self.B, axes=1)
        return f, gradient, hessian

    def initial_point(self):
        n = self.n
        v, u = np.zeros(n), np.ones(n)
        quadratic, _, _ = self.quadratic_parts(v, u)
        return np.concatenate([v, u, [float(np.max(quadratic)) + 1.0]])


def _newton_step(gradient, hessian):
    try:
        return np.linalg.solve(hessian, -gradient)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(hessian, -gradient, rcond=None)[0]


def solve_epigraph(a, b, A, B, u_bound: float, tol: float = 1e-8, max_newton: int = 200) -> BarrierResult:
    """
    a, b: (m, n) first-order coefficients; A, B: (m, n, n) PSD blocks.
    """
    problem = _Epigraph(
        np.asarray(a, dtype=float),
        np.asarray(b, dtype=float),
        np.asarray(A, dtype=float),
        np.asarray(B, dtype=float),
        max(float(u_bound), 2.0),
    )
    z = problem.initial_point()
    t = 1.0
    newton_iterations = 0
    kkt_residual = np.inf

    while True:
        stalled = False

        while True:
            f, gradient, hessian = problem.derivatives(z, t)
            step = _newton_step(gradient, hessian)
            decrement = -float(gradient @ step)

            if decrement / 2.0 <= CENTERING_TOL:
                break
            if newton_iterations >= max_newton:
                break

            current = problem.barrier(z, t)
            s = 1.0
            for _ in range(MAX_HALVINGS):
                trial = problem.barrier(z + s * step, t)
                if trial <= current - LINE_SEARCH_ALPHA * s * decrement:
                    break
                s *= LINE_SEARCH_BETA
            else:
                stalled = True

            newton_iterations += 1
            if stalled:
                break
            z = z + s * step

        f, gradient, _ = problem.derivatives(z, t)
        kkt_residual = max(float(np.linalg.norm(gradient)) / t, problem.count / t)

        if kkt_residual <= tol:
            status = CONVERGED
            break
        if newton_iterations >= max_newton or stalled:
            status = MAX_ITERATIONS
            break

        t /= BARRIER_REDUCTION

    v, u, tau = problem.split(z)
    logger.debug(
        "barrier finished: status=%s newton_iterations=%s kkt_residual=%.3e",
        status, newton_iterations, kkt_residual,
    )
    return BarrierResult(
        v=v.copy(),
        u=u.copy(),
        tau=float(tau) * problem.scale,
        status=status,
        kkt_residual=kkt_residual,
        newton_iterations=newton_iterations,
    )
