"""
Quadratic interval models and the Newton-direction subproblem.

For objective i with gH-gradient [g̲, ḡ] and gH-Hessian [H̲, H̅] at x, with
a = ½(g̲+ḡ), b = ½(ḡ−g̲), A = ¼(H̲+H̅), B = ¼(H̅−H̲):

    lower = aᵀv − bᵀ|v| + vᵀAv − |v|ᵀB|v|
    upper = aᵀv + bᵀ|v| + vᵀAv + |v|ᵀB|v|

The Newton direction minimizes max_i upper over v.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .barrier import solve_epigraph
from .constants import CONVERGED, INFEASIBLE
from .exceptions import (
    ConfigurationError,
    DimensionMismatch,
    IntervalDomainError,
    UnsupportedDimension,
)

logger = logging.getLogger(__name__)

PSD_TOL = 1e-10
SHIFT_START = 1e-8
MAX_SHIFT = 1e-2
ACTIVE_TOL = 1e-10
UNBOUNDED_RADIUS = 1e6


@dataclass(frozen=True)
class PointData:
    x: np.ndarray
    grad_lo: np.ndarray
    grad_hi: np.ndarray
    hess_lo: np.ndarray
    hess_hi: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("x", "grad_lo", "grad_hi", "hess_lo", "hess_hi"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            arrays[name] = array
            object.__setattr__(self, name, array)

        m, n = arrays["grad_lo"].shape
        if arrays["x"].shape != (n,):
            raise DimensionMismatch(n, arrays["x"].size, "point")
        if arrays["grad_hi"].shape != (m, n):
            raise DimensionMismatch(n, arrays["grad_hi"].shape[-1], "gradient")
        for name in ("hess_lo", "hess_hi"):
            if arrays[name].shape != (m, n, n):
                raise DimensionMismatch(n, arrays[name].shape[-1], "Hessian")
            if not np.array_equal(arrays[name], np.swapaxes(arrays[name], 1, 2)):
                raise IntervalDomainError("%s is not symmetric" % name)
        if np.any(self.grad_lo > self.grad_hi) or np.any(self.hess_lo > self.hess_hi):
            raise IntervalDomainError("point data has a lower endpoint above its upper endpoint")

    @classmethod
    def from_objectives(cls, objectives: Sequence, x) -> "PointData":
        x = np.asarray(x, dtype=float)
        gradients = [G.gradient(x) for G in objectives]
        hessians = [G.hessian(x) for G in objectives]
        return cls(
            x=x,
            grad_lo=[g.lo for g in gradients],
            grad_hi=[g.hi for g in gradients],
            hess_lo=[H.lo for H in hessians],
            hess_hi=[H.hi for H in hessians],
        )

    @property
    def m(self) -> int:
        return self.grad_lo.shape[0]

    @property
    def n(self) -> int:
        return self.grad_lo.shape[1]

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        a = 0.5 * (self.grad_lo + self.grad_hi)
        b = 0.5 * (self.grad_hi - self.grad_lo)
        A = 0.25 * (self.hess_lo + self.hess_hi)
        B = 0.25 * (self.hess_hi - self.hess_lo)
        return a, b, A, B

    def regularized(self, shift: float) -> "PointData":
        """Adds shift·I to both quadratic blocks of every objective."""
        if shift == 0:
            return self
        return replace(self, hess_hi=self.hess_hi + 4.0 * shift * np.eye(self.n))

    def with_identity_hessians(self) -> "PointData":
        identity = np.broadcast_to(np.eye(self.n), (self.m, self.n, self.n))
        return replace(self, hess_lo=identity, hess_hi=identity)


@dataclass(frozen=True)
class ModelValue:
    lower: float
    upper: float


@dataclass(frozen=True)
class DirectionResult:
    v: np.ndarray
    xi: float
    u: np.ndarray
    tau: float
    status: str
    kkt_residual: float
    regularization_shift: float = 0.0
    active_set: Tuple[int, ...] = field(default_factory=tuple)
    inner_iterations: int = 0

    def to_json(self) -> dict:
        return {
            "v": [float(c) for c in self.v],
            "xi": self.xi,
            "u": [float(c) for c in self.u],
            "tau": self.tau,
            "status": self.status,
            "kkt_residual": self.kkt_residual,
            "regularization_shift": self.regularization_shift,
        }


def _as_direction(P: PointData, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (P.n,):
        raise DimensionMismatch(P.n, v.size, "direction")
    return v


def _model_parts(P: PointData, V: np.ndarray):
    """First- and second-order parts for a batch of directions V (k, n)."""
    a, b, A, B = P.blocks()
    W = np.abs(V)
    first = V @ a.T, W @ b.T
    second = (
        np.einsum("kr,irs,ks->ki", V, A, V),
        np.einsum("kr,irs,ks->ki", W, B, W),
    )
    return first, second


def upper_models(P: PointData, V) -> np.ndarray:
    """Upper model values, shape (k, m), for directions V of shape (k, n)."""
    V = np.atleast_2d(np.asarray(V, dtype=float))
    (linear, spread), (curvature, width) = _model_parts(P, V)
    return linear + spread + curvature + width


def eval_model(P: PointData, i: int, v) -> ModelValue:
    v = _as_direction(P, v)
    (linear, spread), (curvature, width) = _model_parts(P, v[None, :])
    return ModelValue(
        lower=float(linear[0, i] - spread[0, i] + curvature[0, i] - width[0, i]),
        upper=float(linear[0, i] + spread[0, i] + curvature[0, i] + width[0, i]),
    )


def first_order_upper(P: PointData, v) -> np.ndarray:
    """Upper endpoint of ∇_gH G_i(x)ᵀ ⊙ v for every objective."""
    v = _as_direction(P, v)
    a, b, _, _ = P.blocks()
    return a @ v + b @ np.abs(v)


def scalarized_value(P: PointData, v) -> float:
    v = _as_direction(P, v)
    return float(np.max(upper_models(P, v)[0]))


def _block_min_eigenvalue(P: PointData) -> float:
    _, _, A, B = P.blocks()
    return float(min(np.min(np.linalg.eigvalsh(A)), np.min(np.linalg.eigvalsh(B))))


def regularization_shift(P: PointData, max_shift: float = MAX_SHIFT) -> Optional[float]:
    """
    Smallest shift μ in {0, 1e-8, 2e-8, ...} making every quadratic block PSD,
    or None when it would exceed max_shift.
    """
    smallest = _block_min_eigenvalue(P)
    if smallest >= -PSD_TOL:
        return 0.0

    shift = SHIFT_START
    while smallest + shift < -PSD_TOL:
        shift *= 2.0
        if shift > max_shift:
            return None
    return shift


def direction_bound(P: PointData) -> float:
    """
    Tightest ‖v‖ bound over objectives whose H̲ + H̅ is positive definite:
    (2/λ_min)(‖g̲‖ + ‖ḡ‖). Infinite when no objective qualifies.
    """
    best = math.inf
    for i in range(P.m):
        smallest = float(np.min(np.linalg.eigvalsh(P.hess_lo[i] + P.hess_hi[i])))
        if smallest > 0:
            bound = 2.0 / smallest * (
                np.linalg.norm(P.grad_lo[i]) + np.linalg.norm(P.grad_hi[i])
            )
            best = min(best, float(bound))
    return best


def _active_set(P: PointData, v: np.ndarray, xi: float) -> Tuple[int, ...]:
    values = upper_models(P, v)[0]
    return tuple(int(i) for i in np.flatnonzero(values >= xi - ACTIVE_TOL))


def newton_direction(P: PointData, tol: float = 1e-8, max_shift: float = MAX_SHIFT,
                     max_newton: int = 200) -> DirectionResult:
    """
    Solve min_v max_i upper_i(v) through its smooth epigraph reformulation.

    Non-PSD quadratic blocks are shifted by μI with μ doubling from 1e-8;
    beyond max_shift the result is reported as infeasible.
    """
    if tol <= 0:
        raise ConfigurationError("subproblem tolerance must be positive, got %s" % tol)

    shift = regularization_shift(P, max_shift)
    if shift is None:
        logger.warning("model at x=%s stays indefinite up to shift %s", P.x, max_shift)
        zeros = np.zeros(P.n)
        return DirectionResult(
            v=zeros, xi=0.0, u=zeros, tau=0.0, status=INFEASIBLE,
            kkt_residual=math.inf, regularization_shift=max_shift,
        )
    if shift > 0:
        logger.debug("regularizing model at x=%s with shift %s", P.x, shift)

    model = P.regularized(shift)
    bound = direction_bound(model)
    u_bound = UNBOUNDED_RADIUS if math.isinf(bound) else 2.0 * bound + 1.0

    a, b, A, B = model.blocks()
    result = solve_epigraph(a, b, A, B, u_bound=u_bound, tol=tol, max_newton=max_newton)

    v = result.v
    xi = scalarized_value(model, v)
    if not xi <= 0.0:
        # the origin is always feasible with value 0
        v = np.zeros(P.n)
        xi = 0.0

    return DirectionResult(
        v=v,
        xi=xi,
        u=np.abs(v),
        tau=xi,
        status=result.status,
        kkt_residual=result.kkt_residual,
        regularization_shift=shift,
        active_set=_active_set(model, v, xi),
        inner_iterations=result.newton_iterations,
    )


def steepest_direction(P: PointData, tol: float = 1e-8, max_newton: int = 200) -> DirectionResult:
    """First-order model plus ½‖v‖², solved with the Newton machinery."""
    return newton_direction(P.with_identity_hessians(), tol=tol, max_newton=max_newton)


_DEFAULT_GRIDS = {1: 200001, 2: 401, 3: 61}


def oracle_direction(P: PointData, radius: Optional[float] = None,
                     grid: Optional[int] = None) -> DirectionResult:
    """
    Brute-force minimizer of the scalarized model: a grid scan over
    [−radius, radius]ⁿ polished with Nelder-Mead. Only meant for tests.
    """
    if P.n > 3:
        raise UnsupportedDimension(
            "oracle_direction supports at most 3 variables, got %s" % P.n
        )

    if radius is None:
        bound = direction_bound(P)
        radius = 10.0 if math.isinf(bound) else max(1.0, bound)
    if grid is None:
        grid = _DEFAULT_GRIDS[P.n]

    axis = np.linspace(-radius, radius, grid)
    best_v, best_value = np.zeros(P.n), 0.0

    for chunk in _grid_chunks(axis, P.n):
        values = np.max(upper_models(P, chunk), axis=1)
        k = int(np.argmin(values))
        if values[k] < best_value:
            best_v, best_value = chunk[k].copy(), float(values[k])

    polished = minimize(
        lambda w: scalarized_value(P, w),
        best_v,
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000},
    )
    if polished.fun < best_value:
        best_v, best_value = np.asarray(polished.x, dtype=float), float(polished.fun)

    return DirectionResult(
        v=best_v,
        xi=best_value,
        u=np.abs(best_v),
        tau=best_value,
        status=CONVERGED,
        kkt_residual=math.nan,
        active_set=_active_set(P, best_v, best_value),
    )


def _grid_chunks(axis: np.ndarray, n: int, size: int = 50000):
    if n == 1:
        for start in range(0, axis.size, size):
            yield axis[start:start + size, None]
        return

    batch = []
    for point in itertools.product(axis, repeat=n):
        batch.append(point)
        if len(batch) == size:
            yield np.array(batch)
            batch = []
    if batch:
        yield np.array(batch)
