"""
Outer Newton loop: direction, stopping test, Armijo-like backtracking and
the iterate history, plus criticality and scaling checks.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .constants import (
    CRITICAL,
    INFEASIBLE,
    LINE_SEARCH_FAILED,
    MAX_ITERATIONS,
    NEWTON,
    STEEPEST_DESCENT,
    VALID_DIRECTION_KINDS,
)
from .direction import DirectionResult, PointData, newton_direction, steepest_direction
from .exceptions import ConfigurationError, DimensionMismatch, EvaluationError, LineSearchFailed
from .interval import Interval, compare_vectors, is_dominated_or_equal
from .problems import ProblemDef

logger = logging.getLogger(__name__)

MAX_BACKTRACKS_EXPONENT = 40


def _validate_solver_params(eta, sigma, eps, max_iters, min_step, direction_kind):
    if not 0.0 < eta < 1.0:
        raise ConfigurationError("'eta' must lie in (0, 1), got %s" % eta)

    if not 0.0 < sigma < 1.0:
        raise ConfigurationError("'sigma' must lie in (0, 1), got %s" % sigma)

    if not eps > 0.0:
        raise ConfigurationError("'eps' must be positive, got %s" % eps)

    if not isinstance(max_iters, int) or isinstance(max_iters, bool) or max_iters < 0:
        raise ConfigurationError("'max_iters' must be a non-negative integer, got %r" % (max_iters,))

    if min_step is not None and not min_step >= np.finfo(float).eps:
        raise ConfigurationError(
            "'min_step' must be at least machine epsilon, got %s" % min_step
        )

    if direction_kind not in VALID_DIRECTION_KINDS:
        raise ConfigurationError(
            "%s is not a valid direction kind; must be one of %s"
            % (direction_kind, VALID_DIRECTION_KINDS)
        )


@dataclass(frozen=True)
class SolverParams:
    eta: float = 0.5
    sigma: float = 1e-3
    eps: float = 1e-6
    max_iters: int = 500
    min_step: Optional[float] = None
    direction_kind: str = NEWTON
    subproblem_tol: float = 1e-8

    def __post_init__(self):
        # only a caller-supplied floor is held to machine epsilon; the derived
        # eta**40 comes back through dataclasses.replace and stays exempt
        derived = self.eta ** MAX_BACKTRACKS_EXPONENT if 0.0 < self.eta < 1.0 else None
        explicit = self.min_step is not None and self.min_step != derived
        if self.min_step is None and derived is not None:
            object.__setattr__(self, "min_step", derived)
        _validate_solver_params(
            self.eta, self.sigma, self.eps, self.max_iters,
            self.min_step if explicit else None,
            self.direction_kind,
        )
        if not self.subproblem_tol > 0.0:
            raise ConfigurationError(
                "'subproblem_tol' must be positive, got %s" % self.subproblem_tol
            )

    def to_json(self) -> dict:
        return {
            "eta": self.eta,
            "sigma": self.sigma,
            "eps": self.eps,
            "max_iters": self.max_iters,
            "min_step": self.min_step,
            "direction_kind": self.direction_kind,
            "subproblem_tol": self.subproblem_tol,
        }


@dataclass(frozen=True)
class IterateRecord:
    k: int
    x: np.ndarray
    G_values: Tuple[Interval, ...]
    xi: float
    v: np.ndarray
    t: Optional[float]
    backtracks: int
    left_box: bool = False
    in_level_set: bool = True
    regularization_shift: float = 0.0
    direction_status: str = ""

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "x": [float(c) for c in self.x],
            "G": [G.to_json() for G in self.G_values],
            "xi": self.xi,
            "v": [float(c) for c in self.v],
            "t": self.t,
            "backtracks": self.backtracks,
            "left_box": self.left_box,
            "in_level_set": self.in_level_set,
            "regularization_shift": self.regularization_shift,
            "direction_status": self.direction_status,
        }


@dataclass(frozen=True)
class SolveReport:
    problem: str
    params: SolverParams
    x0: np.ndarray
    iterates: Tuple[IterateRecord, ...]
    status: str
    final_x: np.ndarray
    wall_time: float = 0.0
    subproblem_time: float = 0.0
    final_solution: Optional[np.ndarray] = None

    @property
    def iterations(self) -> int:
        """Number of accepted steps."""
        return len(self.iterates) - 1

    @property
    def final_xi(self) -> float:
        return self.iterates[-1].xi

    def to_json(self) -> dict:
        return {
            "problem": self.problem,
            "params": self.params.to_json(),
            "x0": [float(c) for c in self.x0],
            "status": self.status,
            "iterations": self.iterations,
            "final_x": [float(c) for c in self.final_x],
            "final_solution": [float(c) for c in self.final_solution]
            if self.final_solution is not None else None,
            "timings": {"wall": self.wall_time, "subproblem": self.subproblem_time},
            "iterates": [record.to_json() for record in self.iterates],
        }


def _as_point(problem: ProblemDef, x) -> np.ndarray:
    x = np.array(x, dtype=float).reshape(-1)
    if x.shape != (problem.n,):
        raise DimensionMismatch(problem.n, x.size, "initial point")
    return x


def _armijo_accepts(G_trial: Sequence[Interval], G_x: Sequence[Interval], decrease: float) -> bool:
    return all(
        trial.lo <= current.lo + decrease and trial.hi <= current.hi + decrease
        for trial, current in zip(G_trial, G_x)
    )


def armijo_step(problem: ProblemDef, x, v, xi: float, params: SolverParams = None,
                G_x: Optional[Sequence[Interval]] = None) -> Tuple[float, int]:
    """
    Largest t in {1, η, η², ...} not below min_step such that both endpoints
    of every G_i(x + t v) drop by at least σ t |ξ|.
    """
    params = params or SolverParams()
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)

    if not xi < 0.0:
        raise ConfigurationError("Armijo search needs a descent value xi < 0, got %s" % xi)
    if not np.any(v):
        raise ConfigurationError("Armijo search needs a nonzero direction")

    if G_x is None:
        G_x = problem.evaluate(x)

    backtracks = 0
    t = 1.0
    while t >= params.min_step:
        try:
            G_trial = problem.evaluate(x + t * v)
        except EvaluationError as error:
            logger.debug("trial step t=%s rejected: %s", t, error)
        else:
            if _armijo_accepts(G_trial, G_x, params.sigma * t * xi):
                return t, backtracks
        backtracks += 1
        t = params.eta ** backtracks

    raise LineSearchFailed(t, backtracks)


def _direction(P: PointData, params: SolverParams) -> DirectionResult:
    if params.direction_kind == STEEPEST_DESCENT:
        return steepest_direction(P, tol=params.subproblem_tol)

    result = newton_direction(P, tol=params.subproblem_tol)
    if result.status == INFEASIBLE:
        logger.warning(
            "capped regularization failed at x=%s; retrying with an uncapped shift", P.x
        )
        result = newton_direction(P, tol=params.subproblem_tol, max_shift=math.inf)
    return result


def solve(problem: ProblemDef, x0, params: SolverParams = None) -> SolveReport:
    """Run the Newton method from x0 until ξ(x) > −eps or a limit is hit."""
    params = params or SolverParams()
    x = _as_point(problem, x0)
    x0 = x.copy()

    if not problem.in_box(x0):
        logger.warning("initial point %s lies outside the box of %s", x0, problem.name)

    logger.info(
        "solving %s from x0=%s with %s directions", problem.name, x0, params.direction_kind
    )
    started = time.perf_counter()
    subproblem_time = 0.0

    G_x = problem.evaluate(x)
    G_0 = G_x
    iterates: List[IterateRecord] = []
    k = 0

    while True:
        try:
            P = PointData.from_objectives(problem.objectives, x)
        except EvaluationError as error:
            raise EvaluationError("%s (iterate k=%s)" % (error, k)) from error

        subproblem_started = time.perf_counter()
        direction = _direction(P, params)
        subproblem_time += time.perf_counter() - subproblem_started

        common = dict(
            k=k,
            x=x.copy(),
            G_values=tuple(G_x),
            xi=direction.xi,
            v=direction.v.copy(),
            left_box=not problem.in_box(x),
            in_level_set=is_dominated_or_equal(G_x, G_0),
            regularization_shift=direction.regularization_shift,
            direction_status=direction.status,
        )

        if direction.xi > -params.eps:
            status = CRITICAL
        elif k >= params.max_iters:
            status = MAX_ITERATIONS
        else:
            try:
                t, backtracks = armijo_step(problem, x, direction.v, direction.xi, params, G_x)
            except LineSearchFailed as error:
                logger.warning("line search failed on %s at k=%s: %s", problem.name, k, error)
                status = LINE_SEARCH_FAILED
            else:
                iterates.append(IterateRecord(t=t, backtracks=backtracks, **common))
                logger.debug(
                    "k=%s xi=%.6e t=%s backtracks=%s", k, direction.xi, t, backtracks
                )
                x = x + t * direction.v
                G_x = problem.evaluate(x)
                k += 1
                continue

        iterates.append(IterateRecord(t=None, backtracks=0, **common))
        break

    wall_time = time.perf_counter() - started
    logger.info(
        "%s finished with status %s after %s iterations (xi=%.3e)",
        problem.name, status, k, iterates[-1].xi,
    )
    return SolveReport(
        problem=problem.name,
        params=params,
        x0=x0,
        iterates=tuple(iterates),
        status=status,
        final_x=x.copy(),
        wall_time=wall_time,
        subproblem_time=subproblem_time,
        final_solution=problem.full_solution(x),
    )


@dataclass(frozen=True)
class CriticalityCertificate:
    xi: float
    is_critical: bool
    v: np.ndarray = field(default_factory=lambda: np.zeros(0))


def criticality_certificate(problem: ProblemDef, x, eps: float = 1e-6) -> CriticalityCertificate:
    """x is Pareto critical iff the Newton subproblem value is not below −eps."""
    x = _as_point(problem, x)
    direction = _direction(PointData.from_objectives(problem.objectives, x), SolverParams(eps=eps))
    return CriticalityCertificate(
        xi=direction.xi, is_critical=direction.xi > -eps, v=direction.v
    )


def check_scaling_invariance(problem: ProblemDef, x, T, tol: float = 1e-8) -> float:
    """
    ‖v̂(Tx) − T v(x)‖ where v̂ is the Newton direction of the problem written
    in the scaled variables x̂ = T x.
    """
    x = _as_point(problem, x)
    T = np.asarray(T, dtype=float)
    scaled = problem.transformed(T)

    params = SolverParams(subproblem_tol=tol)
    v = _direction(PointData.from_objectives(problem.objectives, x), params).v
    v_hat = _direction(PointData.from_objectives(scaled.objectives, T @ x), params).v
    return float(np.linalg.norm(v_hat - T @ v))


def mutual_nondominance(problem: ProblemDef, points: Sequence) -> List[List[str]]:
    """relations[a][b] is the objective-vector relation of point a to point b."""
    values = [problem.evaluate(_as_point(problem, x)) for x in points]
    return [[compare_vectors(A, B) for B in values] for A in values]
