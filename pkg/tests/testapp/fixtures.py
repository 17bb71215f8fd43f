"""
Golden values and small synthetic problems shared by the test modules.
"""
import numpy as np

from interval_newton.bench import RunRecord
from interval_newton.calculus import CoefficientCombination, variables
from interval_newton.constants import CRITICAL, NEWTON
from interval_newton.direction import PointData
from interval_newton.interval import Interval
from interval_newton.problems import ProblemDef

# Published I-BK1 trajectory: start, first two directions and their values.
BK1_X0 = (9.9862, -7.4332)
BK1_V0 = (-1.6621, 2.4866)
BK1_XI0 = -3.920429
BK1_X1 = (8.3241, -4.9466)
BK1_V1 = (-1.1080, 1.9893)
BK1_XI1 = -2.347010
BK1_X_STAR = (3.914930, 1.428474)
BK1_G_STAR = ((1.736722, 3.677497), (1.393317, 6.731112))

BK1_GRADIENTS_AT_X0 = (
    ((1.99724, 3.99448), (-4.45992, -1.48664)),
    ((0.99724, 2.99172), (-12.4332, -2.48664)),
)
BK1_HESSIANS = (
    (((0.2, 0.4), (0.0, 0.0)), ((0.0, 0.0), (0.2, 0.6))),
    (((0.2, 0.6), (0.0, 0.0)), ((0.0, 0.0), (0.2, 1.0))),
)

# Problems whose gH-gradient per term equals the definitional one everywhere
# the basis functions keep their sign.
PER_TERM_EXACT = ("I-BK1", "I-FON", "I-VU2", "I-IKK1", "I-VFM1", "I-MHHM2", "I-TR1")

# Cheap problems used where a test solves from many starts.
QUICK_PROBLEMS = ("I-BK1", "I-VU2", "I-IKK1", "I-VFM1", "I-MHHM2", "I-MOP7")


def quartic_problem() -> ProblemDef:
    """[1,1] ⊙ x⁴ on [−20, 20]."""
    (x,) = variables(1)
    return ProblemDef(
        name="quartic",
        lb=[-20.0],
        ub=[20.0],
        objectives=[CoefficientCombination([(Interval(1, 1), x ** 4)])],
    )


def sphere_problem() -> ProblemDef:
    """[1,1] ⊙ (x₁² + x₂²) on [−5, 5]²."""
    x1, x2 = variables(2)
    return ProblemDef(
        name="sphere",
        lb=[-5.0, -5.0],
        ub=[5.0, 5.0],
        objectives=[CoefficientCombination([(Interval(1, 1), x1 ** 2 + x2 ** 2)])],
    )


def _symmetric(rng, n: int) -> np.ndarray:
    X = rng.normal(size=(n, n))
    return 0.5 * (X + X.T)


def random_point_data(rng: np.random.Generator, m: int, n: int) -> PointData:
    """
    Random model data whose quadratic blocks are positive definite and whose
    Hessian widths are nonnegative diagonal matrices.
    """
    grad_lo, grad_hi, hess_lo, hess_hi = [], [], [], []
    for _ in range(m):
        centre = rng.uniform(-2.0, 2.0, size=n)
        spread = rng.uniform(0.0, 0.5, size=n)
        grad_lo.append(centre - spread)
        grad_hi.append(centre + spread)

        S = _symmetric(rng, n)
        M = S @ S.T / n + np.eye(n) * rng.uniform(0.5, 1.5)
        M = 0.5 * (M + M.T)
        D = np.diag(rng.uniform(0.0, 0.3, size=n))
        hess_lo.append(M - D)
        hess_hi.append(M + D)

    return PointData(
        x=np.zeros(n), grad_lo=grad_lo, grad_hi=grad_hi, hess_lo=hess_lo, hess_hi=hess_hi
    )


def zero_gradient_point_data(m: int, n: int) -> PointData:
    identity = np.broadcast_to(np.eye(n), (m, n, n))
    return PointData(
        x=np.zeros(n),
        grad_lo=np.zeros((m, n)),
        grad_hi=np.zeros((m, n)),
        hess_lo=identity,
        hess_hi=2.0 * identity,
    )


def make_record(problem="I-BK1", solver=NEWTON, run_index=0, iterations=1,
                cpu_seconds=0.01, status=CRITICAL) -> RunRecord:
    return RunRecord(
        problem=problem,
        solver=solver,
        run_index=run_index,
        x0=(0.0, 0.0),
        iterations=iterations,
        cpu_seconds=cpu_seconds,
        status=status,
    )
