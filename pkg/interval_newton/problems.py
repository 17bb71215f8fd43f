"""
Registry of the interval test problems, the reduced portfolio problem and
the weighted-sum reference solutions for I-BK1.

Every problem is declared with the ``@problem`` decorator; the builder gets
the coordinate polynomials x_1..x_n and returns its objectives. Terms that
subtract an interval multiple are written with the negated coefficient.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .calculus import (
    IVM,
    BoundaryPair,
    CoefficientCombination,
    Cos,
    Exp,
    LinearCombination,
    Polynomial,
    Product,
    Reciprocal,
    Sin,
    variables,
)
from .exceptions import (
    ConfigurationError,
    DimensionMismatch,
    EvaluationError,
    IllConditionedTransform,
    IntervalDomainError,
)
from .interval import Interval
from .registry import get_builder, problem, registered_names

logger = logging.getLogger(__name__)

MAX_CONDITION_NUMBER = 1e8

PORTFOLIO = "portfolio"


def iv(lo: float, hi: float) -> Interval:
    return Interval(lo, hi)


@dataclass(frozen=True)
class ProblemDef:
    name: str
    lb: np.ndarray
    ub: np.ndarray
    objectives: Tuple[IVM, ...]
    description: str = ""
    completion: Optional[Callable] = None

    def __post_init__(self):
        for attr in ("lb", "ub"):
            bounds = np.array(getattr(self, attr), dtype=float)
            bounds.setflags(write=False)
            object.__setattr__(self, attr, bounds)
        object.__setattr__(self, "objectives", tuple(self.objectives))

        for G in self.objectives:
            if G.dim != self.n:
                raise DimensionMismatch(self.n, G.dim, "objective of %s" % self.name)

    @property
    def m(self) -> int:
        return len(self.objectives)

    @property
    def n(self) -> int:
        return self.lb.shape[0]

    def evaluate(self, x) -> List[Interval]:
        return [G.evaluate(x) for G in self.objectives]

    def in_box(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lb) and np.all(x <= self.ub))

    def full_solution(self, x) -> np.ndarray:
        """The reported solution; reduced problems append eliminated variables."""
        x = np.asarray(x, dtype=float)
        if self.completion is None:
            return x
        return np.asarray(self.completion(x), dtype=float)

    def transformed(self, T) -> "ProblemDef":
        """
        The problem in the variables x̂ = T x, i.e. Ĝ(x̂) = G(T⁻¹ x̂). The box
        is replaced by the bounding box of its image.
        """
        T = np.asarray(T, dtype=float)
        if T.shape != (self.n, self.n):
            raise DimensionMismatch(self.n, T.shape[0], "scaling matrix")

        condition = np.linalg.cond(T)
        if not condition < MAX_CONDITION_NUMBER:
            raise IllConditionedTransform(
                "scaling matrix has condition number %.3e; must be below %.0e"
                % (condition, MAX_CONDITION_NUMBER)
            )

        T_inv = np.linalg.inv(T)
        corners = np.array(
            [T @ np.where(mask, self.ub, self.lb) for mask in _corner_masks(self.n)]
        )
        return ProblemDef(
            name="%s (scaled)" % self.name,
            lb=corners.min(axis=0),
            ub=corners.max(axis=0),
            objectives=tuple(G.composed(T_inv) for G in self.objectives),
            description=self.description,
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "n": self.n,
            "lb": [float(b) for b in self.lb],
            "ub": [float(b) for b in self.ub],
        }


def _corner_masks(n: int):
    for index in range(2 ** n):
        yield np.array([(index >> r) & 1 for r in range(n)], dtype=bool)


@lru_cache(maxsize=None)
def get_problem(name: str) -> ProblemDef:
    builder = get_builder(name)
    meta = builder._problem
    objectives = builder(*variables(len(meta["lb"])))
    return ProblemDef(
        name=meta["name"],
        lb=meta["lb"],
        ub=meta["ub"],
        objectives=objectives,
        description=meta["description"],
        completion=meta["completion"],
    )


def problem_names(include_portfolio: bool = True) -> List[str]:
    names = registered_names()
    if not include_portfolio:
        names = [name for name in names if name != PORTFOLIO]
    return names


def corpus() -> List[ProblemDef]:
    return [get_problem(name) for name in problem_names(include_portfolio=False)]


def catalogue() -> List[dict]:
    return [get_problem(name).to_json() for name in problem_names()]


def _one(x) -> Polynomial:
    return Polynomial.constant(x.n, 1.0)


def _gauss(*squares: Polynomial, scale: float = 1.0) -> Exp:
    """exp(−scale · Σ squares)."""
    return Exp(sum(squares[1:], squares[0]) * -scale)


@problem("I-BK1", lb=[-10, -10], ub=[10, 10])
def bk1(x1, x2):
    """Convex quadratics centred at the origin and at (5, 5)."""
    return [
        CoefficientCombination([(iv(0.1, 0.2), x1 ** 2), (iv(0.1, 0.3), x2 ** 2)]),
        CoefficientCombination([
            (iv(0.1, 0.3), (x1 - 5) ** 2),
            (iv(0.1, 0.5), (x2 - 5) ** 2),
        ]),
    ]


@problem("I-VU2", lb=[-4, -4], ub=[4, 4])
def vu2(x1, x2):
    return [
        CoefficientCombination([
            (iv(1, 1.5), x1), (iv(1, 1.5), x2), (iv(1, 1), _one(x1)),
        ]),
        CoefficientCombination([
            (iv(1, 1.5), x1 ** 2), (iv(2, 3), x2 ** 2), (iv(-1, -1), _one(x1)),
        ]),
    ]


@problem("I-CH", lb=[-5, -4], ub=[5, 4])
def ch(x1, x2):
    return [
        CoefficientCombination([
            (iv(1, 1), (x1 - 1) ** 2 + (x2 - 2) ** 2), (iv(-1, 1), _one(x1)),
        ]),
        CoefficientCombination([(iv(2, 3), x1 ** 2 - x2), (iv(-2, 2), _one(x1))]),
    ]


@problem("I-FON", lb=[-2, -2], ub=[2, 2])
def fon(x1, x2):
    c = math.sqrt(0.5)
    return [
        CoefficientCombination([
            (iv(1, 1), _one(x1)), (iv(-3, -1), _gauss((x1 - c) ** 2, (x2 - c) ** 2)),
        ]),
        CoefficientCombination([
            (iv(1, 1), _one(x1)), (iv(-5, -1), _gauss((x1 + c) ** 2, (x2 + c) ** 2)),
        ]),
    ]


@problem("I-KW2", lb=[-3, -1], ub=[0, 2])
def kw2(x1, x2):
    return [
        CoefficientCombination([
            (iv(-5, -3), Product((1 - x1) ** 2, _gauss(x1 ** 2, (x2 + 1) ** 2))),
            (iv(10, 10), Product(x1 / 5 - x1 ** 3 - x2 ** 5, _gauss(x1 ** 2, x2 ** 2))),
            (iv(3, 5), _gauss((x1 + 2) ** 2, x2 ** 2)),
            (iv(-0.5, -0.5), 2 * x1 + x2),
        ]),
        CoefficientCombination([
            (iv(-5, -3), Product((1 + x2) ** 2, _gauss(x2 ** 2, (1 - x2) ** 2))),
            (iv(10, 10), Product(-x2 / 5 + x2 ** 3 + x1 ** 5, _gauss(x1 ** 2, x2 ** 2))),
            (iv(3, 5), _gauss((2 - x2) ** 2, x1 ** 2)),
        ]),
    ]


@problem("I-Far1", lb=[-1, -1], ub=[1, 1])
def far1(x1, x2):
    return [
        CoefficientCombination([
            (iv(-2, -1), _gauss((x1 - 0.1) ** 2, x2 ** 2, scale=15)),
            (iv(-2, -1), _gauss((x1 - 0.6) ** 2, (x2 - 0.6) ** 2, scale=20)),
            (iv(1, 3), _gauss((x1 + 0.6) ** 2, (x2 - 0.6) ** 2, scale=20)),
            (iv(1, 2), _gauss((x1 - 0.6) ** 2, (x2 + 0.6) ** 2, scale=20)),
            (iv(1, 2), _gauss((x1 + 0.6) ** 2, (x2 + 0.6) ** 2, scale=20)),
        ]),
        CoefficientCombination([
            (iv(2, 4), _gauss(x1 ** 2, x2 ** 2, scale=20)),
            (iv(1, 2), _gauss((x1 - 0.4) ** 2, (x2 - 0.6) ** 2, scale=20)),
            (iv(-2, -1), _gauss((x1 + 0.5) ** 2, (x2 - 0.7) ** 2, scale=20)),
            (iv(-2, -1), _gauss((x1 - 0.5) ** 2, (x2 + 0.7) ** 2, scale=20)),
            (iv(1, 5), _gauss((x1 + 0.4) ** 2, (x2 + 0.8) ** 2, scale=20)),
        ]),
    ]


@problem("I-Hil1", lb=[-1, -1], ub=[1, 1])
def hil1(x1, x2):
    one = _one(x1)
    wave1, wave2 = Sin(2 * math.pi * x1), Sin(2 * math.pi * x2)
    degree = 2 * math.pi / 360
    angle = LinearCombination([
        (45 * degree, one), (40 * degree, wave1), (25 * degree, wave2),
    ])
    radius = LinearCombination([(1.0, one), (0.5, Cos(2 * math.pi * x1))])
    return [
        CoefficientCombination([(iv(1, 2), Product(radius, Cos(angle)))]),
        CoefficientCombination([(iv(1, 3), Product(radius, Sin(angle)))]),
    ]


@problem("I-PNR", lb=[-2, -2], ub=[2, 2])
def pnr(x1, x2):
    return [
        CoefficientCombination([
            (iv(1, 1.5), x1 ** 4 + x2 ** 4),
            (iv(1, 2.6), x1 ** 2 + x2 ** 2),
            (iv(10, 10), x1 * x2),
            (iv(0.25, 0.25), x1),
            (iv(20, 24), _one(x1)),
        ]),
        CoefficientCombination([
            (iv(1, 2), (x1 - 1) ** 2), (iv(1, 1.5), x2 ** 2), (iv(0, 2), _one(x1)),
        ]),
    ]


@problem("I-Deb", lb=[1, -1], ub=[3, 1])
def deb(x1, x2):
    inverse = Reciprocal(x1)
    return [
        CoefficientCombination([(iv(1, 2), x1)]),
        CoefficientCombination([
            (iv(2, 2), inverse),
            (iv(-3, -1), Product(inverse, _gauss(((x2 - 0.2) / 0.004) ** 2))),
            (iv(-1.5, -0.8), Product(inverse, _gauss(((x2 - 0.6) / 0.4) ** 2))),
        ]),
    ]


@problem(
    "I-SD",
    lb=[1, math.sqrt(2), math.sqrt(2), 1],
    ub=[6, 6, 6, 6],
)
def sd(x1, x2, x3, x4):
    r2, r3 = math.sqrt(2), math.sqrt(3)
    return [
        CoefficientCombination([
            (iv(2, 3), x1), (iv(r2, r3), x2), (iv(r2, r3), x3), (iv(1, 3), x4),
        ]),
        CoefficientCombination([
            (iv(2, 3), Reciprocal(x1)),
            (iv(2 * r2, 3 * r3), Reciprocal(x2)),
            (iv(2 * r2, 3 * r3), Reciprocal(x3)),
            (iv(2, 3), Reciprocal(x4)),
        ]),
    ]


@problem("I-IKK1", lb=[-50, -50], ub=[50, 50])
def ikk1(x1, x2):
    return [
        CoefficientCombination([(iv(1, 1), x1 ** 2), (iv(0, 1), x2 ** 2)]),
        CoefficientCombination([(iv(1, 1), (x1 - 20) ** 2), (iv(0, 1), (x2 - 20) ** 2)]),
        CoefficientCombination([(iv(0, 1), x1 ** 2), (iv(1, 1), x2 ** 2)]),
    ]


@problem("I-VFM1", lb=[-2, -2], ub=[2, 2])
def vfm1(x1, x2):
    return [
        CoefficientCombination([(iv(1, 2), x1 ** 2), (iv(1, 3), (x2 - 1) ** 2)]),
        CoefficientCombination([
            (iv(1, 3), x1 ** 2), (iv(1, 2), (x2 + 1) ** 2), (iv(1, 1), _one(x1)),
        ]),
        CoefficientCombination([
            (iv(1, 2), (x1 - 1) ** 2), (iv(1, 5), x2 ** 2), (iv(2, 2), _one(x1)),
        ]),
    ]


@problem("I-MHHM2", lb=[0, 0], ub=[1, 1])
def mhhm2(x1, x2):
    return [
        CoefficientCombination([(iv(2, 3), (x1 - 0.8) ** 2), (iv(1, 2), (x2 - 0.6) ** 2)]),
        CoefficientCombination([(iv(1, 2), (x1 - 0.85) ** 2), (iv(1, 1.5), (x2 - 0.7) ** 2)]),
        CoefficientCombination([(iv(2, 2.5), (x1 - 0.9) ** 2), (iv(1, 1.2), (x2 - 0.6) ** 2)]),
    ]


@problem("I-Viennet", lb=[-3, -3], ub=[3, 3])
def viennet(x1, x2):
    radius = x1 ** 2 + x2 ** 2
    return [
        CoefficientCombination([(iv(0.5, 1), radius), (iv(1, 2), Sin(radius))]),
        CoefficientCombination([
            (iv(1 / 8, 1 / 4), (3 * x1 - 2 * x2 + 4) ** 2),
            (iv(1 / 27, 1 / 9), (x1 - x2 + 1) ** 2),
            (iv(15, 16), _one(x1)),
        ]),
        CoefficientCombination([
            (iv(1 / 4, 1 / 2), Reciprocal(radius + 1)),
            (iv(-1.1, -0.9), _gauss(x1 ** 2, x2 ** 2)),
        ]),
    ]


@problem("I-AP1", lb=[-100, -100], ub=[100, 100])
def ap1(x1, x2):
    return [
        CoefficientCombination([(iv(1 / 4, 1 / 2), (x1 - 1) ** 4 + 2 * (x2 - 2) ** 4)]),
        CoefficientCombination([
            (iv(1, 2), Exp((x1 + x2) / 2)), (iv(1, 1.5), x1 ** 2 + x2 ** 2),
        ]),
        CoefficientCombination([
            (iv(1 / 3, 1 / 2), LinearCombination([(1.0, Exp(-x1)), (2.0, Exp(-x2))])),
        ]),
    ]


@problem("I-MOP7", lb=[-400, -400], ub=[400, 400])
def mop7(x1, x2):
    return [
        CoefficientCombination([
            (iv(1 / 4, 1 / 2), (x1 - 2) ** 2),
            (iv(1 / 26, 1 / 13), (x2 + 1) ** 2),
            (iv(2, 3), _one(x1)),
        ]),
        CoefficientCombination([
            (iv(1 / 9, 1 / 4), (x1 + x2 - 3) ** 2),
            (iv(1 / 16, 1 / 8), (-x1 + x2 + 2) ** 2),
            (iv(-20, -17), _one(x1)),
        ]),
        CoefficientCombination([
            (iv(1 / 25, 1 / 7), (x1 + 2 * x2 - 1) ** 2),
            (iv(1 / 34, 1 / 17), (-x1 + 2 * x2) ** 2),
            (iv(-15, -13), _one(x1)),
        ]),
    ]


@problem("I-VFM2", lb=[-5, -5, -5], ub=[10, 10, 10])
def vfm2(x1, x2, x3):
    return [
        CoefficientCombination([
            (iv(0.1, 0.2), x1 ** 2), (iv(0.1, 0.3), x2 ** 2), (iv(0.1, 0.2), x3 ** 2),
        ]),
        CoefficientCombination([
            (iv(0.1, 0.3), (x1 - 5) ** 2),
            (iv(0.1, 0.5), (x2 - 5) ** 2),
            (iv(0.1, 0.4), (x3 - 5) ** 2),
        ]),
        CoefficientCombination([
            (iv(0.1, 0.2), x1 ** 2), (iv(-0.3, -0.1), x2 ** 2), (iv(0.1, 0.2), x3 ** 2),
        ]),
    ]


@problem("I-TR1", lb=[1, 1, 1], ub=[4, 4, 4])
def tr1(x1, x2, x3):
    one = _one(x1)
    return [
        CoefficientCombination([
            (iv(15, 30), one),
            (iv(-0.3, -0.1), x1 ** 3 + x1 ** 2 * (1 + x2 + x3) + x2 ** 3 + x3 ** 3),
        ]),
        CoefficientCombination([
            (iv(25, 45), one),
            (iv(-0.2, -0.1), x1 ** 3 + 2 * x2 ** 3 + x2 ** 2 * (2 + x1 + x3) + x3 ** 3),
        ]),
        CoefficientCombination([
            (iv(30, 60), one),
            (iv(-0.3, -0.1), x1 ** 3 + x2 ** 3 + 3 * x3 ** 3 + x3 ** 2 * (3 + x1 + x2)),
        ]),
    ]


@problem("I-AP4", lb=[-100, -100, -100], ub=[100, 100, 100])
def ap4(x1, x2, x3):
    return [
        CoefficientCombination([
            (iv(1 / 9, 1 / 3), (x1 - 1) ** 4 + 2 * (x2 - 2) ** 4 + 3 * (x3 - 3) ** 4),
        ]),
        CoefficientCombination([
            (iv(2, 3), Exp((x1 + x2 + x3) / 3)),
            (iv(2, 5), x1 ** 2 + x2 ** 2 + x3 ** 2),
        ]),
        CoefficientCombination([
            (iv(1 / 4, 1 / 3), LinearCombination([
                (3.0, Exp(-x1)), (4.0, Exp(-x2)), (3.0, Exp(-x3)),
            ])),
        ]),
    ]


@problem("I-Comet", lb=[1, -2, 0], ub=[3.5, 2, 1])
def comet(x1, x2, x3):
    return [
        CoefficientCombination([
            (iv(1, 1.5), (1 + x3) * (x1 ** 3 * x2 ** 2 - 10 * x1 - 4 * x2)),
        ]),
        CoefficientCombination([
            (iv(1, 1.5), (1 + x3) * (x1 ** 3 * x2 ** 2 - 10 * x1 + 4 * x2)),
        ]),
        CoefficientCombination([(iv(0.2, 1), (1 + x3) * x1 ** 2)]),
    ]


def _complete_portfolio(x: np.ndarray) -> np.ndarray:
    return np.array([x[0], 1.0 - x[0]])


@problem(PORTFOLIO, lb=[0], ub=[1], completion=_complete_portfolio)
def portfolio(x1):
    """Two-asset return/risk trade-off after eliminating x_2 = 1 − x_1."""
    return [
        BoundaryPair(3 * x1 - 6, 2 * x1 - 4),
        BoundaryPair(5 * x1 ** 2 - 6 * x1 + 2, 5 * x1 ** 2 - 6 * x1 + 3),
    ]


def portfolio_problem() -> ProblemDef:
    return get_problem(PORTFOLIO)


# Published portfolio starts and Pareto optimal points (x_1, x_2).
PORTFOLIO_SOLUTIONS = (
    (0.0, (0.0, 1.0)),
    (0.25, (0.25, 0.75)),
    (0.5, (0.5, 0.5)),
    (0.75, (0.6, 0.4)),
    (1.0, (0.6, 0.4)),
)


# Published weighted-sum rows for I-BK1: alpha, x, G_1(x), G_2(x).
# The alpha = 0.8 row repeats the x_2 of alpha = 0.9; its G values belong to
# the printed x rather than to the closed form.
BK1_WEIGHTED_SUM_TABLE = (
    (0.0, (0.000000, 0.000000), (0.000000, 0.000000), (5.000000, 20.000000)),
    (0.1, (0.691498, 0.666658), (0.092260, 0.228963), (3.734104, 14.957883)),
    (0.2, (1.326546, 1.285699), (0.341274, 0.847851), (2.729029, 10.946295)),
    (0.3, (1.911783, 1.862051), (0.712214, 1.771153), (1.938380, 7.784487)),
    (0.4, (2.452849, 2.399981), (1.177638, 2.931263), (1.324898, 5.326893)),
    (0.5, (2.954564, 2.903207), (1.715805, 4.274473), (0.858035, 3.453412)),
    (0.6, (3.421069, 3.374983), (2.309422, 5.757895), (0.513370, 2.068246)),
    (0.7, (3.855945, 3.818168), (2.944672, 7.347185), (0.270559, 1.091021)),
    (0.8, (4.262305, 4.628566), (3.959086, 10.060535), (0.068215, 0.232240)),
    (0.9, (4.642862, 4.628566), (4.297979, 10.738321), (0.026550, 0.107246)),
    (1.0, (5.000069, 5.000000), (5.000069, 12.500138), (0.000000, 0.000000)),
)

MISPRINTED_ALPHAS = (0.8,)

# Scalarized weighted-sum coefficients for I-BK1 as published.
_BK1_SCALARIZED = {"g1_x1": 0.15, "g1_x2": 0.21667, "g2_x1": 0.21667, "g2_x2": 0.3}

NUMERIC_AGREEMENT = 1e-4


@dataclass(frozen=True)
class WeightedSumSolution:
    alpha: float
    x: np.ndarray
    G_values: Tuple[Interval, Interval]
    numeric_x: np.ndarray

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "x": [float(c) for c in self.x],
            "G": [G.to_json() for G in self.G_values],
        }


def _weighted_sum_closed_form(alpha: float) -> np.ndarray:
    return np.array([
        2.1667 * alpha / (0.3 + 0.13334 * alpha),
        3 * alpha / (0.43334 + 0.16666 * alpha),
    ])


def _weighted_sum_numeric(alpha: float) -> np.ndarray:
    c = _BK1_SCALARIZED
    pieces = (
        lambda t: (1 - alpha) * c["g1_x1"] * t ** 2 + alpha * c["g2_x1"] * (t - 5) ** 2,
        lambda t: (1 - alpha) * c["g1_x2"] * t ** 2 + alpha * c["g2_x2"] * (t - 5) ** 2,
    )
    return np.array([
        minimize_scalar(piece, bracket=(-1.0, 6.0), tol=1e-12).x for piece in pieces
    ])


def bk1_weighted_solution(alpha: float) -> WeightedSumSolution:
    """
    Weighted-sum minimizer of I-BK1 for weight alpha on G_2, from the closed
    form and cross-checked against a numeric minimization of the scalarized
    objective.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ConfigurationError("alpha must lie in [0, 1], got %s" % alpha)

    x = _weighted_sum_closed_form(alpha)
    numeric_x = _weighted_sum_numeric(alpha)
    gap = float(np.max(np.abs(x - numeric_x)))
    if gap > NUMERIC_AGREEMENT:
        raise AssertionError(
            "closed-form and numeric weighted-sum solutions differ by %.3e at alpha=%s"
            % (gap, alpha)
        )

    G = get_problem("I-BK1").evaluate(x)
    return WeightedSumSolution(alpha=alpha, x=x, G_values=(G[0], G[1]), numeric_x=numeric_x)


@dataclass(frozen=True)
class RegionSample:
    x: np.ndarray
    values: Tuple[Interval, ...]


def sample_feasible_region(
    problem: ProblemDef, count: int, seed: int
) -> Tuple[List[RegionSample], int]:
    """
    Objective rectangles G(x) at `count` uniform box points. Points where
    an objective cannot be evaluated are skipped and counted.
    """
    if count < 1:
        raise ConfigurationError("sample count must be at least 1, got %s" % count)

    rng = np.random.default_rng(seed)
    points = rng.uniform(problem.lb, problem.ub, size=(count, problem.n))

    samples, skipped = [], 0
    for x in points:
        try:
            samples.append(RegionSample(x=x, values=tuple(problem.evaluate(x))))
        except (EvaluationError, IntervalDomainError) as error:
            logger.debug("skipping region sample: %s", error)
            skipped += 1

    if skipped:
        logger.warning(
            "%s of %s region samples of %s could not be evaluated",
            skipped, count, problem.name,
        )
    return samples, skipped


def monomial_transform(rng: np.random.Generator, n: int, low: float = 0.5,
                       high: float = 2.0) -> np.ndarray:
    """Random signed, scaled permutation matrix."""
    magnitudes = rng.uniform(low, high, size=n)
    signs = rng.choice([-1.0, 1.0], size=n)
    return np.eye(n)[rng.permutation(n)] * (signs * magnitudes)


def weighted_sum_rows(alphas: Sequence[float] = None) -> List[WeightedSumSolution]:
    if alphas is None:
        alphas = [row[0] for row in BK1_WEIGHTED_SUM_TABLE]
    return [bk1_weighted_solution(alpha) for alpha in alphas]
