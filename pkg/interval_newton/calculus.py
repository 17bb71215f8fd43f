"""
Interval-valued maps (IVMs) with exact gH-gradients and gH-Hessians.

Basis functions are smooth real fields with closed-form derivatives.
An IVM is either an interval-linear combination of basis functions or a
pair of boundary functions. Finite differences are only used by
``fd_validate`` as a cross-check.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import (
    ConfigurationError,
    DimensionMismatch,
    EvaluationError,
    IntervalDomainError,
    ProblemDefinitionError,
)
from .interval import Interval, IntervalMatrix, IntervalVector

logger = logging.getLogger(__name__)


def _as_point(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != n:
        raise DimensionMismatch(n, x.shape[0] if x.ndim == 1 else x.size, "point")
    return x


def _symmetrize(H: np.ndarray) -> np.ndarray:
    upper = np.triu(H)
    return upper + np.triu(H, 1).T


class ScalarField(object):
    """A smooth real function of n variables with analytic derivatives."""

    n: int

    def eval(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def grad(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def hess(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class Polynomial(ScalarField):
    """
    Exact polynomial in n variables, stored as {exponents: coefficient}.

    Polynomials are closed under +, -, * and non-negative integer powers,
    which is how most basis functions are written.
    """

    def __init__(self, n: int, monomials: Mapping[Tuple[int, ...], float]):
        cleaned: Dict[Tuple[int, ...], float] = {}

        for exponents, coefficient in monomials.items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != n or any(e < 0 for e in exponents):
                raise ProblemDefinitionError(
                    "%s is not a valid exponent tuple for %s variables" % (exponents, n)
                )
            cleaned[exponents] = cleaned.get(exponents, 0.0) + float(coefficient)

        self.n = n
        self.monomials = {e: c for e, c in cleaned.items() if c != 0.0}
        self._exponents = np.array(list(self.monomials), dtype=int).reshape(-1, n)
        self._coefficients = np.array(list(self.monomials.values()), dtype=float)
        self._partials: Optional[List["Polynomial"]] = None
        self._second_partials: Optional[Dict[Tuple[int, int], "Polynomial"]] = None

    @classmethod
    def constant(cls, n: int, value: float = 1.0) -> "Polynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, r: int) -> "Polynomial":
        exponents = [0] * n
        exponents[r] = 1
        return cls(n, {tuple(exponents): 1.0})

    @property
    def degree(self) -> int:
        if not self.monomials:
            return 0
        return int(self._exponents.sum(axis=1).max())

    def derivative(self, r: int) -> "Polynomial":
        monomials = {}
        for exponents, coefficient in self.monomials.items():
            if exponents[r] == 0:
                continue
            lowered = list(exponents)
            lowered[r] -= 1
            monomials[tuple(lowered)] = coefficient * exponents[r]
        return Polynomial(self.n, monomials)

    def _value(self, x: np.ndarray) -> float:
        if not self.monomials:
            return 0.0
        return float(self._coefficients @ np.prod(x ** self._exponents, axis=1))

    def eval(self, x):
        return self._value(np.asarray(x, dtype=float))

    def grad(self, x):
        x = np.asarray(x, dtype=float)
        if self._partials is None:
            self._partials = [self.derivative(r) for r in range(self.n)]
        return np.array([p._value(x) for p in self._partials])

    def hess(self, x):
        x = np.asarray(x, dtype=float)
        if self._second_partials is None:
            if self._partials is None:
                self._partials = [self.derivative(r) for r in range(self.n)]
            self._second_partials = {
                (r, s): self._partials[r].derivative(s)
                for r in range(self.n)
                for s in range(r, self.n)
            }

        H = np.zeros((self.n, self.n))
        for (r, s), p in self._second_partials.items():
            H[r, s] = H[s, r] = p._value(x)
        return H

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise DimensionMismatch(self.n, other.n, "polynomial")
            return other
        return Polynomial.constant(self.n, float(other))

    def __add__(self, other):
        if not isinstance(other, (Polynomial, int, float)):
            return NotImplemented
        other = self._coerce(other)
        monomials = dict(self.monomials)
        for exponents, coefficient in other.monomials.items():
            monomials[exponents] = monomials.get(exponents, 0.0) + coefficient
        return Polynomial(self.n, monomials)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.monomials.items()})

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, float)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Polynomial(self.n, {e: c * other for e, c in self.monomials.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented

        other = self._coerce(other)
        monomials: Dict[Tuple[int, ...], float] = {}
        for e1, c1 in self.monomials.items():
            for e2, c2 in other.monomials.items():
                exponents = tuple(a + b for a, b in zip(e1, e2))
                monomials[exponents] = monomials.get(exponents, 0.0) + c1 * c2
        return Polynomial(self.n, monomials)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, float)):
            return NotImplemented
        return self * (1.0 / other)

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            return NotImplemented
        result = Polynomial.constant(self.n, 1.0)
        for _ in range(power):
            result = result * self
        return result

    def __repr__(self):
        return "Polynomial(%s, %s)" % (self.n, self.monomials)


def variables(n: int) -> Tuple[Polynomial, ...]:
    return tuple(Polynomial.variable(n, r) for r in range(n))


def _safe_exp(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf


class Exp(ScalarField):
    def __init__(self, inner: ScalarField):
        self.inner = inner
        self.n = inner.n

    def eval(self, x):
        return _safe_exp(self.inner.eval(x))

    def grad(self, x):
        return self.eval(x) * self.inner.grad(x)

    def hess(self, x):
        g = self.inner.grad(x)
        return self.eval(x) * (np.outer(g, g) + self.inner.hess(x))


class Sin(ScalarField):
    def __init__(self, inner: ScalarField):
        self.inner = inner
        self.n = inner.n

    def eval(self, x):
        return math.sin(self.inner.eval(x))

    def grad(self, x):
        return math.cos(self.inner.eval(x)) * self.inner.grad(x)

    def hess(self, x):
        value = self.inner.eval(x)
        g = self.inner.grad(x)
        return -math.sin(value) * np.outer(g, g) + math.cos(value) * self.inner.hess(x)


class Cos(ScalarField):
    def __init__(self, inner: ScalarField):
        self.inner = inner
        self.n = inner.n

    def eval(self, x):
        return math.cos(self.inner.eval(x))

    def grad(self, x):
        return -math.sin(self.inner.eval(x)) * self.inner.grad(x)

    def hess(self, x):
        value = self.inner.eval(x)
        g = self.inner.grad(x)
        return -math.cos(value) * np.outer(g, g) - math.sin(value) * self.inner.hess(x)


class Product(ScalarField):
    def __init__(self, left: ScalarField, right: ScalarField):
        if left.n != right.n:
            raise DimensionMismatch(left.n, right.n, "product factor")
        self.left = left
        self.right = right
        self.n = left.n

    def eval(self, x):
        return self.left.eval(x) * self.right.eval(x)

    def grad(self, x):
        return self.left.eval(x) * self.right.grad(x) + self.right.eval(x) * self.left.grad(x)

    def hess(self, x):
        f, g = self.left.eval(x), self.right.eval(x)
        df, dg = self.left.grad(x), self.right.grad(x)
        cross = np.outer(df, dg)
        return f * self.right.hess(x) + g * self.left.hess(x) + cross + cross.T


class Reciprocal(ScalarField):
    """1/f on the domain f(x) ≥ floor."""

    def __init__(self, inner: ScalarField, floor: float = 1e-6):
        self.inner = inner
        self.floor = floor
        self.n = inner.n

    def _inner_value(self, x) -> float:
        value = self.inner.eval(x)
        if not value >= self.floor:
            raise EvaluationError(
                "reciprocal argument %s is below the domain floor %s" % (value, self.floor),
                x=x,
            )
        return value

    def eval(self, x):
        return 1.0 / self._inner_value(x)

    def grad(self, x):
        value = self._inner_value(x)
        return -self.inner.grad(x) / value ** 2

    def hess(self, x):
        value = self._inner_value(x)
        g = self.inner.grad(x)
        return 2.0 * np.outer(g, g) / value ** 3 - self.inner.hess(x) / value ** 2


class LinearCombination(ScalarField):
    def __init__(self, terms: Sequence[Tuple[float, ScalarField]]):
        if not terms:
            raise ProblemDefinitionError("a linear combination needs at least one term")
        self.terms = [(float(w), f) for w, f in terms]
        self.n = self.terms[0][1].n
        for _, f in self.terms:
            if f.n != self.n:
                raise DimensionMismatch(self.n, f.n, "combined field")

    def eval(self, x):
        return sum(w * f.eval(x) for w, f in self.terms)

    def grad(self, x):
        return sum(w * f.grad(x) for w, f in self.terms)

    def hess(self, x):
        return sum(w * f.hess(x) for w, f in self.terms)


class LinearlyComposed(ScalarField):
    """x ↦ f(S x) for a square matrix S."""

    def __init__(self, inner: ScalarField, S):
        S = np.asarray(S, dtype=float)
        if S.shape != (inner.n, inner.n):
            raise DimensionMismatch(inner.n, S.shape[0], "composition matrix")
        self.inner = inner
        self.S = S
        self.n = inner.n

    def eval(self, x):
        return self.inner.eval(self.S @ np.asarray(x, dtype=float))

    def grad(self, x):
        return self.S.T @ self.inner.grad(self.S @ np.asarray(x, dtype=float))

    def hess(self, x):
        return self.S.T @ self.inner.hess(self.S @ np.asarray(x, dtype=float)) @ self.S


class IVM(object):
    dim: int

    def evaluate(self, x) -> Interval:
        raise NotImplementedError

    def gradient(self, x) -> IntervalVector:
        raise NotImplementedError

    def hessian(self, x) -> IntervalMatrix:
        raise NotImplementedError

    def boundary_values(self, x, selection=None) -> Tuple[float, float]:
        raise NotImplementedError

    def boundary_gradient(self, x) -> IntervalVector:
        raise NotImplementedError

    def boundary_hessian(self, x) -> IntervalMatrix:
        raise NotImplementedError

    def selection(self, x):
        return None

    def composed(self, S) -> "IVM":
        raise NotImplementedError


def _check_finite(values: np.ndarray, x, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise EvaluationError("non-finite %s" % what, x=x)
    return values


class CoefficientCombination(IVM):
    """G(x) = ⊕_j C_j ⊙ φ_j(x) with interval coefficients C_j."""

    def __init__(self, terms: Sequence[Tuple[Interval, ScalarField]]):
        if not terms:
            raise ProblemDefinitionError("a coefficient combination needs at least one term")

        for coefficient, _ in terms:
            if not isinstance(coefficient, Interval):
                raise IntervalDomainError("%r is not an Interval coefficient" % (coefficient,))

        self.terms = list(terms)
        self.dim = self.terms[0][1].n
        for _, field in self.terms:
            if field.n != self.dim:
                raise DimensionMismatch(self.dim, field.n, "basis function")

        self._c_lo = np.array([c.lo for c, _ in self.terms])
        self._c_hi = np.array([c.hi for c, _ in self.terms])

    @property
    def coefficients(self) -> List[Interval]:
        return [c for c, _ in self.terms]

    @property
    def is_degenerate(self) -> bool:
        return bool(np.all(self._c_lo == self._c_hi))

    def basis_values(self, x) -> np.ndarray:
        x = _as_point(x, self.dim)
        values = np.array([field.eval(x) for _, field in self.terms])
        return _check_finite(values, x, "basis value")

    def evaluate(self, x):
        values = self.basis_values(x)
        lo = np.minimum(self._c_lo * values, self._c_hi * values)
        hi = np.maximum(self._c_lo * values, self._c_hi * values)
        return Interval(float(np.sum(lo)), float(np.sum(hi)))

    def _term_gradients(self, x) -> np.ndarray:
        x = _as_point(x, self.dim)
        grads = np.array([field.grad(x) for _, field in self.terms]).reshape(-1, self.dim)
        return _check_finite(grads, x, "basis gradient")

    def _term_hessians(self, x) -> np.ndarray:
        x = _as_point(x, self.dim)
        hessians = np.array([_symmetrize(np.asarray(field.hess(x), dtype=float))
                             for _, field in self.terms])
        return _check_finite(hessians.reshape(-1, self.dim, self.dim), x, "basis Hessian")

    def gradient(self, x):
        grads = self._term_gradients(x)
        c_lo, c_hi = self._c_lo[:, None], self._c_hi[:, None]
        lo = np.minimum(c_lo * grads, c_hi * grads).sum(axis=0)
        hi = np.maximum(c_lo * grads, c_hi * grads).sum(axis=0)
        return IntervalVector(lo, hi)

    def hessian(self, x):
        hessians = self._term_hessians(x)
        c_lo, c_hi = self._c_lo[:, None, None], self._c_hi[:, None, None]
        lo = np.minimum(c_lo * hessians, c_hi * hessians).sum(axis=0)
        hi = np.maximum(c_lo * hessians, c_hi * hessians).sum(axis=0)
        return IntervalMatrix(lo, hi)

    def selection(self, x) -> Tuple[np.ndarray, np.ndarray]:
        """Coefficient endpoints picked by the lower and upper boundary at x."""
        values = self.basis_values(x)
        nonnegative = values >= 0
        lower = np.where(nonnegative, self._c_lo, self._c_hi)
        upper = np.where(nonnegative, self._c_hi, self._c_lo)
        return lower, upper

    def sign_pattern(self, x) -> np.ndarray:
        """Signs of the basis values on terms whose coefficient has width."""
        values = self.basis_values(x)
        return np.sign(values[self._c_lo != self._c_hi])

    def boundary_values(self, x, selection=None):
        values = self.basis_values(x)
        lower, upper = self.selection(x) if selection is None else selection
        return float(lower @ values), float(upper @ values)

    def boundary_gradient(self, x):
        lower, upper = self.selection(x)
        grads = self._term_gradients(x)
        return _unordered_vector(lower @ grads, upper @ grads)

    def boundary_hessian(self, x):
        lower, upper = self.selection(x)
        hessians = self._term_hessians(x)
        return _unordered_matrix(
            np.tensordot(lower, hessians, axes=1), np.tensordot(upper, hessians, axes=1)
        )

    def composed(self, S):
        return CoefficientCombination(
            [(c, LinearlyComposed(field, S)) for c, field in self.terms]
        )


class BoundaryPair(IVM):
    """G(x) = [lower(x), upper(x)] given directly by its boundary functions."""

    def __init__(self, lower: ScalarField, upper: ScalarField):
        if lower.n != upper.n:
            raise DimensionMismatch(lower.n, upper.n, "upper boundary")
        self.lower = lower
        self.upper = upper
        self.dim = lower.n

    def boundary_values(self, x, selection=None):
        x = _as_point(x, self.dim)
        lo, hi = self.lower.eval(x), self.upper.eval(x)
        _check_finite(np.array([lo, hi]), x, "boundary value")
        return lo, hi

    def evaluate(self, x):
        lo, hi = self.boundary_values(x)
        if lo > hi:
            raise EvaluationError(
                "lower boundary %s exceeds upper boundary %s" % (lo, hi), x=x
            )
        return Interval(lo, hi)

    def gradient(self, x):
        x = _as_point(x, self.dim)
        return _unordered_vector(
            _check_finite(np.asarray(self.lower.grad(x), dtype=float), x, "gradient"),
            _check_finite(np.asarray(self.upper.grad(x), dtype=float), x, "gradient"),
        )

    def hessian(self, x):
        x = _as_point(x, self.dim)
        return _unordered_matrix(
            _check_finite(_symmetrize(np.asarray(self.lower.hess(x), dtype=float)), x, "Hessian"),
            _check_finite(_symmetrize(np.asarray(self.upper.hess(x), dtype=float)), x, "Hessian"),
        )

    boundary_gradient = gradient
    boundary_hessian = hessian

    def composed(self, S):
        return BoundaryPair(LinearlyComposed(self.lower, S), LinearlyComposed(self.upper, S))


def _unordered_vector(a: np.ndarray, b: np.ndarray) -> IntervalVector:
    return IntervalVector(np.minimum(a, b), np.maximum(a, b))


def _unordered_matrix(A: np.ndarray, B: np.ndarray) -> IntervalMatrix:
    return IntervalMatrix(np.minimum(A, B), np.maximum(A, B))


def eval_ivm(G: IVM, x) -> Interval:
    return G.evaluate(x)


def gh_gradient(G: IVM, x) -> IntervalVector:
    return G.gradient(x)


def gh_hessian(G: IVM, x) -> IntervalMatrix:
    return G.hessian(x)


def boundary_gradient(G: IVM, x) -> IntervalVector:
    return G.boundary_gradient(x)


def boundary_hessian(G: IVM, x) -> IntervalMatrix:
    return G.boundary_hessian(x)


@dataclass(frozen=True)
class ValidationReport:
    gradient_deviation: float = 0.0
    hessian_deviation: float = 0.0
    per_term_gradient_gap: float = 0.0
    per_term_hessian_gap: float = 0.0
    skipped: bool = False
    reason: Optional[str] = None

    @property
    def deviation(self) -> float:
        return max(self.gradient_deviation, self.hessian_deviation)

    @property
    def per_term_gap(self) -> float:
        return max(self.per_term_gradient_gap, self.per_term_hessian_gap)


def _relative_gap(a_lo, a_hi, b_lo, b_hi, scale: float) -> float:
    if np.size(a_lo) == 0:
        return 0.0
    denominator = np.maximum(scale, np.maximum(np.abs(b_lo), np.abs(b_hi)))
    gaps = np.maximum(np.abs(a_lo - b_lo), np.abs(a_hi - b_hi)) / denominator
    return float(np.max(gaps))


class _StencilRejected(Exception):
    pass


def fd_validate(G: IVM, x, h: float = 1e-5, hessian_step: Optional[float] = None) -> ValidationReport:
    """
    Compare central differences of the boundary functions with the
    definitional gH-gradient and gH-Hessian at x.

    Deviations are relative to max(1, |analytic entry|, ‖G(x)‖). The point
    is skipped when the stencil leaves the domain or a basis function with
    a non-degenerate coefficient changes sign across it.
    """
    if h <= 0:
        raise ConfigurationError("finite-difference step must be positive, got %s" % h)

    x = _as_point(x, G.dim)
    n = G.dim
    hh = max(h, 1e-4) if hessian_step is None else hessian_step
    eye = np.eye(n)

    def f(point):
        if center_signs is not None and not np.array_equal(G.sign_pattern(point), center_signs):
            raise _StencilRejected("basis sign change across stencil")
        return np.array(G.boundary_values(point, selection))

    try:
        selection = G.selection(x)
        center_signs = None
        if isinstance(G, CoefficientCombination):
            center_signs = G.sign_pattern(x)
            if np.any(center_signs == 0):
                raise _StencilRejected("basis function vanishes at x")

        fd_grad = np.zeros((2, n))
        fd_hess = np.zeros((2, n, n))
        f0 = f(x)

        for r in range(n):
            fd_grad[:, r] = (f(x + h * eye[r]) - f(x - h * eye[r])) / (2 * h)
            fd_hess[:, r, r] = (f(x + hh * eye[r]) - 2 * f0 + f(x - hh * eye[r])) / hh ** 2
            for s in range(r + 1, n):
                mixed = (
                    f(x + hh * eye[r] + hh * eye[s])
                    - f(x + hh * eye[r] - hh * eye[s])
                    - f(x - hh * eye[r] + hh * eye[s])
                    + f(x - hh * eye[r] - hh * eye[s])
                ) / (4 * hh ** 2)
                fd_hess[:, r, s] = fd_hess[:, s, r] = mixed

        analytic_gradient = G.boundary_gradient(x)
        analytic_hessian = G.boundary_hessian(x)
        per_term_gradient = G.gradient(x)
        per_term_hessian = G.hessian(x)
        scale = max(1.0, G.evaluate(x).norm())
    except _StencilRejected as rejection:
        return ValidationReport(skipped=True, reason=str(rejection))
    except EvaluationError as error:
        logger.debug("fd_validate skipped at %s: %s", x, error)
        return ValidationReport(skipped=True, reason="stencil leaves domain")

    grad_lo, grad_hi = np.minimum(*fd_grad), np.maximum(*fd_grad)
    hess_lo, hess_hi = np.minimum(*fd_hess), np.maximum(*fd_hess)

    return ValidationReport(
        gradient_deviation=_relative_gap(
            grad_lo, grad_hi, analytic_gradient.lo, analytic_gradient.hi, scale
        ),
        hessian_deviation=_relative_gap(
            hess_lo, hess_hi, analytic_hessian.lo, analytic_hessian.hi, scale
        ),
        per_term_gradient_gap=_relative_gap(
            per_term_gradient.lo, per_term_gradient.hi,
            analytic_gradient.lo, analytic_gradient.hi, scale,
        ),
        per_term_hessian_gap=_relative_gap(
            per_term_hessian.lo, per_term_hessian.hi,
            analytic_hessian.lo, analytic_hessian.hi, scale,
        ),
    )
