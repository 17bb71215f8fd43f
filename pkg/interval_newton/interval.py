"""
Moore interval arithmetic, the gH-difference, dominance and norms.

Intervals are immutable double-precision values. Equality means exact
endpoint equality; no outward rounding is performed.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Union

import numpy as np

from .constants import (
    DOMINATED_BY,
    DOMINATES,
    EQUAL,
    INCOMPARABLE,
    STRICTLY_DOMINATED_BY,
    STRICTLY_DOMINATES,
)
from .exceptions import DimensionMismatch, IntervalDomainError

ADD = "add"
SUB = "sub"
MUL = "mul"
SCALAR_MUL = "scalar_mul"

VALID_OPERATIONS = (ADD, SUB, MUL, SCALAR_MUL)


def _check_finite(*values: float) -> None:
    for value in values:
        if not math.isfinite(value):
            raise IntervalDomainError("%s is not a finite endpoint" % value)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        _check_finite(lo, hi)

        if lo > hi:
            raise IntervalDomainError(
                "lower endpoint %s exceeds upper endpoint %s; "
                "use Interval.from_unordered for min/max formulas" % (lo, hi)
            )

        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_unordered(cls, a: float, b: float) -> "Interval":
        return cls(min(a, b), max(a, b))

    @classmethod
    def degenerate(cls, c: float) -> "Interval":
        return cls(c, c)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def norm(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def to_json(self) -> List[float]:
        return [self.lo, self.hi]

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __add__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: Union["Interval", float]) -> "Interval":
        if isinstance(other, Interval):
            products = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return Interval(min(products), max(products))

        other = float(other)
        _check_finite(other)

        if other >= 0:
            return Interval(other * self.lo, other * self.hi)
        return Interval(other * self.hi, other * self.lo)

    __rmul__ = __mul__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __repr__(self):
        return "[%r, %r]" % (self.lo, self.hi)


ZERO = Interval(0.0, 0.0)


def moore_arithmetic(op: str, S: Interval, T: Union[Interval, float]) -> Interval:
    if op not in VALID_OPERATIONS:
        raise IntervalDomainError(
            "%s is not a valid operation; must be one of %s" % (op, VALID_OPERATIONS)
        )

    if op == SCALAR_MUL:
        if isinstance(T, Interval):
            raise IntervalDomainError("'scalar_mul' expects a real multiplier")
        return S * float(T)

    if not isinstance(T, Interval):
        raise IntervalDomainError("'%s' expects an interval operand" % op)

    if op == ADD:
        return S + T
    if op == SUB:
        return S - T
    return S * T


def gh_difference(S: Interval, T: Interval) -> Interval:
    return Interval.from_unordered(S.lo - T.lo, S.hi - T.hi)


def compare(S: Interval, T: Interval) -> str:
    """
    Relation of S relative to T under the minimization order: S strictly
    dominates T when S ⪯ T with at least one strict endpoint inequality.
    """
    if S.lo == T.lo and S.hi == T.hi:
        return EQUAL
    if S.lo <= T.lo and S.hi <= T.hi:
        return STRICTLY_DOMINATES
    if S.lo >= T.lo and S.hi >= T.hi:
        return STRICTLY_DOMINATED_BY
    return INCOMPARABLE


def compare_vectors(A: Sequence[Interval], B: Sequence[Interval]) -> str:
    """
    Objective-vector relation of A relative to B.

    Strict dominance requires every component to be strictly better;
    plain dominance requires every component ⪯ with one strict.
    """
    if len(A) != len(B):
        raise DimensionMismatch(len(A), len(B), "objective vector")

    relations = [compare(a, b) for a, b in zip(A, B)]

    if all(relation == EQUAL for relation in relations):
        return EQUAL

    if all(relation in (STRICTLY_DOMINATES, EQUAL) for relation in relations):
        if all(relation == STRICTLY_DOMINATES for relation in relations):
            return STRICTLY_DOMINATES
        return DOMINATES

    if all(relation in (STRICTLY_DOMINATED_BY, EQUAL) for relation in relations):
        if all(relation == STRICTLY_DOMINATED_BY for relation in relations):
            return STRICTLY_DOMINATED_BY
        return DOMINATED_BY

    return INCOMPARABLE


def is_dominated_or_equal(A: Sequence[Interval], B: Sequence[Interval]) -> bool:
    """True when A_i ⪯ B_i for every component."""
    return all(a.lo <= b.lo and a.hi <= b.hi for a, b in zip(A, B))


def norm_interval(S: Interval) -> float:
    return S.norm()


def _as_endpoint_array(values, ndim: int, what: str) -> np.ndarray:
    array = np.array(values, dtype=float)

    if array.ndim != ndim:
        raise DimensionMismatch(ndim, array.ndim, "%s rank" % what)
    if not np.all(np.isfinite(array)):
        raise IntervalDomainError("%s has a non-finite endpoint" % what)

    array.setflags(write=False)
    return array


class IntervalVector(object):
    """Componentwise interval vector stored as two endpoint arrays."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = _as_endpoint_array(lo, 1, "interval vector")
        hi = _as_endpoint_array(hi, 1, "interval vector")

        if lo.shape != hi.shape:
            raise DimensionMismatch(lo.shape[0], hi.shape[0], "upper endpoint vector")
        if np.any(lo > hi):
            raise IntervalDomainError("interval vector has an entry with lo > hi")

        self.lo = lo
        self.hi = hi

    @classmethod
    def from_intervals(cls, entries: Iterable[Interval]) -> "IntervalVector":
        entries = list(entries)
        return cls([e.lo for e in entries], [e.hi for e in entries])

    @classmethod
    def zeros(cls, n: int) -> "IntervalVector":
        return cls(np.zeros(n), np.zeros(n))

    @property
    def entries(self) -> List[Interval]:
        return list(self)

    def __len__(self):
        return self.lo.shape[0]

    def __getitem__(self, index: int) -> Interval:
        return Interval(self.lo[index], self.hi[index])

    def __iter__(self):
        for lo, hi in zip(self.lo, self.hi):
            yield Interval(lo, hi)

    def __eq__(self, other):
        if not isinstance(other, IntervalVector):
            return NotImplemented
        return np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi)

    def __repr__(self):
        return "IntervalVector(%s)" % ", ".join(repr(e) for e in self)

    def norm(self) -> float:
        return float(np.sum(np.maximum(np.abs(self.lo), np.abs(self.hi))))

    def add(self, other: "IntervalVector") -> "IntervalVector":
        if len(self) != len(other):
            raise DimensionMismatch(len(self), len(other), "interval vector")
        return IntervalVector(self.lo + other.lo, self.hi + other.hi)

    __add__ = add

    def dot(self, v) -> Interval:
        v = np.asarray(v, dtype=float)
        if v.shape != self.lo.shape:
            raise DimensionMismatch(len(self), v.shape[0] if v.ndim else 0)

        products_lo = np.minimum(self.lo * v, self.hi * v)
        products_hi = np.maximum(self.lo * v, self.hi * v)
        return Interval(float(np.sum(products_lo)), float(np.sum(products_hi)))

    def to_json(self) -> List[List[float]]:
        return [[float(lo), float(hi)] for lo, hi in zip(self.lo, self.hi)]


class IntervalMatrix(object):
    """Square interval matrix stored as two endpoint arrays."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = _as_endpoint_array(lo, 2, "interval matrix")
        hi = _as_endpoint_array(hi, 2, "interval matrix")

        if lo.shape != hi.shape or lo.shape[0] != lo.shape[1]:
            raise DimensionMismatch(lo.shape[0], hi.shape[1], "interval matrix")
        if np.any(lo > hi):
            raise IntervalDomainError("interval matrix has an entry with lo > hi")

        self.lo = lo
        self.hi = hi

    @classmethod
    def from_intervals(cls, rows: Sequence[Sequence[Interval]]) -> "IntervalMatrix":
        return cls(
            [[e.lo for e in row] for row in rows],
            [[e.hi for e in row] for row in rows],
        )

    @classmethod
    def zeros(cls, n: int) -> "IntervalMatrix":
        return cls(np.zeros((n, n)), np.zeros((n, n)))

    @property
    def shape(self):
        return self.lo.shape

    def __getitem__(self, index) -> Interval:
        r, s = index
        return Interval(self.lo[r, s], self.hi[r, s])

    def __eq__(self, other):
        if not isinstance(other, IntervalMatrix):
            return NotImplemented
        return np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi)

    def __repr__(self):
        rows = []
        for r in range(self.shape[0]):
            rows.append(", ".join(repr(self[r, s]) for s in range(self.shape[1])))
        return "IntervalMatrix([%s])" % "; ".join(rows)

    def is_symmetric(self) -> bool:
        return np.array_equal(self.lo, self.lo.T) and np.array_equal(self.hi, self.hi.T)

    def to_json(self) -> List[List[List[float]]]:
        return [
            [[float(self.lo[r, s]), float(self.hi[r, s])] for s in range(self.shape[1])]
            for r in range(self.shape[0])
        ]


def norm_interval_vector(V: IntervalVector) -> float:
    return V.norm()
