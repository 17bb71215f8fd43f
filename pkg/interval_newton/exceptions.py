class IntervalNewtonException(Exception):
    pass


class IntervalDomainError(IntervalNewtonException):
    pass


class DimensionMismatch(IntervalNewtonException):
    def __init__(self, expected: int, got: int, what: str = "vector"):
        self.expected = expected
        self.got = got
        super().__init__(
            "%s has dimension %s; expected %s" % (what, got, expected)
        )


class EvaluationError(IntervalNewtonException):
    def __init__(self, message: str, x=None, term=None):
        self.x = None if x is None else tuple(float(c) for c in x)
        self.term = term
        if self.x is not None:
            message = "%s at x=%s" % (message, self.x)
        super().__init__(message)


class UnknownProblem(IntervalNewtonException, LookupError):
    def __init__(self, name: str, valid_names):
        self.name = name
        self.valid_names = tuple(valid_names)
        super().__init__(
            "%s is not a registered problem; must be one of %s"
            % (name, ", ".join(self.valid_names))
        )


class ProblemDefinitionError(IntervalNewtonException):
    pass


class UnsupportedDimension(IntervalNewtonException):
    pass


class IllConditionedTransform(IntervalNewtonException):
    pass


class LineSearchFailed(IntervalNewtonException):
    def __init__(self, t: float, backtracks: int):
        self.t = t
        self.backtracks = backtracks
        super().__init__(
            "no acceptable step above the floor after %s backtracks (t=%s)"
            % (backtracks, t)
        )


class ConfigurationError(IntervalNewtonException, ValueError):
    pass


class EmitError(IntervalNewtonException):
    def __init__(self, message: str, path=None):
        self.path = path
        if path is not None:
            message = "%s: %s" % (path, message)
        super().__init__(message)


class EmptySample(IntervalNewtonException, ValueError):
    pass
