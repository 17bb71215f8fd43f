from functools import wraps
from typing import Callable, Dict, List, Optional, Sequence

from .exceptions import ProblemDefinitionError, UnknownProblem


_registry: Dict[str, Callable] = {}


def _validate_problem_params(name, lb, ub, completion):
    if not isinstance(name, str) or not name:
        raise ProblemDefinitionError("'name' problem param must be a non-empty string")

    if name in _registry:
        raise ProblemDefinitionError("%s is already a registered problem" % name)

    bounds_error_msg = "'lb' and 'ub' problem params must be lists of reals of equal length"

    if not isinstance(lb, (list, tuple)) or not isinstance(ub, (list, tuple)):
        raise ProblemDefinitionError(bounds_error_msg)

    if len(lb) == 0 or len(lb) != len(ub):
        raise ProblemDefinitionError(bounds_error_msg)

    for low, high in zip(lb, ub):
        if not low < high:
            raise ProblemDefinitionError(
                "%s: lower bound %s is not below upper bound %s" % (name, low, high)
            )

    if completion is not None and not callable(completion):
        raise ProblemDefinitionError("'completion' problem param must be callable")


def problem(
    name: str,
    lb: Sequence[float],
    ub: Sequence[float],
    completion: Optional[Callable] = None,
    description: Optional[str] = None,
):
    """
    Register a problem builder. The builder receives the n polynomial
    coordinate fields and returns the list of objective IVMs.
    """
    _validate_problem_params(name, lb, ub, completion)

    def decorator(builder):
        @wraps(builder)
        def func(*args, **kwargs):
            return builder(*args, **kwargs)

        func._problem = {
            "name": name,
            "lb": tuple(float(b) for b in lb),
            "ub": tuple(float(b) for b in ub),
            "completion": completion,
            "description": description or (builder.__doc__ or "").strip(),
        }
        _registry[name] = func
        return func

    return decorator


def registered_names() -> List[str]:
    return list(_registry)


def get_builder(name: str) -> Callable:
    try:
        return _registry[name]
    except KeyError:
        raise UnknownProblem(name, registered_names()) from None
