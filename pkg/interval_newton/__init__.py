from .interval import (
    Interval,
    IntervalMatrix,
    IntervalVector,
    compare,
    compare_vectors,
    gh_difference,
    moore_arithmetic,
    norm_interval,
    norm_interval_vector,
)
from .calculus import (
    BoundaryPair,
    CoefficientCombination,
    boundary_gradient,
    boundary_hessian,
    eval_ivm,
    fd_validate,
    gh_gradient,
    gh_hessian,
)
from .direction import PointData, eval_model, newton_direction, oracle_direction
from .problems import (
    ProblemDef,
    bk1_weighted_solution,
    get_problem,
    portfolio_problem,
    sample_feasible_region,
)
from .registry import problem
from .solver import (
    SolverParams,
    armijo_step,
    check_scaling_invariance,
    criticality_certificate,
    mutual_nondominance,
    solve,
)
from .bench import CampaignSpec, performance_profile, run_campaign, summarize
from .emit import emit
from .exceptions import *
from .constants import *

__version__ = "0.1.0"
