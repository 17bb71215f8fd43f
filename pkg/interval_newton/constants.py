# Termination statuses of a solve
CRITICAL = "critical"
MAX_ITERATIONS = "max_iterations"
LINE_SEARCH_FAILED = "line_search_failed"

# Only produced by campaigns when a run raises
FAILED = "failed"

# Inner subproblem statuses
CONVERGED = "converged"
INFEASIBLE = "infeasible"

# Direction kinds
NEWTON = "newton"
STEEPEST_DESCENT = "steepest_descent"

# Dominance relations
STRICTLY_DOMINATES = "strictly_dominates"
DOMINATES = "dominates"
DOMINATED_BY = "dominated_by"
STRICTLY_DOMINATED_BY = "strictly_dominated_by"
EQUAL = "equal"
INCOMPARABLE = "incomparable"

# Benchmark fields and metrics
ITERATIONS = "iterations"
CPU_SECONDS = "cpu_seconds"
CPU_TIME = "cpu_time"

# Emitted artifacts and formats
RUN_RECORDS = "run-records"
STATS_TABLE = "stats-table"
PROFILE_CURVES = "profile-curves"
REGION_SAMPLES = "region-samples"
ITERATE_RECTANGLES = "iterate-rectangles"

JSON = "json"
CSV = "csv"
SVG = "svg"


VALID_SOLVE_STATUSES = (CRITICAL, MAX_ITERATIONS, LINE_SEARCH_FAILED)

VALID_RUN_STATUSES = VALID_SOLVE_STATUSES + (FAILED,)

VALID_DIRECTION_STATUSES = (CONVERGED, MAX_ITERATIONS, INFEASIBLE)

VALID_DIRECTION_KINDS = (NEWTON, STEEPEST_DESCENT)

VALID_RELATIONS = (
    STRICTLY_DOMINATES,
    DOMINATES,
    DOMINATED_BY,
    STRICTLY_DOMINATED_BY,
    EQUAL,
    INCOMPARABLE,
)

VALID_SUMMARY_FIELDS = (ITERATIONS, CPU_SECONDS)

VALID_METRICS = (ITERATIONS, CPU_TIME)

VALID_ARTIFACTS = (
    RUN_RECORDS,
    STATS_TABLE,
    PROFILE_CURVES,
    REGION_SAMPLES,
    ITERATE_RECTANGLES,
)

VALID_FORMATS = (JSON, CSV, SVG)
