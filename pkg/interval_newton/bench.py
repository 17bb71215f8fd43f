"""
Multi-start campaigns, summary statistics and performance profiles.
"""
import logging
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from .constants import (
    CPU_SECONDS,
    CPU_TIME,
    CRITICAL,
    FAILED,
    ITERATIONS,
    NEWTON,
    VALID_DIRECTION_KINDS,
    VALID_METRICS,
    VALID_SUMMARY_FIELDS,
)
from .exceptions import ConfigurationError, EmptySample
from .problems import get_problem
from .registry import registered_names
from .solver import SolverParams, solve

logger = logging.getLogger(__name__)

PROFILE_GRID_POINTS = 200

# Lower limits on per-problem averages so ratios stay finite.
METRIC_FLOORS = {ITERATIONS: 1.0, CPU_TIME: 1e-6}

_METRIC_FIELDS = {ITERATIONS: ITERATIONS, CPU_TIME: CPU_SECONDS}

STAT_NAMES = ("min", "max", "mean", "median", "mode", "std_dev")


def _validate_campaign_spec(problems, solvers, runs_per_problem, jobs, x0_overrides):
    if not problems:
        raise ConfigurationError("a campaign needs at least one problem")

    valid_names = registered_names()
    for name in problems:
        if name not in valid_names:
            raise ConfigurationError(
                "%s is not a registered problem; must be one of %s" % (name, valid_names)
            )

    if not solvers:
        raise ConfigurationError("a campaign needs at least one solver")

    for solver in solvers:
        if solver not in VALID_DIRECTION_KINDS:
            raise ConfigurationError(
                "%s is not a valid solver; must be one of %s" % (solver, VALID_DIRECTION_KINDS)
            )

    if not isinstance(runs_per_problem, int) or runs_per_problem < 1:
        raise ConfigurationError("'runs_per_problem' must be a positive integer")

    if not isinstance(jobs, int) or jobs < 1:
        raise ConfigurationError("'jobs' must be a positive integer")

    for name in x0_overrides:
        if name not in problems:
            raise ConfigurationError("x0 override given for %s, which is not in the campaign" % name)


@dataclass(frozen=True)
class CampaignSpec:
    problems: Tuple[str, ...]
    solvers: Tuple[str, ...] = (NEWTON,)
    runs_per_problem: int = 100
    seed: int = 42
    params: SolverParams = field(default_factory=SolverParams)
    jobs: int = 1
    x0_overrides: Mapping[str, Tuple[float, ...]] = field(default_factory=dict)
    include_failed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "problems", tuple(self.problems))
        object.__setattr__(self, "solvers", tuple(self.solvers))
        object.__setattr__(
            self, "x0_overrides",
            {name: tuple(float(c) for c in x0) for name, x0 in dict(self.x0_overrides).items()},
        )
        _validate_campaign_spec(
            self.problems, self.solvers, self.runs_per_problem, self.jobs, self.x0_overrides
        )

    def to_json(self) -> dict:
        return {
            "problems": list(self.problems),
            "solvers": list(self.solvers),
            "runs_per_problem": self.runs_per_problem,
            "seed": self.seed,
            "params": self.params.to_json(),
            "x0_overrides": {name: list(x0) for name, x0 in self.x0_overrides.items()},
            "include_failed": self.include_failed,
        }


@dataclass(frozen=True)
class RunRecord:
    problem: str
    solver: str
    run_index: int
    x0: Tuple[float, ...]
    iterations: int
    cpu_seconds: float
    status: str
    final_x: Tuple[float, ...] = ()
    error: Optional[str] = None

    def without_timing(self) -> "RunRecord":
        return replace(self, cpu_seconds=0.0)

    def to_json(self) -> dict:
        return {
            "problem": self.problem,
            "solver": self.solver,
            "run_index": self.run_index,
            "x0": list(self.x0),
            "iterations": self.iterations,
            "cpu_seconds": self.cpu_seconds,
            "status": self.status,
            "final_x": list(self.final_x),
            "error": self.error,
        }


def initial_point(problem_name: str, run_index: int, seed: int) -> Tuple[float, ...]:
    """Uniform box point from a stream owned by (seed, problem, run_index)."""
    problem = get_problem(problem_name)
    rng = np.random.default_rng([seed, zlib.crc32(problem_name.encode()), run_index])
    return tuple(float(c) for c in rng.uniform(problem.lb, problem.ub))


def _run_one(problem_name: str, solver: str, run_index: int, x0: Tuple[float, ...],
             params: SolverParams) -> RunRecord:
    try:
        report = solve(get_problem(problem_name), x0, replace(params, direction_kind=solver))
    except Exception as error:
        logger.warning("%s run %s with %s failed: %s", problem_name, run_index, solver, error)
        return RunRecord(
            problem=problem_name, solver=solver, run_index=run_index, x0=x0,
            iterations=0, cpu_seconds=0.0, status=FAILED, error=str(error),
        )

    return RunRecord(
        problem=problem_name,
        solver=solver,
        run_index=run_index,
        x0=x0,
        iterations=report.iterations,
        cpu_seconds=report.wall_time,
        status=report.status,
        final_x=tuple(float(c) for c in report.final_x),
    )


def _sort_key(record: RunRecord):
    return record.problem, record.solver, record.run_index


def run_campaign(spec: CampaignSpec) -> List[RunRecord]:
    tasks = []
    for problem_name in spec.problems:
        for run_index in range(spec.runs_per_problem):
            if problem_name in spec.x0_overrides:
                x0 = spec.x0_overrides[problem_name]
            else:
                x0 = initial_point(problem_name, run_index, spec.seed)
            for solver in spec.solvers:
                tasks.append((problem_name, solver, run_index, x0, spec.params))

    logger.info(
        "campaign: %s problems, %s solvers, %s runs each, %s jobs",
        len(spec.problems), len(spec.solvers), spec.runs_per_problem, spec.jobs,
    )

    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as executor:
            records = list(executor.map(_run_one, *zip(*tasks)))
    else:
        records = [_run_one(*task) for task in tasks]

    records.sort(key=_sort_key)
    logger.info("campaign finished with %s records", len(records))
    return records


@dataclass(frozen=True)
class SummaryStats:
    min: float
    max: float
    mean: float
    median: float
    mode: float
    std_dev: float

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in STAT_NAMES}


def _counted(records: Sequence[RunRecord], include_failed: bool) -> List[RunRecord]:
    if include_failed:
        return [r for r in records if r.status != FAILED]
    return [r for r in records if r.status == CRITICAL]


def summarize(records: Sequence[RunRecord], field: str = ITERATIONS,
              include_failed: bool = True) -> SummaryStats:
    """
    Min, max, mean, median, mode (smallest most-frequent value) and sample
    standard deviation of one record field.
    """
    if field not in VALID_SUMMARY_FIELDS:
        raise ConfigurationError(
            "%s is not a valid summary field; must be one of %s" % (field, VALID_SUMMARY_FIELDS)
        )

    values = np.array([getattr(r, field) for r in _counted(records, include_failed)], dtype=float)
    if values.size == 0:
        raise EmptySample("cannot summarize %s over zero runs" % field)

    return SummaryStats(
        min=float(np.min(values)),
        max=float(np.max(values)),
        mean=float(np.mean(values)),
        median=float(np.median(values)),
        mode=float(stats.mode(values, keepdims=False).mode),
        std_dev=float(np.std(values, ddof=1)) if values.size > 1 else 0.0,
    )


def stats_table(records: Sequence[RunRecord], include_failed: bool = True) -> pd.DataFrame:
    """One row per (problem, solver) with the summary of both fields."""
    groups: Dict[Tuple[str, str], List[RunRecord]] = {}
    for record in sorted(records, key=_sort_key):
        groups.setdefault((record.problem, record.solver), []).append(record)

    columns = ["problem", "solver"] + [
        "%s_%s" % (field, name) for field in VALID_SUMMARY_FIELDS for name in STAT_NAMES
    ]
    rows = []
    for (problem_name, solver), group in groups.items():
        row = {"problem": problem_name, "solver": solver}
        try:
            for field in VALID_SUMMARY_FIELDS:
                summary = summarize(group, field, include_failed)
                for name in STAT_NAMES:
                    row["%s_%s" % (field, name)] = getattr(summary, name)
        except EmptySample:
            logger.warning("no counted runs for %s with %s", problem_name, solver)
            continue
        rows.append(row)

    return pd.DataFrame(rows, columns=columns)


@dataclass(frozen=True)
class ProfileCurve:
    zeta: np.ndarray
    rho: np.ndarray
    metric: str
    solver: str
    problems: Tuple[str, ...] = ()
    excluded: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "metric": self.metric,
            "solver": self.solver,
            "zeta": [float(z) for z in self.zeta],
            "rho": [float(r) for r in self.rho],
            "problems": list(self.problems),
            "excluded": list(self.excluded),
        }


def performance_profile(records: Sequence[RunRecord], metric: str = ITERATIONS,
                        include_failed: bool = True,
                        grid_points: int = PROFILE_GRID_POINTS) -> List[ProfileCurve]:
    """
    Performance profiles over per-problem averages. A problem on which some
    solver has no critical run is left out of every solver's pool.
    """
    if metric not in VALID_METRICS:
        raise ConfigurationError(
            "%s is not a valid metric; must be one of %s" % (metric, VALID_METRICS)
        )

    solvers = sorted({r.solver for r in records})
    if len(solvers) < 2:
        raise ConfigurationError("a performance profile needs at least two solvers, got %s" % solvers)

    field_name = _METRIC_FIELDS[metric]
    floor = METRIC_FLOORS[metric]
    problems = sorted({r.problem for r in records})

    kept, excluded, averages = [], [], []
    for problem_name in problems:
        per_solver = {
            solver: [r for r in records if r.problem == problem_name and r.solver == solver]
            for solver in solvers
        }
        if any(not any(r.status == CRITICAL for r in runs) for runs in per_solver.values()):
            excluded.append(problem_name)
            continue

        row = []
        for solver in solvers:
            counted = _counted(per_solver[solver], include_failed)
            row.append(max(float(np.mean([getattr(r, field_name) for r in counted])), floor))
        kept.append(problem_name)
        averages.append(row)

    if excluded:
        logger.warning(
            "%s problems excluded from the %s profile: %s", len(excluded), metric, excluded
        )
    if not kept:
        raise EmptySample("no problem has a critical run for every solver")

    averages = np.array(averages)
    ratios = averages / averages.min(axis=1, keepdims=True)
    zeta = np.linspace(1.0, float(ratios.max()), grid_points)
    zeta.setflags(write=False)

    curves = []
    for s, solver in enumerate(solvers):
        rho = np.mean(ratios[:, s][None, :] <= zeta[:, None], axis=1)
        rho.setflags(write=False)
        curves.append(ProfileCurve(
            zeta=zeta, rho=rho, metric=metric, solver=solver,
            problems=tuple(kept), excluded=tuple(excluded),
        ))
    return curves
