"""
Command-line entry point: ``interval-newton <command>``.

Exit codes: 0 critical / checks passed, 1 usage or configuration error,
2 iteration limit, 3 line search failure, 4 verification mismatch.
"""
import json
import logging
import os
from typing import List, Optional, Sequence, Tuple

import click
import numpy as np

from .bench import CampaignSpec, performance_profile, run_campaign, stats_table, initial_point
from .constants import (
    CRITICAL,
    CSV,
    DOMINATES,
    ITERATE_RECTANGLES,
    JSON,
    LINE_SEARCH_FAILED,
    MAX_ITERATIONS,
    NEWTON,
    PROFILE_CURVES,
    RUN_RECORDS,
    STATS_TABLE,
    STEEPEST_DESCENT,
    STRICTLY_DOMINATES,
    SVG,
    VALID_DIRECTION_KINDS,
    VALID_FORMATS,
    VALID_METRICS,
)
from .emit import emit
from .exceptions import IntervalNewtonException
from .interval import Interval, compare_vectors
from .problems import (
    BK1_WEIGHTED_SUM_TABLE,
    MISPRINTED_ALPHAS,
    PORTFOLIO_SOLUTIONS,
    bk1_weighted_solution,
    catalogue,
    get_problem,
    portfolio_problem,
    problem_names,
)
from .solver import SolverParams, solve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MAX_ITERATIONS = 2
EXIT_LINE_SEARCH_FAILED = 3
EXIT_MISMATCH = 4

STATUS_EXIT_CODES = {
    CRITICAL: EXIT_OK,
    MAX_ITERATIONS: EXIT_MAX_ITERATIONS,
    LINE_SEARCH_FAILED: EXIT_LINE_SEARCH_FAILED,
}

DEFAULT_OUT_DIR = "./imo-out"
SEED_ENVVAR = "IMO_SEED"

# Published I-BK1 start and terminal iterate.
BK1_START = (9.9862, -7.4332)
BK1_CRITICAL_POINT = (3.914930, 1.428474)
BK1_CRITICAL_VALUES = ((1.736722, 3.677497), (1.393317, 6.731112))
BK1_POINT_TOLERANCE = 5e-3

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


class VectorType(click.ParamType):
    """Comma-separated reals, or a list of numbers from a config file."""

    name = "vector"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            if isinstance(value, (list, int, float)):
                items = value if isinstance(value, list) else [value]
                return tuple(float(v) for v in items)
            return tuple(float(v) for v in str(value).split(",") if v.strip())
        except (TypeError, ValueError):
            self.fail("%r is not a comma-separated list of reals" % (value,), param, ctx)


VECTOR = VectorType()


class ExitCodeGroup(click.Group):
    """Reports usage errors with exit code 1; 2 and up are solver outcomes."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as error:
            error.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as error:
            error.exit_code = EXIT_USAGE
            raise
        except IntervalNewtonException as error:
            usage = click.UsageError(str(error), ctx)
            usage.exit_code = EXIT_USAGE
            raise usage from error


def _load_config(ctx, param, value):
    if not value:
        return value
    try:
        with open(value, "r", encoding="utf-8") as infile:
            data = json.load(infile)
    except (OSError, ValueError) as error:
        raise click.BadParameter("cannot read config %s: %s" % (value, error), ctx, param)

    if not isinstance(data, dict):
        raise click.BadParameter("config must be a JSON object keyed by command", ctx, param)

    ctx.default_map = dict(ctx.default_map or {}, **data)
    return value


def _configure_logging(verbose: int) -> None:
    level = LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)]
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", force=True
    )


def solver_options(command):
    options = [
        click.option("--eta", type=float, default=0.5, show_default=True,
                     help="Step length reduction factor."),
        click.option("--sigma", type=float, default=1e-3, show_default=True,
                     help="Armijo parameter."),
        click.option("--eps", type=float, default=1e-6, show_default=True,
                     help="Stopping tolerance on the subproblem value."),
        click.option("--max-iters", type=int, default=500, show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def common_options(command):
    options = [
        click.option("--seed", type=int, default=42, envvar=SEED_ENVVAR, show_default=True,
                     help="Base seed; %s overrides the default." % SEED_ENVVAR),
        click.option("--out-dir", type=click.Path(file_okay=False), default=DEFAULT_OUT_DIR,
                     show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _params(eta, sigma, eps, max_iters, direction_kind=NEWTON) -> SolverParams:
    return SolverParams(
        eta=eta, sigma=sigma, eps=eps, max_iters=max_iters, direction_kind=direction_kind
    )


def _format_vector(x: Sequence[float]) -> str:
    return "(%s)" % ", ".join("%.6f" % c for c in x)


def _format_values(values) -> str:
    return "(%s)" % ", ".join("[%.6f, %.6f]" % (G.lo, G.hi) for G in values)


def _problem_list(problems: Tuple[str, ...]) -> List[str]:
    names = [name for item in problems for name in item.split(",") if name]
    return names or problem_names(include_portfolio=False)


@click.group(cls=ExitCodeGroup)
@click.option("--config", type=click.Path(dir_okay=False), callback=_load_config,
              is_eager=True, expose_value=False,
              help="JSON file with per-command defaults; flags win over it.")
@click.option("--verbose", "-v", count=True, help="Repeat for more logging.")
def cli(verbose):
    """Newton method for multiobjective interval optimization."""
    _configure_logging(verbose)


@cli.command("solve")
@click.option("--problem", required=True)
@click.option("--x0", type=VECTOR, default=None,
              help="Initial point; drawn from the seed when omitted.")
@click.option("--direction", type=click.Choice(VALID_DIRECTION_KINDS), default=NEWTON,
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(VALID_FORMATS), default=JSON,
              show_default=True)
@solver_options
@common_options
@click.pass_context
def cmd_solve(ctx, problem, x0, direction, fmt, eta, sigma, eps, max_iters, seed, out_dir):
    """Solve one problem and print the iterate table."""
    problem_name = problem
    if problem_name not in problem_names():
        raise click.BadParameter(
            "%s is not a registered problem; must be one of %s"
            % (problem_name, ", ".join(problem_names())),
            ctx, param_hint="--problem",
        )
    problem = get_problem(problem_name)
    if x0 is None:
        x0 = initial_point(problem_name, 0, seed)
    if len(x0) != problem.n:
        raise click.BadParameter(
            "%s needs %s coordinates, got %s" % (problem_name, problem.n, len(x0)),
            ctx, param_hint="--x0",
        )

    report = solve(problem, x0, _params(eta, sigma, eps, max_iters, direction))

    click.echo("%4s  %-28s  %-48s  %-14s  %s" % ("k", "x", "G(x)", "xi", "t"))
    for record in report.iterates:
        click.echo("%4d  %-28s  %-48s  %-14.6e  %s" % (
            record.k, _format_vector(record.x), _format_values(record.G_values),
            record.xi, "-" if record.t is None else "%g" % record.t,
        ))
    click.echo("status: %s after %s iterations; solution %s" % (
        report.status, report.iterations, _format_vector(report.final_solution),
    ))

    path = emit(ITERATE_RECTANGLES, fmt, report, out_dir, name="solve-%s" % problem_name)
    click.echo("wrote %s" % path)
    ctx.exit(STATUS_EXIT_CODES[report.status])


def _campaign_options(command):
    options = [
        click.option("--problems", multiple=True, default=(),
                     help="Problem names, repeated or comma-separated; all by default."),
        click.option("--runs", type=int, default=100, show_default=True),
        click.option("--jobs", type=int, default=lambda: os.cpu_count() or 1,
                     show_default="number of logical cores"),
        click.option("--include-failed/--exclude-failed", default=True, show_default=True,
                     help="Count runs that did not reach a critical point."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@cli.command("bench")
@_campaign_options
@click.option("--format", "fmt", type=click.Choice([CSV, JSON]), default=CSV, show_default=True)
@solver_options
@common_options
@click.pass_context
def cmd_bench(ctx, problems, runs, jobs, include_failed, fmt, eta, sigma, eps, max_iters,
              seed, out_dir):
    """Multi-start Newton campaign and its statistics table."""
    spec = CampaignSpec(
        problems=_problem_list(problems),
        solvers=(NEWTON,),
        runs_per_problem=runs,
        seed=seed,
        params=_params(eta, sigma, eps, max_iters),
        jobs=jobs,
        include_failed=include_failed,
    )
    records = run_campaign(spec)

    table = stats_table(records, include_failed)
    click.echo(table.to_string(index=False))
    for artifact in (RUN_RECORDS, STATS_TABLE):
        click.echo("wrote %s" % emit(artifact, fmt, records, out_dir,
                                     include_failed=include_failed))
    ctx.exit(EXIT_OK)


@cli.command("profile")
@_campaign_options
@solver_options
@common_options
@click.pass_context
def cmd_profile(ctx, problems, runs, jobs, include_failed, eta, sigma, eps, max_iters,
                seed, out_dir):
    """Newton against steepest descent from paired starts."""
    spec = CampaignSpec(
        problems=_problem_list(problems),
        solvers=(NEWTON, STEEPEST_DESCENT),
        runs_per_problem=runs,
        seed=seed,
        params=_params(eta, sigma, eps, max_iters),
        jobs=jobs,
        include_failed=include_failed,
    )
    records = run_campaign(spec)
    curves = [
        curve
        for metric in VALID_METRICS
        for curve in performance_profile(records, metric, include_failed)
    ]

    for curve in curves:
        click.echo("%-10s %-18s rho(1)=%.3f over %s problems (%s excluded)" % (
            curve.metric, curve.solver, curve.rho[0], len(curve.problems), len(curve.excluded),
        ))
    click.echo("wrote %s" % emit(RUN_RECORDS, CSV, records, out_dir))
    for fmt in (CSV, SVG):
        click.echo("wrote %s" % emit(PROFILE_CURVES, fmt, curves, out_dir))
    ctx.exit(EXIT_OK)


def _max_gap(values, printed) -> float:
    return max(
        max(abs(G.lo - lo), abs(G.hi - hi)) for G, (lo, hi) in zip(values, printed)
    )


@cli.command("verify")
@click.option("--tolerance", type=float, default=1e-3, show_default=True,
              help="Largest accepted deviation from a published G endpoint.")
@solver_options
@click.pass_context
def cmd_verify(ctx, tolerance, eta, sigma, eps, max_iters):
    """Check the I-BK1 weighted-sum table against the Newton result."""
    problem = get_problem("I-BK1")
    report = solve(problem, BK1_START, _params(eta, sigma, eps, max_iters))
    x_star = report.final_x
    G_star = problem.evaluate(x_star)
    failures, dominating = [], []

    click.echo("Newton: %s after %s iterations, x* = %s, G(x*) = %s" % (
        report.status, report.iterations, _format_vector(x_star), _format_values(G_star),
    ))
    if report.status != CRITICAL:
        failures.append("Newton run ended with status %s" % report.status)
    distance = float(np.max(np.abs(x_star - np.array(BK1_CRITICAL_POINT))))
    if distance > BK1_POINT_TOLERANCE:
        failures.append("x* is %.3e away from the published point" % distance)

    printed_star = [Interval(lo, hi) for lo, hi in BK1_CRITICAL_VALUES]

    click.echo("%5s  %-24s  %-48s  %-9s  %s" % ("alpha", "x", "G(x)", "gap", "relation to x*"))
    for alpha, printed_x, printed_G1, printed_G2 in BK1_WEIGHTED_SUM_TABLE:
        try:
            solution = bk1_weighted_solution(alpha)
        except AssertionError as error:
            failures.append(str(error))
            continue

        x = np.array(printed_x) if alpha in MISPRINTED_ALPHAS else solution.x
        values = problem.evaluate(x)
        gap = _max_gap(values, (printed_G1, printed_G2))
        if gap > tolerance:
            failures.append("alpha=%s: G deviates from the table by %.3e" % (alpha, gap))

        relation = compare_vectors(values, G_star)
        printed = compare_vectors(
            [Interval(*printed_G1), Interval(*printed_G2)], printed_star
        )
        if relation != printed:
            failures.append(
                "alpha=%s: computed relation %s, published numbers imply %s"
                % (alpha, relation, printed)
            )

        click.echo("%5.1f  %-24s  %-48s  %-9.2e  %s" % (
            alpha, _format_vector(x), _format_values(values), gap, relation,
        ))
        if relation in (STRICTLY_DOMINATES, DOMINATES):
            dominating.append(alpha)

    for alpha in dominating:
        click.echo("NOTE weighted-sum point for alpha=%s dominates x*" % alpha)
    for failure in failures:
        click.echo("FAIL %s" % failure)
    if failures:
        ctx.exit(EXIT_MISMATCH)
    click.echo("PASS")
    ctx.exit(EXIT_OK)


@cli.command("portfolio")
@click.option("--tolerance", type=float, default=1e-4, show_default=True)
@solver_options
@click.pass_context
def cmd_portfolio(ctx, tolerance, eta, sigma, eps, max_iters):
    """Solve the reduced portfolio problem from the published starts."""
    problem = portfolio_problem()
    params = _params(eta, sigma, eps, max_iters)
    mismatches = 0

    click.echo("%-4s %-8s %-22s %s" % ("no.", "start", "solution", "expected"))
    for number, (start, expected) in enumerate(PORTFOLIO_SOLUTIONS, start=1):
        report = solve(problem, [start], params)
        found = report.final_solution
        ok = report.status == CRITICAL and np.max(np.abs(found - expected)) <= tolerance
        mismatches += not ok
        click.echo("%-4d %-8g %-22s %s%s" % (
            number, start, _format_vector(found), _format_vector(expected),
            "" if ok else "  MISMATCH",
        ))

    ctx.exit(EXIT_MISMATCH if mismatches else EXIT_OK)


@cli.command("list")
def cmd_list():
    """JSON catalogue of the registered problems."""
    click.echo(json.dumps(catalogue(), indent=2))


def main(args: Optional[Sequence[str]] = None):
    cli.main(args=args, prog_name="interval-newton")


if __name__ == "__main__":
    main()
