from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from interval_newton import (
    CPU_TIME,
    CRITICAL,
    FAILED,
    ITERATIONS,
    MAX_ITERATIONS,
    NEWTON,
    STEEPEST_DESCENT,
    VALID_RUN_STATUSES,
    CampaignSpec,
    ConfigurationError,
    EmptySample,
    SolverParams,
    get_problem,
    performance_profile,
    run_campaign,
    summarize,
)
from interval_newton.bench import STAT_NAMES, initial_point, stats_table
from tests.testapp.fixtures import BK1_X0, make_record

QUICK_PARAMS = SolverParams(max_iters=50)


class InitialPointTests(SimpleTestCase):
    def test_is_deterministic_and_in_box(self):
        first = initial_point("I-BK1", 3, seed=42)
        self.assertEqual(first, initial_point("I-BK1", 3, seed=42))
        self.assertTrue(get_problem("I-BK1").in_box(first))

    def test_streams_differ(self):
        point = initial_point("I-BK1", 0, seed=42)
        self.assertNotEqual(point, initial_point("I-BK1", 1, seed=42))
        self.assertNotEqual(point, initial_point("I-BK1", 0, seed=43))
        self.assertNotEqual(point, initial_point("I-VU2", 0, seed=42))


class CampaignSpecTests(SimpleTestCase):
    def test_defaults(self):
        spec = CampaignSpec(problems=["I-BK1"])
        self.assertEqual(spec.problems, ("I-BK1",))
        self.assertEqual(spec.solvers, (NEWTON,))
        self.assertEqual(spec.runs_per_problem, 100)
        self.assertEqual(spec.to_json()["seed"], 42)

    def test_rejects_invalid_values(self):
        for kwargs in (
            {"problems": ()},
            {"problems": ("bogus",)},
            {"problems": ("I-BK1",), "solvers": ()},
            {"problems": ("I-BK1",), "solvers": ("bfgs",)},
            {"problems": ("I-BK1",), "runs_per_problem": 0},
            {"problems": ("I-BK1",), "jobs": 0},
            {"problems": ("I-BK1",), "x0_overrides": {"I-VU2": (0.0, 0.0)}},
        ):
            with self.assertRaises(ConfigurationError, msg=kwargs):
                CampaignSpec(**kwargs)


class RunCampaignTests(SimpleTestCase):
    def test_is_deterministic(self):
        spec = CampaignSpec(problems=("I-VU2", "I-BK1"), runs_per_problem=3, params=QUICK_PARAMS)
        first = [record.without_timing() for record in run_campaign(spec)]
        second = [record.without_timing() for record in run_campaign(spec)]
        self.assertEqual(first, second)
        self.assertEqual(len(first), 6)
        self.assertEqual(
            [(r.problem, r.run_index) for r in first],
            [("I-BK1", 0), ("I-BK1", 1), ("I-BK1", 2), ("I-VU2", 0), ("I-VU2", 1), ("I-VU2", 2)],
        )
        self.assertTrue({r.status for r in first} <= set(VALID_RUN_STATUSES))

    def test_x0_override(self):
        spec = CampaignSpec(
            problems=("I-BK1",), runs_per_problem=2, x0_overrides={"I-BK1": BK1_X0},
        )
        for record in run_campaign(spec):
            self.assertEqual(record.x0, BK1_X0)
            self.assertEqual(record.status, CRITICAL)

    def test_solvers_share_starting_points(self):
        spec = CampaignSpec(
            problems=("I-BK1",),
            solvers=(NEWTON, STEEPEST_DESCENT),
            runs_per_problem=2,
            params=QUICK_PARAMS,
        )
        records = run_campaign(spec)
        self.assertEqual(len(records), 4)
        by_solver = {
            solver: {r.run_index: r.x0 for r in records if r.solver == solver}
            for solver in (NEWTON, STEEPEST_DESCENT)
        }
        self.assertEqual(by_solver[NEWTON], by_solver[STEEPEST_DESCENT])

    def test_parallel_matches_serial(self):
        serial = CampaignSpec(problems=("I-BK1",), runs_per_problem=2, params=QUICK_PARAMS)
        parallel = CampaignSpec(
            problems=("I-BK1",), runs_per_problem=2, params=QUICK_PARAMS, jobs=2,
        )
        self.assertEqual(
            [r.without_timing() for r in run_campaign(serial)],
            [r.without_timing() for r in run_campaign(parallel)],
        )

    def test_failed_runs_are_recorded(self):
        spec = CampaignSpec(problems=("I-BK1",), runs_per_problem=2)
        with mock.patch(
            "interval_newton.bench.solve", mock.MagicMock(side_effect=RuntimeError("boom"))
        ):
            records = run_campaign(spec)
        self.assertEqual([r.status for r in records], [FAILED, FAILED])
        self.assertEqual(records[0].error, "boom")
        self.assertEqual(records[0].iterations, 0)


class SummarizeTests(SimpleTestCase):
    def summary(self, iterations, **kwargs):
        records = [make_record(run_index=i, iterations=n) for i, n in enumerate(iterations)]
        return summarize(records, **kwargs)

    def test_constant_sample(self):
        summary = self.summary([7] * 7)
        self.assertEqual(
            [getattr(summary, name) for name in STAT_NAMES], [7.0, 7.0, 7.0, 7.0, 7.0, 0.0]
        )

    def test_small_sample(self):
        summary = self.summary([1, 2, 2, 9])
        self.assertEqual((summary.min, summary.max), (1.0, 9.0))
        self.assertEqual(summary.mean, 3.5)
        self.assertEqual(summary.median, 2.0)
        self.assertEqual(summary.mode, 2.0)
        self.assertAlmostEqual(summary.std_dev, 3.696846, places=5)

    def test_mode_tie_takes_smallest(self):
        self.assertEqual(self.summary([5, 3, 5, 3]).mode, 3.0)

    def test_single_value_has_zero_spread(self):
        self.assertEqual(self.summary([4]).std_dev, 0.0)

    def test_empty_sample(self):
        with self.assertRaises(EmptySample):
            summarize([])

    def test_failed_runs_are_never_counted(self):
        records = [make_record(iterations=3), make_record(run_index=1, iterations=0, status=FAILED)]
        self.assertEqual(summarize(records).mean, 3.0)

    def test_critical_only(self):
        records = [
            make_record(iterations=3),
            make_record(run_index=1, iterations=500, status=MAX_ITERATIONS),
        ]
        self.assertEqual(summarize(records).max, 500.0)
        self.assertEqual(summarize(records, include_failed=False).max, 3.0)

    def test_cpu_field(self):
        records = [make_record(cpu_seconds=0.5), make_record(run_index=1, cpu_seconds=1.5)]
        self.assertEqual(summarize(records, "cpu_seconds").mean, 1.0)

    def test_rejects_unknown_field(self):
        with self.assertRaises(ConfigurationError):
            summarize([make_record()], "status")

    def test_stats_table(self):
        records = [
            make_record(problem="I-BK1", iterations=2),
            make_record(problem="I-BK1", run_index=1, iterations=4),
            make_record(problem="I-VU2", iterations=1),
        ]
        table = stats_table(records)
        self.assertEqual(list(table["problem"]), ["I-BK1", "I-VU2"])
        self.assertEqual(list(table.columns[:2]), ["problem", "solver"])
        self.assertIn("iterations_mean", table.columns)
        self.assertIn("cpu_seconds_std_dev", table.columns)
        self.assertEqual(table.loc[0, "iterations_mean"], 3.0)


class PerformanceProfileTests(SimpleTestCase):
    def records(self, table):
        """table maps (problem, solver) to (iterations, status) runs."""
        records = []
        for (problem, solver), runs in table.items():
            for index, (iterations, status) in enumerate(runs):
                records.append(make_record(
                    problem=problem, solver=solver, run_index=index,
                    iterations=iterations, status=status,
                ))
        return records

    def test_identical_solvers(self):
        records = self.records({
            ("I-BK1", NEWTON): [(3, CRITICAL)],
            ("I-BK1", STEEPEST_DESCENT): [(3, CRITICAL)],
        })
        for curve in performance_profile(records):
            self.assertEqual(curve.rho[0], 1.0)
            self.assertEqual(curve.zeta[0], 1.0)

    def test_curves(self):
        records = self.records({
            ("I-BK1", NEWTON): [(2, CRITICAL)],
            ("I-BK1", STEEPEST_DESCENT): [(4, CRITICAL)],
            ("I-VU2", NEWTON): [(6, CRITICAL)],
            ("I-VU2", STEEPEST_DESCENT): [(3, CRITICAL)],
            ("I-CH", NEWTON): [(6, CRITICAL)],
            ("I-CH", STEEPEST_DESCENT): [(50, MAX_ITERATIONS)],
        })
        curves = performance_profile(records, ITERATIONS, grid_points=11)
        self.assertEqual([curve.solver for curve in curves], [NEWTON, STEEPEST_DESCENT])
        for curve in curves:
            self.assertEqual(curve.problems, ("I-BK1", "I-VU2"))
            self.assertEqual(curve.excluded, ("I-CH",))
            self.assertEqual(curve.zeta[0], 1.0)
            self.assertEqual(curve.zeta[-1], 2.0)
            self.assertEqual(curve.rho[0], 0.5)
            self.assertEqual(curve.rho[-1], 1.0)
            self.assertTrue(np.all(np.diff(curve.rho) >= 0))

    def test_cpu_time_floor(self):
        records = [
            make_record(solver=NEWTON, cpu_seconds=0.0),
            make_record(solver=STEEPEST_DESCENT, cpu_seconds=1e-9),
        ]
        for curve in performance_profile(records, CPU_TIME):
            self.assertEqual(curve.rho[0], 1.0)

    def test_needs_two_solvers(self):
        with self.assertRaises(ConfigurationError):
            performance_profile([make_record()])

    def test_rejects_unknown_metric(self):
        with self.assertRaises(ConfigurationError):
            performance_profile([make_record()], "wall_time")

    def test_no_problem_left(self):
        records = self.records({
            ("I-BK1", NEWTON): [(2, CRITICAL)],
            ("I-BK1", STEEPEST_DESCENT): [(9, FAILED)],
        })
        with self.assertRaises(EmptySample):
            performance_profile(records)
