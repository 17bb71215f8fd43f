import json
import tempfile
from pathlib import Path
from unittest import mock

import pandas as pd
from click.testing import CliRunner
from django.test import SimpleTestCase

from interval_newton import CRITICAL, NEWTON, STEEPEST_DESCENT
from interval_newton.cli import (
    EXIT_MAX_ITERATIONS,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    SEED_ENVVAR,
    cli,
)
from tests.testapp.fixtures import make_record


class CliTestCase(SimpleTestCase):
    def setUp(self):
        self.runner = CliRunner()
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = Path(tmp.name)

    def invoke(self, *args, **kwargs):
        return self.runner.invoke(cli, list(args), catch_exceptions=False, **kwargs)

    def solve_rows(self, result):
        """The k = 0 row of a solve table."""
        return result.output.splitlines()[1]


class SolveCommandTests(CliTestCase):
    def test_bk1_from_published_start(self):
        result = self.invoke(
            "solve", "--problem", "I-BK1", "--x0=9.9862,-7.4332", "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("status: %s" % CRITICAL, result.output)
        self.assertTrue((self.tmp / "solve-I-BK1.json").exists())

    def test_csv_output(self):
        result = self.invoke(
            "solve", "--problem", "I-BK1", "--x0=9.9862,-7.4332",
            "--format", "csv", "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_OK)
        frame = pd.read_csv(self.tmp / "solve-I-BK1.csv")
        self.assertEqual(frame.loc[0, "k"], 0)

    def test_unknown_problem(self):
        result = self.invoke("solve", "--problem", "nope", "--out-dir", str(self.tmp))
        self.assertEqual(result.exit_code, EXIT_USAGE)
        self.assertIn("not a registered problem", result.output)

    def test_wrong_start_dimension(self):
        result = self.invoke(
            "solve", "--problem", "I-BK1", "--x0=1,2,3", "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_USAGE)

    def test_invalid_solver_parameter(self):
        result = self.invoke(
            "solve", "--problem", "I-BK1", "--eta", "1.5", "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_USAGE)
        self.assertIn("'eta' must lie in (0, 1)", result.output)

    def test_small_eta(self):
        result = self.invoke(
            "solve", "--problem", "I-BK1", "--x0=9.9862,-7.4332", "--eta", "0.25",
            "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)

    def test_unknown_command(self):
        self.assertEqual(self.invoke("optimize").exit_code, EXIT_USAGE)

    def test_iteration_limit_exit_code(self):
        result = self.invoke(
            "solve", "--problem", "I-BK1", "--x0=9.9862,-7.4332", "--max-iters", "0",
            "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_MAX_ITERATIONS)

    def test_portfolio_start(self):
        result = self.invoke("solve", "--problem", "portfolio", "--x0=0.5", "--out-dir", str(self.tmp))
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertIn("solution (0.500000, 0.500000)", result.output)

    def test_seed_from_environment(self):
        args = ("solve", "--problem", "I-VU2", "--max-iters", "0", "--out-dir", str(self.tmp))
        from_flag = self.invoke(*args, "--seed", "7")
        from_env = self.invoke(*args, env={SEED_ENVVAR: "7"})
        default = self.invoke(*args)
        self.assertEqual(self.solve_rows(from_flag), self.solve_rows(from_env))
        self.assertNotEqual(self.solve_rows(from_flag), self.solve_rows(default))


class ConfigFileTests(CliTestCase):
    def write_config(self, data) -> str:
        path = self.tmp / "config.json"
        path.write_text(json.dumps(data))
        return str(path)

    def test_config_supplies_defaults(self):
        config = self.write_config({"solve": {"max_iters": 0}})
        result = self.invoke(
            "--config", config, "solve", "--problem", "I-BK1", "--x0=9.9862,-7.4332",
            "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_MAX_ITERATIONS)

    def test_flags_win_over_config(self):
        config = self.write_config({"solve": {"max_iters": 0}})
        result = self.invoke(
            "--config", config, "solve", "--problem", "I-BK1", "--x0=9.9862,-7.4332",
            "--max-iters", "500", "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_OK)

    def test_unreadable_config(self):
        path = self.tmp / "broken.json"
        path.write_text("{not json")
        self.assertEqual(self.invoke("--config", str(path), "list").exit_code, EXIT_USAGE)

    def test_config_must_be_an_object(self):
        config = self.write_config([1, 2])
        self.assertEqual(self.invoke("--config", config, "list").exit_code, EXIT_USAGE)


class VerifyCommandTests(CliTestCase):
    def test_passes(self):
        result = self.invoke("verify")
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("PASS", result.output)

    def test_tight_tolerance_fails(self):
        result = self.invoke("verify", "--tolerance", "1e-12")
        self.assertEqual(result.exit_code, EXIT_MISMATCH)
        self.assertIn("FAIL", result.output)


class PortfolioCommandTests(CliTestCase):
    def test_published_starts(self):
        result = self.invoke("portfolio")
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertNotIn("MISMATCH", result.output)


class ListCommandTests(CliTestCase):
    def test_catalogue(self):
        result = self.invoke("list")
        self.assertEqual(result.exit_code, EXIT_OK)
        catalogue = json.loads(result.output)
        self.assertEqual(len(catalogue), 21)
        self.assertEqual(catalogue[0]["name"], "I-BK1")


class BenchCommandTests(CliTestCase):
    def run_bench(self, out_dir):
        return self.invoke(
            "bench", "--problems", "I-BK1", "--runs", "2", "--jobs", "1",
            "--max-iters", "50", "--out-dir", str(out_dir),
        )

    def test_is_deterministic(self):
        first = self.run_bench(self.tmp / "first")
        second = self.run_bench(self.tmp / "second")
        self.assertEqual(first.exit_code, EXIT_OK, first.output)
        self.assertEqual(second.exit_code, EXIT_OK)

        frames = [
            pd.read_csv(self.tmp / name / "run-records.csv").drop(columns="cpu_seconds")
            for name in ("first", "second")
        ]
        pd.testing.assert_frame_equal(frames[0], frames[1])
        self.assertEqual(len(frames[0]), 2)
        self.assertTrue((self.tmp / "first" / "stats-table.csv").exists())

    def test_unknown_problem(self):
        result = self.invoke(
            "bench", "--problems", "bogus", "--runs", "1", "--jobs", "1",
            "--out-dir", str(self.tmp),
        )
        self.assertEqual(result.exit_code, EXIT_USAGE)


class ProfileCommandTests(CliTestCase):
    def test_writes_curves(self):
        records = [
            make_record(problem="I-BK1", solver=NEWTON, iterations=2),
            make_record(problem="I-BK1", solver=STEEPEST_DESCENT, iterations=8),
            make_record(problem="I-VU2", solver=NEWTON, iterations=3),
            make_record(problem="I-VU2", solver=STEEPEST_DESCENT, iterations=3),
        ]
        with mock.patch("interval_newton.cli.run_campaign", mock.MagicMock(return_value=records)):
            result = self.invoke(
                "profile", "--problems", "I-BK1,I-VU2", "--runs", "1", "--jobs", "1",
                "--out-dir", str(self.tmp),
            )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("rho(1)=1.000", result.output)
        for name in ("run-records.csv", "profile-curves.csv", "profile-curves.svg"):
            self.assertTrue((self.tmp / name).exists(), name)

        curves = pd.read_csv(self.tmp / "profile-curves.csv")
        self.assertEqual(set(curves["metric"]), {"iterations", "cpu_time"})
