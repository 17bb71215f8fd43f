import os
from dataclasses import replace
from unittest import mock, skipUnless

import numpy as np
from django.test import SimpleTestCase

from interval_newton import (
    CRITICAL,
    EQUAL,
    INCOMPARABLE,
    LINE_SEARCH_FAILED,
    MAX_ITERATIONS,
    STEEPEST_DESCENT,
    STRICTLY_DOMINATED_BY,
    STRICTLY_DOMINATES,
    ConfigurationError,
    DimensionMismatch,
    IllConditionedTransform,
    LineSearchFailed,
    PointData,
    SolverParams,
    armijo_step,
    bk1_weighted_solution,
    check_scaling_invariance,
    criticality_certificate,
    get_problem,
    mutual_nondominance,
    newton_direction,
    portfolio_problem,
    solve,
)
from interval_newton.bench import initial_point
from interval_newton.problems import PORTFOLIO_SOLUTIONS, corpus, monomial_transform
from tests.testapp.fixtures import (
    BK1_X0,
    BK1_X_STAR,
    BK1_XI0,
    QUICK_PROBLEMS,
    quartic_problem,
    sphere_problem,
)

SLOW_TESTS_ENVVAR = "IMO_SLOW_TESTS"


class SolverParamsTests(SimpleTestCase):
    def test_defaults(self):
        params = SolverParams()
        self.assertEqual(params.eta, 0.5)
        self.assertEqual(params.sigma, 1e-3)
        self.assertEqual(params.eps, 1e-6)
        self.assertEqual(params.min_step, 0.5 ** 40)
        self.assertEqual(SolverParams(eta=0.25).min_step, 0.25 ** 40)

    def test_small_eta_keeps_derived_minimum_step(self):
        for eta in (0.25, 0.1):
            params = SolverParams(eta=eta)
            self.assertEqual(params.min_step, eta ** 40)
            self.assertLess(params.min_step, np.finfo(float).eps)
            self.assertEqual(replace(params, direction_kind=STEEPEST_DESCENT).min_step, eta ** 40)

        report = solve(get_problem("I-BK1"), BK1_X0, SolverParams(eta=0.1))
        self.assertEqual(report.status, CRITICAL)

    def test_rejects_invalid_values(self):
        for kwargs in (
            {"eta": 1.0},
            {"eta": 0.0},
            {"sigma": 1.0},
            {"sigma": 0.0},
            {"eps": 0.0},
            {"max_iters": -1},
            {"max_iters": 1.5},
            {"max_iters": True},
            {"min_step": 1e-20},
            {"direction_kind": "bogus"},
            {"subproblem_tol": 0.0},
        ):
            with self.assertRaises(ConfigurationError, msg=kwargs):
                SolverParams(**kwargs)

    def test_to_json(self):
        self.assertEqual(SolverParams().to_json()["direction_kind"], "newton")


class ArmijoStepTests(SimpleTestCase):
    def backtracks_by_scanning(self, problem, x, v, xi, params):
        """First b with an acceptable step, found without the search itself."""
        current = problem.evaluate(x)
        for b in range(41):
            t = params.eta ** b
            trial = problem.evaluate(x + t * v)
            decrease = params.sigma * t * xi
            if all(
                T.lo <= C.lo + decrease and T.hi <= C.hi + decrease
                for T, C in zip(trial, current)
            ):
                return b
        return None

    def test_quartic_backtracks(self):
        problem = quartic_problem()
        params = SolverParams()
        for v, expected in ((-30.0, 1), (-100.0, 3)):
            t, backtracks = armijo_step(problem, [10.0], [v], -1.0, params)
            self.assertEqual(backtracks, expected)
            self.assertEqual(t, 0.5 ** expected)
            self.assertEqual(
                self.backtracks_by_scanning(problem, np.array([10.0]), np.array([v]), -1.0, params),
                expected,
            )

    def test_rejects_non_descent_input(self):
        problem = quartic_problem()
        with self.assertRaises(ConfigurationError):
            armijo_step(problem, [10.0], [-1.0], 0.0)
        with self.assertRaises(ConfigurationError):
            armijo_step(problem, [10.0], [-1.0], 0.5)
        with self.assertRaises(ConfigurationError):
            armijo_step(problem, [10.0], [0.0], -1.0)

    def test_full_step_on_bk1_start(self):
        problem = get_problem("I-BK1")
        direction = newton_direction(PointData.from_objectives(problem.objectives, BK1_X0))
        t, backtracks = armijo_step(problem, BK1_X0, direction.v, direction.xi)
        self.assertEqual((t, backtracks), (1.0, 0))

    def test_fails_below_minimum_step(self):
        # an ascent direction is never accepted
        problem = quartic_problem()
        with self.assertRaises(LineSearchFailed) as context:
            armijo_step(problem, [10.0], [1.0], -1.0)
        self.assertEqual(context.exception.backtracks, 41)


class SolveTests(SimpleTestCase):
    def test_bk1_from_published_start(self):
        report = solve(get_problem("I-BK1"), BK1_X0)
        self.assertEqual(report.status, CRITICAL)
        self.assertTrue(9 <= report.iterations <= 15, report.iterations)
        np.testing.assert_allclose(report.final_x, BK1_X_STAR, atol=5e-3)
        self.assertTrue(-1e-6 < report.final_xi <= 0.0)

        first = report.iterates[0]
        self.assertEqual(first.k, 0)
        self.assertAlmostEqual(first.xi, BK1_XI0, delta=1e-3)
        self.assertEqual(first.t, 1.0)
        self.assertIsNone(report.iterates[-1].t)
        self.assertEqual([record.k for record in report.iterates], list(range(len(report.iterates))))

    def test_portfolio_starts(self):
        problem = portfolio_problem()
        for start, expected in PORTFOLIO_SOLUTIONS:
            report = solve(problem, [start])
            self.assertEqual(report.status, CRITICAL, start)
            np.testing.assert_allclose(report.final_solution, expected, atol=1e-4)

    def test_critical_start_takes_no_steps(self):
        report = solve(sphere_problem(), [0.0, 0.0])
        self.assertEqual(report.status, CRITICAL)
        self.assertEqual(report.iterations, 0)
        self.assertEqual(len(report.iterates), 1)
        self.assertEqual(report.final_xi, 0.0)

    def test_steepest_descent_on_sphere(self):
        report = solve(sphere_problem(), [1.0, 1.0], SolverParams(direction_kind=STEEPEST_DESCENT))
        self.assertEqual(report.status, CRITICAL)
        np.testing.assert_allclose(report.final_x, [0.0, 0.0], atol=1e-4)

    def test_iterates_stay_in_the_initial_level_set(self):
        rng = np.random.default_rng(30)
        params = SolverParams(max_iters=100)
        for name in QUICK_PROBLEMS:
            problem = get_problem(name)
            for x0 in rng.uniform(problem.lb, problem.ub, size=(10, problem.n)):
                report = solve(problem, x0, params)
                self.assertIn(report.status, (CRITICAL, MAX_ITERATIONS, LINE_SEARCH_FAILED))
                for record in report.iterates:
                    self.assertTrue(record.in_level_set, name)
                for previous, current in zip(report.iterates, report.iterates[1:]):
                    for G_prev, G_cur in zip(previous.G_values, current.G_values):
                        self.assertLessEqual(G_cur.lo, G_prev.lo + 1e-12, name)
                        self.assertLessEqual(G_cur.hi, G_prev.hi + 1e-12, name)

    def test_is_deterministic(self):
        problem = get_problem("I-VU2")
        first = solve(problem, [3.1, -2.7])
        second = solve(problem, [3.1, -2.7])
        self.assertEqual(first.status, second.status)
        self.assertEqual(len(first.iterates), len(second.iterates))
        for a, b in zip(first.iterates, second.iterates):
            np.testing.assert_array_equal(a.x, b.x)
            self.assertEqual(a.xi, b.xi)

    def test_zero_iteration_budget(self):
        report = solve(get_problem("I-BK1"), BK1_X0, SolverParams(max_iters=0))
        self.assertEqual(report.status, MAX_ITERATIONS)
        self.assertEqual(report.iterations, 0)
        np.testing.assert_array_equal(report.final_x, BK1_X0)

    def test_line_search_failure_is_a_status(self):
        with mock.patch(
            "interval_newton.solver.armijo_step",
            mock.MagicMock(side_effect=LineSearchFailed(1e-12, 40)),
        ):
            report = solve(get_problem("I-BK1"), BK1_X0)
        self.assertEqual(report.status, LINE_SEARCH_FAILED)
        self.assertEqual(report.iterations, 0)
        self.assertIsNone(report.iterates[-1].t)

    def test_rejects_wrong_dimension(self):
        with self.assertRaises(DimensionMismatch):
            solve(get_problem("I-BK1"), [1.0, 2.0, 3.0])

    def test_to_json(self):
        data = solve(sphere_problem(), [0.0, 0.0]).to_json()
        self.assertEqual(data["iterations"], 0)
        self.assertEqual(data["status"], CRITICAL)
        self.assertEqual(len(data["iterates"]), 1)


@skipUnless(os.environ.get(SLOW_TESTS_ENVVAR), "set %s=1 to run the full corpus" % SLOW_TESTS_ENVVAR)
class CorpusDescentTests(SimpleTestCase):
    """Every corpus problem from ten seeded starts at default parameters."""

    def test_no_line_search_failure_and_monotone_endpoints(self):
        params = SolverParams()
        for problem in corpus():
            for run_index in range(10):
                x0 = initial_point(problem.name, run_index, seed=42)
                report = solve(problem, x0, params)
                self.assertIn(report.status, (CRITICAL, MAX_ITERATIONS), problem.name)
                for previous, current in zip(report.iterates, report.iterates[1:]):
                    for G_prev, G_cur in zip(previous.G_values, current.G_values):
                        self.assertLessEqual(G_cur.lo, G_prev.lo + 1e-12, problem.name)
                        self.assertLessEqual(G_cur.hi, G_prev.hi + 1e-12, problem.name)


class CriticalityCertificateTests(SimpleTestCase):
    def test_start_is_not_critical(self):
        certificate = criticality_certificate(get_problem("I-BK1"), BK1_X0)
        self.assertFalse(certificate.is_critical)
        self.assertAlmostEqual(certificate.xi, BK1_XI0, delta=1e-3)

    def test_solution_is_critical(self):
        certificate = criticality_certificate(get_problem("I-BK1"), BK1_X_STAR, eps=1e-5)
        self.assertTrue(certificate.is_critical)

    def test_minimizer_of_single_objective(self):
        certificate = criticality_certificate(sphere_problem(), [0.0, 0.0])
        self.assertTrue(certificate.is_critical)
        self.assertEqual(certificate.xi, 0.0)


class ScalingInvarianceTests(SimpleTestCase):
    def test_identity(self):
        self.assertLessEqual(check_scaling_invariance(get_problem("I-BK1"), BK1_X0, np.eye(2)), 1e-6)

    def test_diagonal_scaling(self):
        deviation = check_scaling_invariance(get_problem("I-BK1"), BK1_X0, np.diag([2.0, 0.5]))
        self.assertLessEqual(deviation, 1e-5)

    def test_signed_permutations(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            T = monomial_transform(rng, 2)
            deviation = check_scaling_invariance(get_problem("I-VU2"), [1.0, 1.0], T)
            self.assertLessEqual(deviation, 1e-5)

    def test_rejects_ill_conditioned_matrix(self):
        with self.assertRaises(IllConditionedTransform):
            check_scaling_invariance(get_problem("I-BK1"), BK1_X0, np.diag([1.0, 1e-9]))


class MutualNondominanceTests(SimpleTestCase):
    def test_relations(self):
        problem = get_problem("I-BK1")
        balanced = bk1_weighted_solution(0.5).x
        relations = mutual_nondominance(problem, [balanced, BK1_X_STAR, (0.0, 0.0), (-1.0, -1.0)])

        for index in range(4):
            self.assertEqual(relations[index][index], EQUAL)
        self.assertEqual(relations[0][1], INCOMPARABLE)
        self.assertEqual(relations[1][0], INCOMPARABLE)
        self.assertEqual(relations[2][3], STRICTLY_DOMINATES)
        self.assertEqual(relations[3][2], STRICTLY_DOMINATED_BY)
