import unittest
import numpy
from vdgcheck.errors     import MatrixGameError
from vdgcheck.matrixgame import (MatrixGame, pure_saddle_point,
    solve_matrix_game)
from .oracle import support_enumeration

class MatrixGameTestSolve(unittest.TestCase):
    def test_matching_pennies(self):
        solution = solve_matrix_game(MatrixGame([[1, -1], [-1, 1]]))
        self.assertAlmostEqual(solution.value, 0.0, delta=1e-9)
        for p in solution.row_strategy + solution.col_strategy:
            self.assertAlmostEqual(p, 0.5, delta=1e-9)

    def test_rock_paper_scissors(self):
        payoff = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
        solution = solve_matrix_game(MatrixGame(payoff))
        self.assertAlmostEqual(solution.value, 0.0, delta=1e-9)
        for p in solution.row_strategy:
            self.assertAlmostEqual(p, 1/3, delta=1e-9)

    def test_constant(self):
        solution = solve_matrix_game(MatrixGame([[4, 4], [4, 4]]))
        self.assertEqual(solution.value, 4.0)
        self.assertEqual(solution.row_strategy, (1.0, 0.0))

    def test_saddle_point(self):
        solution = pure_saddle_point(numpy.array([[3., 1.], [4., 2.]]))
        self.assertEqual(solution.value, 2.0)
        self.assertEqual(solution.row_strategy, (0.0, 1.0))
        self.assertEqual(solution.col_strategy, (0.0, 1.0))
        self.assertIsNone(pure_saddle_point(numpy.array([[1., -1.],
            [-1., 1.]])))

    def test_empty(self):
        with self.assertRaises(MatrixGameError) as context:
            MatrixGame(numpy.zeros((0, 3)))
        self.assertEqual(context.exception.shape, (0, 3))

class MatrixGameTestOracle(unittest.TestCase):
    def test(self):
        random = numpy.random.RandomState(20240501)
        for _ in range(200):
            rows, cols = random.randint(1, 7, size=2)
            payoff   = random.randint(-10, 11, size=(rows, cols)).astype(float)
            solution = solve_matrix_game(MatrixGame(payoff))

            self.assertAlmostEqual(solution.value,
                support_enumeration(payoff), delta=1e-6)

            row_mix = numpy.array(solution.row_strategy)
            col_mix = numpy.array(solution.col_strategy)
            self.assertAlmostEqual(row_mix.sum(), 1.0, delta=1e-9)
            self.assertAlmostEqual(col_mix.sum(), 1.0, delta=1e-9)
            # each side's mix guarantees the value against everything
            self.assertGreaterEqual((row_mix @ payoff).min(),
                solution.value-1e-6)
            self.assertLessEqual((payoff @ col_mix).max(),
                solution.value+1e-6)
