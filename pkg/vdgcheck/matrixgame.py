import logging
from dataclasses import dataclass, field
from typing      import List, NamedTuple, Optional, Tuple

import numpy

from .errors import MatrixGameError

log = logging.getLogger(__name__)

PIVOT_EPSILON    = 1e-12
DUALITY_TOLERANCE = 1e-6
MAX_PIVOTS       = 10_000

@dataclass
class MatrixGame(object):
    payoff: numpy.ndarray
    # joint action indices behind each row and column, when known
    rows:   Tuple[int, ...] = field(default=())
    cols:   Tuple[int, ...] = field(default=())

    def __post_init__(self):
        self.payoff = numpy.asarray(self.payoff, dtype=numpy.float64)
        if not self.payoff.ndim == 2 or 0 in self.payoff.shape:
            shape = (tuple(self.payoff.shape) + (0, 0))[:2]
            raise MatrixGameError("payoff matrix must be a non-empty "
                "rectangle", shape) # type: ignore

    @property
    def shape(self) -> Tuple[int, int]:
        return self.payoff.shape # type: ignore

class MatrixGameSolution(NamedTuple):
    value:        float
    row_strategy: Tuple[float, ...]
    col_strategy: Tuple[float, ...]

def _pure(size: int, index: int) -> Tuple[float, ...]:
    return tuple(1.0 if i == index else 0.0 for i in range(size))

def pure_saddle_point(payoff: numpy.ndarray) -> Optional[MatrixGameSolution]:
    row_mins = payoff.min(axis=1)
    col_maxs = payoff.max(axis=0)
    maximin  = row_mins.max()
    minimax  = col_maxs.min()
    if not maximin == minimax:
        return None

    rows, cols = payoff.shape
    return MatrixGameSolution(float(maximin),
        _pure(rows, int(numpy.argmax(row_mins))),
        _pure(cols, int(numpy.argmin(col_maxs))))

class SimplexTableau(object):
    """
    maximise sum(y) subject to A y <= 1, y >= 0, for A > 0. The slack
    basis is feasible from the start so no first phase is needed, and
    the optimal objective row carries the dual solution.
    """
    def __init__(self, a: numpy.ndarray):
        m, n = a.shape
        self.m, self.n = m, n
        self.table = numpy.zeros((m+1, n+m+1))
        self.table[:m, :n]    = a
        self.table[:m, n:n+m] = numpy.eye(m)
        self.table[:m, -1]    = 1.0
        self.table[m, :n]     = -1.0
        self.basis: List[int] = [n+i for i in range(m)]

    def _entering(self) -> Optional[int]:
        # Bland: lowest index with a negative reduced cost
        for j in range(self.n+self.m):
            if self.table[self.m, j] < -PIVOT_EPSILON:
                return j
        return None

    def _leaving(self, j: int) -> Optional[int]:
        column = self.table[:self.m, j]
        rows   = [i for i in range(self.m) if column[i] > PIVOT_EPSILON]
        if not rows:
            return None
        ratios = {i: self.table[i, -1]/column[i] for i in rows}
        best   = min(ratios.values())
        # ties go to the lowest basic variable
        return min((i for i in rows if ratios[i] <= best+PIVOT_EPSILON),
            key=lambda i: self.basis[i])

    def _pivot(self, i: int, j: int):
        table = self.table
        table[i] /= table[i, j]
        for r in range(self.m+1):
            if not r == i and not table[r, j] == 0.0:
                table[r] -= table[r, j]*table[i]
        self.basis[i] = j

    def solve(self) -> Tuple[numpy.ndarray, numpy.ndarray, float]:
        for _ in range(MAX_PIVOTS):
            j = self._entering()
            if j is None:
                break
            i = self._leaving(j)
            if i is None:
                raise MatrixGameError("linear program is unbounded",
                    (self.m, self.n))
            self._pivot(i, j)
        else:
            raise MatrixGameError(f"no optimum after {MAX_PIVOTS} pivots",
                (self.m, self.n))

        primal = numpy.zeros(self.n)
        for i, variable in enumerate(self.basis):
            if variable < self.n:
                primal[variable] = self.table[i, -1]
        dual = self.table[self.m, self.n:self.n+self.m].copy()
        return primal, dual, float(self.table[self.m, -1])

def _normalise(weights: numpy.ndarray) -> Tuple[float, ...]:
    weights = numpy.clip(weights, 0.0, None)
    return tuple(float(w) for w in weights/weights.sum())

def solve_matrix_game(game: MatrixGame) -> MatrixGameSolution:
    payoff = game.payoff
    rows, cols = payoff.shape
    low, high  = float(payoff.min()), float(payoff.max())
    if high-low <= PIVOT_EPSILON*max(1.0, abs(high)):
        return MatrixGameSolution(low, _pure(rows, 0), _pure(cols, 0))

    # shift into [1, 2] so the game value is positive and well scaled
    span   = high-low
    scaled = (payoff-low)/span + 1.0

    tableau = SimplexTableau(scaled)
    col_weights, row_weights, objective = tableau.solve()

    row_total = float(row_weights.sum())
    col_total = float(col_weights.sum())
    if (not objective > 0 or
            abs(row_total-col_total) > DUALITY_TOLERANCE*max(1.0, objective)):
        raise MatrixGameError(f"primal {col_total} and dual {row_total} "
            "optima disagree", (rows, cols))

    value = (1.0/objective - 1.0)*span + low
    log.debug("solved %dx%d game: value %f", rows, cols, value)
    return MatrixGameSolution(value,
        _normalise(row_weights), _normalise(col_weights))
