import logging, time
from dataclasses import dataclass
from itertools   import product
from typing      import Dict, FrozenSet, List, Optional, Tuple

import numpy

from .contexts   import ModelContext
from .errors     import CheckError
from .game       import JointAction
from .logic      import ProbBound, PropertyAst, RewardOptimum
from .logic.predicates import predicate_variables
from .matrixgame import (MatrixGame, MatrixGameSolution, pure_saddle_point,
    solve_matrix_game)
from .statespace import TransitionModel

log = logging.getLogger(__name__)

VALUE_TOLERANCE = 1e-9

PROBABILITY = "probability"
REWARD      = "reward"

@dataclass
class ValuationTable(object):
    values: numpy.ndarray
    kind:   str
    # stages[j] holds the values with j rounds of the bound left to play
    stages: Tuple[numpy.ndarray, ...] = ()

    def __getitem__(self, state_id: int) -> float:
        return float(self.values[state_id])

    def __len__(self) -> int:
        return len(self.values)

@dataclass
class CheckResult(object):
    prop:      PropertyAst
    value:     float
    verdict:   Optional[bool]
    valuation: ValuationTable

@dataclass
class QualClassification(object):
    yes:   FrozenSet[int]
    no:    FrozenSet[int]
    maybe: FrozenSet[int]

    @property
    def ratio(self) -> float:
        decided = len(self.yes)+len(self.no)
        return len(self.yes)/decided if decided else 0.0

    def per_round(self, model: TransitionModel) -> List[Tuple[int, int, int]]:
        rows: List[Tuple[int, int, int]] = []
        for level in model.levels:
            ids = set(level)
            rows.append((len(ids & self.yes), len(ids & self.no),
                len(ids & self.maybe)))
        return rows

def compare(value: float, relation: str, threshold: float) -> bool:
    if relation == ">=":
        return value >= threshold-VALUE_TOLERANCE
    elif relation == ">":
        return value > threshold+VALUE_TOLERANCE
    elif relation == "<=":
        return value <= threshold+VALUE_TOLERANCE
    elif relation == "<":
        return value < threshold-VALUE_TOLERANCE
    return abs(value-threshold) <= VALUE_TOLERANCE

class CoalitionSplit(object):
    """
    joint actions regrouped as a matrix: rows are the proponents' joint
    choices, columns the opponents', both in lexicographic order
    """
    def __init__(self, model: TransitionModel, prop: PropertyAst):
        params = model.params
        self.proponents = prop.coalition.proponents()
        self.opponents  = prop.coalition.opponents(params.n)

        choices = range(len(params.fractions))
        self.row_choices = list(product(choices,
            repeat=len(self.proponents)))
        self.col_choices = list(product(choices,
            repeat=len(self.opponents)))

        self.combine = numpy.zeros(
            (len(self.row_choices), len(self.col_choices)), numpy.int64)
        for r, row in enumerate(self.row_choices):
            for c, col in enumerate(self.col_choices):
                self.combine[r, c] = self.joint(row, col).index(params)

    def joint(self, row: Tuple[int, ...], col: Tuple[int, ...]
            ) -> JointAction:
        choice: Dict[int, int] = dict(zip(self.proponents, row))
        choice.update(zip(self.opponents, col))
        return JointAction(tuple(choice[p] for p in sorted(choice)))

def _validate(model: TransitionModel, prop: PropertyAst):
    params = model.params
    if not prop.players == params.n:
        raise CheckError(f"property was parsed for {prop.players} players, "
            f"model has {params.n}")
    query = prop.query
    if (isinstance(query, RewardOptimum) and
            not query.reward.r_init == params.r_init):
        raise CheckError(f"reward labels were resolved for r_init="
            f"{query.reward.r_init}, model has r_init={params.r_init}")
    for variable in predicate_variables(prop.path.target):
        if variable > params.n:
            raise CheckError(f"predicate mentions c{variable}, model has "
                f"{params.n} players")

class Verifier(ModelContext):
    def __init__(self, model: TransitionModel, prop: PropertyAst,
            direction: Optional[str]=None):
        super().__init__(model)
        _validate(model, prop)
        self.prop      = prop
        self.direction = direction or prop.query.direction()
        self.kind      = PROBABILITY if prop.query.is_probability() else REWARD

        params = model.params
        bound  = prop.path.bound
        if bound is not None and bound > params.k_max+1:
            log.warning("step bound %d exceeds the horizon, clamped to %d",
                bound, params.k_max+1)
            bound = params.k_max+1
        # bounds count rounds including the current one
        self.steps = params.k_max if bound is None else bound-1

        target = prop.path.target
        self.target = numpy.array(
            [target.evaluate(state) for state in model.states], bool)
        if isinstance(prop.query, RewardOptimum):
            reward = prop.query.reward
            self.target_value = numpy.array(
                [reward.evaluate(state) for state in model.states])
        else:
            self.target_value = numpy.ones(len(model))

        self.depth = numpy.array(
            [model.depth(i) for i in range(model.first_terminal)],
            numpy.int64)
        self.split: Optional[CoalitionSplit] = None
        if not prop.is_cooperative():
            self.split = CoalitionSplit(model, prop)

    def stage_zero(self) -> numpy.ndarray:
        return numpy.where(self.target, self.target_value, 0.0)

    def game_at(self, state_id: int, previous: numpy.ndarray
            ) -> MatrixGame:
        split = self.split
        assert split is not None
        payoff = previous[self.model.successors[state_id]][split.combine]
        return MatrixGame(payoff,
            tuple(range(len(split.row_choices))),
            tuple(range(len(split.col_choices))))

    def solve_game(self, game: MatrixGame) -> MatrixGameSolution:
        # the row player is always the proponent; minimising is maximising
        # the negated game
        payoff = game.payoff if self.direction == "max" else -game.payoff
        solution = pure_saddle_point(payoff)
        if solution is None:
            solution = solve_matrix_game(MatrixGame(payoff))
        if self.direction == "max":
            return solution
        return MatrixGameSolution(-solution.value,
            solution.row_strategy, solution.col_strategy)

    def _stage(self, j: int, previous: numpy.ndarray) -> numpy.ndarray:
        model   = self.model
        current = previous.copy()
        first_terminal = model.first_terminal
        active  = (self.depth >= j) & ~self.target[:first_terminal]

        if self.split is None:
            candidates = previous[model.successors]
            if self.direction == "max":
                best = candidates.max(axis=1)
            else:
                best = candidates.min(axis=1)
            current[:first_terminal][active] = best[active]
        else:
            for state_id in numpy.flatnonzero(active):
                game = self.game_at(int(state_id), previous)
                current[state_id] = self.solve_game(game).value
        return current

    def run(self) -> CheckResult:
        started = time.monotonic()
        stages  = [self.stage_zero()]
        for j in range(1, self.steps+1):
            stages.append(self._stage(j, stages[-1]))

        values = stages[-1]
        if self.kind == PROBABILITY:
            values = numpy.clip(values, 0.0, 1.0)
        valuation = ValuationTable(values, self.kind, tuple(stages))

        value   = float(values[self.model.initial_id])
        verdict: Optional[bool] = None
        query   = self.prop.query
        if isinstance(query, ProbBound):
            if query.relation == "=" and self.direction == "max":
                # P=p holds when p lies between the minimum and maximum
                low = Verifier(self.model, self.prop, "min").run().value
                verdict = (compare(low, "<=", query.threshold) and
                    compare(value, ">=", query.threshold))
            else:
                verdict = compare(value, query.relation, query.threshold)

        log.debug("checked %s over %d states in %.3fs", self.prop,
            len(self.model), time.monotonic()-started)
        return CheckResult(self.prop, value, verdict, valuation)

def check(model: TransitionModel, prop: PropertyAst) -> CheckResult:
    return Verifier(model, prop).run()

def classify_states(model: TransitionModel, prop: PropertyAst
        ) -> QualClassification:
    if not prop.query.is_probability():
        raise CheckError("Y/N/M classification needs a probability query")

    values = check(model, prop).valuation.values
    yes   = frozenset(int(i) for i in
        numpy.flatnonzero(values >= 1.0-VALUE_TOLERANCE))
    no    = frozenset(int(i) for i in
        numpy.flatnonzero(values <= VALUE_TOLERANCE))
    maybe = frozenset(range(len(model))) - yes - no
    return QualClassification(yes, no, maybe)
