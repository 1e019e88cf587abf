import logging, math, time
from dataclasses import dataclass
from typing      import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy

from .errors import ModelInvariantError, StateCapError
from .game   import (GameState, JointAction, RoundOutcome, apply_round,
    initial_state, joint_actions, successor)
from .params import GameParams

log = logging.getLogger(__name__)

DEFAULT_STATE_CAP  = 5_000_000
# |S| ~ 1.6978 e^(3.0479 k) measured on the 3 player, 3 fraction game
GROWTH_COEFFICIENT = 1.6978
GROWTH_RATE        = 3.0479

class TransitionModel(object):
    def __init__(self,
            params:     GameParams,
            states:     Sequence[GameState],
            successors: numpy.ndarray,
            rewards:    numpy.ndarray):
        self.params = params
        self.states: Tuple[GameState, ...] = tuple(states)
        self.index:  Dict[GameState, int]  = {
            state: i for i, state in enumerate(self.states)}

        # row i holds the transitions of state i; terminals have no row
        self.successors = successors
        self.rewards    = rewards
        self.successors.flags.writeable = False
        self.rewards.flags.writeable    = False

        self.levels: List[range] = []
        start = 0
        for k in range(1, params.k_max+2):
            end = start
            while end < len(self.states) and self.states[end].k == k:
                end += 1
            self.levels.append(range(start, end))
            start = end

        self.first_terminal = self.levels[-1].start
        self.validate()

    def __len__(self) -> int:
        return len(self.states)

    @property
    def terminal_ids(self) -> range:
        return range(self.first_terminal, len(self.states))

    @property
    def initial_id(self) -> int:
        return 0

    def level(self, k: int) -> range:
        return self.levels[k-1]

    def is_terminal(self, state_id: int) -> bool:
        return state_id >= self.first_terminal

    def depth(self, state_id: int) -> int:
        # rounds left to play from this state
        return self.params.k_max+1 - self.states[state_id].k

    def successor(self, state_id: int, action: JointAction) -> int:
        return int(self.successors[state_id, action.index(self.params)])

    def outcome(self, state_id: int, action: JointAction) -> RoundOutcome:
        return apply_round(self.states[state_id], action, self.params)

    def transitions(self) -> Iterator[Tuple[int, JointAction, int, float]]:
        actions = list(joint_actions(self.params))
        for src in range(self.first_terminal):
            for a, action in enumerate(actions):
                yield (src, action, int(self.successors[src, a]),
                    float(self.rewards[src, a]))

    def validate(self):
        params = self.params
        if not self.states or self.states[0] != initial_state(params):
            raise ModelInvariantError("first state is not the initial "
                "state", 0)

        for state_id, state in enumerate(self.states):
            if not 1 <= state.k <= params.k_max+1:
                raise ModelInvariantError(f"round {state.k} outside "
                    f"1..{params.k_max+1}", state_id)
            if (not len(state.c) == params.n or
                    not all(0 <= c_i <= params.r_max for c_i in state.c)):
                raise ModelInvariantError(f"resources {state.c} invalid",
                    state_id)
            if state_id > 0 and not self.states[state_id-1] < state:
                raise ModelInvariantError("states not in canonical order",
                    state_id)

        expected = (self.first_terminal, params.action_count)
        if (not self.successors.shape == expected or
                not self.rewards.shape == expected):
            raise ModelInvariantError("transition table has shape "
                f"{self.successors.shape}, expected {expected}",
                self.first_terminal)

        for src in range(self.first_terminal):
            k = self.states[src].k
            for dst in self.successors[src]:
                if not 0 <= dst < len(self.states):
                    raise ModelInvariantError(f"dangling successor {dst}",
                        int(dst))
                if not self.states[dst].k == k+1:
                    raise ModelInvariantError(f"successor {dst} does not "
                        "advance the round by one", src)

@dataclass
class LevelStats(object):
    per_round_state_counts: List[int]
    cumulative_count:       int
    cumulative_by_horizon:  List[int]
    fitted_log_slope:       Optional[float] = None
    fitted_coefficient:     Optional[float] = None

def projected_state_count(params: GameParams) -> Optional[int]:
    # the growth fit only describes the 3 player, 3 fraction game; other
    # shapes are held to the cap level by level while building
    if not (params.n == 3 and len(params.fractions) == 3):
        return None
    branching = sum(params.action_count**j for j in range(params.k_max+1))
    growth    = GROWTH_COEFFICIENT*math.exp(GROWTH_RATE*params.k_max)
    return int(min(branching, growth))

def build_model(
        params: GameParams,
        cap:    int=DEFAULT_STATE_CAP
        ) -> TransitionModel:
    projected = projected_state_count(params)
    if projected is not None and projected > cap:
        raise StateCapError(f"k_max={params.k_max} projects to about "
            f"{projected:,} states, over the cap of {cap:,}",
            projected, cap)

    started = time.monotonic()
    actions = list(joint_actions(params))
    states: List[GameState] = [initial_state(params)]
    level   = states[:]
    rows_successors: List[List[int]]  = []
    rows_rewards:    List[List[float]] = []

    for k in range(1, params.k_max+1):
        nexts:   List[List[GameState]] = []
        rewards: List[List[float]]     = []
        reached = set()
        for state in level:
            row_states:  List[GameState] = []
            row_rewards: List[float]     = []
            for action in actions:
                outcome = apply_round(state, action, params)
                row_states.append(successor(state, outcome))
                row_rewards.append(outcome.per_agent_reward)
            nexts.append(row_states)
            rewards.append(row_rewards)
            reached.update(row_states)

        if len(states)+len(reached) > cap:
            raise StateCapError(f"state count passed the cap of {cap:,} "
                f"while building round {k+1}", len(states)+len(reached),
                cap)

        level = sorted(reached)
        base  = len(states)
        ids   = {state: base+i for i, state in enumerate(level)}
        for row_states, row_rewards in zip(nexts, rewards):
            rows_successors.append([ids[state] for state in row_states])
            rows_rewards.append(row_rewards)
        states.extend(level)
        log.info("round %d: %d new states (%d total)",
            k+1, len(level), len(states))

    successors = numpy.array(rows_successors, dtype=numpy.int64).reshape(
        (len(rows_successors), len(actions)))
    rewards    = numpy.array(rows_rewards, dtype=numpy.float64).reshape(
        (len(rows_rewards), len(actions)))
    log.debug("built %d states in %.3fs", len(states),
        time.monotonic()-started)
    return TransitionModel(params, states, successors, rewards)

def level_stats(model: TransitionModel) -> LevelStats:
    counts = [len(level) for level in model.levels]
    by_horizon: List[int] = []
    for count in counts:
        by_horizon.append((by_horizon[-1] if by_horizon else 0) + count)

    stats = LevelStats(counts, len(model), by_horizon)
    if model.params.k_max >= 2:
        ks = numpy.arange(1, len(counts)+1, dtype=numpy.float64)
        slope, intercept = numpy.polyfit(ks, numpy.log(counts), 1)
        stats.fitted_log_slope   = float(slope)
        stats.fitted_coefficient = float(math.exp(intercept))
    return stats
