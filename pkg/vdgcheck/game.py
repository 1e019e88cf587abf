import math
from dataclasses import dataclass
from itertools   import product
from typing      import Iterator, List, Sequence, Tuple

from .errors import ParamsError
from .params import GameParams

# float products such as -0.014*500 land a hair under the integer they
# stand for; floors are taken with this much slack
FLOOR_EPSILON = 1e-9
REWARD_TOLERANCE = 1e-9

def _floor(value: float) -> int:
    return math.floor(value + FLOOR_EPSILON)

@dataclass(frozen=True, order=True)
class GameState(object):
    k: int
    c: Tuple[int, ...]

    def __str__(self) -> str:
        resources = ",".join(str(c_i) for c_i in self.c)
        return f"(k={self.k} c={resources})"

    def is_terminal(self, params: GameParams) -> bool:
        return self.k > params.k_max

@dataclass(frozen=True)
class JointAction(object):
    choice: Tuple[int, ...]

    def validate(self, params: GameParams):
        if not len(self.choice) == params.n:
            raise ParamsError(f"joint action {self.choice} has "
                f"{len(self.choice)} choices for {params.n} players")
        for index in self.choice:
            if not 0 <= index < len(params.fractions):
                raise ParamsError(f"action index {index} out of range for "
                    f"{len(params.fractions)} fractions")

    def index(self, params: GameParams) -> int:
        radix = len(params.fractions)
        index = 0
        for choice in self.choice:
            index = index*radix + choice
        return index

    @staticmethod
    def from_index(index: int, params: GameParams) -> "JointAction":
        radix  = len(params.fractions)
        choice: List[int] = []
        for _ in range(params.n):
            index, digit = divmod(index, radix)
            choice.append(digit)
        return JointAction(tuple(reversed(choice)))

    def names(self, params: GameParams) -> List[str]:
        return [action_name(params.fractions[i]) for i in self.choice]

@dataclass(frozen=True)
class RoundOutcome(object):
    donations:        Tuple[int, ...]
    total_donated:    int
    won:              bool
    per_agent_reward: float
    next_resources:   Tuple[int, ...]

def action_name(fraction: float) -> str:
    return f"a{round(fraction*100)}"

def initial_state(params: GameParams) -> GameState:
    return GameState(1, (params.r_init,)*params.n)

def joint_actions(params: GameParams) -> Iterator[JointAction]:
    # lexicographic, player 1 most significant; matches JointAction.index
    for choice in product(range(len(params.fractions)), repeat=params.n):
        yield JointAction(choice)

def donation_amount(c_i: int, fraction: float) -> int:
    return min(c_i, _floor(fraction*c_i))

def round_reward(total_donated: int, params: GameParams) -> float:
    if total_donated < params.r_needed:
        return 0.0

    pot = params.r_needed*params.f
    if total_donated == params.r_needed:
        return pot/params.n
    else:
        excess = total_donated-params.r_needed
        return (params.decay_slope*excess + pot)/params.n

def aggregate_reward(per_agent_reward: float, n: int) -> float:
    return n*per_agent_reward

def donations(c: Sequence[int],
        action: JointAction,
        params: GameParams) -> Tuple[int, ...]:
    return tuple(donation_amount(c_i, params.fractions[choice])
        for c_i, choice in zip(c, action.choice))

def apply_round(
        state:  GameState,
        action: JointAction,
        params: GameParams
        ) -> RoundOutcome:
    if state.is_terminal(params):
        raise ParamsError(f"state {state} is terminal "
            f"(k_max={params.k_max})")
    action.validate(params)

    donated   = donations(state.c, action, params)
    total     = sum(donated)
    per_agent = round_reward(total, params)
    # the group reward is shared back out evenly
    share     = aggregate_reward(per_agent, params.n)/params.n

    next_resources = tuple(
        max(0, min(params.r_max, _floor((c_i-s_i) + share)))
        for c_i, s_i in zip(state.c, donated))

    return RoundOutcome(
        donations        =donated,
        total_donated    =total,
        won              =total >= params.r_needed,
        per_agent_reward =per_agent,
        next_resources   =next_resources)

def successor(state: GameState, outcome: RoundOutcome) -> GameState:
    return GameState(state.k+1, outcome.next_resources)
