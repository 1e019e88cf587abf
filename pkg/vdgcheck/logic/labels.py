from re     import compile as re_compile
from typing import Dict, Optional, Tuple

from ..interface import IStatePredicate
from ..params    import GameParams
from .predicates import Comparison, Conjunction, LabelRef, LinearExpr

RE_PLAYER_REWARD = re_compile(r"^r([1-9][0-9]*)$")
RE_GROUP_REWARD  = re_compile(r"^done([1-9]+)$")

def good_predicate(params: GameParams) -> Comparison:
    # the group holds more than two rounds' worth of the threshold
    total = LinearExpr.of((i, 1) for i in range(1, params.n+1))
    return Comparison(total, ">", LinearExpr(constant=2*params.r_needed))

def init_predicate(params: GameParams) -> Conjunction:
    return Conjunction(
        (Comparison(LinearExpr.variable(0), "=", LinearExpr(constant=1)),) +
        tuple(Comparison(LinearExpr.variable(i), "=",
            LinearExpr(constant=params.r_init))
            for i in range(1, params.n+1)))

class LabelTable(object):
    def __init__(self, params: GameParams):
        self._params = params
        self._states: Dict[str, IStatePredicate] = {
            "good": good_predicate(params),
            "init": init_predicate(params)
        }

    def state_label(self, name: str) -> Optional[LabelRef]:
        if name in self._states:
            return LabelRef(name, self._states[name])
        return None

    def reward_weights(self, name: str) -> Optional[Tuple[int, ...]]:
        n = self._params.n
        players: Tuple[int, ...]

        match = RE_PLAYER_REWARD.match(name)
        if match is not None:
            players = (int(match.group(1)),)
        else:
            match = RE_GROUP_REWARD.match(name)
            if match is None:
                return None
            digits  = match.group(1)
            players = tuple(int(d) for d in digits)
            if not len(set(players)) == len(players):
                return None

        if not all(1 <= player <= n for player in players):
            return None
        return tuple(1 if i+1 in players else 0 for i in range(n))
