from dataclasses import dataclass
from typing      import Optional, Tuple

from ..game      import GameState
from ..interface import IQuery, IStatePredicate

@dataclass(frozen=True)
class Coalition(object):
    # 0-based player indices; the first block is the proponent
    blocks: Tuple[Tuple[int, ...], ...]

    def __str__(self) -> str:
        blocks = ":".join(",".join(f"p{player+1}" for player in block)
            for block in self.blocks)
        return f"<<{blocks}>>"

    def proponents(self) -> Tuple[int, ...]:
        return tuple(sorted(self.blocks[0]))

    def opponents(self, players: int) -> Tuple[int, ...]:
        # anyone outside the first block plays against it
        ours = set(self.blocks[0])
        return tuple(p for p in range(players) if p not in ours)

@dataclass(frozen=True)
class RewardExpr(object):
    labels:  Tuple[str, ...]
    weights: Tuple[int, ...]
    r_init:  int

    def evaluate(self, state: GameState) -> float:
        return float(sum(weight*(c_i-self.r_init)
            for weight, c_i in zip(self.weights, state.c)))

@dataclass(frozen=True)
class ProbBound(IQuery):
    relation:  str
    threshold: float

    def direction(self) -> str:
        return "min" if self.relation in ["<", "<="] else "max"
    def is_probability(self) -> bool:
        return True
    def __str__(self) -> str:
        return f"P{self.relation}{self.threshold!r}"

@dataclass(frozen=True)
class ProbOptimum(IQuery):
    optimum: str

    def direction(self) -> str:
        return self.optimum
    def is_probability(self) -> bool:
        return True
    def __str__(self) -> str:
        return f"P{self.optimum}=?"

@dataclass(frozen=True)
class RewardOptimum(IQuery):
    optimum: str
    reward:  RewardExpr

    def direction(self) -> str:
        return self.optimum
    def is_probability(self) -> bool:
        return False
    def __str__(self) -> str:
        return f'R{{"{self.reward.labels[0]}"}}{self.optimum}=?'

@dataclass(frozen=True)
class Eventually(object):
    target: IStatePredicate
    bound:  Optional[int] = None

    def __str__(self) -> str:
        if self.bound is None:
            return f"F {self.target}"
        return f"F<={self.bound} {self.target}"

@dataclass(frozen=True)
class PropertyAst(object):
    coalition: Coalition
    query:     IQuery
    path:      Eventually
    players:   int

    def is_cooperative(self) -> bool:
        return not self.coalition.opponents(self.players)

    def __str__(self) -> str:
        return format_property(self)

def format_property(ast: PropertyAst) -> str:
    query = ast.query
    if (isinstance(query, RewardOptimum) and
            len(query.reward.labels) > 1):
        terms = " + ".join(f'R{{"{label}"}}[ {ast.path} ]'
            for label in query.reward.labels)
        return f"{ast.coalition} {query.optimum}=? ( {terms} )"
    return f"{ast.coalition} {query} [ {ast.path} ]"
