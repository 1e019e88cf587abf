from dataclasses import dataclass
from operator    import eq, ge, gt, le, lt
from typing      import Callable, Dict, Iterable, Tuple

from ..game      import GameState
from ..interface import IStatePredicate

RELATIONS: Dict[str, Callable[[int, int], bool]] = {
    "<":  lt,
    "<=": le,
    "=":  eq,
    ">=": ge,
    ">":  gt
}

def variable_name(index: int) -> str:
    return "k" if index == 0 else f"c{index}"

def variable_value(index: int, state: GameState) -> int:
    return state.k if index == 0 else state.c[index-1]

@dataclass(frozen=True)
class LinearExpr(object):
    # (variable index, coefficient), sorted, no zero coefficients.
    # variable 0 is k, variable i is c_i
    terms:    Tuple[Tuple[int, int], ...] = ()
    constant: int = 0

    @staticmethod
    def of(terms: Iterable[Tuple[int, int]], constant: int=0
            ) -> "LinearExpr":
        merged: Dict[int, int] = {}
        for variable, coefficient in terms:
            merged[variable] = merged.get(variable, 0) + coefficient
        return LinearExpr(
            tuple(sorted((v, c) for v, c in merged.items() if c != 0)),
            constant)

    @staticmethod
    def variable(index: int) -> "LinearExpr":
        return LinearExpr(((index, 1),))

    def variables(self) -> Tuple[int, ...]:
        return tuple(variable for variable, _ in self.terms)

    def evaluate(self, state: GameState) -> int:
        return self.constant + sum(coefficient*variable_value(v, state)
            for v, coefficient in self.terms)

    def __str__(self) -> str:
        parts = []
        for variable, coefficient in self.terms:
            name = variable_name(variable)
            if abs(coefficient) != 1:
                name = f"{abs(coefficient)}*{name}"
            parts.append(("-" if coefficient < 0 else "+", name))
        if self.constant or not parts:
            parts.append(("-" if self.constant < 0 else "+",
                str(abs(self.constant))))

        sign, first = parts[0]
        out = f"-{first}" if sign == "-" else first
        for sign, part in parts[1:]:
            out += f" {sign} {part}"
        return out

@dataclass(frozen=True)
class Comparison(IStatePredicate):
    left:     LinearExpr
    relation: str
    right:    LinearExpr

    def evaluate(self, state: GameState) -> bool:
        return RELATIONS[self.relation](
            self.left.evaluate(state), self.right.evaluate(state))
    def __str__(self) -> str:
        return f"{self.left} {self.relation} {self.right}"

@dataclass(frozen=True)
class BoolConstant(IStatePredicate):
    value: bool

    def evaluate(self, state: GameState) -> bool:
        return self.value
    def __str__(self) -> str:
        return "true" if self.value else "false"
TRUE  = BoolConstant(True)
FALSE = BoolConstant(False)

@dataclass(frozen=True)
class LabelRef(IStatePredicate):
    name:      str
    predicate: IStatePredicate

    def evaluate(self, state: GameState) -> bool:
        return self.predicate.evaluate(state)
    def __str__(self) -> str:
        return f'"{self.name}"'

def _operand(predicate: IStatePredicate) -> str:
    if isinstance(predicate, (BoolConstant, LabelRef)):
        return str(predicate)
    if isinstance(predicate, Comparison):
        return str(predicate)
    return f"({predicate})"

@dataclass(frozen=True)
class Negation(IStatePredicate):
    operand: IStatePredicate

    def evaluate(self, state: GameState) -> bool:
        return not self.operand.evaluate(state)
    def __str__(self) -> str:
        if isinstance(self.operand, (BoolConstant, LabelRef)):
            return f"!{self.operand}"
        return f"!({self.operand})"

@dataclass(frozen=True)
class Conjunction(IStatePredicate):
    operands: Tuple[IStatePredicate, ...]

    def evaluate(self, state: GameState) -> bool:
        return all(operand.evaluate(state) for operand in self.operands)
    def __str__(self) -> str:
        return " & ".join(_operand(operand) for operand in self.operands)

@dataclass(frozen=True)
class Disjunction(IStatePredicate):
    operands: Tuple[IStatePredicate, ...]

    def evaluate(self, state: GameState) -> bool:
        return any(operand.evaluate(state) for operand in self.operands)
    def __str__(self) -> str:
        return " | ".join(_operand(operand) for operand in self.operands)

def evaluate_predicate(pred: IStatePredicate, state: GameState) -> bool:
    return pred.evaluate(state)

def predicate_variables(pred: IStatePredicate) -> Tuple[int, ...]:
    if isinstance(pred, Comparison):
        return pred.left.variables() + pred.right.variables()
    elif isinstance(pred, LabelRef):
        return predicate_variables(pred.predicate)
    elif isinstance(pred, Negation):
        return predicate_variables(pred.operand)
    elif isinstance(pred, (Conjunction, Disjunction)):
        variables: Tuple[int, ...] = ()
        for operand in pred.operands:
            variables += predicate_variables(operand)
        return variables
    return ()
