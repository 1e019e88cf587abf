from typing import List, Optional, Set, Tuple

from ..errors     import (PropertySemanticError, PropertySyntaxError,
    UnsupportedOperatorError)
from ..interface  import IQuery, IStatePredicate
from ..params     import GameParams
from .ast         import (Coalition, Eventually, ProbBound, ProbOptimum,
    PropertyAst, RewardExpr, RewardOptimum)
from .labels      import LabelTable
from .lexer       import END, NAME, NUMBER, STRING, Token, tokenise
from .predicates  import (RELATIONS, FALSE, TRUE, Comparison, Conjunction,
    Disjunction, LinearExpr, Negation)

MAX_COALITION_BLOCKS = 2
UNSUPPORTED_OPERATORS = {"G", "U", "X", "W"}
OPTIMA = {"max", "min"}

class Parser(object):
    def __init__(self, text: str, params: GameParams):
        self._tokens    = tokenise(text)
        self._i         = 0
        self._params    = params
        self._constants = params.constants()
        self._labels    = LabelTable(params)
        self._seen_players: Set[int] = set()

    def _peek(self, offset: int=0) -> Token:
        return self._tokens[min(self._i+offset, len(self._tokens)-1)]

    def _next(self) -> Token:
        token = self._peek()
        self._i += 1
        return token

    def _at(self, kind: str, text: Optional[str]=None) -> bool:
        token = self._peek()
        return token.kind == kind and (text is None or token.text == text)

    def _expected(self, what: str) -> PropertySyntaxError:
        token = self._peek()
        if token.kind == NAME and token.text in UNSUPPORTED_OPERATORS:
            return UnsupportedOperatorError(
                f"unsupported operator {token.text!r} (only F is "
                "supported)", token.position)
        got = "end of input" if token.kind == END else repr(token.text)
        return PropertySyntaxError(f"expected {what}, got {got}",
            token.position)

    def _expect(self, kind: str, text: Optional[str]=None) -> Token:
        if not self._at(kind, text):
            raise self._expected(repr(text or kind))
        return self._next()

    def _integer(self, token: Token) -> int:
        if not token.text.isdigit():
            raise PropertySyntaxError(
                f"expected an integer, got {token.text!r}", token.position)
        return int(token.text)

    def parse(self) -> PropertyAst:
        if self._at(END):
            raise PropertySyntaxError("empty property", 0)

        coalition = self._coalition()
        query, path = self._query()
        self._expect(END)
        return PropertyAst(coalition, query, path, self._params.n)

    def _coalition(self) -> Coalition:
        self._expect("<<")
        blocks: List[Tuple[int, ...]] = [self._block()]
        separators: List[Token] = []
        while self._at(":"):
            separators.append(self._next())
            blocks.append(self._block())
        self._expect(">>")

        if len(blocks) > MAX_COALITION_BLOCKS:
            raise PropertySemanticError(
                f"more than {MAX_COALITION_BLOCKS} coalition blocks",
                separators[MAX_COALITION_BLOCKS-1].position)
        return Coalition(tuple(blocks))

    def _block(self) -> Tuple[int, ...]:
        players = [self._player()]
        while self._at(","):
            self._next()
            players.append(self._player())
        return tuple(players)

    def _player(self) -> int:
        token = self._peek()
        if (not token.kind == NAME or
                not token.text.startswith("p") or
                not token.text[1:].isdigit()):
            raise self._expected("a player such as 'p1'")
        self._next()

        player = int(token.text[1:])
        if not 1 <= player <= self._params.n:
            raise PropertySemanticError(f"unknown player {token.text!r} "
                f"({self._params.n} players)", token.position)

        if player-1 in self._seen_players:
            raise PropertySemanticError(
                f"player {token.text!r} named twice", token.position)
        self._seen_players.add(player-1)
        return player-1

    def _query(self) -> Tuple[IQuery, Eventually]:
        token = self._peek()
        if token.kind == NAME and token.text == "P":
            self._next()
            if not self._peek().kind in RELATIONS:
                raise self._expected("a relation after 'P'")
            relation = self._next().kind
            threshold_token = self._expect(NUMBER)
            threshold = float(threshold_token.text)
            if not 0.0 <= threshold <= 1.0:
                raise PropertySemanticError(
                    f"probability bound {threshold} outside [0, 1]",
                    threshold_token.position)
            return ProbBound(relation, threshold), self._bracketed_path()

        elif token.kind == NAME and token.text in ["Pmax", "Pmin"]:
            self._next()
            self._expect("=?")
            return ProbOptimum(token.text[1:]), self._bracketed_path()

        elif token.kind == NAME and token.text == "R":
            label, weights = self._reward_label()
            optimum = self._optimum()
            reward  = RewardExpr((label,), weights, self._params.r_init)
            return RewardOptimum(optimum, reward), self._bracketed_path()

        elif token.kind == NAME and token.text in OPTIMA:
            return self._reward_sum()

        raise self._expected("'P', 'Pmax=?', 'Pmin=?' or 'R{...}'")

    def _optimum(self) -> str:
        token = self._peek()
        if not token.kind == NAME or not token.text in OPTIMA:
            raise self._expected("'max=?' or 'min=?'")
        self._next()
        self._expect("=?")
        return token.text

    def _reward_label(self) -> Tuple[str, Tuple[int, ...]]:
        self._expect(NAME, "R")
        self._expect("{")
        token = self._expect(STRING)
        self._expect("}")

        weights = self._labels.reward_weights(token.text)
        if weights is None:
            raise PropertySemanticError(
                f"unknown reward label {token.text!r}", token.position)
        return token.text, weights

    def _reward_sum(self) -> Tuple[IQuery, Eventually]:
        # max=? ( R{"a"}[ F ... ] + R{"b"}[ F ... ] )
        optimum = self._optimum()
        self._expect("(")

        labels: List[str] = []
        weights = [0]*self._params.n
        path: Optional[Eventually] = None
        while True:
            position = self._peek().position
            label, label_weights = self._reward_label()
            term_path = self._bracketed_path()
            if path is not None and not term_path == path:
                raise PropertySemanticError("summed rewards must share "
                    "one path formula", position)
            path = term_path

            labels.append(label)
            weights = [w+lw for w, lw in zip(weights, label_weights)]
            if not self._at("+"):
                break
            self._next()
        self._expect(")")

        reward = RewardExpr(tuple(labels), tuple(weights),
            self._params.r_init)
        return RewardOptimum(optimum, reward), path # type: ignore

    def _bracketed_path(self) -> Eventually:
        self._expect("[")
        path = self._path()
        self._expect("]")
        return path

    def _path(self) -> Eventually:
        token = self._peek()
        if not (token.kind == NAME and token.text == "F"):
            raise self._expected("'F'")
        self._next()

        bound: Optional[int] = None
        if self._at("<="):
            self._next()
            bound_token = self._peek()
            bound = self._bound()
            if bound < 1:
                raise PropertySemanticError(
                    f"step bound {bound} must be positive",
                    bound_token.position)
        return Eventually(self._disjunction(), bound)

    def _bound(self) -> int:
        token = self._next()
        if token.kind == NUMBER:
            return self._integer(token)
        elif token.kind == NAME and token.text in self._constants:
            value = self._constants[token.text]
            if self._at("+") or self._at("-"):
                sign = 1 if self._next().kind == "+" else -1
                value += sign*self._integer(self._expect(NUMBER))
            return value
        self._i -= 1
        raise self._expected("an integer step bound")

    def _disjunction(self) -> IStatePredicate:
        operands = [self._conjunction()]
        while self._at("|"):
            self._next()
            operands.append(self._conjunction())
        return operands[0] if len(operands) == 1 else Disjunction(
            tuple(operands))

    def _conjunction(self) -> IStatePredicate:
        operands = [self._unary()]
        while self._at("&"):
            self._next()
            operands.append(self._unary())
        return operands[0] if len(operands) == 1 else Conjunction(
            tuple(operands))

    def _unary(self) -> IStatePredicate:
        if self._at("!"):
            self._next()
            return Negation(self._unary())
        return self._primary()

    def _primary(self) -> IStatePredicate:
        token = self._peek()
        if token.kind == "(":
            self._next()
            inner = self._disjunction()
            self._expect(")")
            return inner
        elif token.kind == STRING:
            self._next()
            label = self._labels.state_label(token.text)
            if label is None:
                raise PropertySemanticError(
                    f"unknown state label {token.text!r}", token.position)
            return label
        elif token.kind == NAME and token.text in ["true", "false"]:
            self._next()
            return TRUE if token.text == "true" else FALSE

        left = self._linear()
        if not self._peek().kind in RELATIONS:
            raise self._expected("a comparison")
        relation = self._next().kind
        right = self._linear()
        return Comparison(left, relation, right)

    def _linear(self) -> LinearExpr:
        terms: List[Tuple[int, int]] = []
        constant = 0

        sign = 1
        if self._at("-"):
            self._next()
            sign = -1
        while True:
            variable, coefficient = self._term()
            if variable is None:
                constant += sign*coefficient
            else:
                terms.append((variable, sign*coefficient))

            if self._at("+"):
                sign = 1
            elif self._at("-"):
                sign = -1
            else:
                break
            self._next()
        return LinearExpr.of(terms, constant)

    def _term(self) -> Tuple[Optional[int], int]:
        # (variable index or None for a constant, coefficient)
        token = self._peek()
        if token.kind == NUMBER:
            self._next()
            coefficient = self._integer(token)
            if not self._at("*"):
                return None, coefficient
            self._next()
            variable, inner = self._atom()
            return variable, coefficient*inner
        return self._atom()

    def _atom(self) -> Tuple[Optional[int], int]:
        token = self._peek()
        if not token.kind == NAME:
            raise self._expected("a variable, constant or integer")
        self._next()

        if token.text == "k":
            return 0, 1
        elif token.text in self._constants:
            return None, self._constants[token.text]
        elif token.text.startswith("c") and token.text[1:].isdigit():
            player = int(token.text[1:])
            if not 1 <= player <= self._params.n:
                raise PropertySemanticError(f"unknown variable "
                    f"{token.text!r} ({self._params.n} players)",
                    token.position)
            return player, 1
        self._i -= 1
        raise self._expected("a variable, constant or integer")

def parse_property(text: str, params: GameParams) -> PropertyAst:
    return Parser(text, params).parse()
