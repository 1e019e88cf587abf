import logging
from dataclasses import dataclass, field
from typing      import BinaryIO, Dict, List, Optional, Tuple

import numpy, pydot

from .contexts   import ModelContext
from .engine     import ValuationTable, Verifier
from .errors     import SynthesisError
from .game       import (GameState, JointAction, apply_round,
    donation_amount, successor)
from .interface  import IGraphExporter
from .logic      import PropertyAst, RewardOptimum
from .statespace import TransitionModel

log = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-9
# simplex round-off on payoffs in the order of r_max*n
MIXED_TOLERANCE = 1e-6
SUPPORT_EPSILON = 1e-9

@dataclass
class StrategyNode(object):
    state_id:  int
    state:     GameState
    # donation per player at this node, None where it is not fixed
    donations: Tuple[Optional[int], ...]
    leaf:      bool

    def label(self) -> str:
        fields = [str(self.state.k)]
        for c_i, s_i in zip(self.state.c, self.donations):
            fields.append(str(c_i))
            fields.append("" if s_i is None else str(s_i))
        return "[" + ", ".join(fields) + "]"

@dataclass
class StrategyEdge(object):
    src:              int
    action:           JointAction
    dst:              int
    per_agent_reward: float
    probability:      float = 1.0

@dataclass
class StrategyGraph(IGraphExporter):
    model:          TransitionModel
    cooperative:    bool
    nodes:          Dict[int, StrategyNode] = field(default_factory=dict)
    edges:          List[StrategyEdge]      = field(default_factory=list)
    achieved_value: float = 0.0

    def outgoing(self, state_id: int) -> List[StrategyEdge]:
        return [edge for edge in self.edges if edge.src == state_id]

    def export(self, destination: BinaryIO):
        export_dot(self, destination)

class Synthesizer(ModelContext):
    def __init__(self,
            model:     TransitionModel,
            prop:      PropertyAst,
            valuation: ValuationTable):
        super().__init__(model)
        self.verifier  = Verifier(model, prop)
        self.prop      = prop
        self.valuation = valuation

        if (not len(valuation) == len(model) or
                not valuation.kind == self.verifier.kind or
                not len(valuation.stages) == self.verifier.steps+1):
            raise SynthesisError("valuation was not produced for this "
                "property on this model")

    def _is_leaf(self, state_id: int, budget: int) -> bool:
        return (budget == 0 or
            self.model.is_terminal(state_id) or
            bool(self.verifier.target[state_id]))

    def _cooperative_edges(self, state_id: int, budget: int
            ) -> List[StrategyEdge]:
        previous   = self.valuation.stages[budget-1]
        candidates = previous[self.model.successors[state_id]]
        if self.verifier.direction == "max":
            chosen = int(numpy.argmax(candidates))
        else:
            chosen = int(numpy.argmin(candidates))

        action = JointAction.from_index(chosen, self.model.params)
        return [StrategyEdge(state_id, action,
            int(self.model.successors[state_id, chosen]),
            float(self.model.rewards[state_id, chosen]))]

    def _mixed_edges(self, state_id: int, budget: int
            ) -> List[StrategyEdge]:
        verifier = self.verifier
        split    = verifier.split
        assert split is not None

        game     = verifier.game_at(state_id, self.valuation.stages[budget-1])
        solution = verifier.solve_game(game)
        mix      = numpy.array(solution.row_strategy)
        expected = mix @ game.payoff

        # opponents answer with every best response to the proponents' mix
        if verifier.direction == "max":
            responses = numpy.flatnonzero(
                expected <= expected.min()+MIXED_TOLERANCE)
        else:
            responses = numpy.flatnonzero(
                expected >= expected.max()-MIXED_TOLERANCE)

        edges: List[StrategyEdge] = []
        for r in numpy.flatnonzero(mix > SUPPORT_EPSILON):
            for c in responses:
                action = split.joint(split.row_choices[r],
                    split.col_choices[c])
                a = action.index(self.model.params)
                edges.append(StrategyEdge(state_id, action,
                    int(self.model.successors[state_id, a]),
                    float(self.model.rewards[state_id, a]),
                    float(mix[r])))
        edges.sort(key=lambda e: (e.action.index(self.model.params), e.dst))
        return edges

    def _donations(self, state: GameState, edges: List[StrategyEdge]
            ) -> Tuple[Optional[int], ...]:
        fractions = self.model.params.fractions
        donations: List[Optional[int]] = []
        for player, c_i in enumerate(state.c):
            choices = set(edge.action.choice[player] for edge in edges)
            if len(choices) == 1:
                donations.append(
                    donation_amount(c_i, fractions[choices.pop()]))
            else:
                donations.append(None)
        return tuple(donations)

    def _leaf_value(self, state_id: int) -> float:
        if self.verifier.target[state_id]:
            return float(self.verifier.target_value[state_id])
        return 0.0

    def _value(self, graph: StrategyGraph, state_id: int,
            memo: Dict[int, float]) -> float:
        if state_id in memo:
            return memo[state_id]

        node = graph.nodes[state_id]
        if node.leaf:
            value = self._leaf_value(state_id)
        elif graph.cooperative:
            value = self._value(graph, graph.outgoing(state_id)[0].dst, memo)
        else:
            # expected value against each opponent column, opponents pick
            # the worst one for the proponents
            by_column: Dict[Tuple[int, ...], float] = {}
            opponents = self.verifier.split.opponents # type: ignore
            for edge in graph.outgoing(state_id):
                column = tuple(edge.action.choice[p] for p in opponents)
                by_column[column] = by_column.get(column, 0.0) + (
                    edge.probability*self._value(graph, edge.dst, memo))
            if self.verifier.direction == "max":
                value = min(by_column.values())
            else:
                value = max(by_column.values())

        memo[state_id] = value
        return value

    def run(self) -> StrategyGraph:
        model = self.model
        graph = StrategyGraph(model, self.verifier.split is None)

        pending = [(model.initial_id, self.verifier.steps)]
        while pending:
            state_id, budget = pending.pop(0)
            if state_id in graph.nodes:
                continue

            state = model.states[state_id]
            if self._is_leaf(state_id, budget):
                graph.nodes[state_id] = StrategyNode(state_id, state,
                    (None,)*model.params.n, True)
                continue

            if graph.cooperative:
                edges = self._cooperative_edges(state_id, budget)
            else:
                edges = self._mixed_edges(state_id, budget)
            graph.nodes[state_id] = StrategyNode(state_id, state,
                self._donations(state, edges), False)
            graph.edges.extend(edges)
            for edge in edges:
                pending.append((edge.dst, budget-1))

        graph.nodes = dict(sorted(graph.nodes.items()))
        graph.achieved_value = self._value(graph, model.initial_id, {})

        expected  = self.valuation[model.initial_id]
        tolerance = EXACT_TOLERANCE if graph.cooperative else (
            MIXED_TOLERANCE*max(1.0, abs(expected)))
        if abs(graph.achieved_value-expected) > tolerance:
            raise SynthesisError(f"strategy achieves {graph.achieved_value}"
                f" but the optimum is {expected}")

        log.info("synthesised %d nodes, %d edges", len(graph.nodes),
            len(graph.edges))
        return graph

def synthesize(
        model:     TransitionModel,
        prop:      PropertyAst,
        valuation: ValuationTable
        ) -> StrategyGraph:
    return Synthesizer(model, prop, valuation).run()

def replay(model: TransitionModel, prop: PropertyAst,
        graph: StrategyGraph) -> float:
    if not graph.cooperative:
        raise SynthesisError("only deterministic strategies can be replayed")

    params   = model.params
    state_id = model.initial_id
    state    = model.states[state_id]
    while True:
        edges = graph.outgoing(state_id)
        if not edges:
            break
        edge    = edges[0]
        outcome = apply_round(state, edge.action, params)
        state   = successor(state, outcome)
        if not model.states[edge.dst] == state:
            raise SynthesisError(f"edge {edge.src}->{edge.dst} does not "
                f"follow the game dynamics (reached {state})")
        state_id = edge.dst

    if not prop.path.target.evaluate(state):
        return 0.0
    if isinstance(prop.query, RewardOptimum):
        return prop.query.reward.evaluate(state)
    return 1.0

def _edge_label(edge: StrategyEdge, graph: StrategyGraph) -> str:
    names = ",".join(edge.action.names(graph.model.params))
    label = f"{names} r={edge.per_agent_reward:.6f}"
    if not graph.cooperative:
        label += f" p={edge.probability:.6f}"
    return label

def export_dot(graph: StrategyGraph, destination: BinaryIO):
    dot = pydot.Dot("strategy", graph_type="digraph")
    for state_id, node in graph.nodes.items():
        dot.add_node(pydot.Node(f"s{state_id}", label=node.label(),
            shape="box"))

    params = graph.model.params
    for edge in sorted(graph.edges,
            key=lambda e: (e.src, e.action.index(params), e.dst)):
        dot.add_edge(pydot.Edge(f"s{edge.src}", f"s{edge.dst}",
            label=_edge_label(edge, graph)))

    destination.write(dot.to_string().encode("utf8"))
