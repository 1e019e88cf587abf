import io, unittest
import pydot
from vdgcheck import engine, synthesis
from vdgcheck.errors import SynthesisError
from vdgcheck.game   import JointAction
from vdgcheck.logic  import parse_property
from .oracle import brute_force, default_model

DONE123   = '<<p1,p2,p3>> R{"done123"}max=? [ F k=kmax+1 ]'
R1_VERSUS = '<<p1:p2,p3>> R{"r1"}max=? [ F k=kmax+1 ]'

def _synthesize(model, text: str):
    prop   = parse_property(text, model.params)
    result = engine.check(model, prop)
    return prop, synthesis.synthesize(model, prop, result.valuation)

def _dot(graph) -> str:
    sink = io.BytesIO()
    synthesis.export_dot(graph, sink)
    return sink.getvalue().decode("utf8")

class SynthesisTestCooperative(unittest.TestCase):
    def test_single_round(self):
        model = default_model(1)
        prop, graph = _synthesize(model, DONE123)
        self.assertTrue(graph.cooperative)
        self.assertEqual(graph.achieved_value, 199.0)
        self.assertEqual(graph.achieved_value,
            brute_force(model.params, prop))

        self.assertEqual(len(graph.nodes), 2)
        self.assertEqual(len(graph.edges), 1)
        edge = graph.edges[0]
        self.assertEqual(edge.src, model.initial_id)
        # first joint action in lexicographic order reaching the optimum
        self.assertEqual(edge.action, JointAction((0, 2, 2)))
        self.assertEqual(graph.nodes[0].label(),
            "[1, 100, 0, 100, 100, 100, 100]")
        self.assertEqual(graph.nodes[edge.dst].label(),
            "[2, 233, , 133, , 133, ]")

    def test_replay(self):
        for k_max in [1, 2]:
            model = default_model(k_max)
            for text in [DONE123,
                    '<<p1,p2,p3>> R{"r2"}min=? [ F k=kmax+1 ]',
                    '<<p1,p2,p3>> Pmax=? [ F<=kmax+1 "good" ]']:
                prop, graph = _synthesize(model, text)
                self.assertEqual(synthesis.replay(model, prop, graph),
                    graph.achieved_value)

    def test_two_rounds(self):
        model = default_model(2)
        prop, graph = _synthesize(model, DONE123)
        self.assertEqual(len(graph.edges), 2)
        self.assertEqual(sorted(node.state.k for node in
            graph.nodes.values()), [1, 2, 3])
        self.assertEqual(graph.achieved_value,
            brute_force(model.params, prop))

    def test_stops_at_target(self):
        model = default_model(2)
        _, graph = _synthesize(model, '<<p1,p2,p3>> Pmax=? [ F<=2 "good" ]')
        self.assertEqual(graph.achieved_value, 1.0)
        self.assertEqual(len(graph.edges), 1)

    def test_stale_valuation(self):
        model  = default_model(2)
        prop   = parse_property(DONE123, model.params)
        stale  = engine.check(default_model(1),
            parse_property(DONE123, default_model(1).params))
        with self.assertRaises(SynthesisError):
            synthesis.synthesize(model, prop, stale.valuation)

class SynthesisTestCoalitions(unittest.TestCase):
    def test_best_responses(self):
        model = default_model(1)
        prop, graph = _synthesize(model, R1_VERSUS)
        self.assertFalse(graph.cooperative)
        self.assertAlmostEqual(graph.achieved_value, 0.0, delta=1e-6)

        edges = graph.outgoing(model.initial_id)
        # p1 free rides; every reply but two full donations leaves it even
        self.assertEqual(len(edges), 8)
        for edge in edges:
            self.assertEqual(edge.action.choice[0], 0)
            self.assertEqual(edge.probability, 1.0)
        self.assertEqual(graph.nodes[0].donations, (0, None, None))

        with self.assertRaises(SynthesisError):
            synthesis.replay(model, prop, graph)

    def test_mixed(self):
        model = default_model(1)
        _, graph = _synthesize(model,
            '<<p1:p2,p3>> R{"r1"}min=? [ F k=kmax+1 ]')
        self.assertAlmostEqual(graph.achieved_value, 33*133/134, delta=1e-6)
        total = {}
        for edge in graph.outgoing(model.initial_id):
            total[edge.action.choice[0]] = edge.probability
        self.assertAlmostEqual(sum(total.values()), 1.0, delta=1e-6)
        self.assertIn(" p=", _dot(graph))

class SynthesisTestDot(unittest.TestCase):
    def test_parses(self):
        model = default_model(2)
        _, graph = _synthesize(model, DONE123)
        parsed = pydot.graph_from_dot_data(_dot(graph))[0]
        self.assertEqual(len(parsed.get_edges()), len(graph.edges))
        names = set(node.get_name() for node in parsed.get_nodes())
        for state_id in graph.nodes:
            self.assertIn(f"s{state_id}", names)

    def test_edge_label(self):
        _, graph = _synthesize(default_model(1), DONE123)
        self.assertIn("a0,a100,a100 r=133.333333", _dot(graph))

    def test_deterministic(self):
        model = default_model(2)
        _, first  = _synthesize(model, DONE123)
        _, second = _synthesize(model, DONE123)
        self.assertEqual(_dot(first), _dot(second))
