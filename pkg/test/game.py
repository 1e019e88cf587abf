import random, unittest
from vdgcheck import game
from vdgcheck.errors import ParamsError
from vdgcheck.game   import GameState, JointAction
from vdgcheck.params import GameParams

DEFAULTS = GameParams()

class GameTestParams(unittest.TestCase):
    def test_defaults(self):
        self.assertEqual(DEFAULTS.action_count, 27)
        self.assertEqual(DEFAULTS.constants()["kmax"], 4)

    def test_fractions_list(self):
        params = GameParams(fractions=[0, 1])
        self.assertEqual(params.fractions, (0.0, 1.0))
        hash(params)

    def test_invalid(self):
        with self.assertRaises(ParamsError):
            GameParams(n=0)
        with self.assertRaises(ParamsError):
            GameParams(r_init=1001)
        with self.assertRaises(ParamsError):
            GameParams(r_needed=3000)
        with self.assertRaises(ParamsError):
            GameParams(fractions=(0.5, 0.0))
        with self.assertRaises(ParamsError):
            GameParams(fractions=(1.5,))
        with self.assertRaises(ParamsError):
            GameParams(f=0)

class GameTestReward(unittest.TestCase):
    def test_losing(self):
        self.assertEqual(game.round_reward(0, DEFAULTS), 0.0)
        self.assertEqual(game.round_reward(199, DEFAULTS), 0.0)

    def test_threshold(self):
        self.assertAlmostEqual(game.round_reward(200, DEFAULTS), 400/3,
            delta=1e-9)

    def test_continuity(self):
        above = game.round_reward(200, DEFAULTS)
        limit = (DEFAULTS.decay_slope*0 + DEFAULTS.r_needed*DEFAULTS.f)/3
        self.assertAlmostEqual(above, limit, delta=1e-9)
        self.assertAlmostEqual(game.round_reward(201, DEFAULTS),
            above + DEFAULTS.decay_slope/3, delta=1e-9)

    def test_decay_slope(self):
        slope = DEFAULTS.decay_slope/DEFAULTS.n
        for total in range(201, 1001, 80):
            difference = (game.round_reward(total, DEFAULTS) -
                game.round_reward(total-1, DEFAULTS))
            self.assertAlmostEqual(difference, slope, delta=1e-9)

    def test_aggregate(self):
        self.assertEqual(game.aggregate_reward(2.5, 3), 7.5)

class GameTestActions(unittest.TestCase):
    def test_names(self):
        self.assertEqual(JointAction((2, 2, 0)).names(DEFAULTS),
            ["a100", "a100", "a0"])
        self.assertEqual(game.action_name(0.5), "a50")

    def test_index(self):
        self.assertEqual(JointAction((2, 1, 0)).index(DEFAULTS), 21)
        self.assertEqual(JointAction.from_index(21, DEFAULTS),
            JointAction((2, 1, 0)))

    def test_enumeration_order(self):
        actions = list(game.joint_actions(DEFAULTS))
        self.assertEqual(len(actions), 27)
        self.assertEqual([a.index(DEFAULTS) for a in actions],
            list(range(27)))
        self.assertEqual(actions[0], JointAction((0, 0, 0)))
        self.assertEqual(actions[1], JointAction((0, 0, 1)))

    def test_validate(self):
        with self.assertRaises(ParamsError):
            JointAction((0, 3, 0)).validate(DEFAULTS)
        with self.assertRaises(ParamsError):
            JointAction((0, 0)).validate(DEFAULTS)

    def test_donation(self):
        self.assertEqual(game.donation_amount(101, 0.5), 50)
        self.assertEqual(game.donation_amount(0, 1.0), 0)
        self.assertEqual(game.donation_amount(77, 1.0), 77)

class GameTestApplyRound(unittest.TestCase):
    def test_two_volunteers(self):
        state   = game.initial_state(DEFAULTS)
        outcome = game.apply_round(state, JointAction((2, 2, 0)), DEFAULTS)
        self.assertEqual(outcome.donations, (100, 100, 0))
        self.assertEqual(outcome.total_donated, 200)
        self.assertTrue(outcome.won)
        self.assertEqual(outcome.next_resources, (133, 133, 233))
        self.assertEqual(game.successor(state, outcome),
            GameState(2, (133, 133, 233)))

    def test_over_donation(self):
        state   = game.initial_state(DEFAULTS)
        outcome = game.apply_round(state, JointAction((2, 2, 2)), DEFAULTS)
        self.assertAlmostEqual(outcome.per_agent_reward, (400-1.4)/3,
            delta=1e-9)
        self.assertEqual(outcome.next_resources, (132, 132, 132))

    def test_losing(self):
        state   = game.initial_state(DEFAULTS)
        outcome = game.apply_round(state, JointAction((1, 1, 1)), DEFAULTS)
        self.assertFalse(outcome.won)
        self.assertEqual(outcome.per_agent_reward, 0.0)
        self.assertEqual(outcome.next_resources, (50, 50, 50))

    def test_free_ride(self):
        state   = game.initial_state(DEFAULTS)
        outcome = game.apply_round(state, JointAction((0, 0, 0)), DEFAULTS)
        self.assertEqual(outcome.next_resources, (100, 100, 100))

    def test_floor_slack(self):
        # 500 over the threshold pays exactly 131 each
        state   = GameState(1, (700, 0, 0))
        outcome = game.apply_round(state, JointAction((2, 2, 2)), DEFAULTS)
        self.assertEqual(outcome.next_resources, (131, 131, 131))

    def test_clamped(self):
        params  = DEFAULTS.with_values(r_max=300)
        state   = GameState(1, (300, 300, 0))
        outcome = game.apply_round(state, JointAction((0, 2, 0)), params)
        self.assertEqual(outcome.next_resources, (300, 132, 132))

    def test_terminal(self):
        with self.assertRaises(ParamsError):
            game.apply_round(GameState(5, (100, 100, 100)),
                JointAction((0, 0, 0)), DEFAULTS)

class GameTestRandomRounds(unittest.TestCase):
    def _rounds(self, seed: int, params: GameParams):
        rng = random.Random(seed)
        for _ in range(300):
            c = tuple(rng.randint(0, params.r_max) for _ in range(params.n))
            action = JointAction.from_index(
                rng.randrange(params.action_count), params)
            yield rng, GameState(1, c), action

    def test_resource_bounds(self):
        for params in [DEFAULTS, DEFAULTS.with_values(r_max=300, r_init=0),
                DEFAULTS.with_values(decay_slope=-5.0)]:
            for _, state, action in self._rounds(3, params):
                outcome = game.apply_round(state, action, params)
                for c_i in outcome.next_resources:
                    self.assertTrue(0 <= c_i <= params.r_max,
                        msg=f"{state} {action}")

    def test_donations_feasible(self):
        for _, state, action in self._rounds(5, DEFAULTS):
            outcome = game.apply_round(state, action, DEFAULTS)
            for c_i, d_i in zip(state.c, outcome.donations):
                self.assertTrue(0 <= d_i <= c_i)
            self.assertEqual(outcome.total_donated, sum(outcome.donations))

    def test_symmetry(self):
        for rng, state, action in self._rounds(9, DEFAULTS):
            order = list(range(DEFAULTS.n))
            rng.shuffle(order)
            swapped_state  = GameState(state.k,
                tuple(state.c[i] for i in order))
            swapped_action = JointAction(
                tuple(action.choice[i] for i in order))

            outcome = game.apply_round(state, action, DEFAULTS)
            swapped = game.apply_round(swapped_state, swapped_action,
                DEFAULTS)
            self.assertEqual(swapped.donations,
                tuple(outcome.donations[i] for i in order))
            self.assertEqual(swapped.next_resources,
                tuple(outcome.next_resources[i] for i in order))
            self.assertEqual(swapped.per_agent_reward,
                outcome.per_agent_reward)
