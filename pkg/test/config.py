import os, unittest
from unittest import mock
from vdgcheck.config import RunConfig, SweepSpec, default_threads
from vdgcheck.errors import ConfigError

CONFIG = """
# three players, two rounds
n = 3
k_max = 2      # short horizon
r_init = 150
fractions = 0, 0.5, 1
out = results
property = <<p1,p2,p3>> P>=1.0 [ F<=2 "good" ]
property = <<p1,p2,p3>> R{"done123"}max=? [ F k=kmax+1 ]
"""

class ConfigTestLoad(unittest.TestCase):
    def test_values(self):
        config = RunConfig.from_text(CONFIG)
        self.assertEqual(config.params.k_max, 2)
        self.assertEqual(config.params.r_init, 150)
        self.assertEqual(config.params.r_needed, 200)
        self.assertEqual(config.params.fractions, (0.0, 0.5, 1.0))
        self.assertEqual(config.out, "results")
        self.assertEqual(len(config.properties), 2)
        self.assertEqual(config.properties[0],
            '<<p1,p2,p3>> P>=1.0 [ F<=2 "good" ]')

    def test_unknown_key(self):
        with self.assertRaises(ConfigError) as context:
            RunConfig.from_text("n = 3\nplayers = 4\n")
        self.assertEqual(context.exception.key, "players")

    def test_bad_value(self):
        with self.assertRaises(ConfigError) as context:
            RunConfig.from_text("k_max = four\n")
        self.assertEqual(context.exception.key, "k_max")

    def test_missing_separator(self):
        with self.assertRaises(ConfigError):
            RunConfig.from_text("k_max 4\n")

    def test_invalid_params(self):
        for text, key in [
                ("r_init = 2000\n", "r_init"),
                ("r_needed = 5000\n", "r_needed"),
                ("fractions = 0.5, 0\n", "fractions"),
                ("f = 0\n", "f")]:
            with self.assertRaises(ConfigError) as context:
                RunConfig.from_text(text)
            self.assertEqual(context.exception.key, key)

    def test_overrides(self):
        config = RunConfig.from_text(CONFIG).with_values(cap=10, k_max=1)
        self.assertEqual(config.cap, 10)
        self.assertEqual(config.params.k_max, 1)
        self.assertEqual(config.params.r_init, 150)

    def test_threads(self):
        with mock.patch.dict(os.environ, {"VDG_THREADS": "4"}):
            self.assertEqual(default_threads(), 4)
            self.assertEqual(RunConfig().threads, 4)
        with mock.patch.dict(os.environ, {"VDG_THREADS": "many"}):
            with self.assertRaises(ConfigError):
                default_threads()
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(default_threads(), 1)

class ConfigTestSweepSpec(unittest.TestCase):
    def test_parse(self):
        spec = SweepSpec.parse("r_init", "50, 100,150", "prop")
        self.assertEqual(spec.values, [50, 100, 150])
        spec = SweepSpec.parse("f", "1.5,2", "prop")
        self.assertEqual(spec.values, [1.5, 2.0])
        self.assertEqual(spec.format_value(2.0), "2.0")

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            SweepSpec.parse("n", "2,3", "prop")
        with self.assertRaises(ConfigError):
            SweepSpec.parse("r_init", "", "prop")
        with self.assertRaises(ConfigError):
            SweepSpec.parse("k_max", "0", "prop")
        with self.assertRaises(ConfigError):
            SweepSpec.parse("f", "-1", "prop")
        with self.assertRaises(ConfigError):
            SweepSpec.parse("r_init", "1.5", "prop")
