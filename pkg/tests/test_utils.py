import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

import numpy as np

from kakeya.config import DEFAULT_SEED, DEFAULT_TOLERANCES, SEED_ENV_VAR, default_seed
from kakeya.errors import InvalidParameter
from kakeya.utils import atomic_write, parse_angle, trial_rng


class TestParseAngle(unittest.TestCase):
    def test_units(self):
        self.assertAlmostEqual(parse_angle("45deg"), np.pi / 4, places=15)
        self.assertEqual(parse_angle("0.25rad"), 0.25)
        self.assertEqual(parse_angle("0.25"), 0.25)
        self.assertAlmostEqual(parse_angle("-90 deg"), -np.pi / 2, places=15)
        self.assertEqual(parse_angle("1e-3"), 1e-3)

    def test_rejects_garbage(self):
        for text in ("", "deg", "45 degrees", "pi/4"):
            with self.assertRaises(InvalidParameter):
                parse_angle(text)


class TestAtomicWrite(unittest.TestCase):
    def test_writes_and_replaces(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "out.json"
            atomic_write(path, "first")
            atomic_write(path, "second")
            self.assertEqual(path.read_text(), "second")
            self.assertEqual(os.listdir(directory), ["out.json"])


class TestSeeds(unittest.TestCase):
    def test_default_seed(self):
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(default_seed(), DEFAULT_SEED)

    def test_environment_override(self):
        with mock.patch.dict(os.environ, {SEED_ENV_VAR: "0x10"}):
            self.assertEqual(default_seed(), 16)

    def test_bad_environment_value(self):
        with mock.patch.dict(os.environ, {SEED_ENV_VAR: "twelve"}):
            with self.assertRaises(InvalidParameter):
                default_seed()

    def test_trial_streams_are_reproducible_and_distinct(self):
        first = trial_rng(1, 0).random(4)
        np.testing.assert_array_equal(first, trial_rng(1, 0).random(4))
        self.assertFalse(np.array_equal(first, trial_rng(1, 1).random(4)))


class TestTolerances(unittest.TestCase):
    def test_overrides_ignore_none(self):
        tol = DEFAULT_TOLERANCES.with_overrides(abs_tol=1e-6, rel_tol=None)
        self.assertEqual(tol.abs_tol, 1e-6)
        self.assertEqual(tol.rel_tol, DEFAULT_TOLERANCES.rel_tol)


if __name__ == "__main__":
    unittest.main()
