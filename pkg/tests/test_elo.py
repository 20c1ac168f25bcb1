# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Test scalar Elo primitives."""
import math
import unittest

from hypothesis import given, settings, strategies as st

from combined_ratings.elo import (elo_odds, elo_rating_from_strength, elo_strength, expected_score, log_strength,
                                  strengths)
from combined_ratings.errors import InvalidInputError

ratings = st.floats(min_value=-4000, max_value=4000, allow_nan=False, allow_infinity=False)


class TestStrength(unittest.TestCase):
    """Strength conversion."""

    def test_known_values(self):
        self.assertEqual(elo_strength(0), 1.0)
        self.assertAlmostEqual(elo_strength(400), 10.0, places=12)
        self.assertAlmostEqual(elo_strength(2840) / 1.258925e7, 1.0, places=6)

    def test_inverse(self):
        self.assertEqual(elo_rating_from_strength(1), 0.0)
        self.assertAlmostEqual(elo_rating_from_strength(7), 338.0392, places=4)
        self.assertAlmostEqual(elo_rating_from_strength(5.5), 296.1451, places=4)

    def test_invalid(self):
        for bad in (math.nan, math.inf, -math.inf, 'x', None):
            with self.assertRaises(InvalidInputError):
                elo_strength(bad)

        for bad in (0, -1, math.inf, math.nan):
            with self.assertRaises(InvalidInputError):
                elo_rating_from_strength(bad)

        with self.assertRaises(InvalidInputError):
            elo_strength(1e6)

    def test_vectorized(self):
        self.assertListEqual(strengths([0, 400]).round(12).tolist(), [1.0, 10.0])
        with self.assertRaises(InvalidInputError):
            strengths([0, math.nan])

    @given(ratings)
    @settings(max_examples=1000)
    def test_round_trip(self, r):
        self.assertLessEqual(abs(elo_rating_from_strength(elo_strength(r)) - r), 1e-9)

    @given(ratings, st.floats(min_value=-2000, max_value=2000, allow_nan=False, allow_infinity=False))
    @settings(max_examples=1000)
    def test_multiplicative(self, a, delta):
        self.assertLessEqual(abs(elo_strength(a + delta) / (elo_strength(a) * elo_strength(delta)) - 1), 1e-12)

    def test_log_strength(self):
        self.assertAlmostEqual(log_strength(400), math.log(10), places=15)


class TestExpectedScore(unittest.TestCase):
    """Expected score and odds."""

    def test_known_values(self):
        self.assertEqual(expected_score(1500, 1500), 0.5)
        self.assertAlmostEqual(expected_score(2400, 2000), 10 / 11, places=14)
        self.assertAlmostEqual(expected_score(2840, 2732), 0.6506, places=4)

    def test_saturation(self):
        self.assertEqual(expected_score(20000, 0), 1.0)
        self.assertEqual(expected_score(-1e5, 1e5), 0.0)

    def test_odds(self):
        self.assertEqual(elo_odds(2000, 2000), 1.0)
        self.assertAlmostEqual(elo_odds(2400, 2000), 10.0, places=12)
        self.assertAlmostEqual(elo_odds(2800, 2000), 100.0, places=10)
        self.assertEqual(elo_odds(1e6, -1e6), math.inf)

        with self.assertRaises(InvalidInputError):
            elo_odds(math.nan, 0)

    @given(ratings, ratings)
    @settings(max_examples=1000)
    def test_complementary(self, a, b):
        self.assertLessEqual(abs(expected_score(a, b) + expected_score(b, a) - 1), 1e-12)
        self.assertLessEqual(abs(elo_odds(a, b) * elo_odds(b, a) - 1), 1e-12)

    @given(st.floats(min_value=-1000, max_value=1000, allow_nan=False, allow_infinity=False),
           st.floats(min_value=-1000, max_value=1000, allow_nan=False, allow_infinity=False))
    @settings(max_examples=500)
    def test_strength_ratio(self, a, b):
        ratio = elo_strength(a) / (elo_strength(a) + elo_strength(b))
        self.assertLessEqual(abs(expected_score(a, b) - ratio), 1e-12)
