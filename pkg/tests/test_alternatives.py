# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Test rating-scale averages and power means."""
import math

from combined_ratings.aggregation import combined_rating
from combined_ratings.alternatives import arithmetic_rating, marginal_ratio, power_mean_rating
from combined_ratings.errors import InvalidInputError, InvalidWeightsError
from combined_ratings.rules import AggregationRule

from .base import BaseRatingsTest


class TestArithmetic(BaseRatingsTest):
    """Weighted mean of ratings."""

    def test_known_values(self):
        self.assertEqual(arithmetic_rating([0, 400]), 200)
        self.assertRatingEqual(arithmetic_rating([0, 400, 400]), 800 / 3, 1e-12)
        self.assertRatingEqual(arithmetic_rating([2000, 2400], [3, 1]), 2100, 1e-12)
        self.assertEqual(arithmetic_rating([2000, 9999], [1, 0]), 2000)

    def test_below_combined(self):
        rng = self.rng()
        for _ in range(self.INSTANCES):
            ratings, weights = self.random_profile(rng)
            self.assertLessEqual(arithmetic_rating(ratings, weights), combined_rating(ratings, weights) + 1e-9)

    def test_marginal_ratio(self):
        rule = AggregationRule.arithmetic()
        for x, y in ((2000, 2000), (2400, 2000), (1000, 3000)):
            self.assertAlmostEqual(marginal_ratio(rule, x, y), 1.0, delta=1e-6)

    def test_invalid_weights(self):
        with self.assertRaises(InvalidWeightsError):
            arithmetic_rating([0, 400], [0, 0])


class TestPowerMean(BaseRatingsTest):
    """Power means of strengths."""

    def test_known_values(self):
        self.assertRatingEqual(power_mean_rating([0, 400], p=2), 340.658, 1e-3)
        self.assertRatingEqual(power_mean_rating([0, 400], p=1), 296.1451, 1e-4)
        self.assertRatingEqual(power_mean_rating([0, 400], p=0), 200, 1e-12)
        self.assertRatingEqual(power_mean_rating([0, 400], p=-1), 400 * math.log10(2 / 1.1), 1e-9)

    def test_endpoints(self):
        rng = self.rng()
        for _ in range(self.INSTANCES):
            ratings, weights = self.random_profile(rng)
            self.assertRatingEqual(power_mean_rating(ratings, weights, 0), arithmetic_rating(ratings, weights), 1e-9)
            self.assertRatingEqual(power_mean_rating(ratings, weights, 1), combined_rating(ratings, weights), 1e-9)

    def test_geometric_limit(self):
        rng = self.rng()
        for _ in range(100):
            ratings, weights = self.random_profile(rng)
            self.assertRatingEqual(power_mean_rating(ratings, weights, 1e-8), arithmetic_rating(ratings, weights), 1e-4)

    def test_monotone_in_p(self):
        rng = self.rng()
        for _ in range(100):
            ratings, weights = self.random_profile(rng, n=int(rng.integers(2, 6, endpoint=True)))
            values = [power_mean_rating(ratings, weights, p) for p in (-2, -0.5, 0, 0.5, 1, 2, 4)]
            for lower, upper in zip(values, values[1:]):
                self.assertLess(lower, upper)
            self.assertLessEqual(min(ratings), values[0] + 1e-9)
            self.assertGreaterEqual(max(ratings) + 1e-9, values[-1])

    def test_invalid_order(self):
        for p in (math.inf, math.nan):
            with self.assertRaises(InvalidInputError):
                power_mean_rating([0, 400], p=p)

    def test_internality(self):
        rng = self.rng()
        for _ in range(self.INSTANCES):
            ratings, weights = self.random_profile(rng)
            p = float(rng.uniform(-4, 4))
            rating = power_mean_rating(ratings, weights, p)
            self.assertGreaterEqual(rating, min(ratings) - 1e-9)
            self.assertLessEqual(rating, max(ratings) + 1e-9)
            self.assertEqual(power_mean_rating([rating], p=p), rating)

    def test_translation(self):
        rng = self.rng()
        for _ in range(self.INSTANCES):
            ratings, weights = self.random_profile(rng)
            p = float(rng.choice([-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, float(rng.uniform(-4, 4))]))
            shift = float(rng.uniform(-500, 500))
            shifted = power_mean_rating([r + shift for r in ratings], weights, p)
            self.assertRatingEqual(shifted, power_mean_rating(ratings, weights, p) + shift, 1e-9)

    def test_marginal_ratio(self):
        rng = self.rng()
        for _ in range(200):
            p = float(rng.uniform(-2, 2))
            x = float(rng.uniform(1500, 2500))
            y = x + float(rng.uniform(-400, 400))
            expected = 10 ** (p * (x - y) / 400)
            ratio = marginal_ratio(AggregationRule.power_mean(p), x, y)
            self.assertLessEqual(abs(ratio / expected - 1), 1e-5, f'p={p} x={x} y={y}')
