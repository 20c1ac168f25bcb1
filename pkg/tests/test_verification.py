# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Test the axiom checks, the independence matrix and the cycle demonstration."""
import unittest

import numpy as np

from combined_ratings.errors import InvalidInputError
from combined_ratings.rules import AggregationRule
from combined_ratings.verification import (EXPECTED_INDEPENDENCE, SamplingConfig, check_axioms, grouping_identity_gap,
                                           independence_matrix, iter_partitions, random_partition,
                                           reproduce_witness, verify_cycle)


def small_sampling(**overrides) -> SamplingConfig:
    """Fewer instances than the packaged defaults; the canonical witnesses still run first."""
    settings = dict(samples=60, sampled_partitions=5)
    settings.update(overrides)
    return SamplingConfig.default(**settings)


class TestSamplingConfig(unittest.TestCase):
    """Sampling configuration."""

    def test_defaults(self):
        sampling = SamplingConfig.default()
        self.assertEqual(sampling.seed, 0)
        self.assertEqual(sampling.samples, 1000)
        self.assertListEqual(sampling.dimensions, [2, 6])
        self.assertEqual(SamplingConfig.default(seed=None).seed, 0)
        self.assertEqual(SamplingConfig.default(seed=7).seed, 7)

    def test_streams_are_reproducible(self):
        sampling = small_sampling()
        self.assertListEqual(sampling.random_instance(sampling.rng(3))[0], sampling.random_instance(sampling.rng(3))[0])
        self.assertNotEqual(sampling.random_instance(sampling.rng(3))[0], sampling.random_instance(sampling.rng(4))[0])

    def test_random_instance(self):
        sampling = small_sampling()
        rng = sampling.rng(0)
        for _ in range(100):
            ratings, weights = sampling.random_instance(rng)
            self.assertTrue(2 <= len(ratings) <= 6)
            self.assertEqual(len(ratings), len(weights))
            self.assertTrue(all(1000 <= r <= 3000 for r in ratings))
            self.assertTrue(all(0.1 <= w <= 10 for w in weights))
        self.assertEqual(len(sampling.random_instance(rng, 4)[0]), 4)

    def test_invalid(self):
        for overrides in (dict(samples=0), dict(rating_range=[3000, 1000]), dict(dimensions=[1, 3]),
                          dict(weight_range=[0, 0]), dict(scale_factors=[1, -2])):
            with self.assertRaises(InvalidInputError, msg=str(overrides)):
                SamplingConfig.default(**overrides)


class TestPartitions(unittest.TestCase):
    """Partition enumeration and sampling."""

    def test_enumeration(self):
        partitions = [p.blocks for p in iter_partitions(3)]
        self.assertEqual(len(partitions), 5)
        self.assertIn([[0, 1, 2]], partitions)
        self.assertIn([[0], [1], [2]], partitions)
        self.assertIn([[0, 2], [1]], partitions)

        for partition in iter_partitions(4):
            partition.check(4)

        with self.assertRaises(InvalidInputError):
            list(iter_partitions(0))

    def test_random(self):
        rng = np.random.default_rng(1)
        for n in range(1, 9):
            for _ in range(50):
                random_partition(n, rng).check(n)

    def test_grouping_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            n = int(rng.integers(1, 8, endpoint=True))
            weights = rng.uniform(0.1, 10, size=n).tolist()
            self.assertLessEqual(grouping_identity_gap(weights, random_partition(n, rng)), 1e-12)

        self.assertLessEqual(grouping_identity_gap([1, 0, 2], [[0, 1], [2]]), 1e-12)


class TestAxiomChecks(unittest.TestCase):
    """Verdicts per rule."""

    @classmethod
    def setUpClass(cls):
        cls.sampling = small_sampling()
        cls.matrix = independence_matrix(cls.sampling, threads=2)

    def test_independence_matrix(self):
        self.assertDictEqual(self.matrix.matrix, EXPECTED_INDEPENDENCE)
        self.assertTrue(self.matrix.matches)
        self.assertEqual([report.rule for report in self.matrix.reports],
                         ['main', 'arithmetic', 'piecewise', 'entropy(eta=1)'])

    def test_main_rule(self):
        report = self.matrix.reports[0]
        self.assertTrue(report.holds)
        for verdict in report.verdicts():
            self.assertTrue(verdict.holds, f'{verdict.name}: {verdict.discrepancy}')
            self.assertGreater(verdict.instances, 0)

    def test_derived_checks_hold_for_every_rule(self):
        for report in self.matrix.reports:
            for verdict in (report.relabeling, report.weight_scale, report.monotonicity):
                self.assertTrue(verdict.holds, f'{report.rule} {verdict.name}')

    def test_entropy_grouping(self):
        report = self.matrix.reports[3]
        self.assertIsNotNone(report.grouping)
        self.assertTrue(report.grouping.holds)
        self.assertIsNone(self.matrix.reports[0].grouping)

    def test_canonical_witnesses(self):
        arithmetic, piecewise, entropy = self.matrix.reports[1:]

        witness = piecewise.recursion.witness
        self.assertTrue(witness['canonical'])
        self.assertListEqual(witness['partition'], [[0, 1], [2]])
        self.assertAlmostEqual(witness['direct'], 800 / 3, delta=1e-6)
        self.assertAlmostEqual(witness['grouped'], 338.04, delta=0.01)
        self.assertGreater(piecewise.recursion.discrepancy, 70)

        self.assertTrue(entropy.normalization.witness['canonical'])
        self.assertListEqual(entropy.normalization.witness['ratings'], [0.0, 0.0])
        self.assertAlmostEqual(entropy.normalization.discrepancy, 91.47, delta=0.01)

        self.assertTrue(arithmetic.marginal.witness['canonical'])
        self.assertAlmostEqual(arithmetic.marginal.witness['expected'], 10.0, delta=1e-9)
        self.assertAlmostEqual(arithmetic.marginal.witness['ratio'], 1.0, delta=1e-6)

    def test_witnesses_reproduce(self):
        rules = {'arithmetic': AggregationRule.arithmetic(), 'piecewise': AggregationRule.piecewise(),
                 'entropy': AggregationRule.entropy()}
        for report in self.matrix.reports[1:]:
            rule = rules[report.rule.split('(')[0]]
            for verdict in (report.normalization, report.recursion, report.marginal):
                if verdict.holds:
                    continue
                self.assertGreater(reproduce_witness(rule, verdict, self.sampling), 10 * verdict.tolerance)

        with self.assertRaises(InvalidInputError):
            reproduce_witness(AggregationRule.main(), self.matrix.reports[0].replication)

    def test_power_mean(self):
        report = check_axioms(AggregationRule.power_mean(2), small_sampling(samples=20))
        self.assertTupleEqual(report.substantive, (True, True, False))

        report = check_axioms(AggregationRule.power_mean(1), small_sampling(samples=20))
        self.assertTrue(report.holds)

    def test_deterministic(self):
        sampling = small_sampling(samples=10)
        first = check_axioms(AggregationRule.piecewise(), sampling)
        second = check_axioms(AggregationRule.piecewise(), sampling)
        self.assertDictEqual(first.to_dict(), second.to_dict())


class TestCycle(unittest.TestCase):
    """Lottery cycle between profiles with equal combined ratings."""

    def test_cycle(self):
        report = verify_cycle()
        self.assertTrue(report.holds)
        self.assertListEqual(report.names, ['X', 'Y', 'Z'])
        self.assertListEqual(report.pairs, [('X', 'Y'), ('Y', 'Z'), ('Z', 'X')])
        for probability in report.lottery_probabilities:
            self.assertAlmostEqual(probability, 677 / 1111, delta=1e-12)
        for probability in report.combined_probabilities:
            self.assertAlmostEqual(probability, 0.5, delta=1e-12)
        self.assertLessEqual(max(report.combined_ratings) - min(report.combined_ratings), 1e-9)
