# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Test role-specific rating updates."""
import unittest

from combined_ratings.errors import InvalidInputError, InvalidScoreError, RoleError
from combined_ratings.roles import (GameResult, RoleProfile, role_display_rating, role_expected_score,
                                    role_update)


class TestRoleUpdate(unittest.TestCase):
    """Elo-style update of the played coordinates."""

    def setUp(self):
        self.alice = RoleProfile.from_roles({'white': 2000, 'black': 1900}, k_factor=10)
        self.bob = RoleProfile.from_roles({'white': 2000, 'black': 2400}, k_factor=10)

    def test_expected_score(self):
        self.assertEqual(role_expected_score(self.alice, self.bob, 'white', 'white'), 0.5)
        self.assertAlmostEqual(role_expected_score(self.bob, self.alice, 'black', 'white'), 10 / 11, places=14)

    def test_equal_ratings(self):
        for score, delta in ((1, 5.0), (0.5, 0.0), (0, -5.0)):
            new_a, new_b = role_update(self.alice, self.bob, 'white', 'white', score)
            self.assertEqual(new_a.rating('white'), 2000 + delta)
            self.assertEqual(new_b.rating('white'), 2000 - delta)

    def test_untouched_coordinates(self):
        new_a, new_b = role_update(self.alice, self.bob, 'white', 'black', 1)
        self.assertEqual(new_a.rating('black'), 1900)
        self.assertEqual(new_b.rating('white'), 2000)
        self.assertEqual(self.alice.rating('white'), 2000)

    def test_zero_sum(self):
        new_a, new_b = role_update(self.alice, self.bob, 'black', 'white', 0.5)
        gain = new_a.rating('black') - 1900
        loss = new_b.rating('white') - 2000
        self.assertAlmostEqual(gain + loss, 0.0, delta=1e-9)
        self.assertAlmostEqual(gain, 10 * (0.5 - 1 / 11), delta=1e-9)

    def test_fixed_point(self):
        # expected result leaves the coordinates in place
        new_a, new_b = role_update(self.alice, self.bob, 'white', 'white', 0.5)
        self.assertEqual(new_a, self.alice)
        self.assertEqual(new_b, self.bob)

    def test_k_factor_override(self):
        new_a, _ = role_update(self.alice, self.bob, 'white', 'white', 1, k_factor=32)
        self.assertEqual(new_a.rating('white'), 2016)

        with self.assertRaises(InvalidInputError):
            role_update(self.alice, self.bob, 'white', 'white', 1, k_factor=0)

    def test_display_rating(self):
        player = RoleProfile.from_roles({'white': 400, 'black': 0})
        self.assertAlmostEqual(role_display_rating(player), 296.1451, places=4)
        self.assertAlmostEqual(role_display_rating(player, [1, 0]), 400, places=12)

    def test_errors(self):
        with self.assertRaises(RoleError):
            role_update(self.alice, self.bob, 'red', 'white', 1)
        with self.assertRaises(RoleError):
            role_update(self.alice, self.bob, 'white', 'green', 1)
        for score in (0.25, 2, -1, 'win', None):
            with self.assertRaises(InvalidScoreError):
                GameResult(score)
        with self.assertRaises(InvalidInputError):
            RoleProfile.from_roles({'white': 2000}, k_factor=-3)

    def test_default_k_factor(self):
        self.assertEqual(RoleProfile.from_roles({'white': 2000}).k_factor, 10.0)
