# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Test the command line interface."""
import json
import unittest

from click.testing import CliRunner

from combined_ratings.errors import InvalidWeightsError
from combined_ratings.main import root

from . import LEADERBOARD_CSV, LEADERBOARD_JSON


class TestCli(unittest.TestCase):
    """Invoke each command through click."""

    def setUp(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(root, [str(arg) for arg in args])

    def invoke_json(self, *args):
        result = self.invoke(*args, '--output', 'json')
        self.assertEqual(result.exit_code, 0, result.output)
        return json.loads(result.output)

    def test_combine(self):
        result = self.invoke('combine', '2840,2832,2869')
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('main: 2847.74', result.output)

        data = self.invoke_json('combine', '0,400', '--rule', 'power_mean', '--p', 2)
        self.assertAlmostEqual(data['rating'], 340.658, delta=1e-3)
        self.assertEqual(data['rule'], 'power_mean(p=2)')

        data = self.invoke_json('combine', '2400,2000', '--marginal', '--labels', 'white,black')
        self.assertAlmostEqual(data['marginal_weights']['weights'][0], 10 / 11, delta=1e-12)
        self.assertListEqual(data['profile']['labels'], ['white', 'black'])

    def test_errors(self):
        result = self.invoke('combine', '0,400', '--weights', '0,0')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('CLI Error InvalidWeightsError', result.output)

        result = self.invoke('combine', '0,400', '--weights', '1,2,3')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('DimensionError', result.output)

        result = self.invoke('combine', '0,abc')
        self.assertEqual(result.exit_code, 2)

        result = self.invoke('--debug', 'combine', '0,400', '--weights', '0,0')
        self.assertIsInstance(result.exception, InvalidWeightsError)

        result = self.invoke('matchup', '2000,2100', '1900,2000', '--lottery', '0.5,abc')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('CLI Error InvalidDistributionError', result.output)

        with self.runner.isolated_filesystem():
            with open('latin1.csv', 'wb') as f:
                f.write('name,classical\nGl\u00fcck,2000\n'.encode('latin-1'))
            result = self.invoke('rank', '-f', 'latin1.csv')
            self.assertEqual(result.exit_code, 1)
            self.assertIn('RatingsParseError', result.output)

    def test_matchup(self):
        result = self.invoke('matchup', '2840,2832,2869', '2732,2692,2646', '--lottery', 'uniform')
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('combined probability: 0.7084', result.output)
        self.assertIn('lottery probability: 0.7083', result.output)

        data = self.invoke_json('matchup', 'Carlsen, Magnus', 'Nakamura, Hikaru', '-f', LEADERBOARD_CSV)
        self.assertEqual(data['name_a'], 'Carlsen, Magnus')
        self.assertGreater(data['combined_probability'], 0.5)
        self.assertNotIn('lottery_probability', data)

        result = self.invoke('matchup', 'Carlsen, Magnus', 'Nobody', '-f', LEADERBOARD_CSV)
        self.assertEqual(result.exit_code, 1)

    def test_rank(self):
        result = self.invoke('rank', '-f', LEADERBOARD_CSV)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('Dubov, Daniil', result.output)

        data = self.invoke_json('rank', '-f', LEADERBOARD_JSON, '--threads', 2)
        self.assertEqual(len(data['rows']), 20)
        self.assertEqual(data['rows'][13]['name'], 'Dubov, Daniil')
        self.assertEqual(data['rows'][13]['display'], 2721)

        result = self.invoke('rank')
        self.assertEqual(result.exit_code, 2)

    def test_compare(self):
        data = self.invoke_json('compare', '-f', LEADERBOARD_CSV, '-p', 0, '-p', 1)
        self.assertListEqual(data['p_values'], [0.0, 1.0])
        first = data['rows'][0]
        self.assertAlmostEqual(first['power_means'][1], first['combined'], delta=1e-9)

    def test_verify_axioms(self):
        result = self.invoke('verify-axioms', '--rule', 'main', '--samples', 20)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('normalization: holds', result.output)

        result = self.invoke('verify-axioms', '--rule', 'arithmetic', '--samples', 20)
        self.assertEqual(result.exit_code, 1)
        self.assertIn('marginal: fails', result.output)

        result = self.invoke('verify-axioms', '--samples', 20, '--output', 'json')
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertTrue(json.loads(result.output)['passed'])

    def test_cycle_demo(self):
        result = self.invoke('cycle-demo')
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('X (2800,2400,2000): combined', result.output)
        self.assertIn('P(X beats Y): lottery 0.609361', result.output)

        data = self.invoke_json('cycle-demo')
        self.assertTrue(data['holds'])

    def test_role_update(self):
        data = self.invoke_json('role-update', '-a', 'white=2000,black=1900', '-b', 'white=2000,black=2400',
                                '--role-a', 'white', '--role-b', 'white', '--score', 1)
        self.assertEqual(data['a']['white'], 2005.0)
        self.assertEqual(data['b']['white'], 1995.0)
        self.assertEqual(data['a']['black'], 1900.0)

        result = self.invoke('role-update', '-a', 'white=2000', '-b', 'white=2000',
                             '--role-a', 'white', '--role-b', 'white', '--score', 0.3)
        self.assertEqual(result.exit_code, 1)
        self.assertIn('InvalidScoreError', result.output)

        result = self.invoke('role-update', '-a', 'white:2000', '-b', 'white=2000',
                             '--role-a', 'white', '--role-b', 'white', '--score', 1)
        self.assertEqual(result.exit_code, 2)
