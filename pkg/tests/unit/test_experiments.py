"""
#    Copyright 2022 Red Hat
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.
"""
import math
import os
import shutil
import tempfile
from unittest import TestCase

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.measures import SmallDivisorOverflow
from saddlelab.experiments import (DEFAULT_START, EXPERIMENTS,
                                   ExperimentContext, experiment,
                                   parse_start)
from saddlelab.maps.endomorphism import ProductMap
from saddlelab.models.experiment import ExperimentConfig

SMALL = {'n_points': 300, 'n_backward': 20, 'grid_size': 64, 'm': 2,
         'n_orbits': 2, 'orbit_length': 120, 'n_skip': 10, 'n': 2,
         'n_centers': 20, 'epsilon': 0.3, 'n_iter': 20}


class TestParseStart(TestCase):
    """Test cases for :func:`parse_start`."""

    def test_parse(self):
        """Checks complex coordinates and the default."""
        self.assertEqual(parse_start('1,0.5j,2+1j'), (1, 0.5j, 2 + 1j))
        self.assertEqual(parse_start(None), DEFAULT_START)

    def test_invalid(self):
        """Checks malformed start points."""
        with self.assertRaises(InvalidArgument):
            parse_start('1,2')
        with self.assertRaises(InvalidArgument):
            parse_start('a,b,c')


class TestRegistry(TestCase):
    """Test cases for the experiment registry."""

    def test_commands(self):
        """Checks that every subcommand has a runner."""
        self.assertEqual(sorted(EXPERIMENTS),
                         ['entropy', 'graph-transform', 'green', 'lyapunov',
                          'orbit', 'ruelle', 'sample-alpha', 'sample-mu',
                          'sample-nu', 'siegel'])

    def test_decorator(self):
        """Checks that the decorator registers and tags a runner."""
        @experiment('dry-run')
        def dry_run(context):
            return context

        try:
            self.assertIs(EXPERIMENTS['dry-run'], dry_run)
            self.assertEqual(dry_run.command, 'dry-run')
        finally:
            del EXPERIMENTS['dry-run']


class TestRunners(TestCase):
    """Runs every experiment with small budgets."""

    def setUp(self):
        self.out = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.out)

    def context(self, command, **attributes):
        settings = dict(SMALL, out=self.out)
        settings.update(attributes)
        return ExperimentContext(ExperimentConfig(settings), command)

    def run_command(self, command, **attributes):
        context = self.context(command, **attributes)
        return context, EXPERIMENTS[command](context)

    def test_context(self):
        """Checks the lazily built map and the default line."""
        context = self.context('orbit')
        self.assertEqual(context.map_source, 'squaring')
        self.assertIsInstance(context.endomorphism, ProductMap)
        self.assertIs(context.endomorphism, context.endomorphism)
        self.assertFalse(context.is_siegel)
        self.assertTrue(context.line.contains((0.5, 3.0, 1.0)))
        self.assertEqual(len(context.map_hash), 64)

    def test_siegel_line(self):
        """Checks that the Siegel map uses a line through the disk."""
        context = self.context('sample-nu', builtin='siegel')
        self.assertTrue(context.is_siegel)
        anchor = context.line.a[0] / context.line.a[2]
        level = abs(context.linearization.evaluate(anchor))
        self.assertAlmostEqual(
            level, 0.05 * context.linearization.radius_estimate)

    def test_green(self):
        """Checks the green runner and its artifacts."""
        context, result = self.run_command('green')
        self.assertEqual(context.artifacts, ['green.csv', 'green.pgm'])
        self.assertLessEqual(result['closed_form_error'],
                             result['error_bound'])
        self.assertEqual(result['decay']['expected'], -math.log(2.0))
        self.assertTrue(result['functional_residual']['passed'])
        for name in context.artifacts:
            self.assertTrue(os.path.isfile(os.path.join(self.out, name)))

    def test_orbit(self):
        """Checks the orbit runner."""
        context, result = self.run_command('orbit', orbit_length=5,
                                           start='0.5,0.25,1')
        self.assertEqual(result['length'], 5)
        self.assertEqual(context.artifacts, ['orbit.csv'])

    def test_sample_mu(self):
        """Checks the sample-mu runner."""
        context, result = self.run_command('sample-mu', seed=4)
        self.assertEqual(result['provenance'], 'mu')
        self.assertEqual(result['seed'], 4)
        self.assertEqual(result['map_hash'], context.map_hash)
        self.assertEqual(context.artifacts,
                         ['sample-mu.csv', 'sample-mu.measure.json'])

    def test_sample_nu(self):
        """Checks the sample-nu runner."""
        _, result = self.run_command('sample-nu')
        self.assertEqual(result['provenance'], 'nu')
        self.assertEqual(result['family']['m'], 2)

    def test_sample_alpha(self):
        """Checks the sample-alpha runner."""
        _, result = self.run_command('sample-alpha', n_points=1000)
        self.assertEqual(result['provenance'], 'alpha')
        self.assertLess(result['weyl_sum'], 0.05)

    def test_lyapunov(self):
        """Checks the lyapunov runner on the squaring map."""
        _, result = self.run_command('lyapunov')
        self.assertAlmostEqual(result['chi2'], math.log(2.0), delta=0.05)
        self.assertTrue(result['lower_bound']['passed'])

    def test_lyapunov_nu_oracle(self):
        """Checks that nu exponents of a product map carry the oracle."""
        _, result = self.run_command('lyapunov', builtin='siegel',
                                     measure='nu')
        self.assertIn('oracle', result)
        self.assertAlmostEqual(result['half_log_degree'],
                               math.log(2.0) / 2.0)

    def test_entropy(self):
        """Checks the entropy runner fields."""
        _, result = self.run_command('entropy')
        self.assertAlmostEqual(result['target'], 2 * math.log(2.0))
        self.assertIn('resolution_floor', result)
        self.assertEqual(result['n'], 2)

    def test_entropy_resolution(self):
        """Checks that a cap (1/n) log N below 2 log d is rejected."""
        with self.assertRaises(InvalidArgument):
            self.run_command('entropy', n=8)

    def test_ruelle(self):
        """Checks the ruelle runner layout."""
        _, result = self.run_command('ruelle')
        self.assertEqual(sorted(result), ['check', 'entropy', 'exponents'])
        self.assertIsNone(result['check']['ceiling_passed'])

    def test_siegel(self):
        """Checks the siegel runner and its failure on resonance."""
        _, result = self.run_command('siegel')
        self.assertTrue(result['bounded_type'])
        with self.assertRaises(SmallDivisorOverflow):
            self.run_command('siegel', theta=0.5)

    def test_graph_transform(self):
        """Checks the graph-transform runner with the default inputs."""
        context, result = self.run_command('graph-transform')
        self.assertEqual(result['n_maps'], 1)
        self.assertEqual(len(result['gammas']), 2)
        self.assertLessEqual(result['measured_lipschitz'],
                             result['gammas'][-1] + 1e-9)
        self.assertEqual(context.artifacts, ['graph-transform.graph.json'])
