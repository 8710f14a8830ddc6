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
from unittest import TestCase

import numpy as np

from saddlelab.ergodic.cocycle import OrbitCocycle, mu_orbits
from saddlelab.ergodic.lyapunov import (ensemble_exponents, growth_logs,
                                        lyapunov_pair, mu_exponent_check,
                                        top_lyapunov)
from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.maps.map_factory import MapFactory


def constant_cocycle(matrix, length):
    return OrbitCocycle(points=np.zeros((length, 3), dtype=complex),
                        charts=np.full(length + 1, 2),
                        matrices=np.tile(np.asarray(matrix, dtype=complex),
                                         (length, 1, 1)))


class TestLyapunovPair(TestCase):
    """Test cases for :func:`lyapunov_pair`."""

    def test_diagonal(self):
        """Checks the exponents of a constant diagonal cocycle."""
        estimate = lyapunov_pair(constant_cocycle(np.diag([2.0, 0.5]), 200))
        self.assertAlmostEqual(estimate.chi2, math.log(2.0), places=2)
        self.assertAlmostEqual(estimate.chi1, -math.log(2.0), places=2)
        self.assertEqual(estimate.n, 200)
        self.assertLess(estimate.stderr, 1e-2)

    def test_shear(self):
        """Checks that an upper triangular part does not change the
        exponents."""
        estimate = lyapunov_pair(constant_cocycle([[3.0, 5.0], [0.0, 1.0]],
                                                  400))
        self.assertAlmostEqual(estimate.chi2, math.log(3.0), places=2)
        self.assertAlmostEqual(estimate.chi1, 0.0, places=2)

    def test_ordering(self):
        """Checks chi1 <= chi2."""
        estimate = lyapunov_pair(constant_cocycle(np.diag([0.1, 5.0]), 150))
        self.assertLessEqual(estimate.chi1, estimate.chi2)

    def test_short_orbit(self):
        """Checks the warning on short orbits."""
        with self.assertLogs('saddlelab.ergodic.lyapunov', level='WARNING'):
            lyapunov_pair(constant_cocycle(np.eye(2), 10))

    def test_growth_logs(self):
        """Checks the per step growth of a rotation."""
        rotation = [[0.0, -1.0], [1.0, 0.0]]
        logs = growth_logs(constant_cocycle(rotation, 150))
        np.testing.assert_allclose(logs, 0.0, atol=1e-15)
        self.assertAlmostEqual(top_lyapunov(constant_cocycle(rotation, 150)),
                               0.0)

    def test_squaring_mu(self):
        """Checks log 2 twice along backward chains of the squaring map."""
        f = MapFactory.create_builtin('squaring')
        cocycles = mu_orbits(f, 2, 2000, n_skip=20, seed=5)
        ensemble = ensemble_exponents(cocycles)
        self.assertAlmostEqual(ensemble.chi1, math.log(2.0), delta=0.01)
        self.assertAlmostEqual(ensemble.chi2, math.log(2.0), delta=0.01)
        self.assertEqual(ensemble.to_dict()['n_orbits'], 2)


class TestEnsemble(TestCase):
    """Test cases for ensembles and exponent checks."""

    def test_spread(self):
        """Checks the mean and the spread of two orbits."""
        ensemble = ensemble_exponents(
            [constant_cocycle(np.diag([2.0, 1.0]), 200),
             constant_cocycle(np.diag([4.0, 1.0]), 200)])
        self.assertAlmostEqual(ensemble.chi2, 1.5 * math.log(2.0), places=2)
        self.assertAlmostEqual(ensemble.chi2_spread, 0.5 * math.log(2.0),
                               places=2)

    def test_empty(self):
        """Checks that an ensemble needs an orbit."""
        with self.assertRaises(InvalidArgument):
            ensemble_exponents([])

    def test_mu_bound(self):
        """Checks the lower bound log(d) / 2."""
        estimate = lyapunov_pair(constant_cocycle(np.diag([2.0, 2.0]), 200))
        check = mu_exponent_check(estimate, 2)
        self.assertTrue(check.passed)
        self.assertAlmostEqual(check.bound, math.log(2.0) / 2.0)
        weak = lyapunov_pair(constant_cocycle(np.diag([2.0, 1.0]), 200))
        self.assertFalse(mu_exponent_check(weak, 2).passed)
