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
import os

import numpy as np

from saddlelab.exceptions.pesin import ConditionViolated
from saddlelab.pesin.graph import (LIPSCHITZ_SLACK, MIN_NODES,
                                   LipschitzGraph, LocalDiagonalMap,
                                   graph_transform, measure_lipschitz)
from tests.e2e.fixture import DATA, ExperimentTest

MONOMIALS = ((2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3))
GRAPH_RADIUS = 0.5


def random_unit(rng):
    return np.exp(2j * np.pi * rng.random())


def random_table(rng, size):
    return {exponents: size * rng.random() * random_unit(rng)
            for exponents in MONOMIALS if rng.random() < 0.5}


def random_graph(rng, gamma):
    """Graph of a gamma Lipschitz function over the disc of radius 0.5."""
    u = (rng.random() + 1e-3) * random_unit(rng)
    v = rng.random() * random_unit(rng)
    share = rng.random()
    rotation = random_unit(rng)
    offset = 0.05 * rng.random() * random_unit(rng)

    def phi(x):
        linear = (u * x + v * np.conj(x)) / (abs(u) + abs(v))
        wave = GRAPH_RADIUS * np.sin(np.real(x * rotation) / GRAPH_RADIUS)
        return offset + gamma * (share * linear + (1.0 - share) * wave)

    return LipschitzGraph.from_function(phi, 0.0, GRAPH_RADIUS, gamma,
                                        n_nodes=MIN_NODES)


def admissible_pair(rng):
    """A local map and a graph with delta (1 + gamma) < |lambda|."""
    while True:
        lam = rng.uniform(1.5, 3.0) * random_unit(rng)
        mu = rng.uniform(0.1, 1.2) * random_unit(rng)
        g = LocalDiagonalMap(lam, mu, random_table(rng, 0.15),
                             random_table(rng, 0.15),
                             seed=int(rng.integers(2 ** 31)))
        gamma = rng.uniform(0.0, 0.5)
        if g.domination(gamma) < 0.75 * abs(lam):
            return g, random_graph(rng, gamma)


class TestGraphTransform(ExperimentTest):
    """Lipschitz bound of the graph transform on random inputs.
    """

    def test_admissible_pairs(self):
        """Checks that images of admissible pairs never exceed the
        Lipschitz formula."""
        rng = np.random.default_rng(2022)
        violations = []
        for index in range(1000):
            g, graph = admissible_pair(rng)
            image = graph_transform(g, graph)
            bound = g.image_lipschitz(graph.gamma)
            measured = measure_lipschitz(image)
            self.assertEqual(image.gamma, bound)
            if measured > bound + 1e-9:
                violations.append((index, measured, bound))

        self.assertEqual(violations, [])

    def test_inadmissible_pairs(self):
        """Checks that pairs breaking the domination condition are
        rejected."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            g, graph = admissible_pair(rng)
            # declared bounds may exceed the sampled one
            delta = abs(g.lam) / (1.0 + graph.gamma) * \
                rng.uniform(1.0 + LIPSCHITZ_SLACK, 2.0)
            inadmissible = LocalDiagonalMap(g.lam, g.mu, g.alpha, g.beta,
                                            r=g.r, delta=delta)
            with self.assertRaises(ConditionViolated):
                graph_transform(inadmissible, graph)

    def test_cli_condition_violated(self):
        """Checks that the CLI exits with 3 on an inadmissible local map.
        """
        code, document = self.run_command(
            'graph-transform', '--local-map',
            os.path.join(DATA, 'inadmissible_map.json'))

        self.assertEqual(code, 3)
        self.assertEqual(document['status'], 'error')
        self.assertEqual(document['error']['kind'], 'ConditionViolated')
        self.assertTrue(document['error']['message'].startswith('step 0: '))

    def test_cli_default(self):
        """Checks that the default pair contracts the Lipschitz constant."""
        result = self.run_ok('graph-transform')

        self.assertEqual(result['n_maps'], 1)
        self.assertLess(result['gammas'][-1], result['gammas'][0])
        self.assertLessEqual(result['measured_lipschitz'],
                             result['gammas'][-1] + 1e-9)
