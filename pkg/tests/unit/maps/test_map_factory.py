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
import json
import os
import tempfile
from unittest import TestCase

import numpy as np

from saddlelab.exceptions.maps import InvalidMapDefinition
from saddlelab.maps.endomorphism import (HomogeneousEndomorphism,
                                         ProductMap, map_hash)
from saddlelab.maps.map_factory import (GOLDEN_MEAN, MapFactory, MapType,
                                        siegel_multiplier)


class TestMapFactory(TestCase):
    """Test cases for :class:`MapFactory`."""

    def test_squaring(self):
        """Checks the builtin squaring map."""
        f = MapFactory.create_builtin('squaring')
        self.assertIsInstance(f, ProductMap)
        np.testing.assert_array_equal(f.p, [0, 0, 1])

    def test_siegel(self):
        """Checks the builtin Siegel map for the golden mean."""
        f = MapFactory.create_builtin(MapType.SIEGEL)
        multiplier = siegel_multiplier(GOLDEN_MEAN)
        self.assertAlmostEqual(abs(multiplier), 1.0)
        self.assertAlmostEqual(f.p[1], multiplier)
        self.assertAlmostEqual(f.q[1], multiplier)

    def test_unknown_builtin(self):
        """Checks that unknown names are rejected."""
        with self.assertRaises(InvalidMapDefinition):
            MapFactory.create_builtin('cubic')

    def test_product_definition(self):
        """Checks the product layout with [re, im] pairs."""
        f = MapFactory.from_definition(
            {'product': {'p': [0, [0.5, 0.5], 1], 'q': [1, 0, 1]}})
        self.assertAlmostEqual(f.p[1], 0.5 + 0.5j)
        self.assertAlmostEqual(f.q[0], 1.0)

    def test_general_definition(self):
        """Checks the general layout round trip."""
        f = MapFactory.create_builtin('squaring')
        definition = HomogeneousEndomorphism.definition(f)
        g = MapFactory.from_definition(definition)
        self.assertEqual(g.degree, 2)
        self.assertEqual(g.components, f.components)

    def test_malformed_definitions(self):
        """Checks that malformed definitions raise."""
        for definition in ([], {'product': {'p': [0, 0, 1]}},
                           {'degree': 2},
                           {'product': {'p': ['x'], 'q': [0, 0, 1]}}):
            with self.assertRaises(InvalidMapDefinition):
                MapFactory.from_definition(definition)

    def test_degenerate_definition(self):
        """Checks that components with a common zero are rejected."""
        definition = {'degree': 2,
                      'components': [[[[2, 0, 0], 1, 0]],
                                     [[[1, 1, 0], 1, 0]],
                                     [[[1, 0, 1], 1, 0]]]}
        with self.assertRaises(InvalidMapDefinition):
            MapFactory.from_definition(definition)

    def test_from_file(self):
        """Checks loading a definition file and its hash."""
        f = MapFactory.create_builtin('squaring')
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'map.json')
            with open(path, 'w', encoding='utf8') as buffer:
                json.dump(f.definition(), buffer)
            loaded = MapFactory.from_file(path)
        self.assertEqual(map_hash(loaded), map_hash(f))

    def test_missing_file(self):
        """Checks that a missing file is a validation error."""
        with self.assertRaises(InvalidMapDefinition):
            MapFactory.from_file('/does/not/exist.json')

    def test_unparsable_file(self):
        """Checks that a file that is not JSON is rejected."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'map.json')
            with open(path, 'w', encoding='utf8') as buffer:
                buffer.write('{not json')
            with self.assertRaises(InvalidMapDefinition):
                MapFactory.from_file(path)
