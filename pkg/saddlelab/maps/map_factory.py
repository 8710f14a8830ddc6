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
import cmath
import logging
import math
from enum import Enum

from saddlelab.exceptions.maps import Degenerate, InvalidMapDefinition
from saddlelab.maps.endomorphism import HomogeneousEndomorphism, ProductMap
from saddlelab.utils.files import is_file_available, read_json

LOG = logging.getLogger(__name__)

GOLDEN_MEAN = (math.sqrt(5.0) - 1.0) / 2.0


def siegel_multiplier(theta):
    """The multiplier exp(2 pi i theta) on the unit circle."""
    return cmath.exp(2j * math.pi * theta)


class MapType(str, Enum):
    """Describes the maps the app can build without a definition file.
    """
    SQUARING = 'squaring'
    SIEGEL = 'siegel'


def _complex(value, where):
    if isinstance(value, (int, float)):
        return complex(value)
    try:
        real, imaginary = value
        return complex(float(real), float(imaginary))
    except (TypeError, ValueError) as ex:
        raise InvalidMapDefinition(
            f'Expected a number or a [re, im] pair in {where}, '
            f'got {value!r}') from ex


class MapFactory:
    """Instantiates endomorphisms from builtin names or definition files.
    """

    @staticmethod
    def create_builtin(map_type, theta=GOLDEN_MEAN):
        """Builds a builtin map.

        :param map_type: Name of the map.
        :type map_type: str or :class:`MapType`
        :param theta: Rotation number of the Siegel map.
        :type theta: float
        :return: A new product map.
        :rtype: :class:`ProductMap`
        """
        if map_type == MapType.SQUARING:
            return ProductMap([0, 0, 1], [0, 0, 1])

        if map_type == MapType.SIEGEL:
            multiplier = siegel_multiplier(theta)
            return ProductMap([0, multiplier, 1], [0, multiplier, 1])

        raise InvalidMapDefinition(f"Unknown builtin map '{map_type}'")

    @staticmethod
    def from_definition(definition):
        """Builds a map from a decoded definition.

        Two layouts are accepted, a general one,
        ``{"degree": d, "components": [[[i, j, k], re, im], ...] x 3}``
        and a product one, ``{"product": {"p": [...], "q": [...]}}`` with
        ascending coefficients.

        :raises InvalidMapDefinition: For any other layout, or when the
            three components share a zero.
        """
        if not isinstance(definition, dict):
            raise InvalidMapDefinition('A map definition is a JSON object')

        if 'product' in definition:
            product = definition['product']
            try:
                p = [_complex(c, 'p') for c in product['p']]
                q = [_complex(c, 'q') for c in product['q']]
            except (KeyError, TypeError) as ex:
                raise InvalidMapDefinition(
                    "A product map needs 'p' and 'q' coefficient "
                    "lists") from ex
            return ProductMap(p, q)

        try:
            degree = definition['degree']
            components = []
            for index, component in enumerate(definition['components']):
                table = {}
                for exponent, real, imaginary in component:
                    table[tuple(exponent)] = complex(real, imaginary)
                components.append(table)
                LOG.debug("Component %d has %d monomials", index, len(table))
        except (KeyError, TypeError, ValueError) as ex:
            raise InvalidMapDefinition(
                "A map needs a 'degree' and three 'components' of "
                "[[i, j, k], re, im] monomials") from ex
        endomorphism = HomogeneousEndomorphism(degree, components)
        try:
            endomorphism.check_nondegenerate()
        except Degenerate as ex:
            raise InvalidMapDefinition(
                f"The map is not an endomorphism of P^2: {ex}") from ex
        return endomorphism

    @staticmethod
    def from_file(file):
        """Builds a map from a JSON definition file.

        :raises InvalidMapDefinition: If the file is missing or malformed.
        """
        if not is_file_available(file):
            raise InvalidMapDefinition(f'No map definition at: {file}')
        try:
            definition = read_json(file)
        except (OSError, ValueError) as ex:
            raise InvalidMapDefinition(
                f"Failed to parse map file: '{file}'") from ex
        LOG.info("Loaded map definition from %s", file)
        return MapFactory.from_definition(definition)
