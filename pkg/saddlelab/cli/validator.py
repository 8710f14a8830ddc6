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
import logging
import math

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.maps.map_factory import MapType

LOG = logging.getLogger(__name__)

POSITIVE_COUNTS = ('m', 'n_backward', 'n_points', 'grid_size', 'n_iter', 'n',
                   'n_centers', 'n_orbits', 'orbit_length', 'n_terms',
                   'threads')
NONNEGATIVE_COUNTS = ('n_skip', 'refine_steps')


class Validator:
    """This is a helper class that checks a resolved experiment
    configuration before anything is computed.
    """

    def __init__(self, config):
        self.config = config

    def _check_type(self, name, kind):
        value = self.config.get(name)
        if value is None:
            return
        if kind is int:
            valid = isinstance(value, int) and not isinstance(value, bool)
        else:
            valid = isinstance(value, (int, float)) and \
                not isinstance(value, bool) and math.isfinite(value)
        if not valid:
            raise InvalidArgument(
                f"'{name}' must be a{'n integer' if kind is int else ' number'}"
                f", got {value!r}")

    def _check_counts(self):
        for name in POSITIVE_COUNTS:
            self._check_type(name, int)
            if self.config.get(name) < 1:
                raise InvalidArgument(
                    f"'{name}' must be positive, got {self.config.get(name)}")
        for name in NONNEGATIVE_COUNTS:
            self._check_type(name, int)
            if self.config.get(name) < 0:
                raise InvalidArgument(
                    f"'{name}' must be >= 0, got {self.config.get(name)}")

    def _check_ranges(self):
        for name in ('theta', 'epsilon', 'level', 'tol', 'gamma_target'):
            self._check_type(name, float)
        epsilon = self.config.get('epsilon')
        if not 0.0 < epsilon < 0.5:
            raise InvalidArgument(
                f"'epsilon' must be in (0, 0.5), got {epsilon}")
        level = self.config.get('level')
        if not 0.0 < level < 1.0:
            raise InvalidArgument(f"'level' must be in (0, 1), got {level}")
        if self.config.get('tol') < 0:
            raise InvalidArgument("'tol' must be nonnegative")

    def _check_seed(self):
        self._check_type('seed', int)
        if self.config.get('seed') is None or self.config.get('seed') < 0:
            raise InvalidArgument("'seed' must be an explicit integer >= 0")

    def _check_map_source(self):
        builtin = self.config.get('builtin')
        map_file = self.config.get('map_file')
        if builtin is not None and map_file is not None:
            raise InvalidArgument(
                "Use either a builtin map or a map file, not both")
        if builtin is not None and builtin not in {item.value
                                                   for item in MapType}:
            raise InvalidArgument(f"Unknown builtin map '{builtin}'")

    def validate(self):
        """Checks the configuration.

        :raises InvalidArgument: On the first violated rule.
        """
        self._check_counts()
        self._check_ranges()
        self._check_seed()
        self._check_map_source()
        if self.config.get('measure') not in ('mu', 'nu'):
            raise InvalidArgument(
                f"'measure' must be mu or nu, got "
                f"{self.config.get('measure')!r}")
        LOG.debug("Configuration is valid")
        return self.config
