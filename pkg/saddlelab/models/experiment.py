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

from saddlelab.cli.argument import Argument
from saddlelab.maps.map_factory import GOLDEN_MEAN, MapType
from saddlelab.models.model import Model

LOG = logging.getLogger(__name__)

RUNTIME_FIELDS = ('threads', 'out')
"""Fields that never change a result, left out of result files."""


def _field(attr_type, default, flag, description, choices=None):
    return {'attr_type': attr_type, 'default': default,
            'arguments': [Argument(name=flag, arg_type=attr_type,
                                   description=description,
                                   choices=choices)]}


def _bind(api):
    """Points every flag of an attribute table at its attribute."""
    for name, entry in api.items():
        for argument in entry['arguments']:
            argument.dest = name
    return api


class ExperimentConfig(Model):
    """Fully resolved parameters of one experiment run.

    Values come, from lowest to highest priority, from the defaults below,
    the ``defaults`` section of the configuration file, the section named
    after the command and the command line flags.
    """

    API = _bind({
        'builtin': _field(str, None, '--builtin', 'Builtin map to study',
                          choices=tuple(item.value for item in MapType)),
        'map_file': _field(str, None, '--map',
                           'Path to a JSON map definition'),
        'theta': _field(float, GOLDEN_MEAN, '--theta',
                        'Rotation number of the Siegel map'),
        'm': _field(int, 8, '--m',
                    'Number of averaged pushforwards of the line'),
        'n_backward': _field(int, 60, '--n-backward',
                             'Backward steps of the mu sampler'),
        'n_points': _field(int, 10_000, '--n-points',
                           'Number of points of sampled measures'),
        'grid_size': _field(int, 256, '--grid-size',
                            'Points per axis of slice and Green grids'),
        'n_iter': _field(int, 25, '--n-iter',
                         'Terms of the Green potential series'),
        'n': _field(int, 8, '--n', 'Length of the Bowen balls'),
        'epsilon': _field(float, 0.05, '--epsilon',
                          'Radius of the Bowen balls'),
        'n_centers': _field(int, 200, '--n-centers',
                            'Number of Bowen ball centers'),
        'n_orbits': _field(int, 50, '--n-orbits',
                           'Number of orbits for the exponents'),
        'orbit_length': _field(int, 10_000, '--orbit-length',
                               'Length of each orbit'),
        'n_skip': _field(int, 100, '--n-skip',
                         'Burn-in steps dropped from each orbit'),
        'measure': _field(str, 'mu', '--measure',
                          'Measure the estimators run on',
                          choices=('mu', 'nu')),
        'level': _field(float, 0.05, '--level',
                        'Invariant circle level as a fraction of the '
                        'Siegel disk radius'),
        'n_terms': _field(int, 64, '--n-terms',
                          'Terms of the linearizing series'),
        'refine_steps': _field(int, 0, '--refine-steps',
                               'Pull nu samples back along the line family'),
        'tol': _field(float, 0.05, '--tol',
                      'Tolerance of the inequality checks'),
        'gamma_target': _field(float, 1e-3, '--gamma-target',
                               'Lipschitz constant the graph transform '
                               'should reach'),
        'graph_file': _field(str, None, '--graph',
                             'Path to a JSON Lipschitz graph'),
        'local_map_file': _field(str, None, '--local-map',
                                 'Path to a JSON local map or cocycle'),
        'start': _field(str, None, '--start',
                        'Orbit start point as "z,w,t" complex numbers'),
        'seed': _field(int, 0, '--seed', 'Seed of every random choice'),
        'threads': _field(int, 1, '--threads', 'Size of the worker pool'),
        'out': _field(str, 'saddlelab_results', '--out',
                      'Directory receiving the result files'),
    })

    @classmethod
    def resolve(cls, sections, command, flags):
        """Merges configuration sections and user flags.

        :param sections: Mapping with an optional ``defaults`` entry and one
            entry per command.
        :param command: Name of the command being run.
        :param flags: Parsed flags, :class:`Argument` by destination.
        :rtype: :class:`ExperimentConfig`
        """
        attributes = {}
        for source in (sections.get('defaults') or {},
                       sections.get(command) or {}):
            attributes.update({key.replace('-', '_'): cls._coerce(key, value)
                               for key, value in source.items()})
        attributes.update({name: argument.value
                           for name, argument in flags.items()})
        unknown = sorted(set(attributes) - set(cls.API))
        if unknown:
            LOG.warning("Ignoring unknown settings: %s", ', '.join(unknown))
        return cls(attributes)

    @classmethod
    def _coerce(cls, key, value):
        # yaml reads exponent floats without a dot, like 1e-3, as strings
        entry = cls.API.get(key.replace('-', '_'))
        if entry is None or not isinstance(value, str) or \
                entry['attr_type'] not in (int, float):
            return value
        try:
            return entry['attr_type'](value)
        except ValueError:
            return value

    def get(self, name):
        """Value of an attribute."""
        return getattr(self, name).value

    def canonical(self):
        """Settings that determine the result, in a fixed order."""
        return self.to_dict(exclude=RUNTIME_FIELDS)
