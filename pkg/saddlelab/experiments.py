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
import os
import warnings

import numpy as np

from saddlelab.ergodic.cocycle import mu_orbits, nu_orbits
from saddlelab.ergodic.entropy import assert_resolution, \
    brin_katok_entropy, ruelle_check
from saddlelab.ergodic.lyapunov import ensemble_exponents, mu_exponent_check
from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.ergodic import ResolutionFloor
from saddlelab.geometry.curves import ProjectiveLine
from saddlelab.maps.endomorphism import ProductMap, map_hash
from saddlelab.maps.map_factory import MapFactory, MapType, \
    siegel_multiplier
from saddlelab.measures.family import build_S_m
from saddlelab.measures.oracles import inverse_iteration_1d, \
    lyapunov_oracle_1d
from saddlelab.measures.samplers import DEFAULT_START, sample_mu, sample_nu
from saddlelab.measures.siegel import is_bounded_type, sample_alpha, \
    siegel_linearize, weyl_sum
from saddlelab.pesin.graph import LipschitzGraph, LocalDiagonalMap, \
    iterate_graph_transform, load_graph, load_local_maps, \
    measure_lipschitz, save_graph
from saddlelab.potential.green import GreenEvaluator, convergence_profile, \
    decay_slope, green_functional_equation_residual, green_grid, \
    sphere_samples
from saddlelab.utils.files import ensure_directory
from saddlelab.utils.images import write_pgm

LOG = logging.getLogger(__name__)

EXPERIMENTS = {}
"""Runner of every subcommand, by name."""

NU_ANCHOR = 0.5
GREEN_CHECK_POINTS = 1000
RESIDUAL_POINTS = 100
DECAY_RANGE = (5, 25)

DEFAULT_LOCAL_MAP = {'lambda': [2.0, 0.0], 'mu': [0.5, 0.0],
                     'alpha': [[2, 0, 0.05, 0.0]],
                     'beta': [[1, 1, 0.05, 0.0]], 'r': 1.0}
DEFAULT_GRAPH_RADIUS = 0.4
DEFAULT_GRAPH_SLOPE = 0.2


def experiment(name):
    """Registers a function as the runner of a subcommand."""
    def decorator(func):
        setattr(func, 'command', name)
        EXPERIMENTS[name] = func
        return func
    return decorator


def parse_start(text):
    """Reads an orbit start point written as "z,w,t".

    :raises InvalidArgument: If the text is not three complex numbers.
    """
    if text is None:
        return DEFAULT_START
    try:
        coordinates = tuple(complex(part.strip().replace(' ', ''))
                            for part in str(text).split(','))
    except ValueError as ex:
        raise InvalidArgument(
            f"Start point must be 'z,w,t' complex numbers, got {text!r}") \
            from ex
    if len(coordinates) != 3:
        raise InvalidArgument(
            f"Start point needs three coordinates, got {len(coordinates)}")
    return coordinates


class ExperimentContext:
    """Resolved configuration of a run plus the objects shared between the
    stages of an experiment: the map, its Green evaluator, the Siegel
    linearization and the artifact files written so far.
    """

    def __init__(self, config, command):
        self.config = config
        self.command = command
        self.artifacts = []
        self._map = None
        self._green = None
        self._linearization = None

    def get(self, name):
        """Value of a configuration attribute."""
        return self.config.get(name)

    @property
    def map_source(self):
        """Builtin name or map file path, squaring when neither is set."""
        if self.get('map_file') is not None:
            return self.get('map_file')
        return self.get('builtin') or MapType.SQUARING.value

    @property
    def endomorphism(self):
        """The map under study, built once."""
        if self._map is None:
            if self.get('map_file') is not None:
                self._map = MapFactory.from_file(self.get('map_file'))
            else:
                self._map = MapFactory.create_builtin(
                    MapType(self.map_source), theta=self.get('theta'))
            LOG.debug("Using %r from %s", self._map, self.map_source)
        return self._map

    @property
    def map_hash(self):
        """Content hash of the definition of the map."""
        return map_hash(self.endomorphism)

    @property
    def green(self):
        """Green evaluator with the configured budget and seed."""
        if self._green is None:
            self._green = GreenEvaluator(self.endomorphism,
                                         n_iter=self.get('n_iter'),
                                         seed=self.get('seed'))
        return self._green

    @property
    def linearization(self):
        """Linearization of lambda z + z^2, lambda = exp(2 pi i theta)."""
        if self._linearization is None:
            self._linearization = siegel_linearize(
                siegel_multiplier(self.get('theta')),
                n_terms=self.get('n_terms'))
        return self._linearization

    @property
    def is_siegel(self):
        """Whether the map is the builtin Siegel product map."""
        return self.get('map_file') is None and \
            self.map_source == MapType.SIEGEL.value

    @property
    def line(self):
        """The line L whose pushforwards carry nu.

        For the Siegel map it is the vertical line through the invariant
        circle at the configured level of the disk, otherwise z = 0.5.
        """
        if self.is_siegel:
            linearization = self.linearization
            anchor = linearization.invariant_point(
                self.get('level') * linearization.radius_estimate)
            return ProjectiveLine.vertical(anchor)
        return ProjectiveLine.vertical(NU_ANCHOR)

    @property
    def start(self):
        """Start point of orbits and backward chains."""
        return parse_start(self.get('start'))

    def artifact(self, suffix):
        """Path of an artifact file, recorded for the result file.

        :param suffix: Ending of the file name, like ``.csv``.
        :return: Path inside the output directory.
        """
        name = f"{self.command}{suffix}"
        self.artifacts.append(name)
        return os.path.join(ensure_directory(self.get('out')), name)


def _sample_measure(context):
    """Cloud of the configured measure."""
    config = context.get
    if config('measure') == 'mu':
        return sample_mu(context.endomorphism, config('n_backward'),
                         config('n_points'), seed=config('seed'),
                         threads=config('threads'), start=context.start)
    family = build_S_m(context.endomorphism, context.line, config('m'),
                       extra_depth=config('refine_steps'))
    return sample_nu(context.green, family, config('grid_size'),
                     config('n_points'), seed=config('seed'),
                     threads=config('threads'),
                     refine_steps=config('refine_steps'))


def _orbits(context):
    """Cocycles along orbits of the configured measure."""
    config = context.get
    if config('measure') == 'mu':
        return mu_orbits(context.endomorphism, config('n_orbits'),
                         config('orbit_length'), n_skip=config('n_skip'),
                         seed=config('seed'), threads=config('threads'),
                         start=context.start)
    return nu_orbits(context.green, context.line, config('n_orbits'),
                     config('orbit_length'), n_skip=config('n_skip'),
                     grid_size=config('grid_size'), seed=config('seed'),
                     threads=config('threads'), m=config('m'))


def _exponents(context):
    ensemble = ensemble_exponents(_orbits(context), seed=context.get('seed'))
    result = ensemble.to_dict()
    degree = context.endomorphism.degree
    if context.get('measure') == 'mu':
        check = mu_exponent_check(ensemble, degree)
        result['lower_bound'] = {'bound': check.bound,
                                 'margin': check.margin,
                                 'passed': check.passed}
    else:
        result['half_log_degree'] = math.log(degree) / 2.0
    return ensemble, result


def _entropy(context, cloud):
    config = context.get
    degree = context.endomorphism.degree
    target = (2.0 if config('measure') == 'mu' else 1.0) * math.log(degree)
    assert_resolution(config('n'), len(cloud), target)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', ResolutionFloor)
        estimate = brin_katok_entropy(context.endomorphism, cloud,
                                      n=config('n'),
                                      epsilon=config('epsilon'),
                                      n_centers=config('n_centers'),
                                      seed=config('seed'),
                                      threads=config('threads'))
    result = estimate.to_dict()
    result['target'] = target
    result['resolution_floor'] = any(
        issubclass(item.category, ResolutionFloor) for item in caught)
    return estimate, result


def _export(context, cloud):
    cloud.export(context.artifact('.csv'), context.artifact('.measure.json'),
                 map_hash=context.map_hash)
    return cloud.sidecar(context.map_hash)


@experiment('green')
def run_green(context):
    """Green potential on the parameter grid of L and its convergence."""
    ge = context.green
    zeta, values = green_grid(ge, context.line, context.get('grid_size'))
    table = np.column_stack([zeta.real.ravel(), zeta.imag.ravel(),
                             values.ravel()])
    np.savetxt(context.artifact('.csv'), table, delimiter=',', fmt='%.17g',
               header='re_zeta,im_zeta,green', comments='')
    write_pgm(values, context.artifact('.pgm'))

    samples = sphere_samples(GREEN_CHECK_POINTS, seed=context.get('seed'))
    profile = convergence_profile(ge, samples,
                                  max(ge.n_iter, DECAY_RANGE[1] + 1))
    fit = decay_slope(profile, *DECAY_RANGE)
    residual = max(green_functional_equation_residual(ge, lift)
                   for lift in samples[:RESIDUAL_POINTS])
    result = {'n_iter': ge.n_iter, 'u_bound': ge.u_bound,
              'functional_residual': {'max': residual,
                                      'bound': ge.residual_bound(),
                                      'passed': residual <=
                                      ge.residual_bound()},
              'error_bound': ge.error_bound(), 'sup_bound': ge.sup_bound(),
              'grid': {'min': float(values.min()),
                       'max': float(values.max())},
              'decay': {'slope': fit.slope, 'intercept': fit.intercept,
                        'rvalue': fit.rvalue,
                        'expected': -math.log(ge.degree)}}
    if context.get('map_file') is None and \
            context.map_source == MapType.SQUARING.value:
        exact = np.log(np.max(np.abs(samples), axis=1)) - \
            np.log(np.linalg.norm(samples, axis=1))
        result['closed_form_error'] = float(
            np.max(np.abs(ge.values(samples) - exact)))
    return result


@experiment('orbit')
def run_orbit(context):
    """Forward orbit of the start point."""
    orbit = context.endomorphism.orbit_lifts(
        np.array(context.start, dtype=complex), context.get('orbit_length'))
    columns = [np.arange(orbit.shape[0])]
    for index in range(3):
        columns.extend([orbit[:, index].real, orbit[:, index].imag])
    np.savetxt(context.artifact('.csv'), np.column_stack(columns),
               delimiter=',', fmt='%.17g',
               header='step,re_z,im_z,re_w,im_w,re_t,im_t', comments='')
    return {'length': int(orbit.shape[0]), 'start': list(orbit[0]),
            'end': list(orbit[-1])}


@experiment('sample-mu')
def run_sample_mu(context):
    """Inverse-iteration sample of the measure of maximal entropy."""
    config = context.get
    cloud = sample_mu(context.endomorphism, config('n_backward'),
                      config('n_points'), seed=config('seed'),
                      threads=config('threads'), start=context.start)
    return _export(context, cloud)


@experiment('sample-nu')
def run_sample_nu(context):
    """Slice sample of nu_m = T ^ S_m."""
    config = context.get
    family = build_S_m(context.endomorphism, context.line, config('m'),
                       extra_depth=config('refine_steps'))
    cloud = sample_nu(context.green, family, config('grid_size'),
                      config('n_points'), seed=config('seed'),
                      threads=config('threads'),
                      refine_steps=config('refine_steps'))
    result = _export(context, cloud)
    result['family'] = family.describe()
    return result


@experiment('sample-alpha')
def run_sample_alpha(context):
    """Orbit sample of the rotation measure on an invariant circle."""
    linearization = context.linearization
    a0 = linearization.invariant_point(
        context.get('level') * linearization.radius_estimate)
    cloud = sample_alpha(linearization, a0, n_skip=context.get('n_skip'),
                         n_points=context.get('n_points'))
    result = _export(context, cloud)
    result['radius_estimate'] = linearization.radius_estimate
    result['weyl_sum'] = weyl_sum(linearization, cloud.points[:, 0])
    return result


@experiment('lyapunov')
def run_lyapunov(context):
    """Lyapunov exponents over an ensemble of orbits."""
    _, result = _exponents(context)
    f = context.endomorphism
    if context.get('measure') == 'nu' and isinstance(f, ProductMap):
        samples = inverse_iteration_1d(f.q, n_points=context.get('n_points'),
                                       n_backward=context.get('n_backward'),
                                       seed=context.get('seed'),
                                       threads=context.get('threads'))
        oracle = lyapunov_oracle_1d(f.q, samples)
        result['oracle'] = {'chi2': oracle,
                            'difference': result['chi2'] - oracle}
    return result


@experiment('entropy')
def run_entropy(context):
    """Bowen ball entropy of a sampled measure."""
    _, result = _entropy(context, _sample_measure(context))
    return result


@experiment('ruelle')
def run_ruelle(context):
    """Ruelle inequality for the entropy and exponents of one measure."""
    estimate, entropy = _entropy(context, _sample_measure(context))
    ensemble, exponents = _exponents(context)
    ceiling = None
    if context.get('measure') == 'nu':
        ceiling = math.log(context.endomorphism.degree)
    check = ruelle_check(estimate.value, ensemble, tol=context.get('tol'),
                         ceiling=ceiling)
    return {'entropy': entropy, 'exponents': exponents,
            'check': check.to_dict()}


@experiment('siegel')
def run_siegel(context):
    """Linearization coefficients of lambda z + z^2."""
    result = context.linearization.to_dict()
    result['bounded_type'] = is_bounded_type(context.get('theta'))
    return result


def _default_graph():
    slope = DEFAULT_GRAPH_SLOPE
    return LipschitzGraph.from_function(lambda x: slope * x, 0.0,
                                        DEFAULT_GRAPH_RADIUS, slope)


@experiment('graph-transform')
def run_graph_transform(context):
    """Pushes a Lipschitz graph along a sequence of local maps."""
    if context.get('local_map_file') is not None:
        maps = load_local_maps(context.get('local_map_file'))
    else:
        maps = [LocalDiagonalMap.from_dict(DEFAULT_LOCAL_MAP)]
    if context.get('graph_file') is not None:
        graph = load_graph(context.get('graph_file'))
    else:
        graph = _default_graph()

    outcome = iterate_graph_transform(maps, graph,
                                      gamma_target=context.get(
                                          'gamma_target'))
    save_graph(outcome.graph, context.artifact('.graph.json'))
    return {'n_maps': len(maps), 'gammas': outcome.gammas,
            'steps_to_target': outcome.steps_to_target,
            'measured_lipschitz': measure_lipschitz(outcome.graph),
            'n_nodes': int(outcome.graph.nodes.size),
            'center': outcome.graph.center,
            'radius': outcome.graph.radius,
            'deltas': [g.delta for g in maps]}
