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
from dataclasses import dataclass

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.geometry.projective import (ProjPoint, best_charts, normalize,
                                           normalize_lifts)
from saddlelab.maps.endomorphism import ProductMap
from saddlelab.measures.family import DEFAULT_M, build_S_m, track_lines
from saddlelab.measures.samplers import (DEFAULT_START, backward_chains,
                                         require_product_map, sample_nu)
from saddlelab.potential.slicing import DEFAULT_GRID_SIZE, line_slice_density
from saddlelab.utils.pool import partition, run_blocks

LOG = logging.getLogger(__name__)

DEFAULT_N_SKIP = 100
ORBIT_BLOCK = 16


@dataclass
class OrbitCocycle:
    """Chart derivatives of f along a finite orbit.

    ``points`` holds x_0, ..., x_(n-1) and ``charts`` n + 1 chart indices;
    ``matrices[k]`` is Df at x_k from chart ``charts[k]`` to chart
    ``charts[k + 1]``.
    """
    points: np.ndarray
    charts: np.ndarray
    matrices: np.ndarray

    @property
    def length(self):
        """Number of steps n."""
        return self.matrices.shape[0]

    def orbit(self):
        """The base points as ProjPoints."""
        return [ProjPoint(lift) for lift in self.points]

    def product(self, start=0, stop=None):
        """A_(stop-1) ... A_start."""
        stop = self.length if stop is None else stop
        result = np.eye(2, dtype=complex)
        for matrix in self.matrices[start:stop]:
            result = matrix @ result
        return result

    def log_determinants(self):
        """log |det A_k| for every step."""
        return np.log(np.abs(np.linalg.det(self.matrices)))


def _chain_matrices(f, lifts):
    charts = best_charts(lifts)
    matrices = f.chart_jacobians(lifts[:-1], charts[:-1], charts[1:])
    return OrbitCocycle(points=lifts[:-1], charts=charts, matrices=matrices)


def build_cocycle(f, x, n):
    """Cocycle of the forward orbit x, f(x), ..., f^(n-1)(x).

    Each point is read in the chart of its largest coordinate, so the
    destination chart of a step is the source chart of the next one.

    :rtype: :class:`OrbitCocycle`
    :raises InvalidArgument: If n < 1.
    """
    if n < 1:
        raise InvalidArgument(f'Orbit length must be >= 1, got {n}')
    return _chain_matrices(f, f.orbit_lifts(normalize(x).lift, n + 1))


def build_chain_cocycle(f, chain):
    """Cocycle along a chain x_0, ..., x_n with f(x_k) = x_(k+1).

    :param chain: Unit lifts (n + 1, 3) or a list of ProjPoints, in
        forward order.
    :rtype: :class:`OrbitCocycle`
    """
    if isinstance(chain, (list, tuple)):
        chain = np.array([normalize(point).lift for point in chain])
    lifts = normalize_lifts(np.asarray(chain, dtype=complex))
    if lifts.shape[0] < 2:
        raise InvalidArgument('A chain cocycle needs at least two points')
    return _chain_matrices(f, lifts)


def inverse_cocycle(cocycle):
    """Cocycle of the inverse steps A_k^-1 taken in reverse order."""
    return OrbitCocycle(points=cocycle.points[::-1].copy(),
                        charts=cocycle.charts[::-1].copy(),
                        matrices=np.linalg.inv(cocycle.matrices[::-1]))


def _check_lengths(n_orbits, length, n_skip):
    if n_orbits < 1 or length < 1 or n_skip < 0:
        raise InvalidArgument(
            'n_orbits and orbit length must be >= 1, n_skip >= 0')


def mu_orbits(f, n_orbits, length, n_skip=DEFAULT_N_SKIP, seed=0,
              threads=1, start=DEFAULT_START):
    """Cocycles along backward chains of the measure of maximal entropy.

    Each chain is pulled back length + n_skip steps from ``start`` with
    uniform branches; the n_skip steps closest to the start are dropped.

    :rtype: list[OrbitCocycle]
    """
    require_product_map(f, 'mu_orbits')
    _check_lengths(n_orbits, length, n_skip)
    depth = length + n_skip
    origin = normalize(start).lift

    def chains(block, rng):
        begin, end = block
        lifts = backward_chains(f, np.tile(origin, (end - begin, 1)),
                                depth, rng)
        return [build_chain_cocycle(f, lifts[:length + 1, index])
                for index in range(end - begin)]

    blocks = run_blocks(chains, partition(n_orbits, ORBIT_BLOCK),
                        seed=seed, threads=threads)
    return [cocycle for block in blocks for cocycle in block]


def nu_orbits(ge, line, n_orbits, length, n_skip=DEFAULT_N_SKIP,
              grid_size=DEFAULT_GRID_SIZE, seed=0, threads=1, m=DEFAULT_M):
    """Cocycles along orbits distributed like nu.

    When the images f^j(L) stay lines, each chain starts from a sample of
    T ^ [f^N(L)], N = length + n_skip, and is pulled back along the lines
    down to L, so its points sweep the family f^j(L). Otherwise the orbits
    are forward orbits of nu_m samples after n_skip burn-in steps.

    :rtype: list[OrbitCocycle]
    """
    _check_lengths(n_orbits, length, n_skip)
    f = ge.map
    depth = length + n_skip
    lines = track_lines(f, line, depth) if isinstance(f, ProductMap) else []

    if len(lines) < depth + 1:
        LOG.warning("Images of L are not lines, using forward orbits of "
                    "nu_%d samples", m)
        family = build_S_m(f, line, m)
        starts = sample_nu(ge, family, grid_size, n_orbits, seed=seed,
                           threads=threads)

        def forward(index):
            x = starts.points[index]
            for _ in range(n_skip):
                x = f.apply_lifts(x)
            return build_cocycle(f, x, length)

        return run_blocks(forward, list(range(n_orbits)), threads=threads)

    density = line_slice_density(ge, lines[depth], grid_size)

    def chains(block, rng):
        begin, end = block
        charts, coordinates = density.sample(end - begin, rng)
        starts = lines[depth].points(charts, coordinates)
        lifts = backward_chains(f, starts, depth, rng, lines=lines)
        return [build_chain_cocycle(f, lifts[:length + 1, index])
                for index in range(end - begin)]

    LOG.debug("Pulling %d chains back along %d image lines", n_orbits,
              depth)
    blocks = run_blocks(chains, partition(n_orbits, ORBIT_BLOCK),
                        seed=seed, threads=threads)
    return [cocycle for block in blocks for cocycle in block]
