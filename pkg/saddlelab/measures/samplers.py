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

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.maps import RootFindingFailure, Unsupported
from saddlelab.geometry.projective import (ProjPoint, chordal_distances,
                                           normalize, normalize_lifts)
from saddlelab.maps.endomorphism import PREIMAGE_TOLERANCE, ProductMap
from saddlelab.measures.empirical import EmpiricalMeasure, Provenance
from saddlelab.potential.slicing import DEFAULT_GRID_SIZE, line_slice_density
from saddlelab.utils.pool import partition, run_blocks

LOG = logging.getLogger(__name__)

DEFAULT_START = (0.3 + 0.2j, -0.4 + 0.1j, 1.0)
DEFAULT_N_BACKWARD = 60
DEFAULT_N_POINTS = 10_000
MIN_N_BACKWARD = 10
GUIDE_SLACK = 10.0
GUIDE_FLOOR = 1e-9


def require_product_map(f, operation):
    """Checks that inverse branches of f are available.

    :raises Unsupported: If f is not a :class:`ProductMap`.
    """
    if not isinstance(f, ProductMap):
        raise Unsupported(f'{operation} needs a product map, got '
                          f'{type(f).__name__}')


def random_preimages(f, lifts, rng):
    """One preimage per point, uniform over the d^2 branches.

    Repeated roots are listed with their multiplicity, so the branch
    choice respects it.
    """
    z_roots, w_roots = f.coordinate_roots(lifts)
    rows = np.arange(z_roots.shape[0])
    chosen_z = rng.integers(f.degree, size=rows.size)
    chosen_w = rng.integers(f.degree, size=rows.size)
    return normalize_lifts(np.column_stack([z_roots[rows, chosen_z],
                                            w_roots[rows, chosen_w],
                                            np.ones(rows.size)]))


def guided_preimages(f, lifts, line, rng):
    """One preimage per point, uniform among those lying on ``line``.

    A candidate is on the line when its distance is within ten times the
    smallest candidate distance plus 1e-9.
    """
    candidates = f.preimage_lifts(lifts)
    distances = line.distances(candidates)
    closest = distances.min(axis=1, keepdims=True)
    on_line = distances <= GUIDE_SLACK * closest + GUIDE_FLOOR
    draws = np.where(on_line, rng.random(distances.shape), -1.0)
    chosen = np.argmax(draws, axis=1)
    rows = np.arange(candidates.shape[0])
    return normalize_lifts(candidates[rows, chosen])


def backward_chains(f, starts, n, rng, lines=None):
    """Backward orbits x_-n, ..., x_0 of a batch of points.

    :param f: The product map.
    :param starts: Points x_0, shape (N, 3).
    :param n: Number of backward steps.
    :param rng: Random generator choosing the branches.
    :param lines: Optional guide, a sequence where the starts lie on
        ``lines[n]`` and x_-k is picked on ``lines[n - k]``.
    :return: Unit lifts in forward order, shape (n + 1, N, 3).
    :raises RootFindingFailure: If a chosen preimage is not mapped back
        onto its successor.
    """
    require_product_map(f, 'backward_chains')
    if lines is not None and len(lines) < n + 1:
        raise InvalidArgument(f'A guide for {n} steps needs {n + 1} lines, '
                              f'got {len(lines)}')
    starts = normalize_lifts(np.atleast_2d(np.asarray(starts,
                                                      dtype=complex)))
    chain = np.empty((n + 1,) + starts.shape, dtype=complex)
    chain[n] = starts
    for step in range(1, n + 1):
        if lines is None:
            chain[n - step] = random_preimages(f, chain[n - step + 1], rng)
        else:
            chain[n - step] = guided_preimages(f, chain[n - step + 1],
                                               lines[n - step], rng)

    if n > 0:
        images = f.apply_lifts(chain[:-1])
        misses = chordal_distances(images, chain[1:])
        if np.max(misses) >= PREIMAGE_TOLERANCE:
            raise RootFindingFailure(
                f'Backward chain misses its successor by '
                f'{np.max(misses):.3e}')
    return chain


def backward_chain(f, x0, n, rng, guide=None):
    """Backward orbit of a single point.

    :param x0: Last point of the chain.
    :type x0: :class:`ProjPoint`
    :param guide: Optional sequence of lines, see :func:`backward_chains`.
    :return: The points x_-n, ..., x_0.
    :rtype: list[ProjPoint]
    """
    chain = backward_chains(f, normalize(x0).lift[None, :], n, rng,
                            lines=guide)
    return [ProjPoint(lift) for lift in chain[:, 0]]


def sample_mu(f, n_backward=DEFAULT_N_BACKWARD, n_points=DEFAULT_N_POINTS,
              seed=0, threads=1, start=DEFAULT_START):
    """Samples the measure of maximal entropy by inverse iteration.

    Each sample follows one random branch back from ``start``; the branch
    is uniform over the d^2 preimages counted with multiplicity.

    :rtype: :class:`EmpiricalMeasure`
    :raises Unsupported: If f is not a product map.
    :raises InvalidArgument: If n_backward < 10 or n_points < 1.
    """
    require_product_map(f, 'sample_mu')
    if n_backward < MIN_N_BACKWARD:
        raise InvalidArgument(
            f'n_backward must be >= {MIN_N_BACKWARD}, got {n_backward}')
    if n_points < 1:
        raise InvalidArgument(f'n_points must be >= 1, got {n_points}')
    origin = normalize(start).lift

    def pull_back(block, rng):
        begin, end = block
        lifts = np.tile(origin, (end - begin, 1))
        for _ in range(n_backward):
            lifts = random_preimages(f, lifts, rng)
        return lifts

    LOG.debug("Sampling mu with %d points, %d backward steps, seed %d",
              n_points, n_backward, seed)
    points = np.concatenate(run_blocks(pull_back, partition(n_points),
                                       seed=seed, threads=threads))
    return EmpiricalMeasure(points, seed=seed, provenance=Provenance.MU,
                            metadata={'n_backward': n_backward,
                                      'start': list(origin)})


def _sampling_support(family, curve, refine_steps):
    """Curve sliced for a family term, the refined line when asked."""
    if refine_steps == 0:
        return curve.curve
    line = family.line_at(curve.depth + refine_steps)
    if line is None:
        raise InvalidArgument(
            f'refine_steps={refine_steps} needs f^{curve.depth + refine_steps}'
            '(L) to be a tracked line')
    return line


def sample_nu(ge, family, grid_size=DEFAULT_GRID_SIZE,
              n_points=DEFAULT_N_POINTS, seed=0, threads=1, refine_steps=0):
    """Samples nu_m = T ^ S_m by slicing every curve of the family.

    A curve is picked with probability proportional to weight times
    multiplicity times slice mass, then a cell of its slice density.
    With ``refine_steps`` = K > 0 the sample is drawn on f^(i+K)(L) and
    pulled back K steps along the family lines, which spreads the cloud over
    the fibres of f^K.

    :param ge: Green potential evaluator of the map.
    :param family: Output of :func:`build_S_m`.
    :type family: :class:`CurveFamily`
    :rtype: :class:`EmpiricalMeasure`
    :raises MassDefect: Propagated from the slicing of a curve.
    """
    if n_points < 1:
        raise InvalidArgument(f'n_points must be >= 1, got {n_points}')
    if refine_steps < 0:
        raise InvalidArgument(
            f'refine_steps must be >= 0, got {refine_steps}')
    if refine_steps:
        require_product_map(ge.map, 'sample_nu refinement')
    supports = [_sampling_support(family, curve, refine_steps)
                for curve in family.curves]

    densities = run_blocks(
        lambda support: line_slice_density(ge, support, grid_size),
        supports, threads=threads)
    masses = np.array([density.total_mass for density in densities])
    shares = np.array([curve.weight * curve.multiplicity
                       for curve in family.curves]) * masses
    probabilities = shares / shares.sum()
    for curve, density in zip(family.curves, densities):
        LOG.debug("Curve %d: slice mass %.6f, clipped %.2e", curve.depth,
                  density.total_mass, density.clipped_fraction)

    def draw(block, rng):
        begin, end = block
        picks = rng.choice(len(densities), size=end - begin, p=probabilities)
        lifts = np.empty((end - begin, 3), dtype=complex)
        for index, (curve, density) in enumerate(zip(family.curves,
                                                     densities)):
            selected = picks == index
            if not np.any(selected):
                continue
            charts, coordinates = density.sample(int(selected.sum()), rng)
            points = density.curve.points(charts, coordinates)
            if refine_steps:
                depth = curve.depth
                guide = family.lines[depth:depth + refine_steps + 1]
                points = backward_chains(ge.map, points, refine_steps, rng,
                                         lines=guide)[0]
            lifts[selected] = points
        return lifts

    points = np.concatenate(run_blocks(draw, partition(n_points), seed=seed,
                                       threads=threads))
    return EmpiricalMeasure(points, seed=seed, provenance=Provenance.NU,
                            metadata={'m': family.m, 'grid_size': grid_size,
                                      'refine_steps': refine_steps,
                                      'curve_masses': list(masses),
                                      'curve_shares': list(probabilities)})
