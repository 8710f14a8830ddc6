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
from dataclasses import dataclass, field

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.potential import MassDefect
from saddlelab.utils.images import write_pgm

LOG = logging.getLogger(__name__)

MIN_GRID_SIZE = 64
DEFAULT_GRID_SIZE = 256
GRID_EXTENT = 1.2
CLIP_LIMIT = 0.01
MASS_TOLERANCE = 0.02
SEAM_WIDTH = math.log(1.15)


@dataclass
class SliceDensity:
    """Discrete slice T ^ [curve] on a two-chart grid of P^1.

    Cell ``k`` is centered at ``coordinates[k]`` in chart ``charts[k]``:
    chart 0 is the affine parameter zeta and chart 1 is eta = 1/zeta, both
    over the square of half side 1.2. Weights already include the share of
    the chart in the partition of unity, so cells of both charts add up.
    """
    curve: object
    charts: np.ndarray
    coordinates: np.ndarray
    weights: np.ndarray
    cell_size: float
    grid_size: int
    total_mass: float
    clipped_fraction: float
    grids: np.ndarray = field(repr=False)

    @property
    def parameters(self):
        """Affine parameter zeta of each cell, infinite at eta = 0."""
        with np.errstate(divide='ignore', invalid='ignore'):
            inverted = np.where(self.coordinates == 0, np.inf + 0j,
                                1.0 / self.coordinates)
        return np.where(self.charts == 0, self.coordinates, inverted)

    def sample(self, count, rng):
        """Draws cells proportionally to their weight, jittered uniformly
        inside the cell.

        :return: Chart indices and chart coordinates of the samples.
        """
        probabilities = self.weights / self.weights.sum()
        cells = rng.choice(self.weights.size, size=count, p=probabilities)
        jitter = rng.random((count, 2)) - 0.5
        coordinates = self.coordinates[cells] + self.cell_size * (
            jitter[:, 0] + 1j * jitter[:, 1])
        return self.charts[cells], coordinates

    def points(self):
        """Unit lifts of the cell centers on the curve."""
        return self.curve.points(self.charts, self.coordinates)

    def to_csv(self, file):
        """Writes (re zeta, im zeta, weight) rows."""
        parameters = self.parameters
        table = np.column_stack([parameters.real, parameters.imag,
                                 self.weights])
        np.savetxt(file, table, delimiter=',', fmt='%.17g',
                   header='re_zeta,im_zeta,weight', comments='')

    def to_pgm(self, file, chart=0):
        """Writes the weights of one chart as an 8-bit PGM heatmap."""
        write_pgm(self.grids[chart], file)


def parameter_grid(grid_size, extent=GRID_EXTENT):
    """Uniform square grid of chart coordinates and its spacing."""
    axis = np.linspace(-extent, extent, grid_size)
    return axis[None, :] + 1j * axis[:, None], axis[1] - axis[0]


def five_point_masses(potential):
    """Discrete Laplacian times the cell area over 2 pi, interior cells."""
    laplacian = (potential[:-2, 1:-1] + potential[2:, 1:-1] +
                 potential[1:-1, :-2] + potential[1:-1, 2:] -
                 4.0 * potential[1:-1, 1:-1])
    return laplacian / (2.0 * np.pi)


def _flat(values):
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(values > 0, np.exp(-1.0 / values), 0.0)


def partition_weights(chart_coordinates):
    """Share of each chart in a smooth partition of unity of P^1.

    The share of a cell at chart coordinate c is phi(log |c|), with phi a
    smooth step from 1 below |c| = 1 / 1.15 to 0 above |c| = 1.15. Since
    phi(s) + phi(-s) = 1, the shares of zeta and eta = 1 / zeta add up to
    one.
    """
    with np.errstate(divide='ignore'):
        scaled = np.log(np.abs(chart_coordinates)) / SEAM_WIDTH
    scaled = np.clip(scaled, -1.0, 1.0)
    inner, outer = _flat(1.0 - scaled), _flat(1.0 + scaled)
    return inner / (inner + outer)


def line_slice_density(ge, curve, grid_size=DEFAULT_GRID_SIZE,
                       clip_limit=CLIP_LIMIT, mass_tolerance=MASS_TOLERANCE):
    """Slice of the Green current along a parametrized curve.

    The potential log ||Gamma|| + G o gamma of the holomorphic lift Gamma is
    differentiated with a 5-point stencil in both charts of P^1, the charts
    overlapping on 1 / 1.2 <= |zeta| <= 1.2 and stitched by
    :func:`partition_weights`. Negative cells are clipped and the rest
    rescaled to keep the net mass.

    :param ge: Green potential evaluator.
    :type ge: :class:`saddlelab.potential.green.GreenEvaluator`
    :param curve: A :class:`ProjectiveLine` or an :class:`ImageCurve`.
    :param grid_size: Points per axis of each chart grid.
    :rtype: :class:`SliceDensity`
    :raises InvalidArgument: If grid_size < 64.
    :raises MassDefect: If more than ``clip_limit`` of the mass is clipped,
        or if the net mass is off the degree of the curve by more than
        ``mass_tolerance`` of it.
    """
    if grid_size < MIN_GRID_SIZE:
        raise InvalidArgument(
            f'grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}')
    coordinates, spacing = parameter_grid(grid_size)
    inner = coordinates[1:-1, 1:-1]
    shares = partition_weights(inner)

    masses = []
    grids = np.zeros((2, grid_size, grid_size))
    for chart in (0, 1):
        log_norms, points = curve.log_norms_and_points(chart,
                                                       coordinates.ravel())
        potential = (log_norms + ge.values(points)).reshape(coordinates.shape)
        cells = five_point_masses(potential) * shares
        grids[chart, 1:-1, 1:-1] = cells
        masses.append(cells)

    raw = np.concatenate([mass.ravel() for mass in masses])
    positive = float(raw[raw > 0].sum())
    negative = float(-raw[raw < 0].sum())
    clipped_fraction = negative / positive if positive > 0 else 1.0
    if clipped_fraction > clip_limit:
        raise MassDefect(
            f"Clipped {clipped_fraction:.2%} of the slice mass, more than "
            f"{clip_limit:.2%}", clipped_fraction=clipped_fraction)
    if clipped_fraction > 0:
        LOG.debug("Clipped %.3e of the slice mass", clipped_fraction)

    net = positive - negative
    expected = float(curve.degree)
    if abs(net - expected) > mass_tolerance * expected:
        raise MassDefect(
            f"Slice mass {net:.4f} is off the degree {expected:g} of the "
            f"curve by more than {mass_tolerance:.0%}", total_mass=net)

    grids = np.clip(grids, 0.0, None) * (net / positive)
    charts = np.concatenate([np.zeros(inner.size, dtype=int),
                             np.ones(inner.size, dtype=int)])
    cell_coordinates = np.concatenate([inner.ravel(), inner.ravel()])
    weights = np.clip(raw, 0.0, None) * (net / positive)
    support = weights > 0

    return SliceDensity(curve=curve, charts=charts[support],
                        coordinates=cell_coordinates[support],
                        weights=weights[support], cell_size=spacing,
                        grid_size=grid_size, total_mass=net,
                        clipped_fraction=clipped_fraction, grids=grids)
