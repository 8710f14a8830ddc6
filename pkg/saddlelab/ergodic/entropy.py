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
import warnings
from typing import List, NamedTuple, Optional

import numpy as np
from scipy import stats

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.ergodic import ResolutionFloor
from saddlelab.geometry.curves import distances_to_lines
from saddlelab.geometry.projective import chordal_distances
from saddlelab.utils.pool import partition, run_blocks

LOG = logging.getLogger(__name__)

MIN_CLOUD_SIZE = 10_000
FLOOR_LIMIT = 0.2
CENTER_BLOCK = 8


class EntropyEstimate(NamedTuple):
    """Local entropy of a cloud from Bowen ball masses.

    ``raw`` is the mean of -(1/n) log mass(B_n(x, eps)) with floor 1/N.
    ``value`` is the slope in k of the mean of -log mass(B_k(x, eps)) over
    the levels whose floor-hit fraction stays below 20%.
    """
    value: float
    raw: float
    n: int
    epsilon: float
    n_centers: int
    floor_hits: int
    levels: List[int]
    cap: float

    @property
    def floor_fraction(self):
        """Fraction of centers whose n-ball holds no other point."""
        return self.floor_hits / self.n_centers

    def to_dict(self):
        """Plain representation used in result files."""
        return {'entropy': self.value, 'raw': self.raw, 'n': self.n,
                'epsilon': self.epsilon, 'n_centers': self.n_centers,
                'floor_hits': self.floor_hits, 'levels': list(self.levels),
                'cap': self.cap}


class RuelleCheck(NamedTuple):
    """Outcome of h / 2 <= chi1+ + chi2+ up to a tolerance."""
    passed: bool
    margin: float
    positive_sum: float
    entropy: float
    ceiling_passed: Optional[bool] = None

    def to_dict(self):
        """Plain representation used in result files."""
        return {'passed': self.passed, 'ruelle_margin': self.margin,
                'positive_sum': self.positive_sum, 'entropy': self.entropy,
                'ceiling_passed': self.ceiling_passed}


def resolution_cap(n, n_points):
    """Largest value (1/n) log N the raw estimator can return."""
    return math.log(n_points) / n


def assert_resolution(n, n_points, target):
    """Checks that the cap of the raw estimator exceeds a target value.

    :raises InvalidArgument: If (1/n) log N <= target.
    """
    cap = resolution_cap(n, n_points)
    if cap <= target:
        raise InvalidArgument(
            f'Entropy resolution (1/{n}) log {n_points} = {cap:.4f} does not '
            f'exceed the target {target:.4f}; raise N or lower n')
    return cap


def cloud_orbit(f, cloud, n):
    """Lifts of the cloud and its first n - 1 images."""
    levels = [cloud.points]
    for _ in range(n - 1):
        levels.append(f.apply_lifts(levels[-1]))
    return levels


def ball_masses(levels, weights, centers, epsilon):
    """Cloud mass of the Bowen balls B_k(x, eps), k = 1, ..., n.

    :param levels: Output of :func:`cloud_orbit`.
    :param centers: Indices of the ball centers in the cloud.
    :return: Masses with the center included, shape (n, len(centers)).
    """
    inside = np.ones((len(centers), weights.size), dtype=bool)
    masses = np.empty((len(levels), len(centers)))
    for level, lifts in enumerate(levels):
        distances = chordal_distances(lifts[None, :, :],
                                      lifts[centers][:, None, :])
        inside &= distances < epsilon
        masses[level] = inside @ weights
    return masses


def brin_katok_entropy(f, cloud, n=8, epsilon=0.05, n_centers=200, seed=0,
                       threads=1):
    """Bowen ball estimate of the local entropy of a cloud.

    Centers are drawn without replacement from the cloud. A center whose
    ball holds no other point hits the resolution floor 1/N.

    :rtype: :class:`EntropyEstimate`
    :raises InvalidArgument: For n < 1, epsilon outside (0, 0.5) or more
        centers than points.
    """
    size = len(cloud)
    if n < 1 or not 0.0 < epsilon < 0.5:
        raise InvalidArgument('Need n >= 1 and epsilon in (0, 0.5)')
    if n_centers < 1 or n_centers > size:
        raise InvalidArgument(
            f'n_centers must be in [1, {size}], got {n_centers}')
    if size < MIN_CLOUD_SIZE:
        LOG.warning("Cloud of %d points is below %d, entropy is only "
                    "indicative", size, MIN_CLOUD_SIZE)

    rng = np.random.default_rng(seed)
    centers = rng.choice(size, size=n_centers, replace=False)
    levels = cloud_orbit(f, cloud, n)
    weights = cloud.weights

    def measure(block):
        begin, end = block
        return ball_masses(levels, weights, centers[begin:end], epsilon)

    masses = np.concatenate(run_blocks(measure,
                                       partition(n_centers, CENTER_BLOCK),
                                       threads=threads), axis=1)
    floor = 1.0 / size
    others = masses - weights[centers]
    hits = others <= floor * 1e-9

    raw = float(np.mean(-np.log(np.maximum(masses[-1], floor)) / n))
    floor_hits = int(np.count_nonzero(hits[-1]))

    depths = np.arange(1, n + 1)
    usable = hits.mean(axis=1) <= FLOOR_LIMIT
    means = np.mean(-np.log(np.maximum(others, floor)), axis=1)
    if np.count_nonzero(usable) >= 2:
        value = float(stats.linregress(depths[usable], means[usable]).slope)
    else:
        LOG.warning("Fewer than two resolved levels, reporting the raw "
                    "estimate")
        value = raw

    if floor_hits > FLOOR_LIMIT * n_centers:
        message = (f'{floor_hits} of {n_centers} centers hit the resolution '
                   'floor; the entropy is only a lower bound')
        LOG.warning(message)
        warnings.warn(message, ResolutionFloor)

    LOG.debug("Entropy n=%d eps=%.3f: slope %.6f, raw %.6f, levels %s", n,
              epsilon, value, raw, depths[usable].tolist())
    return EntropyEstimate(value, raw, n, epsilon, n_centers, floor_hits,
                           depths[usable].tolist(),
                           resolution_cap(n, size))


def ruelle_check(h, estimate, tol=0.05, ceiling=None):
    """Ruelle inequality h / 2 <= max(chi2, 0) + max(chi1, 0) + tol.

    :param h: Entropy value.
    :param estimate: Exponents with ``chi1`` and ``chi2`` attributes.
    :param ceiling: Optional upper bound on h, checked with the same
        tolerance.
    :rtype: :class:`RuelleCheck`
    """
    positive = max(estimate.chi2, 0.0) + max(estimate.chi1, 0.0)
    margin = float(positive - h / 2.0)
    ceiling_passed = None if ceiling is None else bool(h <= ceiling + tol)
    return RuelleCheck(margin >= -tol, margin, float(positive), float(h),
                       ceiling_passed)


def max_line_charge(cloud, lines, width=1e-3):
    """Largest cloud mass within chordal distance ``width`` of one of the
    given lines."""
    if not lines:
        return 0.0
    near = distances_to_lines(cloud.points, lines) <= width
    return float(np.max(cloud.weights @ near))
