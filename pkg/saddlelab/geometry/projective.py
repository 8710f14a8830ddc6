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
import math
from dataclasses import dataclass

import numpy as np

from saddlelab.exceptions.geometry import ChartSingular, ZeroVector

CHART_THRESHOLD = 1.0 / math.sqrt(3.0) - 1e-9
"""Chart coordinate modulus above which a chart is well conditioned at a
unit lift. The largest coordinate of a unit lift always exceeds it."""

SINGULAR_FLOOR = 1e-12
"""Chart coordinate modulus under which a point is treated as lying on the
hyperplane removed by the chart."""

NORMALIZED_TOLERANCE = 4 * np.finfo(float).eps

FREE = np.array([[1, 2], [0, 2], [0, 1]])
"""Homogeneous coordinates kept as affine coordinates by each chart."""


def _as_lift(lift):
    vector = np.asarray(lift, dtype=complex)
    if vector.shape != (3,):
        raise ValueError(f"A lift has three coordinates, got shape "
                         f"{vector.shape}")
    return vector


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """Point of the complex projective plane stored as a unit lift.

    Only the scale of the lift is fixed, its phase is kept as given. Use
    :func:`chordal_distance` to compare points.
    """
    lift: np.ndarray

    def __post_init__(self):
        vector = _as_lift(self.lift).copy()
        vector.setflags(write=False)
        object.__setattr__(self, 'lift', vector)

    @classmethod
    def from_coordinates(cls, z, w, t):
        """Normalized point [z:w:t]."""
        return normalize((z, w, t))

    @property
    def coordinates(self):
        """The three homogeneous coordinates as python complex numbers."""
        return tuple(complex(value) for value in self.lift)

    def best_chart(self):
        """Chart of the largest-modulus coordinate."""
        return AffineChart(int(np.argmax(np.abs(self.lift))))

    def __repr__(self):
        z, w, t = self.coordinates
        return f"ProjPoint([{z:.6g} : {w:.6g} : {t:.6g}])"


def normalize(lift):
    """Unit lift of a nonzero vector of C^3.

    The result is a positive real multiple of the input. A lift that is
    already normalized is returned unchanged, so normalizing twice gives
    exactly the same coordinates.

    :param lift: Three complex coordinates.
    :return: The normalized point.
    :rtype: :class:`ProjPoint`
    :raises ZeroVector: For the zero vector or non-finite input.
    """
    if isinstance(lift, ProjPoint):
        return lift
    vector = _as_lift(lift)
    if not np.all(np.isfinite(vector)):
        raise ZeroVector('Cannot normalize a lift with non-finite '
                         f'coordinates: {vector}')
    scale = np.max(np.abs(vector))
    if scale == 0.0:
        raise ZeroVector()
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) <= NORMALIZED_TOLERANCE:
        return ProjPoint(vector)
    scaled = vector / scale
    return ProjPoint(scaled / np.linalg.norm(scaled))


def normalize_lifts(lifts):
    """Row-wise unit lifts of an (N, 3) array.

    :raises ZeroVector: If any row is zero or non-finite.
    """
    vectors = np.asarray(lifts, dtype=complex)
    scale = np.max(np.abs(vectors), axis=-1, keepdims=True)
    if not np.all(np.isfinite(vectors)) or np.any(scale == 0.0):
        raise ZeroVector('Cannot normalize zero or non-finite lifts')
    scaled = vectors / scale
    return scaled / np.linalg.norm(scaled, axis=-1, keepdims=True)


def wedge_norms(first, second):
    """Norm of the exterior product of two (batches of) lifts."""
    first = np.asarray(first, dtype=complex)
    second = np.asarray(second, dtype=complex)
    minors = (first[..., [0, 0, 1]] * second[..., [1, 2, 2]] -
              first[..., [1, 2, 2]] * second[..., [0, 0, 1]])
    return np.linalg.norm(minors, axis=-1)


def chordal_distances(first, second):
    """Chordal distance between (broadcastable batches of) lifts.

    The lifts need not be normalized.
    """
    first = np.asarray(first, dtype=complex)
    second = np.asarray(second, dtype=complex)
    norms = (np.linalg.norm(first, axis=-1) *
             np.linalg.norm(second, axis=-1))
    return np.clip(wedge_norms(first, second) / norms, 0.0, 1.0)


def chordal_distance(p, q):
    """Chordal distance ||p ^ q|| / (||p|| ||q||), a value in [0, 1].

    :type p: :class:`ProjPoint`
    :type q: :class:`ProjPoint`
    :rtype: float
    """
    return float(chordal_distances(p.lift, q.lift))


@dataclass(frozen=True)
class AffineChart:
    """Affine chart where the homogeneous coordinate ``index`` equals 1."""
    index: int

    def __post_init__(self):
        if self.index not in (0, 1, 2):
            raise ValueError(f"Chart index must be 0, 1 or 2, got "
                             f"{self.index}")

    @property
    def free(self):
        """Indices of the coordinates used as affine coordinates."""
        return tuple(int(i) for i in FREE[self.index])

    def modulus(self, p):
        """Modulus of the chart coordinate at a unit lift."""
        return abs(p.lift[self.index]) / np.linalg.norm(p.lift)

    def is_applicable(self, p):
        """Whether the chart is well conditioned at ``p``."""
        return self.modulus(p) > CHART_THRESHOLD

    def to_chart(self, p):
        """Affine coordinates of ``p``.

        :raises ChartSingular: If the chart coordinate vanishes at ``p``.
        """
        modulus = self.modulus(p)
        if modulus <= SINGULAR_FLOOR:
            raise ChartSingular(self.index, modulus)
        lift = p.lift / p.lift[self.index]
        first, second = self.free
        return complex(lift[first]), complex(lift[second])

    def from_chart(self, coordinates):
        """Point with the given affine coordinates."""
        lift = np.empty(3, dtype=complex)
        lift[self.index] = 1.0
        lift[list(self.free)] = coordinates
        return normalize(lift)

    def __str__(self):
        return 'zwt'[self.index] + '=1'


def to_chart(p, chart):
    """Affine coordinates of ``p`` in ``chart``."""
    return chart.to_chart(p)


def from_chart(coordinates, chart):
    """Inverse of :func:`to_chart`."""
    return chart.from_chart(coordinates)


def best_charts(lifts):
    """Index of the largest-modulus coordinate of each lift."""
    return np.argmax(np.abs(np.asarray(lifts)), axis=-1)


def chart_transition(source, destination, coordinates):
    """Change of affine coordinates between two charts.

    :raises ChartSingular: If the point is outside of ``destination``.
    """
    return destination.to_chart(source.from_chart(coordinates))
