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

from saddlelab.exceptions.geometry import ZeroVector
from saddlelab.geometry.projective import (chordal_distances, normalize,
                                           normalize_lifts)

LOG = logging.getLogger(__name__)

COLLINEARITY_TOLERANCE = 1e-9
COLLINEARITY_SAMPLES = 16


@dataclass(frozen=True, eq=False)
class ProjectiveLine:
    """Projective line spanned by two distinct points ``a`` and ``b``.

    The line is parametrized over P^1 by zeta -> a + zeta b, the point
    zeta = infinity being ``b``. Around infinity the holomorphic lift
    eta -> eta a + b, with eta = 1/zeta, is used instead.
    """
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        first = normalize(self.a).lift
        second = normalize(self.b).lift
        if float(chordal_distances(first, second)) < 1e-12:
            raise ZeroVector('A line needs two distinct points')
        object.__setattr__(self, 'a', first)
        object.__setattr__(self, 'b', second)

    @classmethod
    def through(cls, first, second):
        """Line through two points given as lifts or ProjPoints."""
        return cls(getattr(first, 'lift', first),
                   getattr(second, 'lift', second))

    @classmethod
    def vertical(cls, anchor):
        """The line {z = anchor * t}, parametrized by its w coordinate."""
        return cls((anchor, 0.0, 1.0), (0.0, 1.0, 0.0))

    @property
    def normal(self):
        """Vector N with N . X = 0 exactly on the line."""
        normal = np.cross(self.a, self.b)
        return normal / np.linalg.norm(normal)

    def lifts(self, zeta):
        """Holomorphic lifts a + zeta b of the affine parameters."""
        zeta = np.asarray(zeta, dtype=complex)[..., None]
        return self.a + zeta * self.b

    def lifts_at_infinity(self, eta):
        """Holomorphic lifts eta a + b of the parameters around infinity."""
        eta = np.asarray(eta, dtype=complex)[..., None]
        return eta * self.a + self.b

    @property
    def degree(self):
        """Mass of the current of integration along the curve."""
        return 1

    def chart_lifts(self, chart, coordinates):
        """Holomorphic lifts in the chart 0 (zeta) or 1 (eta = 1/zeta)."""
        if chart == 0:
            return self.lifts(coordinates)
        return self.lifts_at_infinity(coordinates)

    def log_norms_and_points(self, chart, coordinates):
        """log of the norm of the holomorphic lifts, with unit lifts."""
        lifts = self.chart_lifts(chart, coordinates)
        norms = np.linalg.norm(lifts, axis=-1)
        return np.log(norms), lifts / norms[..., None]

    def points(self, charts, coordinates):
        """Unit lifts of parameters given chart by chart."""
        charts = np.asarray(charts)
        coordinates = np.asarray(coordinates, dtype=complex)
        lifts = np.where(charts[..., None] == 0,
                         self.lifts(coordinates),
                         self.lifts_at_infinity(coordinates))
        return normalize_lifts(lifts)

    def distances(self, lifts):
        """Chordal distance from each lift to the line."""
        lifts = np.asarray(lifts, dtype=complex)
        products = np.abs(lifts @ self.normal)
        return np.clip(products / np.linalg.norm(lifts, axis=-1), 0.0, 1.0)

    def contains(self, p, tolerance=1e-9):
        """Whether a point lies on the line up to ``tolerance``."""
        return bool(self.distances(getattr(p, 'lift', p)) <= tolerance)

    def to_dict(self):
        """Plain representation used in result files."""
        return {'a': [complex(value) for value in self.a],
                'b': [complex(value) for value in self.b]}


def span_rank_ratio(lifts):
    """Ratio of the smallest to the largest singular value of a lift set.

    It vanishes when all lifts lie on a common projective line.
    """
    singular = np.linalg.svd(normalize_lifts(lifts), compute_uv=False)
    return float(singular[-1] / singular[0])


def is_collinear(lifts, tolerance=COLLINEARITY_TOLERANCE):
    """Whether all lifts lie on a common projective line."""
    return span_rank_ratio(lifts) <= tolerance


def sample_parameters(count=COLLINEARITY_SAMPLES, seed=0):
    """Fixed generic parameters inside the unit disc."""
    rng = np.random.default_rng(seed)
    radii = 0.9 * np.sqrt(rng.random(count))
    angles = 2.0 * np.pi * rng.random(count)
    return radii * np.exp(1j * angles)


def distances_to_lines(lifts, lines):
    """Distances from every lift to every line, an (N, L) array."""
    lifts = np.asarray(lifts, dtype=complex)
    normals = np.stack([line.normal for line in lines], axis=1)
    products = np.abs(lifts @ normals)
    norms = np.linalg.norm(lifts, axis=-1, keepdims=True)
    return np.clip(products / norms, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class ImageCurve:
    """Forward image f^depth o gamma_L of a parametrized line.

    Points are computed by composition at each parameter, never by
    expanding the coefficients of the iterated map.
    """
    line: ProjectiveLine
    endomorphism: object
    depth: int

    @property
    def degree(self):
        """Mass d^depth of the image current counted with multiplicity."""
        return self.endomorphism.degree ** self.depth

    def log_norms_and_points(self, chart, coordinates):
        """log ||F^depth(X)|| for the holomorphic line lifts X, with the
        unit lifts of the image points.

        Lifts are renormalized after every application of F.
        """
        log_norms, current = self.line.log_norms_and_points(chart,
                                                            coordinates)
        degree = self.endomorphism.degree
        for _ in range(self.depth):
            values = self.endomorphism.lift_values(current)
            norms = np.linalg.norm(values, axis=-1)
            log_norms = degree * log_norms + np.log(norms)
            current = values / norms[..., None]
        return log_norms, current

    def points(self, charts, coordinates):
        """Unit lifts of image points of parameters given chart by chart."""
        current = self.line.points(charts, coordinates)
        for _ in range(self.depth):
            current = self.endomorphism.apply_lifts(current)
        return current
