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
from enum import Enum

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.geometry.projective import ProjPoint, normalize_lifts
from saddlelab.utils.serialization import write_canonical

LOG = logging.getLogger(__name__)

CSV_HEADER = 're_z,im_z,re_w,im_w,re_t,im_t,weight'


class Provenance(str, Enum):
    """Measure a cloud approximates."""
    MU = 'mu'
    NU = 'nu'
    ALPHA = 'alpha'
    CUSTOM = 'custom'


class EmpiricalMeasure:
    """Weighted point cloud on P^2.

    Weights are rescaled to add up to one. ``mass`` is the relative size of
    the cloud used when merging, by default its number of points.

    :param points: Lifts, shape (N, 3); stored as unit lifts.
    :param weights: Nonnegative weights, equal weights when omitted.
    :param seed: Seed of the sampler that produced the cloud.
    :param provenance: Tag of the approximated measure.
    :param metadata: Sampler parameters, exported in the JSON sidecar.
    """

    def __init__(self, points, weights=None, seed=None,
                 provenance=Provenance.CUSTOM, mass=None, metadata=None):
        points = np.atleast_2d(np.asarray(points, dtype=complex))
        if points.ndim != 2 or points.shape[1] != 3 or points.shape[0] == 0:
            raise InvalidArgument('A measure needs an (N, 3) array of lifts')
        if weights is None:
            weights = np.ones(points.shape[0])
        weights = np.asarray(weights, dtype=float)
        if weights.shape != points.shape[:1] or np.any(weights < 0) or \
                weights.sum() <= 0:
            raise InvalidArgument('Weights must be nonnegative, one per '
                                  'point, and not all zero')

        self.points = normalize_lifts(points)
        self.weights = weights / weights.sum()
        self.seed = seed
        self.provenance = Provenance(provenance)
        self.mass = float(points.shape[0] if mass is None else mass)
        self.metadata = dict(metadata or {})

    def __len__(self):
        return self.points.shape[0]

    def point(self, index):
        """One point of the cloud."""
        return ProjPoint(self.points[index])

    def integrate(self, func):
        """Integral of a function of (N, 3) lifts against the cloud."""
        return np.sum(self.weights * np.asarray(func(self.points)), axis=0)

    def affine_coordinates(self):
        """Coordinates z/t and w/t of every point."""
        return self.points[:, 0] / self.points[:, 2], \
            self.points[:, 1] / self.points[:, 2]

    def pushforward(self, endomorphism):
        """Image cloud f_* of this measure, same weights."""
        return EmpiricalMeasure(endomorphism.apply_lifts(self.points),
                                self.weights, seed=self.seed,
                                provenance=self.provenance, mass=self.mass,
                                metadata=self.metadata)

    def merge(self, other):
        """Union of two clouds, weighted by their relative masses."""
        total = self.mass + other.mass
        weights = np.concatenate([self.weights * self.mass / total,
                                  other.weights * other.mass / total])
        provenance = self.provenance if self.provenance == \
            other.provenance else Provenance.CUSTOM
        return EmpiricalMeasure(np.concatenate([self.points, other.points]),
                                weights, seed=self.seed,
                                provenance=provenance, mass=total,
                                metadata=self.metadata)

    def to_csv(self, file):
        """Writes one row (re z, im z, re w, im w, re t, im t, weight) per
        point."""
        table = np.column_stack([self.points[:, 0].real,
                                 self.points[:, 0].imag,
                                 self.points[:, 1].real,
                                 self.points[:, 1].imag,
                                 self.points[:, 2].real,
                                 self.points[:, 2].imag,
                                 self.weights])
        np.savetxt(file, table, delimiter=',', fmt='%.17g',
                   header=CSV_HEADER, comments='')

    def sidecar(self, map_hash=None):
        """Metadata written next to the CSV export."""
        data = {'provenance': self.provenance.value, 'seed': self.seed,
                'n_points': len(self), 'mass': self.mass}
        if map_hash is not None:
            data['map_hash'] = map_hash
        data.update(self.metadata)
        return data

    def export(self, csv_file, json_file, map_hash=None):
        """Writes the CSV table and its JSON sidecar."""
        self.to_csv(csv_file)
        write_canonical(self.sidecar(map_hash), json_file)
        LOG.info("Exported %d points to %s", len(self), csv_file)

    @classmethod
    def from_csv(cls, file, provenance=Provenance.CUSTOM, seed=None):
        """Reads a table written by :meth:`to_csv`."""
        table = np.atleast_2d(np.loadtxt(file, delimiter=',', skiprows=1))
        points = table[:, 0:6:2] + 1j * table[:, 1:6:2]
        return cls(points, table[:, 6], seed=seed, provenance=provenance)
