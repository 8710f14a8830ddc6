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
from typing import List, NamedTuple

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument

LOG = logging.getLogger(__name__)

MIN_MEANINGFUL_LENGTH = 100
N_BLOCKS = 20
N_RESAMPLES = 200
START_VECTOR = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


class LyapunovEstimate(NamedTuple):
    """Exponents chi1 <= chi2 of an orbit in nats per iteration."""
    chi1: float
    chi2: float
    n: int
    stderr: float

    def to_dict(self):
        """Plain representation used in result files."""
        return {'chi1': self.chi1, 'chi2': self.chi2, 'n': self.n,
                'stderr': self.stderr}


class EnsembleEstimate(NamedTuple):
    """Exponents averaged over an ensemble of orbits."""
    chi1: float
    chi2: float
    chi1_spread: float
    chi2_spread: float
    estimates: List[LyapunovEstimate]

    def to_dict(self):
        """Plain representation used in result files."""
        return {'chi1': self.chi1, 'chi2': self.chi2,
                'chi1_spread': self.chi1_spread,
                'chi2_spread': self.chi2_spread,
                'n_orbits': len(self.estimates),
                'stderr': max((est.stderr for est in self.estimates),
                              default=0.0)}


class ExponentCheck(NamedTuple):
    """Outcome of a lower bound check on an exponent."""
    passed: bool
    margin: float
    bound: float


def growth_logs(cocycle, start=START_VECTOR):
    """log ||A_k v_k|| with v_k renormalized to unit length at each step."""
    vector = np.array(start, dtype=complex)
    logs = np.empty(cocycle.length)
    for step, matrix in enumerate(cocycle.matrices):
        vector = matrix @ vector
        norm = np.linalg.norm(vector)
        logs[step] = math.log(norm)
        vector = vector / norm
    return logs


def top_lyapunov(cocycle, start=START_VECTOR):
    """Top exponent (1/n) sum log ||A_k v_k|| of a cocycle."""
    if cocycle.length < MIN_MEANINGFUL_LENGTH:
        LOG.warning("Orbit of length %d is too short for a meaningful "
                    "exponent", cocycle.length)
    return float(np.mean(growth_logs(cocycle, start)))


def _block_means(values, n_blocks):
    blocks = np.array_split(values, min(n_blocks, values.size))
    return np.array([block.mean() for block in blocks]), \
        np.array([block.size for block in blocks])


def _bootstrap(values, n_blocks, rng):
    means, sizes = _block_means(values, n_blocks)
    if means.size < 2:
        return 0.0
    picks = rng.integers(means.size, size=(N_RESAMPLES, means.size))
    resampled = (means[picks] * sizes[picks]).sum(axis=1) / \
        sizes[picks].sum(axis=1)
    return float(np.std(resampled))


def lyapunov_pair(cocycle, n_blocks=N_BLOCKS, seed=0):
    """Both exponents of a 2D cocycle.

    chi2 is the top exponent; chi1 follows from the Birkhoff average of
    log |det A_k|. The standard error is a block bootstrap over the orbit.

    :rtype: :class:`LyapunovEstimate`
    """
    growth = growth_logs(cocycle)
    if cocycle.length < MIN_MEANINGFUL_LENGTH:
        LOG.warning("Orbit of length %d is too short for a meaningful "
                    "exponent", cocycle.length)
    determinants = cocycle.log_determinants()
    top = float(np.mean(growth))
    bottom = float(np.mean(determinants)) - top
    chi1, chi2 = sorted((bottom, top))

    rng = np.random.default_rng(seed)
    stderr = max(_bootstrap(growth, n_blocks, rng),
                 _bootstrap(determinants - growth, n_blocks, rng))
    return LyapunovEstimate(chi1, chi2, cocycle.length, stderr)


def ensemble_exponents(cocycles, seed=0):
    """Mean and spread of the exponents over an ensemble of orbits.

    :rtype: :class:`EnsembleEstimate`
    :raises InvalidArgument: For an empty ensemble.
    """
    if not cocycles:
        raise InvalidArgument('Need at least one orbit')
    estimates = [lyapunov_pair(cocycle, seed=seed) for cocycle in cocycles]
    chi1 = np.array([estimate.chi1 for estimate in estimates])
    chi2 = np.array([estimate.chi2 for estimate in estimates])
    LOG.info("Ensemble of %d orbits: chi1 = %.6f, chi2 = %.6f",
             len(estimates), chi1.mean(), chi2.mean())
    return EnsembleEstimate(float(chi1.mean()), float(chi2.mean()),
                            float(chi1.std()), float(chi2.std()), estimates)


def mu_exponent_check(estimate, degree, tol=0.02):
    """Whether chi1 >= log(d) / 2 - tol.

    :rtype: :class:`ExponentCheck`
    """
    bound = math.log(degree) / 2.0
    margin = float(estimate.chi1 - bound)
    return ExponentCheck(margin >= -tol, margin, bound)
