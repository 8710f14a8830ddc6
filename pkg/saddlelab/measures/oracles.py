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

One variable reference values used to cross-check the estimators.
"""
import logging

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.maps import polynomial
from saddlelab.utils.pool import partition, run_blocks

LOG = logging.getLogger(__name__)

DEFAULT_START_1D = 0.3 + 0.2j


def inverse_iteration_1d(coefficients, n_points=10_000, n_backward=60,
                         seed=0, threads=1, start=DEFAULT_START_1D):
    """Samples the equilibrium measure of a polynomial by random inverse
    branches.

    :param coefficients: Ascending coefficients of R, degree >= 2.
    :return: Complex samples, shape (n_points,).
    :raises RootFindingFailure: If a preimage cannot be certified.
    """
    coefficients = polynomial.trim(coefficients)
    degree = coefficients.size - 1
    if degree < 2:
        raise InvalidArgument(f'Degree must be >= 2, got {degree}')

    def pull_back(block, rng):
        begin, end = block
        values = np.full(end - begin, complex(start))
        rows = np.arange(end - begin)
        for _ in range(n_backward):
            shifted = np.tile(coefficients, (values.size, 1))
            shifted[:, 0] -= values
            roots = polynomial.companion_roots(shifted)
            polynomial.check_residuals(shifted, roots)
            values = roots[rows, rng.integers(degree, size=rows.size)]
        return values

    return np.concatenate(run_blocks(pull_back, partition(n_points),
                                     seed=seed, threads=threads))


def equilibrium_moments(samples, k_max=2):
    """Empirical moments mean(z^k) for k = 1, ..., k_max."""
    samples = np.asarray(samples, dtype=complex)
    return np.array([np.mean(samples ** k) for k in range(1, k_max + 1)])


def lyapunov_oracle_1d(coefficients, samples):
    """Mean of log |R'| over samples of the equilibrium measure.

    For R(z) = lambda z + z^2 with |lambda| = 1 the critical point lies on
    the Julia set and the value is log 2.
    """
    slopes = polynomial.evaluate(polynomial.derivative(
        polynomial.trim(coefficients)), samples)
    return float(np.mean(np.log(np.abs(slopes))))
