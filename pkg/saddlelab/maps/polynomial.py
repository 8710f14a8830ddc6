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

from saddlelab.exceptions.maps import DegreeMismatch, RootFindingFailure

LOG = logging.getLogger(__name__)

MERGE_TOLERANCE = 1e-7
RESIDUAL_TOLERANCE = 1e-8


def trim(coefficients):
    """Drops vanishing leading coefficients of an ascending coefficient
    list.

    :raises DegreeMismatch: For the zero polynomial.
    """
    values = np.atleast_1d(np.asarray(coefficients, dtype=complex))
    nonzero = np.flatnonzero(values)
    if nonzero.size == 0:
        raise DegreeMismatch('The zero polynomial has no degree')
    return values[:nonzero[-1] + 1]


def evaluate(coefficients, points):
    """Horner evaluation of ascending coefficients at (arrays of) points.

    ``coefficients`` may carry leading batch axes matching ``points``.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    points = np.asarray(points, dtype=complex)
    value = np.zeros(np.broadcast_shapes(points.shape,
                                         coefficients.shape[:-1]),
                     dtype=complex)
    for index in range(coefficients.shape[-1] - 1, -1, -1):
        value = value * points + coefficients[..., index]
    return value


def derivative(coefficients):
    """Ascending coefficients of the derivative."""
    coefficients = np.asarray(coefficients, dtype=complex)
    powers = np.arange(1, coefficients.shape[-1])
    return coefficients[..., 1:] * powers


def companion_roots(coefficients):
    """Roots of a batch of polynomials of a common degree.

    Eigenvalues of the companion matrices followed by one Newton step.

    :param coefficients: Ascending coefficients, shape (..., d + 1) with a
        nonzero last entry.
    :return: Roots, shape (..., d), repeated according to multiplicity.
    :raises RootFindingFailure: If any root is not finite.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    degree = coefficients.shape[-1] - 1
    monic = coefficients[..., :-1] / coefficients[..., -1:]
    batch = monic.shape[:-1]

    companion = np.zeros(batch + (degree, degree), dtype=complex)
    companion[..., 1:, :-1] = np.eye(degree - 1)
    companion[..., :, -1] = -monic
    roots = np.linalg.eigvals(companion)

    slope = evaluate(derivative(coefficients)[..., None, :], roots)
    value = evaluate(coefficients[..., None, :], roots)
    usable = np.abs(slope) > 1e-14 * (1.0 + np.abs(value))
    step = np.where(usable, value / np.where(usable, slope, 1.0), 0.0)
    polished = roots - step
    # keep the eigenvalue when polishing does not improve the residual
    improved = np.abs(evaluate(coefficients[..., None, :], polished)) <= \
        np.abs(value)
    roots = np.where(improved, polished, roots)

    if not np.all(np.isfinite(roots)):
        raise RootFindingFailure('Companion eigenvalues are not finite')
    return roots


def check_residuals(coefficients, roots, tolerance=RESIDUAL_TOLERANCE):
    """Relative residuals |p(r)| / sum |c_k| |r|^k of computed roots.

    :raises RootFindingFailure: If any exceeds ``tolerance``.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    values = np.abs(evaluate(coefficients[..., None, :], roots))
    scales = evaluate(np.abs(coefficients)[..., None, :],
                      np.abs(roots)).real
    residuals = values / np.maximum(scales, np.finfo(float).tiny)
    worst = float(np.max(residuals))
    if worst > tolerance:
        raise RootFindingFailure(
            f'Root residual {worst:.3e} exceeds {tolerance:.1e}')
    return residuals


def polynomial_roots(coefficients):
    """Roots of one polynomial given by ascending coefficients.

    :raises DegreeMismatch: For constant polynomials.
    :raises RootFindingFailure: If the roots cannot be certified.
    """
    values = trim(coefficients)
    if values.size < 2:
        raise DegreeMismatch('A constant polynomial has no roots')
    roots = companion_roots(values)
    check_residuals(values, roots)
    return roots


def merge_roots(roots, tolerance=MERGE_TOLERANCE):
    """Groups roots closer than ``tolerance`` into (root, multiplicity).

    Merged roots are replaced by the mean of their cluster.
    """
    merged = []
    for root in np.asarray(roots, dtype=complex).ravel():
        for index, (center, count) in enumerate(merged):
            if abs(root - center) < tolerance:
                merged[index] = ((center * count + root) / (count + 1),
                                 count + 1)
                break
        else:
            merged.append((complex(root), 1))
    return merged
