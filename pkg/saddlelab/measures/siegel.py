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

Linearization of R(z) = lambda z + z^2 around its indifferent fixed point.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from numpy.polynomial import polynomial
from scipy import stats

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.measures import (EscapedSiegelDisk,
                                           SmallDivisorOverflow)
from saddlelab.measures.empirical import EmpiricalMeasure, Provenance

LOG = logging.getLogger(__name__)

MAX_TERMS = 64
DEFAULT_N_TERMS = 64
DIVISOR_FLOOR = 1e-12
RADIUS_SAFETY = 0.8
ESCAPE_FACTOR = 10.0
NEWTON_TOLERANCE = 1e-14
NEWTON_STEPS = 50
CF_EPS = 1e-9
CF_DEPTH = 16
BOUNDED_TYPE_LIMIT = 50


def continued_fraction(theta, depth=CF_DEPTH, eps=CF_EPS):
    """Partial quotients [a0; a1, a2, ...] of a real number.

    The expansion stops after ``depth`` quotients or when the remainder
    drops below ``eps``, which happens for rationals.
    """
    quotients = []
    value = float(theta)
    for _ in range(depth):
        whole, rest = divmod(value, 1.0)
        quotients.append(int(whole))
        if rest < eps:
            break
        value = 1.0 / rest
    return quotients


def is_bounded_type(theta, depth=CF_DEPTH, bound=BOUNDED_TYPE_LIMIT):
    """Whether the first partial quotients of theta stay below a bound.

    A terminating expansion (rational theta) is never of bounded type.
    """
    quotients = continued_fraction(theta, depth)
    if len(quotients) < depth:
        return False
    return max(quotients[1:]) <= bound


def rotation_number(multiplier):
    """theta in [0, 1) with multiplier = exp(2 pi i theta)."""
    return (cmath.phase(multiplier) / (2.0 * math.pi)) % 1.0


def quadratic(multiplier, z):
    """R(z) = lambda z + z^2."""
    return multiplier * z + z * z


@dataclass
class SiegelLinearization:
    """Truncated series Phi(z) = z + sum_(k>=2) c_k z^k with
    Phi o R = lambda Phi.

    ``coefficients`` are ascending, c_0 = 0 and c_1 = 1.
    """
    multiplier: complex
    coefficients: np.ndarray
    radius_estimate: float
    partial_quotients: List[int] = field(default_factory=list)

    @property
    def n_terms(self):
        """Highest power kept in the series."""
        return self.coefficients.size - 1

    def evaluate(self, z):
        """Phi at z."""
        return polynomial.polyval(z, self.coefficients)

    def derivative(self, z):
        """Phi' at z."""
        return polynomial.polyval(z, polynomial.polyder(self.coefficients))

    def inverse(self, u):
        """Solves Phi(z) = u by Newton's method started at z = u.

        :raises EscapedSiegelDisk: If |u| is not below the radius estimate
            or the iteration does not converge.
        """
        if abs(u) >= self.radius_estimate:
            raise EscapedSiegelDisk(
                f'|u| = {abs(u):.6g} is outside the linearization disk of '
                f'radius {self.radius_estimate:.6g}')
        z = complex(u)
        for _ in range(NEWTON_STEPS):
            step = (self.evaluate(z) - u) / self.derivative(z)
            z -= step
            if abs(step) <= NEWTON_TOLERANCE * max(1.0, abs(z)):
                return complex(z)
        raise EscapedSiegelDisk(f'Newton did not invert Phi at u = {u}')

    def invariant_point(self, level, angle=0.0):
        """The point a with Phi(a) = level exp(i angle)."""
        return self.inverse(level * cmath.exp(1j * angle))

    def residual(self, radius=None, n_samples=256):
        """max |Phi(R(z)) - lambda Phi(z)| on the circle |z| = radius.

        The radius defaults to half the radius estimate.
        """
        radius = self.radius_estimate / 2.0 if radius is None else radius
        circle = radius * np.exp(2j * np.pi * np.arange(n_samples) /
                                 n_samples)
        images = quadratic(self.multiplier, circle)
        return float(np.max(np.abs(self.evaluate(images) -
                                   self.multiplier * self.evaluate(circle))))

    def to_dict(self):
        """Plain representation used in result files."""
        return {'multiplier': complex(self.multiplier),
                'theta': rotation_number(self.multiplier),
                'n_terms': self.n_terms,
                'radius_estimate': self.radius_estimate,
                'residual': self.residual(),
                'partial_quotients': list(self.partial_quotients),
                'coefficients': [complex(c) for c in self.coefficients]}


def _radius_estimate(coefficients):
    """0.8 times the radius past which the terms |c_n| rho^n stop
    decreasing.

    The rate is the slope of a least squares fit of log |c_n| against n
    over the nonzero coefficients of order >= 1.
    """
    orders = np.arange(coefficients.size)
    magnitudes = np.abs(coefficients)
    usable = (orders >= 1) & (magnitudes > 0)
    if np.count_nonzero(usable) < 2:
        return math.inf
    fit = stats.linregress(orders[usable], np.log(magnitudes[usable]))
    return RADIUS_SAFETY * math.exp(-fit.slope)


def siegel_linearize(multiplier, n_terms=DEFAULT_N_TERMS):
    """Coefficients of the linearizing map of R(z) = lambda z + z^2.

    Matching powers of z in Phi(lambda z + z^2) = lambda Phi(z) gives
    c_n (lambda^n - lambda) = - sum_(n/2 <= k < n) C(k, n - k)
    lambda^(2k - n) c_k.

    :param multiplier: lambda, of modulus one.
    :param n_terms: Highest power kept, at most 64.
    :rtype: :class:`SiegelLinearization`
    :raises InvalidArgument: For |lambda| != 1 or n_terms outside [2, 64].
    :raises SmallDivisorOverflow: If some |lambda^k - lambda| < 1e-12.
    """
    multiplier = complex(multiplier)
    if abs(abs(multiplier) - 1.0) > 1e-12:
        raise InvalidArgument(
            f'The multiplier must have modulus 1, got {abs(multiplier)}')
    if not 2 <= n_terms <= MAX_TERMS:
        raise InvalidArgument(
            f'n_terms must be in [2, {MAX_TERMS}], got {n_terms}')

    theta = rotation_number(multiplier)
    quotients = continued_fraction(theta)
    if len(quotients) < CF_DEPTH:
        LOG.warning("Rotation number %.17g looks rational: %s", theta,
                    quotients)
    elif max(quotients[1:]) > BOUNDED_TYPE_LIMIT:
        LOG.warning("Rotation number %.17g has large partial quotients: %s",
                    theta, quotients)

    powers = multiplier ** np.arange(2 * n_terms + 1)
    coefficients = np.zeros(n_terms + 1, dtype=complex)
    coefficients[1] = 1.0
    for order in range(2, n_terms + 1):
        divisor = powers[order] - multiplier
        if abs(divisor) < DIVISOR_FLOOR:
            raise SmallDivisorOverflow(order, abs(divisor))
        total = 0j
        for k in range((order + 1) // 2, order):
            total += math.comb(k, order - k) * powers[2 * k - order] * \
                coefficients[k]
        coefficients[order] = -total / divisor

    radius = _radius_estimate(coefficients)
    LOG.debug("Linearized theta=%.12f with %d terms, radius %.6f", theta,
              n_terms, radius)
    return SiegelLinearization(multiplier=multiplier,
                               coefficients=coefficients,
                               radius_estimate=radius,
                               partial_quotients=quotients)


def sample_alpha(linearization, a0, n_skip=100, n_points=10_000):
    """Forward orbit of a point of the Siegel disk.

    The rotation is uniquely ergodic on the invariant circle
    |Phi| = |Phi(a0)|, so the equal-weight orbit approximates its Lebesgue
    measure. Samples are the points [R^k(a0) : 0 : 1] of the z axis.

    :param linearization: Output of :func:`siegel_linearize`.
    :param a0: Start point in the z plane.
    :rtype: :class:`EmpiricalMeasure`
    :raises EscapedSiegelDisk: If a0 is not inside the linearization disk
        or the orbit wanders beyond ten times its radius.
    """
    if n_points < 1 or n_skip < 0:
        raise InvalidArgument('n_points must be >= 1 and n_skip >= 0')
    radius = linearization.radius_estimate
    level = abs(linearization.evaluate(a0))
    if level >= radius:
        raise EscapedSiegelDisk(
            f'|Phi(a0)| = {level:.6g} is not below the disk radius '
            f'{radius:.6g}')

    multiplier = linearization.multiplier
    limit = ESCAPE_FACTOR * radius
    z = complex(a0)
    orbit = np.empty(n_points, dtype=complex)
    for step in range(n_skip + n_points):
        if step >= n_skip:
            orbit[step - n_skip] = z
        z = multiplier * z + z * z
        if abs(z) > limit:
            raise EscapedSiegelDisk(
                f'|R^{step + 1}(a0)| = {abs(z):.6g} exceeds {limit:.6g}')

    points = np.column_stack([orbit, np.zeros(n_points), np.ones(n_points)])
    return EmpiricalMeasure(points, provenance=Provenance.ALPHA,
                            metadata={'a0': complex(a0), 'level': level,
                                      'n_skip': n_skip})


def weyl_sum(linearization, z):
    """|mean of exp(i arg Phi(z))| over points of the z plane."""
    values = linearization.evaluate(np.asarray(z, dtype=complex))
    return float(np.abs(np.mean(np.exp(1j * np.angle(values)))))
