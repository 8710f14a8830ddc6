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
from typing import NamedTuple

import numpy as np
from scipy import stats
from scipy.stats import qmc

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.maps import Degenerate
from saddlelab.geometry.projective import normalize, normalize_lifts
from saddlelab.maps.endomorphism import DEGENERATE_FLOOR

LOG = logging.getLogger(__name__)

U_BOUND_HEADROOM = 1.05
U_BOUND_SAMPLES = 100_000
DEFAULT_N_ITER = 25


class GreenValue(NamedTuple):
    """Value of the Green potential with its truncation error bound."""
    value: float
    error_bound: float


class DecayFit(NamedTuple):
    """Least squares fit of log max |G_(n+1) - G_n| against n."""
    slope: float
    intercept: float
    rvalue: float
    n_values: np.ndarray
    maxima: np.ndarray


def sphere_samples(n_samples, seed=0):
    """Quasi-random unit lifts, scrambled Halton points pushed onto S^5.

    :return: Unit lifts, shape (n_samples, 3).
    """
    sampler = qmc.Halton(d=6, scramble=True, seed=seed)
    uniform = np.clip(sampler.random(n_samples), 1e-12, 1.0 - 1e-12)
    gaussian = stats.norm.ppf(uniform)
    return normalize_lifts(gaussian[:, :3] + 1j * gaussian[:, 3:])


def _step(endomorphism, lifts):
    """u at unit lifts together with the unit lifts of their images."""
    values = endomorphism.lift_values(lifts)
    norms = np.linalg.norm(values, axis=-1)
    if np.any(norms <= DEGENERATE_FLOOR):
        raise Degenerate()
    return np.log(norms) / endomorphism.degree, \
        values / norms[..., None]


def u_values(endomorphism, lifts):
    """u = (1/d) log ||F(Z)|| at the unit lifts Z of the given lifts."""
    return _step(endomorphism, normalize_lifts(lifts))[0]


def u_potential(f, p):
    """Potential u at a point, (1/d) log ||F(Z)|| for its unit lift Z.

    :raises Degenerate: If F(Z) vanishes.
    """
    return float(u_values(f, normalize(p).lift))


def estimate_u_bound(endomorphism, n_samples=U_BOUND_SAMPLES, seed=0):
    """1.05 times the largest |u| over quasi-random unit lifts."""
    samples = sphere_samples(n_samples, seed)
    largest = float(np.max(np.abs(u_values(endomorphism, samples))))
    LOG.debug("Sampled sup |u| = %.6f over %d points", largest, n_samples)
    return U_BOUND_HEADROOM * largest


class GreenEvaluator:
    """Evaluator of the Green potential G = sum_l u o f^l / d^l.

    Lifts are renormalized after each application of F, so the partial sums
    never handle lifts of huge norm.

    :param endomorphism: The map.
    :param n_iter: Number of terms of the series.
    :param u_bound: Bound on |u|, sampled when not given.
    """

    def __init__(self, endomorphism, n_iter=DEFAULT_N_ITER, u_bound=None,
                 n_samples=U_BOUND_SAMPLES, seed=0):
        if n_iter < 1:
            raise InvalidArgument(f'n_iter must be >= 1, got {n_iter}')
        self.map = endomorphism
        self.n_iter = int(n_iter)
        if u_bound is None:
            u_bound = estimate_u_bound(endomorphism, n_samples, seed)
        self.u_bound = float(u_bound)

    @property
    def degree(self):
        """Degree of the underlying map."""
        return self.map.degree

    def error_bound(self, n_iter=None):
        """u_bound d^(-n) / (1 - 1/d), the bound on |G_n - G|."""
        n_iter = self.n_iter if n_iter is None else n_iter
        degree = self.degree
        return self.u_bound * degree ** (-n_iter) / (1.0 - 1.0 / degree)

    def sup_bound(self):
        """Bound u_bound d / (d - 1) on |G|."""
        return self.u_bound * self.degree / (self.degree - 1.0)

    def terms(self, lifts, n_terms=None):
        """The values u(f^l x) for l < n_terms, shape (..., n_terms)."""
        n_terms = self.n_iter if n_terms is None else n_terms
        current = normalize_lifts(lifts)
        terms = np.empty(current.shape[:-1] + (n_terms,))
        for step in range(n_terms):
            terms[..., step], current = _step(self.map, current)
        return terms

    def partial_sums(self, lifts, n_terms=None):
        """G_0 = 0, G_1, ..., G_n at each lift, shape (..., n_terms + 1)."""
        terms = self.terms(lifts, n_terms)
        weights = float(self.degree) ** -np.arange(terms.shape[-1])
        sums = np.cumsum(terms * weights, axis=-1)
        return np.concatenate([np.zeros(sums.shape[:-1] + (1,)), sums],
                              axis=-1)

    def values(self, lifts, n_iter=None):
        """G_n at a batch of lifts."""
        n_iter = self.n_iter if n_iter is None else n_iter
        terms = self.terms(lifts, n_iter)
        weights = float(self.degree) ** -np.arange(n_iter)
        return terms @ weights

    def green(self, p):
        """G at a point with its error bound.

        :rtype: :class:`GreenValue`
        """
        value = float(self.values(normalize(p).lift))
        return GreenValue(value, self.error_bound())

    def functional_equation_residual(self, p):
        """|G(f(p)) - d (G(p) - u(p))| with n_iter terms on both sides.

        The two truncations differ by the term u(f^n p) / d^(n-1), so the
        residual stays below 3 d times the error bound.
        """
        point = normalize(p)
        left = float(self.values(self.map.apply(point).lift))
        right = float(self.values(point.lift))
        return abs(left - self.degree * (right - u_potential(self.map,
                                                             point)))

    def residual_bound(self):
        """3 d times the error bound, the tolerance of the residual."""
        return 3.0 * self.degree * self.error_bound()


def green(ge, p):
    """G at a point, see :meth:`GreenEvaluator.green`."""
    return ge.green(p)


def green_functional_equation_residual(ge, p):
    """See :meth:`GreenEvaluator.functional_equation_residual`."""
    return ge.functional_equation_residual(p)


def convergence_profile(ge, lifts, n_max=None):
    """max over the lifts of |G_(n+1) - G_n| for n = 0, ..., n_max - 1."""
    terms = np.abs(ge.terms(lifts, n_max))
    weights = float(ge.degree) ** -np.arange(terms.shape[-1])
    return np.max(terms * weights, axis=0)


def decay_slope(profile, n_min=5, n_max=25):
    """Fits log of the convergence profile against n on [n_min, n_max].

    :rtype: :class:`DecayFit`
    """
    n_values = np.arange(n_min, min(n_max, len(profile) - 1) + 1)
    maxima = np.asarray(profile)[n_values]
    usable = maxima > 0
    if np.count_nonzero(usable) < 2:
        raise InvalidArgument('Need two nonzero increments to fit a decay')
    fit = stats.linregress(n_values[usable], np.log(maxima[usable]))
    return DecayFit(float(fit.slope), float(fit.intercept),
                    float(fit.rvalue), n_values, maxima)


def green_grid(ge, line, grid_size, extent=1.2):
    """G along the affine parameter square [-extent, extent]^2 of a line.

    :return: Parameters and values, both of shape (grid_size, grid_size).
    """
    axis = np.linspace(-extent, extent, grid_size)
    zeta = axis[None, :] + 1j * axis[:, None]
    values = ge.values(line.lifts(zeta))
    return zeta, values
