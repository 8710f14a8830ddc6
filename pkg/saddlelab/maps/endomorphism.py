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
from collections import defaultdict
from itertools import product

import numpy as np

from saddlelab.exceptions.geometry import ChartSingular
from saddlelab.exceptions.maps import (Degenerate, DegreeMismatch,
                                       InvalidMapDefinition,
                                       RootFindingFailure, Unsupported)
from saddlelab.geometry.projective import (FREE, SINGULAR_FLOOR,
                                           ProjPoint,
                                           chordal_distances, normalize,
                                           normalize_lifts)
from saddlelab.maps import polynomial
from saddlelab.utils.serialization import content_hash

LOG = logging.getLogger(__name__)

DEGENERATE_FLOOR = 1e-14
NONDEGENERACY_FLOOR = 1e-8
MACAULAY_FLOOR = 1e-10
PREIMAGE_TOLERANCE = 1e-8


def _monomials(lifts, exponents):
    return np.prod(lifts[..., None, :] ** exponents, axis=-1)


def _exponent_triples(degree):
    return [(i, j, degree - i - j) for i in range(degree + 1)
            for j in range(degree + 1 - i)]


class HomogeneousEndomorphism:
    """Holomorphic endomorphism of P^2 given by its lift F = (P, Q, R).

    Each component is a mapping from exponent triples (i, j, k), all summing
    to the degree, to complex coefficients of z^i w^j t^k.
    """

    def __init__(self, degree, components):
        if int(degree) != degree or degree < 2:
            raise InvalidMapDefinition(
                f'Degree must be an integer >= 2, got {degree}')
        if len(components) != 3:
            raise InvalidMapDefinition(
                f'Expected 3 components, got {len(components)}')
        self._degree = int(degree)

        tables = []
        for index, component in enumerate(components):
            table = {}
            for exponent, coefficient in dict(component).items():
                key = tuple(int(value) for value in exponent)
                if len(key) != 3 or min(key) < 0:
                    raise InvalidMapDefinition(
                        f'Invalid exponent {exponent} in component {index}')
                if sum(key) != self._degree:
                    raise DegreeMismatch(
                        f'Monomial {key} of component {index} does not '
                        f'have degree {self._degree}')
                if coefficient != 0:
                    table[key] = table.get(key, 0) + complex(coefficient)
            tables.append(table)
        if not any(tables):
            raise InvalidMapDefinition('All components vanish')
        self._components = tuple(tables)

        exponents = sorted(set().union(*tables))
        self._exponents = np.array(exponents, dtype=int).reshape(-1, 3)
        self._coefficients = np.array(
            [[table.get(key, 0) for key in exponents] for table in tables],
            dtype=complex)

    @property
    def degree(self):
        """Algebraic degree d of the map."""
        return self._degree

    @property
    def components(self):
        """Copies of the three coefficient tables."""
        return tuple(dict(table) for table in self._components)

    def lift_values(self, lifts):
        """F evaluated at (a batch of) lifts, no normalization."""
        lifts = np.asarray(lifts, dtype=complex)
        return _monomials(lifts, self._exponents) @ self._coefficients.T

    def differential(self, lifts):
        """Derivative of F, indexed [..., component, variable]."""
        lifts = np.asarray(lifts, dtype=complex)
        columns = []
        for variable in range(3):
            lowered = self._exponents.copy()
            factor = lowered[:, variable].astype(float)
            lowered[:, variable] = np.maximum(lowered[:, variable] - 1, 0)
            monomials = _monomials(lifts, lowered) * factor
            columns.append(monomials @ self._coefficients.T)
        return np.stack(columns, axis=-1)

    def apply_lifts(self, lifts):
        """Unit lifts of the images of a batch of lifts.

        :raises Degenerate: If F vanishes at one of them.
        """
        lifts = np.asarray(lifts, dtype=complex)
        values = self.lift_values(lifts)
        scale = np.linalg.norm(lifts, axis=-1) ** self._degree
        if np.any(np.linalg.norm(values, axis=-1) <= DEGENERATE_FLOOR *
                  scale):
            raise Degenerate()
        return normalize_lifts(values)

    def apply(self, p):
        """Image f(p) of a point.

        :type p: :class:`ProjPoint`
        :rtype: :class:`ProjPoint`
        :raises Degenerate: If F(p) vanishes.
        """
        values = self.lift_values(p.lift)
        if np.linalg.norm(values) <= DEGENERATE_FLOOR:
            raise Degenerate(f'F vanishes at {p}')
        return normalize(values)

    def orbit_lifts(self, lift, length):
        """Unit lifts x, f(x), ..., f^(length - 1)(x)."""
        orbit = np.empty((length, 3), dtype=complex)
        orbit[0] = normalize(lift).lift
        for step in range(1, length):
            orbit[step] = self.apply_lifts(orbit[step - 1])
        return orbit

    def macaulay_matrix(self):
        """Coefficients of the products m F_i, m running over monomials of
        degree 2d - 2, in the monomial basis of degree 3d - 2.

        The matrix has full column rank exactly when P = Q = R = 0 only at
        the origin.
        """
        degree = self._degree
        columns = {key: index for index, key in
                   enumerate(_exponent_triples(3 * degree - 2))}
        multipliers = _exponent_triples(2 * degree - 2)
        matrix = np.zeros((3 * len(multipliers), len(columns)),
                          dtype=complex)
        for index, table in enumerate(self._components):
            for offset, multiplier in enumerate(multipliers):
                row = index * len(multipliers) + offset
                for key, coefficient in table.items():
                    column = columns[tuple(a + b for a, b in
                                           zip(key, multiplier))]
                    matrix[row, column] += coefficient
        return matrix

    def check_nondegenerate(self, n_samples=10_000, seed=0):
        """Checks that F only vanishes at the origin.

        Sampled unit lifts catch isolated near zeros, the rank of
        :meth:`macaulay_matrix` catches common zeros anywhere.

        :return: The smallest max |F_i(Z)| over the samples.
        :raises Degenerate: If max |F_i(Z)| < 1e-8 at some sampled unit
            lift Z, or if the Macaulay matrix is rank deficient.
        """
        rng = np.random.default_rng(seed)
        samples = rng.standard_normal((n_samples, 3)) + \
            1j * rng.standard_normal((n_samples, 3))
        samples = normalize_lifts(samples)
        largest = np.max(np.abs(self.lift_values(samples)), axis=-1)
        worst = float(np.min(largest))
        if worst < NONDEGENERACY_FLOOR:
            raise Degenerate(
                f'max |F_i| drops to {worst:.3e} on the unit sphere')

        singular = np.linalg.svd(self.macaulay_matrix(), compute_uv=False)
        conditioning = float(singular[-1] / singular[0])
        if conditioning < MACAULAY_FLOOR:
            raise Degenerate(
                f'P, Q and R share a zero, Macaulay matrix conditioning '
                f'{conditioning:.3e}')
        LOG.debug("Nondegeneracy check passed, min max |F_i| = %.3e, "
                  "Macaulay conditioning %.3e", worst, conditioning)
        return worst

    def chart_jacobians(self, lifts, source_charts, destination_charts):
        """Derivatives of the chart expressions of f, one per lift.

        :param lifts: Points, shape (N, 3).
        :param source_charts: Chart index at each point.
        :param destination_charts: Chart index at each image.
        :return: Jacobian matrices, shape (N, 2, 2).
        :raises ChartSingular: If a chart does not contain its point.
        """
        lifts = np.atleast_2d(np.asarray(lifts, dtype=complex))
        source = np.broadcast_to(np.asarray(source_charts, dtype=int),
                                 lifts.shape[:1])
        destination = np.broadcast_to(
            np.asarray(destination_charts, dtype=int), lifts.shape[:1])
        rows = np.arange(lifts.shape[0])

        pivots = lifts[rows, source]
        singular = np.abs(pivots) <= SINGULAR_FLOOR * \
            np.linalg.norm(lifts, axis=-1)
        if np.any(singular):
            raise ChartSingular(int(source[np.argmax(singular)]))
        affine = lifts / pivots[:, None]

        values = self.lift_values(affine)
        derivatives = self.differential(affine)
        denominators = values[rows, destination]
        singular = np.abs(denominators) <= SINGULAR_FLOOR * \
            np.linalg.norm(values, axis=-1)
        if np.any(singular):
            raise ChartSingular(int(destination[np.argmax(singular)]))

        free_source = FREE[source]
        free_destination = FREE[destination]
        numerators = values[rows[:, None], free_destination]
        block = derivatives[rows[:, None, None], free_destination[:, :, None],
                            free_source[:, None, :]]
        pivot_row = derivatives[rows[:, None], destination[:, None],
                                free_source]
        return (block * denominators[:, None, None] -
                numerators[:, :, None] * pivot_row[:, None, :]) / \
            denominators[:, None, None] ** 2

    def jacobian(self, p, chart_src=None, chart_dst=None):
        """Derivative at p of the chart expression of f.

        Charts default to the largest-modulus coordinate of p and f(p).

        :rtype: numpy.ndarray of shape (2, 2)
        :raises ChartSingular: If a chart does not contain its point.
        """
        chart_src = chart_src or p.best_chart()
        chart_dst = chart_dst or self.apply(p).best_chart()
        return self.chart_jacobians(p.lift[None, :], chart_src.index,
                                    chart_dst.index)[0]

    def definition(self):
        """Definition in the map-file format."""
        components = []
        for table in self._components:
            components.append([[list(key), value.real, value.imag]
                               for key, value in sorted(table.items())])
        return {'degree': self._degree, 'components': components}

    def __repr__(self):
        return (f"{type(self).__name__}(degree={self._degree}, "
                f"monomials={len(self._exponents)})")


class ProductMap(HomogeneousEndomorphism):
    """Homogenization [t^d p(z/t) : t^d q(w/t) : t^d] of two univariate
    polynomials of the same degree.

    :param p: Ascending coefficients of the polynomial acting on z.
    :param q: Ascending coefficients of the polynomial acting on w.
    """

    def __init__(self, p, q):
        p = polynomial.trim(p)
        q = polynomial.trim(q)
        degree = p.size - 1
        if q.size - 1 != degree:
            raise DegreeMismatch(
                f'deg p = {degree} differs from deg q = {q.size - 1}')
        if degree < 2:
            raise DegreeMismatch(f'Degree must be >= 2, got {degree}')
        self.p = p
        self.q = q
        self.p.setflags(write=False)
        self.q.setflags(write=False)
        super().__init__(degree, [
            {(k, 0, degree - k): c for k, c in enumerate(p)},
            {(0, k, degree - k): c for k, c in enumerate(q)},
            {(0, 0, degree): 1.0},
        ])

    def coordinate_roots(self, lifts):
        """Roots of p(z) = z0 and q(w) = w0 for points [z0 : w0 : 1].

        :param lifts: Points, shape (N, 3), away from the line t = 0.
        :return: z roots and w roots, each of shape (N, d).
        :raises ChartSingular: If a point lies on the line t = 0.
        :raises RootFindingFailure: If the solver fails.
        """
        lifts = np.atleast_2d(np.asarray(lifts, dtype=complex))
        pivots = lifts[:, 2]
        if np.any(np.abs(pivots) <= SINGULAR_FLOOR *
                  np.linalg.norm(lifts, axis=-1)):
            raise ChartSingular(2)
        targets = lifts[:, :2] / pivots[:, None]

        roots = []
        for coefficients, target in ((self.p, targets[:, 0]),
                                     (self.q, targets[:, 1])):
            shifted = np.tile(coefficients, (lifts.shape[0], 1))
            shifted[:, 0] -= target
            found = polynomial.companion_roots(shifted)
            polynomial.check_residuals(shifted, found)
            roots.append(found)
        return roots[0], roots[1]

    def preimage_lifts(self, lifts):
        """All d^2 preimages of each point, repeated with multiplicity.

        :return: Lifts of shape (N, d * d, 3); candidate d * i + j pairs the
            i-th z root with the j-th w root.
        """
        z_roots, w_roots = self.coordinate_roots(lifts)
        degree = self.degree
        candidates = np.ones((z_roots.shape[0], degree * degree, 3),
                             dtype=complex)
        candidates[:, :, 0] = np.repeat(z_roots, degree, axis=1)
        candidates[:, :, 1] = np.tile(w_roots, (1, degree))
        return candidates

    def preimages(self, q_point):
        """Preimages of a point of the chart t = 1 with multiplicities.

        :type q_point: :class:`ProjPoint`
        :return: Pairs (point, multiplicity) whose multiplicities add up to
            d^2.
        :rtype: list
        :raises RootFindingFailure: If a candidate is not mapped onto
            ``q_point``.
        """
        z_roots, w_roots = self.coordinate_roots(q_point.lift)
        result = []
        for (z, z_count), (w, w_count) in product(
                polynomial.merge_roots(z_roots[0]),
                polynomial.merge_roots(w_roots[0])):
            result.append((ProjPoint.from_coordinates(z, w, 1.0),
                           z_count * w_count))

        images = self.apply_lifts(np.array([point.lift
                                            for point, _ in result]))
        distances = chordal_distances(images, q_point.lift)
        if np.max(distances) >= PREIMAGE_TOLERANCE:
            raise RootFindingFailure(
                f'Preimage misses its target by {np.max(distances):.3e}')
        return result

    def definition(self):
        return {'product': {'p': [[c.real, c.imag] for c in self.p],
                            'q': [[c.real, c.imag] for c in self.q]}}


def apply(f, p):
    """Image of a point, see :meth:`HomogeneousEndomorphism.apply`."""
    return f.apply(p)


def jacobian(f, p, chart_src=None, chart_dst=None):
    """Chart Jacobian, see :meth:`HomogeneousEndomorphism.jacobian`."""
    return f.jacobian(p, chart_src, chart_dst)


def preimages(f, q_point):
    """Preimages with multiplicity of a point under a product map.

    :raises Unsupported: If f is not a :class:`ProductMap`.
    """
    if not isinstance(f, ProductMap):
        raise Unsupported('Preimages are only available for product maps')
    return f.preimages(q_point)


def homogenize(p, q):
    """Product map of two univariate polynomials, see :class:`ProductMap`.
    """
    return ProductMap(p, q)


def _multiply(first, second):
    result = defaultdict(complex)
    for (key_a, value_a), (key_b, value_b) in product(first.items(),
                                                      second.items()):
        key = tuple(a + b for a, b in zip(key_a, key_b))
        result[key] += value_a * value_b
    return dict(result)


def compose(f, g):
    """The endomorphism f o g, of degree deg f * deg g.

    Coefficients are obtained by substituting the components of g into
    those of f, which is only practical for small degrees.
    """
    powers = []
    for table in g.components:
        current = {(0, 0, 0): 1.0 + 0j}
        column = [current]
        for _ in range(f.degree):
            current = _multiply(current, table)
            column.append(current)
        powers.append(column)

    components = []
    for table in f.components:
        result = defaultdict(complex)
        for (i, j, k), coefficient in table.items():
            term = _multiply(_multiply(powers[0][i], powers[1][j]),
                             powers[2][k])
            for key, value in term.items():
                result[key] += coefficient * value
        components.append(dict(result))
    return HomogeneousEndomorphism(f.degree * g.degree, components)


def map_hash(f):
    """SHA-256 digest of the canonical definition of a map."""
    return content_hash(f.definition())
