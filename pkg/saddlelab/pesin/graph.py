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

Graph transform of Lipschitz graphs through nearly diagonal local maps

    g(x, y) = (lambda x + alpha(x, y), mu y + beta(x, y))

on a ball B(0, r) of C^2 where the derivatives of alpha and beta are
bounded by delta.
"""
import logging
import math
from typing import List, NamedTuple, Optional

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.exceptions.pesin import (ConditionViolated, EscapedBall,
                                        GraphTransformError, InvalidLocalMap)
from saddlelab.utils.files import read_json
from saddlelab.utils.serialization import write_canonical

LOG = logging.getLogger(__name__)

MIN_NODES = 256
DEFAULT_NODES = 1024
BOUNDARY_SAMPLES = 256
DELTA_SAMPLES = 10_000
SOLVER_TOLERANCE = 1e-12
SOLVER_STEPS = 200
LIPSCHITZ_SLACK = 1e-9
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class PolynomialTable:
    """Bivariate polynomial sum c_ij x^i y^j without constant term."""

    def __init__(self, table=None):
        table = {tuple(key): complex(value)
                 for key, value in (table or {}).items() if value != 0}
        if table.get((0, 0), 0) != 0:
            raise InvalidLocalMap('Perturbations must vanish at the origin')
        if any(i < 0 or j < 0 for i, j in table):
            raise InvalidLocalMap('Exponents must be nonnegative')
        self.table = dict(sorted(table.items()))
        self._exponents = np.array(list(self.table) or [(0, 0)], dtype=int)
        self._coefficients = np.array(list(self.table.values()) or [0j])

    def __call__(self, x, y):
        x = np.asarray(x, dtype=complex)[..., None]
        y = np.asarray(y, dtype=complex)[..., None]
        return np.sum(self._coefficients * x ** self._exponents[:, 0] *
                      y ** self._exponents[:, 1], axis=-1)

    def partials(self, x, y):
        """Derivatives with respect to x and y."""
        x = np.asarray(x, dtype=complex)[..., None]
        y = np.asarray(y, dtype=complex)[..., None]
        i, j = self._exponents[:, 0], self._exponents[:, 1]
        d_x = np.sum(self._coefficients * i * x ** np.maximum(i - 1, 0) *
                     y ** j, axis=-1)
        d_y = np.sum(self._coefficients * j * x ** i *
                     y ** np.maximum(j - 1, 0), axis=-1)
        return d_x, d_y

    def to_list(self):
        """Rows [i, j, re, im]."""
        return [[i, j, value.real, value.imag]
                for (i, j), value in self.table.items()]

    @classmethod
    def from_list(cls, rows):
        """Inverse of :meth:`to_list`."""
        try:
            return cls({(int(i), int(j)): complex(re, im)
                        for i, j, re, im in rows})
        except (TypeError, ValueError) as ex:
            raise InvalidLocalMap(
                'Perturbation rows are [i, j, re, im]') from ex


def ball_samples(radius, count, seed=0):
    """Uniform samples of the ball of radius r in C^2."""
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((count, 4))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    directions *= radius * rng.random((count, 1)) ** 0.25
    return directions[:, 0] + 1j * directions[:, 1], \
        directions[:, 2] + 1j * directions[:, 3]


class LocalDiagonalMap:
    """Nearly diagonal map g(x, y) = (lambda x + alpha, mu y + beta).

    :param lam: Expanding multiplier lambda.
    :param mu: Multiplier mu with 0 < |mu| < |lambda|.
    :param alpha: Table {(i, j): c} of the x perturbation.
    :param beta: Table {(i, j): c} of the y perturbation.
    :param r: Radius of the validity ball.
    :param delta: Declared C^1 bound, the measured one when omitted.
    :raises InvalidLocalMap: If |mu| >= |lambda|, mu = 0, r <= 0 or the
        declared delta is below the sampled bound.
    """

    def __init__(self, lam, mu, alpha=None, beta=None, r=1.0, delta=None,
                 n_samples=DELTA_SAMPLES, seed=0):
        self.lam = complex(lam)
        self.mu = complex(mu)
        if not 0 < abs(self.mu) < abs(self.lam):
            raise InvalidLocalMap(
                f'Need 0 < |mu| < |lambda|, got |mu| = {abs(self.mu)}, '
                f'|lambda| = {abs(self.lam)}')
        if r <= 0:
            raise InvalidLocalMap(f'The radius must be positive, got {r}')
        self.alpha = alpha if isinstance(alpha, PolynomialTable) else \
            PolynomialTable(alpha)
        self.beta = beta if isinstance(beta, PolynomialTable) else \
            PolynomialTable(beta)
        self.r = float(r)
        self.measured_delta = self.measure_delta(n_samples, seed)
        if delta is None:
            delta = self.measured_delta
        elif delta < self.measured_delta * (1.0 - LIPSCHITZ_SLACK):
            raise InvalidLocalMap(
                f'Declared delta {delta} is below the sampled bound '
                f'{self.measured_delta:.6g}')
        self.delta = float(delta)

    def measure_delta(self, n_samples=DELTA_SAMPLES, seed=0):
        """Largest partial derivative of alpha and beta on sampled points
        of B(0, r)."""
        x, y = ball_samples(self.r, n_samples, seed)
        partials = self.alpha.partials(x, y) + self.beta.partials(x, y)
        return float(max(np.max(np.abs(values)) for values in partials))

    def apply(self, x, y):
        """Image (X, Y) of points."""
        return self.lam * x + self.alpha(x, y), self.mu * y + self.beta(x, y)

    def domination(self, gamma):
        """delta (1 + gamma), which must stay below |lambda|."""
        return self.delta * (1.0 + gamma)

    def contraction_factor(self, gamma):
        """Factor t = delta (1 + gamma) / |lambda| of the abscissa solver."""
        return self.domination(gamma) / abs(self.lam)

    def image_lipschitz(self, gamma):
        """(|mu| gamma + delta (1 + gamma)) / (|lambda| - delta (1 + gamma))
        """
        spread = self.domination(gamma)
        return (abs(self.mu) * gamma + spread) / (abs(self.lam) - spread)

    def to_dict(self):
        """Plain representation used in local map files."""
        return {'lambda': [self.lam.real, self.lam.imag],
                'mu': [self.mu.real, self.mu.imag],
                'alpha': self.alpha.to_list(), 'beta': self.beta.to_list(),
                'r': self.r, 'delta': self.delta}

    @classmethod
    def from_dict(cls, data):
        """Inverse of :meth:`to_dict`.

        :raises InvalidLocalMap: For missing or malformed fields.
        """
        try:
            return cls(complex(*data['lambda']), complex(*data['mu']),
                       PolynomialTable.from_list(data.get('alpha', [])),
                       PolynomialTable.from_list(data.get('beta', [])),
                       r=float(data.get('r', 1.0)), delta=data.get('delta'))
        except (KeyError, TypeError) as ex:
            raise InvalidLocalMap(
                "A local map needs 'lambda' and 'mu' as [re, im]") from ex


def vogel_nodes(center, radius, count):
    """Quasi-uniform spiral nodes inside a disc."""
    index = np.arange(count)
    radii = radius * np.sqrt((index + 0.5) / count)
    return center + radii * np.exp(1j * GOLDEN_ANGLE * index)


def _plane(values):
    return np.column_stack([values.real, values.imag])


class LipschitzGraph:
    """Graph {(x, phi(x)), x in D} over a disc D of the x axis.

    ``phi`` is known at ``nodes``; it is evaluated elsewhere by the exact
    function when the graph was built from one, otherwise by the affine
    interpolation of the three nearest nodes.
    """

    def __init__(self, center, radius, nodes, values, gamma, function=None):
        self.center = complex(center)
        self.radius = float(radius)
        self.nodes = np.asarray(nodes, dtype=complex)
        self.values = np.asarray(values, dtype=complex)
        self.gamma = float(gamma)
        self.function = function
        if self.nodes.ndim != 1 or self.nodes.shape != self.values.shape:
            raise InvalidArgument('Nodes and values must be 1D of one size')
        if self.nodes.size < 2:
            raise InvalidArgument('A graph needs at least two nodes')
        if self.radius <= 0:
            raise InvalidArgument(f'Domain radius must be positive, got '
                                  f'{self.radius}')
        self._tree = None

    @classmethod
    def from_function(cls, phi, center, radius, gamma,
                      n_nodes=DEFAULT_NODES):
        """Samples a function on spiral nodes of the disc.

        :raises InvalidArgument: If n_nodes < 256 or the sampled ratio
            exceeds gamma.
        """
        if n_nodes < MIN_NODES:
            raise InvalidArgument(
                f'n_nodes must be >= {MIN_NODES}, got {n_nodes}')
        nodes = vogel_nodes(complex(center), radius, n_nodes)
        values = np.broadcast_to(np.asarray(phi(nodes), dtype=complex),
                                 nodes.shape).copy()
        graph = cls(center, radius, nodes, values, gamma, function=phi)
        measured = measure_lipschitz(graph)
        if measured > gamma * (1.0 + LIPSCHITZ_SLACK) + 1e-15:
            raise InvalidArgument(
                f'Sampled Lipschitz ratio {measured:.6g} exceeds the '
                f'declared gamma {gamma}')
        return graph

    @property
    def tree(self):
        """k-d tree of the nodes in the real plane."""
        if self._tree is None:
            self._tree = cKDTree(_plane(self.nodes))
        return self._tree

    @property
    def spacing(self):
        """Largest distance from a node to its nearest neighbour."""
        distances, _ = self.tree.query(_plane(self.nodes), k=2)
        return float(np.max(distances[:, 1]))

    def evaluate(self, x):
        """phi at arbitrary points of the x axis."""
        x = np.asarray(x, dtype=complex)
        if self.function is not None:
            return np.broadcast_to(np.asarray(self.function(x),
                                              dtype=complex),
                                   x.shape).copy()
        flat = x.ravel()
        _, nearest = self.tree.query(_plane(flat), k=min(3, self.nodes.size))
        nearest = np.atleast_2d(nearest)
        result = self.values[nearest[:, 0]].copy()
        if nearest.shape[1] == 3:
            corners = self.nodes[nearest]
            system = np.stack([corners.real, corners.imag,
                               np.ones(corners.shape)], axis=1)
            target = np.stack([flat.real, flat.imag, np.ones(flat.shape)],
                              axis=1)
            usable = np.abs(np.linalg.det(system)) > 1e-14 * \
                np.max(np.abs(corners), axis=1) ** 2 + 1e-300
            if np.any(usable):
                weights = np.linalg.solve(system[usable],
                                          target[usable][..., None])[..., 0]
                result[usable] = np.sum(weights *
                                        self.values[nearest[usable]], axis=1)
        return result.reshape(x.shape)

    def boundary(self, count=BOUNDARY_SAMPLES):
        """Points (x, phi(x)) on the boundary circle of the domain."""
        x = self.center + self.radius * np.exp(
            2j * np.pi * np.arange(count) / count)
        return x, self.evaluate(x)

    def to_dict(self):
        """Plain representation used in graph files."""
        return {'center': [self.center.real, self.center.imag],
                'radius': self.radius, 'gamma': self.gamma,
                'nodes': [[x.real, x.imag, y.real, y.imag]
                          for x, y in zip(self.nodes, self.values)]}

    @classmethod
    def from_dict(cls, data):
        """Inverse of :meth:`to_dict`, a node graph.

        :raises InvalidArgument: For missing or malformed fields.
        """
        try:
            table = np.asarray(data['nodes'], dtype=float)
            return cls(complex(*data['center']), float(data['radius']),
                       table[:, 0] + 1j * table[:, 1],
                       table[:, 2] + 1j * table[:, 3], float(data['gamma']))
        except (KeyError, TypeError, ValueError, IndexError) as ex:
            raise InvalidArgument(
                "A graph needs 'center', 'radius', 'gamma' and 'nodes' "
                "rows [re x, im x, re phi, im phi]") from ex


def measure_lipschitz(graph):
    """Largest ratio |phi(x1) - phi(x2)| / |x1 - x2| over node pairs."""
    if graph.nodes.size < 2:
        raise InvalidArgument('Need at least two nodes')
    steps = pdist(_plane(graph.nodes))
    rises = pdist(_plane(graph.values))
    distinct = steps > 0
    if not np.any(distinct):
        return 0.0
    return float(np.max(rises[distinct] / steps[distinct]))


def resample(graph, n_nodes=DEFAULT_NODES):
    """Same graph evaluated on fresh spiral nodes of its domain."""
    if n_nodes < MIN_NODES:
        raise InvalidArgument(
            f'n_nodes must be >= {MIN_NODES}, got {n_nodes}')
    nodes = vogel_nodes(graph.center, graph.radius, n_nodes)
    return LipschitzGraph(graph.center, graph.radius, nodes,
                          graph.evaluate(nodes), graph.gamma,
                          function=graph.function)


def solve_abscissa(g, graph, x0, tol=SOLVER_TOLERANCE,
                   max_steps=SOLVER_STEPS):
    """Solves lambda x + alpha(x, phi(x)) = x0 by iterating
    F(x) = (x0 - alpha(x, phi(x))) / lambda from x0 / lambda.

    :param x0: Targets, any shape.
    :return: Solutions and the step sizes |x_(k+1) - x_k|, one row per
        iteration.
    :raises GraphTransformError: If the iteration does not reach ``tol``.
    """
    x0 = np.asarray(x0, dtype=complex)
    x = x0 / g.lam
    history = []
    for _ in range(max_steps):
        updated = (x0 - g.alpha(x, graph.evaluate(x))) / g.lam
        steps = np.abs(updated - x)
        history.append(steps)
        x = updated
        if np.max(steps, initial=0.0) <= tol * max(1.0, float(
                np.max(np.abs(x), initial=0.0))):
            return x, np.array(history)
    raise GraphTransformError(
        f'Abscissa solver stalled at step size {np.max(steps):.3e}')


class TransformReport(NamedTuple):
    """Diagnostics of one graph transform."""
    gamma: float
    contraction: float
    histories: np.ndarray
    abscissa_error: float
    dropped: int


def _check_inside(g, graph):
    x, y = graph.boundary()
    norms = np.concatenate([np.hypot(np.abs(graph.nodes),
                                     np.abs(graph.values)),
                            np.hypot(np.abs(x), np.abs(y))])
    if np.max(norms) > g.r * (1.0 + 1e-12):
        raise EscapedBall(f'Graph reaches |(x, y)| = {np.max(norms):.6g} '
                          f'outside B(0, {g.r})')


def graph_transform_report(g, graph):
    """Graph transform with its diagnostics.

    Output nodes are the images of the input nodes that fall inside the new
    domain D', the disc around the image of the domain center whose radius
    is the distance to the image of the boundary circle minus one mesh
    spacing scaled by |lambda| + delta (1 + gamma).

    :return: The image graph and a :class:`TransformReport`.
    :raises ConditionViolated: If delta (1 + gamma) >= |lambda|.
    :raises EscapedBall: If the graph leaves B(0, r).
    """
    spread = g.domination(graph.gamma)
    if spread >= abs(g.lam):
        raise ConditionViolated(
            f'delta (1 + gamma) = {spread:.6g} is not below |lambda| = '
            f'{abs(g.lam):.6g}')
    _check_inside(g, graph)

    gamma = g.image_lipschitz(graph.gamma)
    images, values = g.apply(graph.nodes, graph.values)

    center, _ = g.apply(graph.center, graph.evaluate(graph.center))
    boundary_x, boundary_y = graph.boundary()
    rim, _ = g.apply(boundary_x, boundary_y)
    margin = (abs(g.lam) + spread) * graph.spacing
    radius = float(np.min(np.abs(rim - center))) - margin
    if radius <= 0:
        raise GraphTransformError('The image domain is empty')

    keep = np.abs(images - center) <= radius
    if np.count_nonzero(keep) < 2:
        raise GraphTransformError('Fewer than two nodes inside the image '
                                  'domain')

    solved, histories = solve_abscissa(g, graph, images[keep])
    error = float(np.max(np.abs(solved - graph.nodes[keep])))
    LOG.debug("Graph transform: gamma %.6g -> %.6g, %d of %d nodes kept, "
              "abscissa error %.3e", graph.gamma, gamma,
              np.count_nonzero(keep), keep.size, error)

    image = LipschitzGraph(center, radius, images[keep], values[keep], gamma)
    return image, TransformReport(gamma, g.contraction_factor(graph.gamma),
                                  histories, error,
                                  int(keep.size - np.count_nonzero(keep)))


def graph_transform(g, graph):
    """Image of a Lipschitz graph, see :func:`graph_transform_report`.

    :rtype: :class:`LipschitzGraph`
    """
    return graph_transform_report(g, graph)[0]


class IterationResult(NamedTuple):
    """Outcome of a graph transform iterated along a cocycle."""
    graph: LipschitzGraph
    gammas: List[float]
    steps_to_target: Optional[int]


def iterate_graph_transform(cocycle, graph, gamma_target=None,
                            n_nodes=DEFAULT_NODES):
    """Pushes a graph along a sequence of local maps.

    Every image graph is resampled on ``n_nodes`` spiral nodes of its
    domain, so the mesh stays quasi-uniform.

    :return: The final graph, gamma_0, ..., gamma_n and the first k with
        gamma_k <= gamma_target, None if never reached.
    :rtype: :class:`IterationResult`
    :raises InvalidArgument: For an empty cocycle.
    :raises GraphTransformError: Tagged with the failing step index.
    """
    if not cocycle:
        raise InvalidArgument('The cocycle must contain at least one map')
    gammas = [graph.gamma]
    reached = None
    if gamma_target is not None and graph.gamma <= gamma_target:
        reached = 0
    for step, g in enumerate(cocycle):
        try:
            graph = graph_transform(g, graph)
        except GraphTransformError as ex:
            raise ex.at_step(step) from ex
        graph = resample(graph, n_nodes)
        gammas.append(graph.gamma)
        if reached is None and gamma_target is not None and \
                graph.gamma <= gamma_target:
            reached = step + 1
    LOG.info("Iterated %d graph transforms, gamma %.6g -> %.6g",
             len(cocycle), gammas[0], gammas[-1])
    return IterationResult(graph, gammas, reached)


def _read(file, error):
    try:
        return read_json(file)
    except (OSError, ValueError) as ex:
        raise error(f"Failed to read '{file}'") from ex


def save_graph(graph, file):
    """Writes a graph file."""
    write_canonical(graph.to_dict(), file)


def load_graph(file):
    """Reads a graph file.

    :raises InvalidArgument: If the file is missing or malformed.
    """
    return LipschitzGraph.from_dict(_read(file, InvalidArgument))


def load_local_maps(file):
    """Reads a local map file, either one map or {"maps": [...]}.

    :rtype: list[LocalDiagonalMap]
    :raises InvalidLocalMap: If the file is missing or malformed.
    """
    data = _read(file, InvalidLocalMap)
    if isinstance(data, dict) and 'maps' in data:
        return [LocalDiagonalMap.from_dict(item) for item in data['maps']]
    if not isinstance(data, dict):
        raise InvalidLocalMap('A local map file holds a mapping')
    return [LocalDiagonalMap.from_dict(data)]
