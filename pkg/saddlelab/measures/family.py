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
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from saddlelab.exceptions.cli import InvalidArgument
from saddlelab.geometry.curves import (ImageCurve, ProjectiveLine,
                                       is_collinear, sample_parameters)
from saddlelab.geometry.projective import chordal_distances

LOG = logging.getLogger(__name__)

DEFAULT_M = 8


@dataclass(frozen=True)
class FamilyCurve:
    """Term [f^depth(L)] / d^depth of the averaged current S_m.

    When f^depth(L) is again a line, ``curve`` is that line covered
    ``multiplicity`` = d^depth times. Otherwise ``curve`` is the composition
    f^depth o gamma_L, whose mass already counts the multiplicity.
    """
    depth: int
    weight: float
    multiplicity: int
    curve: object

    @property
    def mass(self):
        """Cohomological mass of the parametrized curve."""
        return self.curve.degree

    @property
    def share(self):
        """Expected fraction of S_m carried by this curve times m."""
        return self.weight * self.multiplicity * self.mass

    @property
    def is_line(self):
        """Whether the image is tracked as a projective line."""
        return isinstance(self.curve, ProjectiveLine)


@dataclass
class CurveFamily:
    """Weighted curves of S_m = (1/m) sum_(i<m) [f^i(L)] / d^i.

    ``lines`` holds the image lines f^i(L) for every depth where the image
    was recognized as a line, possibly beyond m.
    """
    curves: List[FamilyCurve]
    m: int
    degree: int
    base: ProjectiveLine
    lines: List[ProjectiveLine] = field(default_factory=list)

    def total_weight(self):
        """sum over curves of weight * d^depth, equal to one."""
        return sum(curve.weight * self.degree ** curve.depth
                   for curve in self.curves)

    def line_at(self, depth) -> Optional[ProjectiveLine]:
        """Image line at a depth, None if it was not tracked."""
        if depth < len(self.lines):
            return self.lines[depth]
        return None

    def describe(self):
        """Plain summary used in result files."""
        return {'m': self.m, 'base': self.base.to_dict(),
                'tracked_lines': len(self.lines),
                'curves': [{'depth': curve.depth, 'weight': curve.weight,
                            'multiplicity': curve.multiplicity,
                            'is_line': curve.is_line}
                           for curve in self.curves]}


def _image_line(endomorphism, line, samples):
    a = endomorphism.apply_lifts(line.a)
    b = endomorphism.apply_lifts(line.b)
    if float(chordal_distances(a, b)) > 1e-6:
        return ProjectiveLine(a, b)
    # the two anchors collapsed, span the sampled image instead
    basis = np.linalg.svd(samples)[2]
    return ProjectiveLine(basis[0].conj(), basis[1].conj())


def track_lines(endomorphism, line, depth):
    """Image lines L, f(L), ..., f^depth(L) while they stay lines.

    :return: The tracked lines; shorter than depth + 1 when an image stops
        being collinear.
    """
    lines = [line]
    samples = line.lifts(sample_parameters())
    samples = samples / np.linalg.norm(samples, axis=-1, keepdims=True)
    for step in range(1, depth + 1):
        samples = endomorphism.apply_lifts(samples)
        if not is_collinear(samples):
            LOG.debug("f^%d(L) is not a line", step)
            break
        lines.append(_image_line(endomorphism, lines[-1], samples))
    return lines


def build_S_m(f, line, m=DEFAULT_M, extra_depth=0):
    """Curve family of the averaged pushforward current S_m of a line.

    :param f: The endomorphism.
    :param line: The line L.
    :type line: :class:`ProjectiveLine`
    :param m: Number of averaged pushforwards.
    :param extra_depth: Number of further image lines to track, used to
        pull samples back along the family.
    :rtype: :class:`CurveFamily`
    :raises InvalidArgument: If m < 1.
    """
    # pylint: disable=invalid-name
    if m < 1:
        raise InvalidArgument(f'm must be >= 1, got {m}')
    degree = f.degree
    lines = track_lines(f, line, m - 1 + extra_depth)
    if len(lines) < m:
        LOG.warning("Only %d of %d images of L are lines; line "
                    "multiplicity of the other images is untested",
                    len(lines), m)

    curves = []
    for depth in range(m):
        weight = 1.0 / (m * degree ** depth)
        if depth < len(lines):
            curves.append(FamilyCurve(depth, weight, degree ** depth,
                                      lines[depth]))
        else:
            curves.append(FamilyCurve(depth, weight, 1,
                                      ImageCurve(line, f, depth)))
    return CurveFamily(curves=curves, m=m, degree=degree, base=line,
                       lines=lines)
