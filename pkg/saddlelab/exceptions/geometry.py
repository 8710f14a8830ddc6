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
from saddlelab.exceptions import NumericalFailure


class ZeroVector(NumericalFailure):
    """A lift that does not represent any point of the projective plane."""

    def __init__(self, message='Cannot normalize the zero vector.'):
        super().__init__(message)


class ChartSingular(NumericalFailure):
    """A point lying on the hyperplane removed by an affine chart."""

    def __init__(self, chart, modulus=None):
        self.chart = chart
        message = f"Point is outside of the affine chart {chart}"
        if modulus is not None:
            message += f" (chart coordinate modulus {modulus:.3e})"
        super().__init__(message)
