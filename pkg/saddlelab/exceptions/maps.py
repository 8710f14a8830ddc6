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
from saddlelab.exceptions import NumericalFailure, ValidationError


class Degenerate(NumericalFailure):
    """The lift of a map vanishes away from the origin."""

    def __init__(self, message='Map lift vanishes at a nonzero vector.'):
        super().__init__(message)


class Unsupported(NumericalFailure):
    """Operation only available for a narrower family of maps."""


class RootFindingFailure(NumericalFailure):
    """The univariate root solver did not reach its tolerance."""


class DegreeMismatch(ValidationError):
    """Polynomials or monomials whose degrees are not consistent."""


class InvalidMapDefinition(ValidationError):
    """A map definition that cannot be turned into an endomorphism."""
