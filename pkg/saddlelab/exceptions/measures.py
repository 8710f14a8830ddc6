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


class SmallDivisorOverflow(NumericalFailure):
    """Near resonance of the rotation number within the truncation."""

    def __init__(self, order, divisor):
        self.order = order
        self.divisor = divisor
        super().__init__(
            f"Small divisor |lambda^{order} - lambda| = {divisor:.3e} "
            "is below 1e-12; the rotation number is (nearly) rational")


class EscapedSiegelDisk(NumericalFailure):
    """An orbit that left the estimated Siegel disk."""
