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


class MassDefect(NumericalFailure):
    """A discrete slice density with too much negative mass, or whose total
    mass is away from the degree of the curve."""

    def __init__(self, message, clipped_fraction=None, total_mass=None):
        self.clipped_fraction = clipped_fraction
        self.total_mass = total_mass
        super().__init__(f"{message}; increase the grid size")
