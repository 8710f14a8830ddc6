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
from saddlelab.exceptions import ValidationError


class InvalidConfiguration(ValidationError):
    """Invalid configuration exception"""

    def __init__(self, message="""
Invalid Configuration.
A valid configuration is a mapping with an optional 'defaults' section and
one section per command, for example:

defaults:
    seed: 7
lyapunov:
    measure: nu
    n_orbits: 50"""):
        super().__init__(message)


class ConfigurationNotFound(ValidationError):
    """Configuration file not found exception"""
