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
from typing import List

from saddlelab.cli.argument import Argument


class AttributeValue:
    """Value of one setting of a model together with the default it
    replaces."""

    def __init__(self, name: str, attr_type: object, value: object = None,
                 default: object = None, arguments: List[Argument] = None):
        self.name = name
        self.attr_type = attr_type
        self.default = default
        self.value = default if value is None else value
        self.arguments = arguments or []

    @property
    def overridden(self):
        """Whether the value differs from the declared default."""
        return self.value != self.default

    def __eq__(self, other):
        return self.name == other.name and self.value == other.value

    def __str__(self):
        return str(self.value)


class Model:
    """Represents a base class of the models bound to the command line.

    Every entry of ``API`` becomes an :class:`AttributeValue`; a missing
    value takes the ``default`` declared in the entry.
    """

    API = {}

    def __init__(self, attributes):
        for attribute_name, attribute_dict in self.API.items():
            setattr(self, attribute_name,
                    AttributeValue(
                        name=attribute_name,
                        attr_type=attribute_dict.get('attr_type'),
                        value=attributes.get(attribute_name),
                        default=attribute_dict.get('default'),
                        arguments=attribute_dict.get('arguments')))

    def to_dict(self, exclude=()):
        """Attribute values in API order."""
        return {name: getattr(self, name).value for name in self.API
                if name not in exclude}

    def overrides(self):
        """Names of the attributes set away from their defaults."""
        return [name for name in self.API if getattr(self, name).overridden]
