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
import hashlib
import json
import math

import numpy as np

FLOAT_FORMAT = '.17g'


def _encode_float(value):
    if not math.isfinite(value):
        return 'null'
    text = format(value, FLOAT_FORMAT)
    if text == '-0':
        text = '0'
    return text


def _encode(value, indent, level):
    # pylint: disable=too-many-return-statements
    if value is None:
        return 'null'
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _encode_float(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return _encode([value.real, value.imag], indent, level)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, np.ndarray):
        return _encode(value.tolist(), indent, level)

    inner = ' ' * (indent * (level + 1))
    outer = ' ' * (indent * level)

    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [f'{inner}{json.dumps(str(key))}: '
                 f'{_encode(item, indent, level + 1)}'
                 for key, item in value.items()]
        return '{\n' + ',\n'.join(items) + '\n' + outer + '}'

    if isinstance(value, (list, tuple)):
        if not value:
            return '[]'
        if all(not isinstance(item, (dict, list, tuple, np.ndarray))
               for item in value):
            return '[' + ', '.join(_encode(item, indent, level)
                                   for item in value) + ']'
        items = [inner + _encode(item, indent, level + 1) for item in value]
        return '[\n' + ',\n'.join(items) + '\n' + outer + ']'

    raise TypeError(f"Object of type {type(value).__name__} is not "
                    "serializable")


def canonical_dumps(data, indent=2):
    """Encodes data as JSON with a byte-stable layout.

    Mappings keep their insertion order, floats are written with 17
    significant digits, complex numbers become [re, im] pairs and
    non-finite floats become null.

    :param data: Plain python or numpy data.
    :param indent: Spaces per nesting level.
    :type indent: int
    :return: The JSON text, ending with a newline.
    :rtype: str
    """
    return _encode(data, indent, 0) + '\n'


def write_canonical(data, file):
    """Writes :func:`canonical_dumps` output into a file."""
    with open(file, 'w', encoding='utf8') as buffer:
        buffer.write(canonical_dumps(data))


def content_hash(data):
    """SHA-256 hex digest of the canonical encoding of some data."""
    encoded = canonical_dumps(data, indent=0).encode('utf8')
    return hashlib.sha256(encoded).hexdigest()
