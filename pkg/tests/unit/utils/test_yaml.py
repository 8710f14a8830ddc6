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
import os
import tempfile
from unittest import TestCase

from saddlelab.utils.yaml import YAMLError, parse


class TestParse(TestCase):
    """Test cases for the 'parse' function.
    """

    def test_parse(self):
        """Checks that mappings are read and empty files give a mapping.
        """
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'config.yaml')
            with open(path, 'w', encoding='utf8') as buffer:
                buffer.write('defaults:\n  seed: 7\n')
            self.assertEqual(parse(path), {'defaults': {'seed': 7}})
            with open(path, 'w', encoding='utf8') as buffer:
                buffer.write('')
            self.assertEqual(parse(path), {})

    def test_errors(self):
        """Checks that unreadable and malformed files raise YAMLError.
        """
        with self.assertRaises(YAMLError):
            parse('/does/not/exist.yaml')
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'config.yaml')
            with open(path, 'w', encoding='utf8') as buffer:
                buffer.write('defaults: [1, 2\n')
            with self.assertRaises(YAMLError):
                parse(path)
