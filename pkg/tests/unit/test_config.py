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
from unittest.mock import Mock, patch

import saddlelab.config
from saddlelab.config import Config, ConfigFactory
from saddlelab.exceptions.config import (ConfigurationNotFound,
                                         InvalidConfiguration)


class TestConfig(TestCase):
    """Test cases for the 'Config' class.
    """

    def test_contents_are_loaded(self):
        """Checks that the contents of the loaded file are made available by
        the class.
        """
        file = 'path/to/config/file'
        yaml = {
            'defaults': {
                'seed': 7
            },
            'lyapunov': {
                'measure': 'nu'
            }
        }

        with patch.object(saddlelab.config.yaml, 'parse',
                          Mock(return_value=yaml)) as parse_call:
            config = Config()
            config.load(file)

        parse_call.assert_called_with(file)

        self.assertEqual(config, yaml)
        self.assertEqual(config.section('lyapunov'), {'measure': 'nu'})
        self.assertEqual(config.section('entropy'), {})

    def test_invalid_layout(self):
        """Checks that a file which is not made of sections is rejected
        and the previous contents are kept.
        """
        config = Config({'defaults': {'seed': 1}})
        with patch.object(saddlelab.config.yaml, 'parse',
                          Mock(return_value={'seed': 7})):
            with self.assertRaises(InvalidConfiguration):
                config.load('some/file')
        self.assertEqual(config, {'defaults': {'seed': 1}})

    def test_unparsable_file(self):
        """Checks that YAML syntax errors become configuration errors.
        """
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'saddlelab.yaml')
            with open(path, 'w', encoding='utf8') as buffer:
                buffer.write('defaults: [1, 2\n')
            with self.assertRaises(InvalidConfiguration):
                ConfigFactory.from_file(path)


class TestConfigFromSearch(TestCase):
    """Tests for :meth:`saddlelab.config.ConfigFactory.from_search`.
    """

    def test_empty_on_nothing_found(self):
        """Checks that an empty configuration is returned if there is
        no file among the default paths.
        """
        with patch.object(saddlelab.config, 'get_first_available_file',
                          Mock(return_value=None)):
            config = ConfigFactory.from_search()

        self.assertEqual(config, {})

    def test_config_from_file(self):
        """Checks that the configuration file is created from the found file.
        """
        file = 'some/file'

        with patch.object(saddlelab.config, 'get_first_available_file',
                          Mock(return_value=file)), \
                patch.object(ConfigFactory, 'from_file') as from_file_call:
            ConfigFactory.from_search()

        from_file_call.assert_called_once_with(file)


class TestConfigFromPath(TestCase):
    """Tests for :meth:`saddlelab.config.ConfigFactory.from_path`.
    """

    def test_missing_file(self):
        """Checks that :class:`ConfigurationNotFound` is thrown if an
        explicit file does not exist.
        """
        with self.assertRaises(ConfigurationNotFound):
            ConfigFactory.from_path('/does/not/exist.yaml')

    def test_search_without_path(self):
        """Checks that no path means searching the default locations.
        """
        with patch.object(ConfigFactory, 'from_search') as search_call:
            ConfigFactory.from_path(None)

        search_call.assert_called_once_with()
