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
from unittest import TestCase

from saddlelab.cli.argument import Argument
from saddlelab.cli.parser import Parser
from saddlelab.models.experiment import ExperimentConfig


class TestParser(TestCase):
    """Testing CLI Parser"""

    def setUp(self):
        self.parser = Parser(commands=('green', 'lyapunov'))
        self.seed_arguments = ExperimentConfig.API['seed']['arguments']

    def test_parser_command(self):
        """Tests the positional command"""
        parsed_args = self.parser.argument_parser.parse_args(['green'])
        self.assertEqual(parsed_args.command, 'green')
        with self.assertRaises(SystemExit):
            self.parser.argument_parser.parse_args(['orbits'])

    def test_parser_debug_argument(self):
        """Tests parser debug argument"""
        parsed_args = self.parser.argument_parser.parse_args(
            ['green', '--debug'])
        self.assertTrue(parsed_args.debug)

    def test_parser_config_argument(self):
        """Tests parser config argument"""
        parsed_args = self.parser.argument_parser.parse_args(
            ['green', '--config', '/some/path'])
        self.assertEqual(parsed_args.config_file_path, '/some/path')

    def test_parser_extend(self):
        """Tests parser extend method"""
        self.parser.extend(self.seed_arguments, 'Experiment')
        self.assertIsNotNone(self.parser.get_group('Experiment'))
        # Extend again and see if a message is logged about it
        with self.assertLogs('saddlelab.cli.parser', level='DEBUG'):
            self.parser.extend(self.seed_arguments, 'Experiment')

    def test_parser_parse_args(self):
        """Testing parser parse method"""
        self.parser.parse(['lyapunov'])
        self.assertEqual(self.parser.app_args, {'command': 'lyapunov',
                                                'debug': False,
                                                'verbosity': 0})
        self.assertEqual(self.parser.experiment_args, {})

        self.parser.extend(self.seed_arguments, 'Experiment')
        self.parser.parse(['green', '--seed', '7', '-vv'])
        self.assertEqual(self.parser.app_args, {'command': 'green',
                                                'debug': False,
                                                'verbosity': 2})
        self.assertEqual(self.parser.experiment_args,
                         {'seed': Argument(name='seed', arg_type=int,
                                           description='', value=7)})

    def test_parser_no_abbreviations(self):
        """Testing that prefixes of flags are not accepted"""
        self.parser.extend(self.seed_arguments, 'Experiment')
        self.parser.parse(['green', '--se', '7'])
        self.assertEqual(self.parser.experiment_args, {})
