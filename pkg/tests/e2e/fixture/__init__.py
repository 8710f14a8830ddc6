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
import json
import logging
import os
import shutil
import sys
import tempfile
from io import StringIO
from unittest import TestCase

from saddlelab.cli.main import main
from saddlelab.utils.logger import ROOT_LOGGER

CONFIGS = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'configs')
DATA = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')


class EndToEndTest(TestCase):
    """Base fixture for e2e tests. Redirects stdout to a buffer to help
    assert the app's output.
    """

    def setUp(self):
        self._buffer = StringIO()
        self._stdout = sys.stdout

        sys.stdout = self._buffer

    def tearDown(self):
        sys.stdout = self._stdout

    @property
    def output(self):
        """
        :return: What the app wrote to stdout.
        :rtype: str
        """
        return self._buffer.getvalue()


class ExperimentTest(EndToEndTest):
    """Runs subcommands through the CLI entry point and reads back their
    result files.

    :ivar config: Name of the file under configs/ given to every run.
    """

    config = 'acceptance.yaml'

    def setUp(self):
        super().setUp()
        self.out = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.out)
        logging.getLogger(ROOT_LOGGER).handlers.clear()
        super().tearDown()

    def run_command(self, command, *flags, out=None):
        """Runs one subcommand.

        :return: The exit code and the result document.
        :rtype: tuple[int, dict]
        """
        out = out or self.out
        arguments = ['saddlelab', command, '--config',
                     os.path.join(CONFIGS, self.config), '--log-mode',
                     'terminal', '--out', out, *flags]
        with self.assertRaises(SystemExit) as context:
            main(arguments)
        return context.exception.code, self.read_result(command, out)

    def run_ok(self, command, *flags, out=None):
        """Runs one subcommand that must succeed.

        :return: The result section of its document.
        :rtype: dict
        """
        code, document = self.run_command(command, *flags, out=out)
        self.assertEqual(code, 0, document.get('error'))
        self.assertEqual(document['status'], 'ok')
        return document['result']

    @staticmethod
    def result_path(command, out):
        """Path of the result file of a command."""
        return os.path.join(out, f"{command}.json")

    def read_result(self, command, out=None):
        """Decoded result file of a command."""
        with open(self.result_path(command, out or self.out),
                  encoding='utf8') as buffer:
            return json.load(buffer)
