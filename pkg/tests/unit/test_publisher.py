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
import os
import tempfile
from unittest import TestCase
from unittest.mock import patch

from saddlelab.publisher import Publisher, _summary_lines


class TestPublisher(TestCase):
    """Testing publisher component"""

    def setUp(self):
        self.publisher = Publisher()
        self.document = {'command': 'siegel', 'status': 'ok',
                         'map_hash': 'abc', 'config': {'seed': 0},
                         'result': {'radius_estimate': 0.25,
                                    'partial_quotients': [0, 1, 1, 1, 1],
                                    'bounded_type': True,
                                    'family': {'m': 8}}}

    @patch('builtins.print')
    def test_publisher_publish(self, mock_print):
        """Testing Publisher publish method"""
        self.publisher.publish(self.document, dest="terminal")
        printed = [args[0] for args, _ in mock_print.call_args_list]
        self.assertIn('siegel: ok', printed[0])
        self.assertIn('  radius_estimate: 0.25', printed)
        self.assertIn('  bounded_type: True', printed)
        self.assertNotIn('  family:', printed)

    @patch('builtins.print')
    def test_publisher_publish_error(self, mock_print):
        """Testing Publisher publish method on a failed run"""
        document = {'command': 'siegel', 'status': 'error',
                    'map_hash': None, 'config': None, 'result': None,
                    'error': {'kind': 'SmallDivisorOverflow',
                              'message': 'resonance'}}
        self.publisher.publish(document, dest="terminal")
        self.assertIn('siegel: SmallDivisorOverflow',
                      mock_print.call_args_list[0][0][0])
        mock_print.assert_called_with('  resonance')

    @patch('builtins.print')
    def test_publisher_publish_file(self, mock_print):
        """Testing that the result file lands in the output directory"""
        with tempfile.TemporaryDirectory() as directory:
            out = os.path.join(directory, 'results')
            path = self.publisher.publish(self.document, out=out,
                                          dest="file")
            self.assertEqual(path, os.path.join(out, 'siegel.json'))
            with open(path, encoding='utf8') as buffer:
                self.assertEqual(json.load(buffer), self.document)
        mock_print.assert_not_called()

    def test_publisher_no_output(self):
        """Testing that no file is written without an output directory"""
        self.assertIsNone(self.publisher.publish(self.document, dest="file"))

    def test_summary_verbosity(self):
        """Testing that nested entries need more verbosity"""
        lines = _summary_lines(self.document['result'], 1)
        self.assertIn('  family:', lines)
        self.assertIn('    m: 8', lines)
        long_list = {'values': list(range(10))}
        self.assertEqual(_summary_lines(long_list, 0), [])
        self.assertEqual(len(_summary_lines(long_list, 2)), 1)
