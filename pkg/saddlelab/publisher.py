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
import logging
import os

from colorlog.escape_codes import escape_codes

from saddlelab.utils.files import ensure_directory
from saddlelab.utils.serialization import write_canonical

LOG = logging.getLogger(__name__)


def _paint(text, color):
    return f"{escape_codes[color]}{text}{escape_codes['reset']}"


def _summary_lines(data, verbosity, indent=1):
    """Scalar entries of a result, nested mappings only with -v."""
    lines = []
    for key, value in data.items():
        padding = '  ' * indent
        if isinstance(value, dict):
            if verbosity > 0:
                lines.append(f"{padding}{key}:")
                lines.extend(_summary_lines(value, verbosity - 1,
                                            indent + 1))
        elif isinstance(value, (list, tuple)):
            if verbosity > 1 or len(value) <= 4:
                lines.append(f"{padding}{key}: {value}")
        else:
            lines.append(f"{padding}{key}: {value}")
    return lines


class Publisher:
    """Represents a publisher which is responsible for publishing the
    result of an experiment: the result file in the output directory and
    a summary on the terminal.
    """

    @staticmethod
    def result_path(out, command):
        """Path of the result file of a command."""
        return os.path.join(out, f"{command}.json")

    @staticmethod
    def publish(document, out=None, dest="both", verbosity=0):
        """Publishes the result document of an experiment.

        :param document: Result document built by the orchestrator.
        :type document: dict
        :param out: Output directory, the file is skipped when None.
        :param dest: 'file', 'terminal' or 'both'.
        :param verbosity: Number of -v flags given by the user.
        :return: Path of the written file, if any.
        """
        path = None
        if out is not None and dest in ("file", "both"):
            path = Publisher.result_path(ensure_directory(out),
                                         document['command'])
            write_canonical(document, path)
            LOG.info("Result written to %s", path)

        if dest in ("terminal", "both"):
            if document['status'] == 'ok':
                print(_paint(f"{document['command']}: ok", 'bold_green'))
                for line in _summary_lines(document['result'] or {},
                                           verbosity):
                    print(line)
            else:
                error = document['error']
                print(_paint(f"{document['command']}: {error['kind']}",
                             'bold_red'))
                print(f"  {error['message']}")
        return path
