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
import sys

from saddlelab.exceptions import SaddleLabException
from saddlelab.models.experiment import ExperimentConfig
from saddlelab.orchestrator import Orchestrator
from saddlelab.utils.logger import configure_logging

LOG = logging.getLogger(__name__)


def raw_parsing(arguments):
    """Returns the application flags needed before the parser is built.

    :param arguments: A list of strings representing the arguments and their
                      values, program name first
    :type arguments: list
    """
    args = {'config_file_path': None, 'help': False,
            "log_file": "saddlelab_output.log", "log_mode": "both",
            "logging": logging.INFO, "debug": False}
    for i, item in enumerate(arguments[1:]):
        if item in ('-c', '--config'):
            args['config_file_path'] = arguments[i + 2]
        if item in ('-h', '--help'):
            args['help'] = True
        if item == "--log-file":
            args["log_file"] = arguments[i + 2]
        elif item == "--log-mode":
            args["log_mode"] = arguments[i + 2]
        elif item in ('-d', '--debug'):
            args["logging"] = logging.DEBUG
            args["debug"] = True
    return args


def main(arguments=None):
    """CLI main entry."""
    arguments = sys.argv if arguments is None else arguments
    flags = raw_parsing(arguments)
    if not flags['debug']:
        SaddleLabException.setup_quiet_exceptions()
    configure_logging(flags.get('log_mode'), flags.get('log_file'),
                      flags.get('logging'))

    orchestrator = Orchestrator()
    try:
        orchestrator.load_configuration(flags.get('config_file_path'))
    except SaddleLabException as ex:
        # the help text does not need a configuration
        if not flags['help']:
            LOG.error("%s: %s", ex.kind, ex.message)
            sys.exit(ex.exit_code)

    orchestrator.extend_parser(attributes=ExperimentConfig.API)
    orchestrator.parser.parse(arguments[1:])
    sys.exit(orchestrator.run())


if __name__ == "__main__":
    main()
