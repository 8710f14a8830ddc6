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

from saddlelab.cli.parser import Parser
from saddlelab.cli.validator import Validator
from saddlelab.config import Config, ConfigFactory
from saddlelab.exceptions import SaddleLabException
from saddlelab.exceptions.cli import UnknownCommand
from saddlelab.experiments import EXPERIMENTS, ExperimentContext
from saddlelab.models.experiment import ExperimentConfig
from saddlelab.publisher import Publisher
from saddlelab.utils.logger import timed

LOG = logging.getLogger(__name__)

EXIT_SUCCESS = 0


class Orchestrator:
    """This is a conceptual class representation of an app orchestrator.
    The purpose of the orchestrator is to run and coordinate the different
    phases of the application's lifecycle:

        1. Create initial parser
        2. Load the configuration
        3. Update parser based on the experiment model arguments
        4. Resolve and validate the experiment configuration
        5. Run the experiment
        6. Publish the results
    """

    def __init__(self):
        """Orchestrator constructor method"""
        self.config = Config()
        self.parser = Parser(commands=sorted(EXPERIMENTS))
        self.publisher = Publisher()
        self.experiment_config = None

    def load_configuration(self, path):
        """Loads the configuration of the application."""
        self.config = ConfigFactory.from_path(path)

    def extend_parser(self, attributes, group_name='Experiment'):
        """Extend parser with arguments from the experiment model."""
        for attr_dict in attributes.values():
            arguments = attr_dict.get('arguments')
            if arguments:
                self.parser.extend(arguments, group_name)

    @property
    def command(self):
        """Subcommand selected by the user."""
        return self.parser.app_args.get('command')

    def resolve(self):
        """Builds and validates the configuration of the experiment.

        :rtype: :class:`ExperimentConfig`
        :raises InvalidArgument: If the configuration is not valid.
        """
        if self.command not in EXPERIMENTS:
            raise UnknownCommand(self.command, sorted(EXPERIMENTS))
        self.experiment_config = ExperimentConfig.resolve(
            self.config.data, self.command, self.parser.experiment_args)
        LOG.debug("Settings away from their defaults: %s",
                  ", ".join(self.experiment_config.overrides()) or "none")
        return Validator(self.experiment_config).validate()

    def run_experiment(self):
        """Runs the selected experiment and builds its result document.

        Library errors are caught and recorded in the document; their class
        decides the exit code.

        :return: The result document and the exit code.
        :rtype: tuple[dict, int]
        """
        document = {'command': self.command, 'status': 'ok',
                    'map_hash': None, 'config': None, 'result': None}
        try:
            self.resolve()
            document['config'] = self.experiment_config.canonical()
            context = ExperimentContext(self.experiment_config,
                                        self.command)
            document['map_hash'] = context.map_hash
            runner = EXPERIMENTS[self.command]
            LOG.info("Running %s on %s", self.command, context.map_source)
            with timed(LOG, f"run {self.command}"):
                document['result'] = runner(context)
            document['artifacts'] = list(context.artifacts)
            code = EXIT_SUCCESS
        except SaddleLabException as ex:
            LOG.error("%s failed: %s: %s", self.command, ex.kind,
                      ex.message)
            LOG.debug("Failure details", exc_info=True)
            document['status'] = 'error'
            document['error'] = {'kind': ex.kind, 'message': ex.message}
            code = ex.exit_code
        return document, code

    def run(self):
        """Runs the experiment and publishes its result.

        :return: The exit code.
        :rtype: int
        """
        document, code = self.run_experiment()
        config = self.experiment_config
        out = config.get('out') if config is not None else None
        self.publisher.publish(
            document, out=out,
            verbosity=self.parser.app_args.get('verbosity', 0))
        return code
