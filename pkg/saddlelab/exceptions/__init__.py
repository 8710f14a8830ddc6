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
import sys

from colorlog.escape_codes import escape_codes


class SaddleLabException(Exception):
    """Base class of every error raised by the library."""

    exit_code = 1

    def __init__(self, message=''):
        """Constructor.
        """
        self.message = message
        super().__init__(*[message])

    @property
    def kind(self):
        """Name under which the error is reported in result files."""
        return type(self).__name__

    @staticmethod
    def setup_quiet_exceptions():
        """Sets up quiet exceptions, without tracebacks, if they are
        of the type SaddleLabException
        """

        def quiet_hook(kind, message, traceback):
            if issubclass(kind, SaddleLabException):
                print(f"{escape_codes['bold_red']}{message}"
                      f"{escape_codes['reset']}")
            else:
                sys.__excepthook__(kind, message, traceback)

        sys.excepthook = quiet_hook


class ValidationError(SaddleLabException):
    """Input that does not satisfy the preconditions of an operation."""

    exit_code = 2


class NumericalFailure(SaddleLabException):
    """A computation that could not be carried out to its tolerance."""

    exit_code = 3
