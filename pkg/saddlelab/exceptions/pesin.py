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
from saddlelab.exceptions import NumericalFailure, ValidationError


class GraphTransformError(NumericalFailure):
    """Failure of a graph transform, optionally tied to a cocycle step."""

    def __init__(self, message, step=None):
        self.step = step
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)

    def at_step(self, step):
        """Copy of this error tagged with the failing cocycle step."""
        return type(self)(self.reason, step=step)

    @property
    def reason(self):
        """Message without the step prefix."""
        if self.step is None:
            return self.message
        return self.message.split(": ", 1)[1]


class ConditionViolated(GraphTransformError):
    """The domination condition delta(1 + gamma) < |lambda| fails."""


class EscapedBall(GraphTransformError):
    """A graph that is not contained in the validity ball of the map."""


class InvalidLocalMap(ValidationError):
    """A local diagonal map whose declared data are inconsistent."""
