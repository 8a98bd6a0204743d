#!/usr/bin/env python
# Copyright (c) 2026 onlinegraph contributors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Module that contains common exception classes for the onlinegraph library.
"""
from ._messages import (
    ARGUMENT_ERROR,
    GRAPH,
    INSTANCE_FORMAT,
    OUTLIER,
    ENGINE,
    SOLVER,
    FRAMEWORK,
    REDUCTION,
    ADVERSARY,
    ORACLE,
    CONFIG)


class OnlineGraphException(Exception):
    """
    Provides a way to issue onlinegraph specific exceptions.  An
    OnlineGraphException object is instantiated with a message and optional
    code.

    :param str msg: A message that describes the exception.
    :param int code: A code value used to identify the exception.
    """
    def __init__(self, msg, code=None):
        super(OnlineGraphException, self).__init__(msg)
        self.status_code = code


def _format(messages, code, args):
    """
    Looks up and formats a message, falling back to the general code 100 when
    the code is unknown or the arguments do not fit the template.
    """
    try:
        return code, messages[code].format(*args)
    except (KeyError, IndexError, TypeError):
        return 100, messages[100]


class OnlineGraphArgumentError(OnlineGraphException):
    """
    Provides a way to issue exceptions that pertain to invalid argument
    errors.

    :param int code: An optional code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(ARGUMENT_ERROR, code, args)
        super(OnlineGraphArgumentError, self).__init__(msg, code)


class GraphException(OnlineGraphException):
    """
    Provides a way to issue graph specific exceptions, including unknown
    vertices and infeasible (disconnected) instances.

    :param int code: A code value used to identify the graph exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(GRAPH, code, args)
        super(GraphException, self).__init__(msg, code)


class InstanceFormatException(OnlineGraphException):
    """
    Provides a way to issue exceptions for malformed instance, request and
    report files.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(INSTANCE_FORMAT, code, args)
        super(InstanceFormatException, self).__init__(msg, code)


class OutlierException(OnlineGraphException):
    """
    Provides a way to issue error-model specific exceptions.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(OUTLIER, code, args)
        super(OutlierException, self).__init__(msg, code)


class EngineException(OnlineGraphException):
    """
    Provides a way to issue online engine specific exceptions.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(ENGINE, code, args)
        super(EngineException, self).__init__(msg, code)


class SolverException(OnlineGraphException):
    """
    Provides a way to issue prize-collecting solver specific exceptions.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(SOLVER, code, args)
        super(SolverException, self).__init__(msg, code)


class FrameworkException(OnlineGraphException):
    """
    Provides a way to issue prediction framework specific exceptions.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(FRAMEWORK, code, args)
        super(FrameworkException, self).__init__(msg, code)


class ReductionException(OnlineGraphException):
    """
    Provides a way to issue reduction specific exceptions.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(REDUCTION, code, args)
        super(ReductionException, self).__init__(msg, code)


class AdversaryException(OnlineGraphException):
    """
    Provides a way to issue adversary parameter exceptions.  Messages name
    the violated inequality.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(ADVERSARY, code, args)
        super(AdversaryException, self).__init__(msg, code)


class OracleBudgetException(OnlineGraphException):
    """
    Provides a way to issue exact-oracle exceptions.  Oracles refuse inputs
    over budget instead of degrading.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(ORACLE, code, args)
        super(OracleBudgetException, self).__init__(msg, code)


class ConfigException(OnlineGraphException):
    """
    Provides a way to issue experiment configuration exceptions.

    :param int code: A code value used to identify the exception.
        Defaults to 100.
    :param args: A list of arguments used to format the exception message.
    """
    def __init__(self, code=100, *args):
        code, msg = _format(CONFIG, code, args)
        super(ConfigException, self).__init__(msg, code)
