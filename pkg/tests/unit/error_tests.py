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
error module - Unit tests for the onlinegraph exception classes
"""
import unittest

from onlinegraph.error import (
    AdversaryException,
    ConfigException,
    EngineException,
    FrameworkException,
    GraphException,
    InstanceFormatException,
    OnlineGraphArgumentError,
    OnlineGraphException,
    OracleBudgetException,
    OutlierException,
    ReductionException,
    SolverException)

AREA_EXCEPTIONS = (
    OnlineGraphArgumentError,
    GraphException,
    InstanceFormatException,
    OutlierException,
    EngineException,
    SolverException,
    FrameworkException,
    ReductionException,
    AdversaryException,
    OracleBudgetException,
    ConfigException,
)


class OnlineGraphExceptionTests(unittest.TestCase):
    """
    Ensure the area exceptions function as expected.
    """

    def test_base_exception_keeps_code(self):
        """
        Ensure that the base exception stores the code it was given.
        """
        with self.assertRaises(OnlineGraphException) as cm:
            raise OnlineGraphException('boom', 404)
        self.assertEqual(cm.exception.status_code, 404)
        self.assertEqual(str(cm.exception), 'boom')

    def test_raise_without_code(self):
        """
        Ensure that a default exception/code is used if none is provided.
        """
        for exception in AREA_EXCEPTIONS:
            with self.assertRaises(exception) as cm:
                raise exception()
            self.assertEqual(cm.exception.status_code, 100)

    def test_raise_using_invalid_code(self):
        """
        Ensure that a default exception/code is used if invalid code is
        provided.
        """
        for exception in AREA_EXCEPTIONS:
            with self.assertRaises(exception) as cm:
                raise exception('foo')
            self.assertEqual(cm.exception.status_code, 100)

    def test_raise_without_args(self):
        """
        Ensure that a default exception/code is used if the message requested
        by the code provided requires an argument list and none is provided.
        """
        with self.assertRaises(GraphException) as cm:
            raise GraphException(101)
        self.assertEqual(cm.exception.status_code, 100)

    def test_raise_with_insufficient_args(self):
        """
        Ensure that a default exception/code is used if the message requested
        by the code provided does not get enough arguments.
        """
        with self.assertRaises(AdversaryException) as cm:
            raise AdversaryException(103, 2)
        self.assertEqual(cm.exception.status_code, 100)

    def test_raise_with_proper_code_and_args(self):
        """
        Ensure that the requested exception is raised with its formatted
        message.
        """
        with self.assertRaises(AdversaryException) as cm:
            raise AdversaryException(103, 2, 3)
        self.assertEqual(cm.exception.status_code, 103)
        self.assertEqual(str(cm.exception),
                         'Violated: n - delta1 = 2 must equal k - delta2 = 3.')

    def test_area_exceptions_share_base(self):
        """
        Ensure that every area exception can be caught as the base class.
        """
        for exception in AREA_EXCEPTIONS:
            self.assertTrue(issubclass(exception, OnlineGraphException))


if __name__ == '__main__':
    unittest.main()
