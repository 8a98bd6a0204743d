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
demand module - Unit tests for Request and PredictionSet
"""
import json
import os
import shutil
import tempfile
import unittest

from onlinegraph._common_util import (
    FACILITY_LOCATION,
    STEINER_FOREST,
    STEINER_TREE)
from onlinegraph.demand import (
    PredictionSet,
    Request,
    dump_requests,
    index_requests,
    load_requests)
from onlinegraph.error import (
    FrameworkException,
    GraphException,
    InstanceFormatException,
    OnlineGraphArgumentError)

from ._test_util import path_graph


class RequestTests(unittest.TestCase):
    """
    Request unit tests
    """

    def test_constructors(self):
        """
        Test the kind-specific constructors.
        """
        self.assertEqual(Request.terminal(3).vertices, (3,))
        self.assertEqual(Request.client(4, 7).arrival_index, 7)
        pair = Request.pair(1, 2, 3)
        self.assertEqual(pair.vertices, (1, 2))
        self.assertEqual(pair.priority, 3)
        self.assertEqual(Request.terminal(5).vertex, 5)

    def test_invalid_requests(self):
        """
        Test that bad kinds, arities and priorities are rejected.
        """
        with self.assertRaises(OnlineGraphArgumentError) as cm:
            Request('vertex', (1,))
        self.assertEqual(cm.exception.status_code, 104)
        with self.assertRaises(OnlineGraphArgumentError):
            Request('pair', (1,))
        with self.assertRaises(OnlineGraphArgumentError):
            Request.pair(1, 2, 0)

    def test_with_index(self):
        """
        Test that with_index only changes the arrival index.
        """
        request = Request.pair(1, 2, 2).with_index(4)
        self.assertEqual(request, Request.pair(1, 2, 2, 4))

    def test_validate(self):
        """
        Test validating requests against a graph.
        """
        graph = path_graph(2)
        Request.pair(0, 2).validate(graph)
        with self.assertRaises(GraphException):
            Request.terminal(5).validate(graph)
        with self.assertRaises(OnlineGraphArgumentError):
            Request.pair(0, 2, 2).validate(graph)

    def test_json_forms(self):
        """
        Test the JSON entries of each kind.
        """
        self.assertEqual(Request.terminal(3).to_json(),
                         {'kind': 'terminal', 'vertex': 3})
        self.assertEqual(Request.pair(1, 4).to_json(),
                         {'kind': 'pair', 's': 1, 't': 4})
        self.assertEqual(Request.pair(1, 4, 2).to_json(),
                         {'kind': 'pair', 's': 1, 't': 4, 'priority': 2})
        self.assertEqual(
            Request.from_json({'kind': 'pair', 's': 1, 't': 4,
                               'priority': 2}, 0),
            Request.pair(1, 4, 2, 0))


class RequestFileTests(unittest.TestCase):
    """
    Request and prediction file tests
    """

    def setUp(self):
        """
        Set up a scratch folder
        """
        self.folder = tempfile.mkdtemp()

    def tearDown(self):
        """
        Remove the scratch folder
        """
        shutil.rmtree(self.folder)

    def write(self, name, text):
        path = os.path.join(self.folder, name)
        with open(path, 'w') as handle:
            handle.write(text)
        return path

    def test_load_assigns_arrival_indices(self):
        """
        Test that arrival indices follow file order.
        """
        path = self.write('requests.json', json.dumps([
            {'kind': 'client', 'vertex': 2},
            {'kind': 'client', 'vertex': 0}]))
        requests = load_requests(path)
        self.assertEqual([r.arrival_index for r in requests], [0, 1])
        self.assertEqual([r.vertex for r in requests], [2, 0])

    def test_dump_and_load(self):
        """
        Test writing and reading back a request file.
        """
        path = os.path.join(self.folder, 'requests.json')
        requests = index_requests([Request.pair(0, 1), Request.pair(1, 2, 2)])
        dump_requests(path, requests)
        self.assertEqual(load_requests(path), requests)

    def test_malformed_entry_names_position(self):
        """
        Test that a bad entry reports its position and the file.
        """
        path = self.write('requests.json', json.dumps([
            {'kind': 'client', 'vertex': 2}, {'kind': 'client'}]))
        with self.assertRaises(InstanceFormatException) as cm:
            load_requests(path)
        self.assertEqual(cm.exception.status_code, 103)
        self.assertIn('position 1', str(cm.exception))

    def test_not_a_list(self):
        """
        Test that a JSON object is not a request file.
        """
        path = self.write('requests.json', '{}')
        with self.assertRaises(InstanceFormatException) as cm:
            load_requests(path)
        self.assertEqual(cm.exception.status_code, 101)

    def test_prediction_file_has_no_indices(self):
        """
        Test that predictions carry no arrival indices.
        """
        path = os.path.join(self.folder, 'predictions.json')
        PredictionSet([Request.terminal(1, 5)]).dump(path)
        loaded = PredictionSet.load(path)
        self.assertEqual(loaded.items, [Request.terminal(1)])


class PredictionSetTests(unittest.TestCase):
    """
    PredictionSet unit tests
    """

    def test_multiset(self):
        """
        Test that duplicate predictions are kept.
        """
        predictions = PredictionSet([Request.client(1), Request.client(1)])
        self.assertEqual(len(predictions), 2)
        self.assertEqual(predictions.kind, 'client')

    def test_mixed_kinds(self):
        """
        Test that a prediction set holds one kind only.
        """
        with self.assertRaises(OnlineGraphArgumentError) as cm:
            PredictionSet([Request.client(1), Request.terminal(1)])
        self.assertEqual(cm.exception.status_code, 106)

    def test_check_problem(self):
        """
        Test matching prediction kinds against problems.
        """
        predictions = PredictionSet([Request.pair(0, 1)])
        predictions.check_problem(STEINER_FOREST)
        with self.assertRaises(FrameworkException) as cm:
            predictions.check_problem(STEINER_TREE)
        self.assertEqual(cm.exception.status_code, 103)
        PredictionSet().check_problem(FACILITY_LOCATION)

    def test_equality(self):
        """
        Test comparing prediction sets.
        """
        self.assertEqual(PredictionSet([Request.client(1, 3)]),
                         PredictionSet([Request.client(1)]))
        self.assertNotEqual(PredictionSet([Request.client(1)]),
                            PredictionSet([Request.client(2)]))


if __name__ == '__main__':
    unittest.main()
