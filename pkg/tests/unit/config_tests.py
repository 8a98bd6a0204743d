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
config module - Unit tests for the experiment configuration
"""
import json
import os
import shutil
import tempfile
import unittest
from fractions import Fraction

from onlinegraph._common_util import WORKERS_ENV_VAR
from onlinegraph.config import ExperimentConfig, worker_count
from onlinegraph.error import ConfigException, OnlineGraphArgumentError


def minimal_config(**kwargs):
    return ExperimentConfig(problem='steiner_tree', instance='instance.json',
                            requests='requests.json', **kwargs)


class ExperimentConfigTests(unittest.TestCase):
    """
    ExperimentConfig tests
    """

    def setUp(self):
        """
        Set up a scratch directory.
        """
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        """
        Remove the scratch directory.
        """
        shutil.rmtree(self.tmp)

    def test_defaults(self):
        """
        Test that optional settings take their defaults.
        """
        config = minimal_config()
        self.assertEqual(config['algorithm'], 'both')
        self.assertEqual(config['solver'], 'approx')
        self.assertEqual(config['repetitions'], 1)
        self.assertIsNone(config['predictions'])
        self.assertIsNone(config['gamma'])

    def test_unknown_key(self):
        """
        Test that an unknown setting is rejected.
        """
        with self.assertRaises(ConfigException) as cm:
            minimal_config(color='red')
        self.assertEqual(cm.exception.status_code, 101)

    def test_missing_key(self):
        """
        Test that the required settings must be given.
        """
        with self.assertRaises(ConfigException) as cm:
            ExperimentConfig(problem='steiner_tree', instance='i.json')
        self.assertEqual(cm.exception.status_code, 102)

    def test_bad_choice(self):
        """
        Test that settings with fixed choices are checked.
        """
        for kwargs in ({'algorithm': 'oracle'}, {'solver': 'magic'},
                       {'repetitions': 0}, {'gamma': Fraction(1, 2)}):
            with self.assertRaises(ConfigException) as cm:
                minimal_config(**kwargs)
            self.assertEqual(cm.exception.status_code, 103)

    def test_bad_type(self):
        """
        Test that mistyped and negative settings are rejected.
        """
        with self.assertRaises(OnlineGraphArgumentError) as cm:
            minimal_config(repetitions='3')
        self.assertEqual(cm.exception.status_code, 102)
        with self.assertRaises(OnlineGraphArgumentError) as cm:
            minimal_config(seed=-1)
        self.assertEqual(cm.exception.status_code, 103)

    def test_dump_and_load(self):
        """
        Test persisting a configuration with a fractional factor.
        """
        path = os.path.join(self.tmp, 'config.json')
        config = minimal_config(gamma=Fraction(5, 2), repetitions=2)
        config.dump(path)
        with open(path) as handle:
            self.assertEqual(json.load(handle)['gamma'], '5/2')
        self.assertEqual(ExperimentConfig.load(path), config)


class WorkerCountTests(unittest.TestCase):
    """
    Worker pool size tests
    """

    def test_default(self):
        """
        Test that an unset variable means one worker.
        """
        self.assertEqual(worker_count({}), 1)

    def test_set(self):
        """
        Test reading the worker count.
        """
        self.assertEqual(worker_count({WORKERS_ENV_VAR: '4'}), 4)

    def test_invalid(self):
        """
        Test that zero and non-numbers are rejected.
        """
        for value in ('0', 'many'):
            with self.assertRaises(ConfigException) as cm:
                worker_count({WORKERS_ENV_VAR: value})
            self.assertEqual(cm.exception.status_code, 103)


if __name__ == '__main__':
    unittest.main()
