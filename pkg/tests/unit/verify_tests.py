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
verify module - Unit tests for the invariant suites
"""
import unittest

from onlinegraph.error import ConfigException
from onlinegraph.verify import (
    ACCEPTANCE_INSTANCES,
    DEFAULT_INSTANCES,
    SUITES,
    Check,
    _Recorder,
    all_passed,
    default_instances,
    run_suites)


class RecorderTests(unittest.TestCase):
    """
    Check recorder tests
    """

    def test_tally(self):
        """
        Test that a tally counts violations and skipped cases.
        """
        recorder = _Recorder('demo')
        recorder.tally('bound', [True, False, True], skipped=2)
        self.assertEqual(recorder.checks, [
            Check('demo', 'bound', False,
                  '1 violations in 3 cases, 2 skipped')])
        self.assertFalse(all_passed(recorder.checks))

    def test_record(self):
        """
        Test that a recorded check keeps its detail.
        """
        recorder = _Recorder('demo')
        recorder.record('holds', 1, 'ok')
        self.assertEqual(recorder.checks, [Check('demo', 'holds', True,
                                                 'ok')])
        self.assertTrue(all_passed(recorder.checks))

    def test_flag(self):
        """
        Test that a flagged check is reported without failing.
        """
        recorder = _Recorder('demo')
        recorder.flag('trend', False, 'slope 3')
        recorder.flag('held', True, 'fine')
        self.assertEqual(recorder.checks, [
            Check('demo', 'trend', True, 'flagged: slope 3'),
            Check('demo', 'held', True, 'fine')])
        self.assertTrue(all_passed(recorder.checks))


class SuiteTests(unittest.TestCase):
    """
    Suite registry and run tests
    """

    def test_registry(self):
        """
        Test the registered suites.
        """
        self.assertEqual(sorted(SUITES), [
            'adversaries', 'bench', 'engines', 'framework', 'graph',
            'oracles', 'outlier', 'prize_collecting', 'reductions'])

    def test_unknown_suite(self):
        """
        Test that an unknown suite name is rejected before running.
        """
        with self.assertRaises(ConfigException) as cm:
            run_suites(['graph', 'nonsense'])
        self.assertEqual(cm.exception.status_code, 104)

    def assert_suite_passes(self, name):
        checks = run_suites([name], seed=0, instances=2)
        self.assertTrue(checks)
        self.assertTrue(all(check.suite == name for check in checks))
        self.assertTrue(all_passed(checks), checks)
        return checks

    def test_default_instances(self):
        """
        Test the acceptance sample sizes of the suites.
        """
        self.assertEqual(ACCEPTANCE_INSTANCES, {
            'framework': 500, 'reductions': 200, 'outlier': 300})
        self.assertEqual(default_instances('framework'), 500)
        self.assertEqual(default_instances('graph'), DEFAULT_INSTANCES)

    def test_engines_suite(self):
        """
        Test the subset constants, ball structure and alpha bounds.
        """
        checks = self.assert_suite_passes('engines')
        names = [check.name for check in checks]
        self.assertIn('steiner_tree subset bound with C=2', names)
        self.assertIn('alpha of every subset within the log bound', names)

    def test_prize_collecting_suite(self):
        """
        Test the approximate solvers, priced objectives and monotone
        unsatisfied counts.
        """
        self.assert_suite_passes('prize_collecting')

    def test_framework_suite(self):
        """
        Test Partial, the phase structure and the B_hat bound.
        """
        self.assert_suite_passes('framework')

    def test_reductions_suite(self):
        """
        Test the capacitated reduction and the priority split.
        """
        checks = self.assert_suite_passes('reductions')
        self.assertIn('priority split keeps every request once',
                      [check.name for check in checks])

    def test_oracles_suite(self):
        """
        Test oracle consistency and lower bounds.
        """
        self.assert_suite_passes('oracles')

    def test_bench_suite(self):
        """
        Test end-to-end run properties and the fitted trends.
        """
        checks = self.assert_suite_passes('bench')
        self.assertIn('excess cost fitted linearly in D',
                      [check.name for check in checks])

    def test_graph_suite(self):
        """
        Test that the graph suite passes on a few instances.
        """
        checks = self.assert_suite_passes('graph')
        self.assertIn('shortest paths match all-pairs relaxation',
                      [check.name for check in checks])

    def test_outlier_suite(self):
        """
        Test that the outlier suite passes on a few instances.
        """
        self.assertTrue(all_passed(run_suites(['outlier'], instances=2)))

    def test_adversaries_suite(self):
        """
        Test the lower-bound regressions.
        """
        checks = run_suites(['adversaries'])
        self.assertTrue(all_passed(checks), checks)
        self.assertIn(
            'fotakis last requests: actual linear, alpha logarithmic',
            [check.name for check in checks])


if __name__ == '__main__':
    unittest.main()
