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
adversaries module - Unit tests for the lower-bound constructions
"""
import io
import math
import unittest

from onlinegraph.adversaries import (
    DiamondInstance,
    GreedyMatcher,
    Transcript,
    diamond_adversary,
    fotakis_lb_run,
    matching_lb_run,
    nk_delta_adversary,
    star_graph)
from onlinegraph.error import AdversaryException
from onlinegraph.graph import Metric


class DiamondTests(unittest.TestCase):
    """
    Recursive diamond adversary tests
    """

    def test_instance(self):
        """
        Test the depth-one diamond.
        """
        instance = DiamondInstance(1)
        self.assertEqual(instance.vertex_count, 4)
        self.assertEqual(instance.edges,
                         [(0, 2, 1), (2, 1, 1), (0, 3, 1), (3, 1, 1)])
        self.assertEqual(instance.request_count, 2)
        self.assertEqual(instance.middles, {(0, 1): (2, 3)})

    def test_negative_depth(self):
        """
        Test that a negative depth is rejected.
        """
        with self.assertRaises(AdversaryException) as cm:
            DiamondInstance(-1)
        self.assertEqual(cm.exception.status_code, 105)

    def test_depth_zero(self):
        """
        Test that a single edge is served optimally.
        """
        transcript = diamond_adversary(0)
        self.assertEqual(transcript.alg_cost, 1)
        self.assertEqual(transcript.opt_cost, 1)
        self.assertEqual(transcript.ratio, 1.0)

    def test_greedy_ratios(self):
        """
        Test that the greedy ratio grows by one half per level.
        """
        ratios = [diamond_adversary(depth).ratio for depth in range(1, 5)]
        self.assertEqual(ratios, [1.5, 2.0, 2.5, 3.0])

    def test_requests_avoid_solution(self):
        """
        Test that the second request is a middle vertex of the diamond.
        """
        transcript = diamond_adversary(1)
        self.assertEqual(len(transcript.requests), 2)
        self.assertEqual(transcript.requests[0].vertex, 1)
        self.assertIn(transcript.requests[1].vertex, (2, 3))
        self.assertEqual(transcript.opt_source, 'oracle')


class FotakisTests(unittest.TestCase):
    """
    Facility location lower-bound tests
    """

    def test_facility_per_phase(self):
        """
        Test that one facility opens on the path in every phase.
        """
        transcript = fotakis_lb_run(2)
        self.assertEqual(transcript.extra['path'], [0, 1, 3])
        self.assertEqual(transcript.extra['opened'], [0, 1, 3])
        self.assertEqual(transcript.extra['phase_last'], [0, 2, 6])
        self.assertEqual(len(transcript.requests), 7)

    def test_subset_costs(self):
        """
        Test the actual cost of the last request of every phase.
        """
        transcript = fotakis_lb_run(2)
        self.assertEqual(transcript.extra['subset_actual'], 9)
        self.assertEqual(transcript.opt_cost, 8)
        self.assertGreaterEqual(transcript.extra['alpha_total'],
                                transcript.alg_cost)

    def test_last_requests_witness(self):
        """
        Test that at depth four the last requests of the phases pay a linear
        share of the optimum in actual cost but only a logarithmic share in
        charged cost.
        """
        transcript = fotakis_lb_run(4)
        extra = transcript.extra
        self.assertEqual(extra['opened'], [0, 1, 3, 7, 15])
        self.assertEqual(extra['path'], [0, 1, 3, 7, 15])
        self.assertEqual(len(transcript.requests), 341)
        self.assertEqual(transcript.opt_cost, 568)
        self.assertEqual(extra['subset_actual'], 1275)
        size = len(extra['phase_last'])
        self.assertEqual(size, 5)
        self.assertGreaterEqual(4 * extra['subset_actual'],
                                size * transcript.opt_cost)
        self.assertLessEqual(extra['subset_alpha'],
                             8 * math.log2(size) * transcript.opt_cost)

    def test_small_ratio(self):
        """
        Test that the phase growth must be at least 2.
        """
        with self.assertRaises(AdversaryException) as cm:
            fotakis_lb_run(1)
        self.assertEqual(cm.exception.status_code, 107)


class MatchingTests(unittest.TestCase):
    """
    Online matching lower-bound tests
    """

    def test_lower_bound(self):
        """
        Test that greedy pays 2k against an optimum of 2.
        """
        for k in (2, 4, 8):
            transcript = matching_lb_run(k)
            self.assertEqual(transcript.alg_cost, 2 * k)
            self.assertEqual(transcript.opt_cost, 2)
            self.assertEqual(transcript.ratio, float(k))
            self.assertEqual(transcript.extra['frontier'].pairs(),
                             [(0, 2), (2, 0)])

    def test_rows(self):
        """
        Test that every red point arrives where greedy matched last.
        """
        transcript = matching_lb_run(2)
        self.assertEqual(transcript.rows, [
            (0, 'red:3', 'match 3->1', 2),
            (1, 'red:1', 'match 1->2', 4)])

    def test_small_k(self):
        """
        Test that k must be at least 2.
        """
        with self.assertRaises(AdversaryException) as cm:
            matching_lb_run(1)
        self.assertEqual(cm.exception.status_code, 106)

    def test_matcher_exhausted(self):
        """
        Test that matching beyond the blue points is an error.
        """
        matcher = GreedyMatcher(Metric(star_graph(2)), [1])
        self.assertEqual(matcher.match(2), (1, 2))
        with self.assertRaises(AdversaryException) as cm:
            matcher.match(2)
        self.assertEqual(cm.exception.status_code, 100)


class NKDeltaTests(unittest.TestCase):
    """
    Prediction-error adversary tests
    """

    def test_cardinalities(self):
        """
        Test the released sequence against the predictions.
        """
        for kind in ('st', 'fl'):
            adversary = nk_delta_adversary(8, 6, 4, 2, kind)
            self.assertEqual(adversary.variant, 'delta1')
            self.assertEqual(adversary.m, 2)
            self.assertEqual(len(adversary.predictions), 8)
            transcript = adversary.play()
            self.assertEqual(adversary.cardinalities(transcript.requests),
                             (8, 6, 4, 2))

    def test_unpredicted_variant(self):
        """
        Test that the unpredicted-request variant keeps the cardinalities.
        """
        adversary = nk_delta_adversary(8, 6, 4, 2, 'st', 'delta2')
        self.assertEqual(adversary.m, 2)
        transcript = adversary.play()
        self.assertEqual(adversary.cardinalities(transcript.requests),
                         (8, 6, 4, 2))

    def test_parameter_errors(self):
        """
        Test that every violated inequality is named.
        """
        cases = [
            ((8, 6, 4, 1), 101),
            ((1, 1, 2, 2), 102),
            ((8, 6, 4, 0), 103),
            ((8, 6, -4, 2), 109),
        ]
        for arguments, code in cases:
            with self.assertRaises(AdversaryException) as cm:
                nk_delta_adversary(*arguments)
            self.assertEqual(cm.exception.status_code, code)

    def test_unknown_kind(self):
        """
        Test that an unknown kind or variant is rejected.
        """
        with self.assertRaises(AdversaryException) as cm:
            nk_delta_adversary(8, 6, 4, 2, 'sf')
        self.assertEqual(cm.exception.status_code, 108)
        with self.assertRaises(AdversaryException) as cm:
            nk_delta_adversary(8, 6, 4, 2, 'st', 'both')
        self.assertEqual(cm.exception.status_code, 108)


class TranscriptTests(unittest.TestCase):
    """
    Transcript tests
    """

    def test_ratio(self):
        """
        Test the ratio with a zero or missing optimum.
        """
        self.assertEqual(Transcript([], 0, 0).ratio, 1.0)
        self.assertEqual(Transcript([], 1, 0).ratio, float('inf'))
        self.assertIsNone(Transcript([], 3).ratio)

    def test_csv(self):
        """
        Test the transcript CSV rows.
        """
        stream = io.StringIO()
        Transcript([(0, 'red:3', 'match 3->1', 2)], 2, 2).write_csv(stream)
        self.assertEqual(stream.getvalue(),
                         'step,request,algorithm_action,cumulative_cost\n'
                         '0,red:3,match 3->1,2\n')


if __name__ == '__main__':
    unittest.main()
