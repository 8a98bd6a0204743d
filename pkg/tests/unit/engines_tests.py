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
engines module - Unit tests for the online engines
"""
import unittest
from fractions import Fraction

from onlinegraph._common_util import FACILITY_LOCATION, STEINER_TREE
from onlinegraph.demand import Request
from onlinegraph.engines import (
    BallSystem,
    BermanCoulstonEngine,
    FotakisEngine,
    GreedySteinerTreeEngine,
    engine_total_charged,
    make_engine)
from onlinegraph.error import (
    EngineException,
    GraphException,
    OnlineGraphArgumentError)
from onlinegraph.graph import Metric, WeightedGraph

from ._test_util import clients, pairs, path_graph, terminals


def serve_all(engine, requests):
    return [engine.serve(request) for request in requests]


class GreedySteinerTreeEngineTests(unittest.TestCase):
    """
    Greedy online Steiner tree tests
    """

    def test_connects_to_closest_tree_vertex(self):
        """
        Test that each terminal pays its distance to the root or an earlier
        terminal.
        """
        engine = make_engine(STEINER_TREE, Metric(path_graph(3)))
        records = serve_all(engine, terminals(3, 2))
        self.assertEqual([r.charged_cost for r in records], [3, 1])
        self.assertEqual(records[0].bought_edges, (2, 1, 0))
        self.assertEqual(engine.bought_edges, frozenset([0, 1, 2]))
        self.assertEqual(engine.total_actual, 4)
        self.assertEqual(engine.solution_vertices(), set([0, 1, 2, 3]))

    def test_root_terminal_is_free(self):
        """
        Test that a terminal at the root costs nothing.
        """
        engine = GreedySteinerTreeEngine(Metric(path_graph(2)), 0)
        self.assertEqual(engine.serve(Request.terminal(0)).charged_cost, 0)

    def test_disconnected_terminal(self):
        """
        Test that an unreachable terminal is an infeasible instance.
        """
        engine = GreedySteinerTreeEngine(Metric(WeightedGraph([0, 1])), 0)
        with self.assertRaises(GraphException) as cm:
            engine.serve(Request.terminal(1))
        self.assertEqual(cm.exception.status_code, 102)

    def test_wrong_request_kind(self):
        """
        Test that an engine refuses requests of another kind.
        """
        engine = GreedySteinerTreeEngine(Metric(path_graph(2)), 0)
        with self.assertRaises(EngineException) as cm:
            engine.serve(Request.client(1))
        self.assertEqual(cm.exception.status_code, 102)

    def test_subset_totals(self):
        """
        Test charged totals over subsets of arrival indices.
        """
        engine = make_engine(STEINER_TREE, Metric(path_graph(3)))
        serve_all(engine, terminals(3, 2, 1))
        self.assertEqual(engine_total_charged(engine), 5)
        self.assertEqual(engine_total_charged(engine, [0, 2]), 4)
        with self.assertRaises(OnlineGraphArgumentError) as cm:
            engine_total_charged(engine, [7])
        self.assertEqual(cm.exception.status_code, 108)


class BermanCoulstonEngineTests(unittest.TestCase):
    """
    Online Steiner forest tests
    """

    def test_lonely_pair_places_ball(self):
        """
        Test that a first pair buys its path and places one ball.
        """
        engine = BermanCoulstonEngine(Metric(path_graph(4)))
        record = engine.serve(Request.pair(0, 4, 1, 0))
        self.assertEqual(record.charged_cost, 4)
        self.assertEqual(engine.balls.levels, [2])
        self.assertEqual(engine.balls.centers(2), [0])
        self.assertEqual(engine.balls.pair_count(2), 1)

    def test_bought_path_is_free(self):
        """
        Test that a pair inside bought edges costs nothing and skips the
        ball bookkeeping.
        """
        engine = BermanCoulstonEngine(Metric(path_graph(4)))
        records = serve_all(engine, pairs((0, 4), (1, 3)))
        self.assertEqual(records[1].charged_cost, 0)
        self.assertEqual(engine.balls.pair_count(2), 1)

    def test_colliding_pair_links_balls(self):
        """
        Test that a pair whose terminals hit two balls connects to their
        centers and adds a meta-graph edge.
        """
        engine = BermanCoulstonEngine(Metric(path_graph(20)))
        records = serve_all(engine, pairs((0, 4), (10, 14), (1, 11)))
        self.assertEqual([r.charged_cost for r in records], [4, 4, 6])
        balls = engine.balls
        self.assertEqual(balls.centers(2), [0, 10])
        self.assertEqual(balls.meta_graph(2).number_of_edges(), 1)
        self.assertEqual(balls.pair_count(2), 3)
        self.assertTrue(engine.structure_holds())
        self.assertTrue(balls.counting_holds())


class BallSystemTests(unittest.TestCase):
    """
    BallSystem unit tests
    """

    def test_radius(self):
        """
        Test the level radii, including negative levels.
        """
        self.assertEqual(BallSystem.radius(2), 1)
        self.assertEqual(BallSystem.radius(0), Fraction(1, 4))

    def test_detects_cycle(self):
        """
        Test that a meta-graph cycle is reported.
        """
        balls = BallSystem()
        for center in (0, 1):
            balls.add_ball(0, center)
        balls.add_meta_edge(0, 0, 1)
        self.assertTrue(balls.is_acyclic())
        balls.add_meta_edge(0, 1, 0)
        self.assertFalse(balls.is_acyclic())

    def test_detects_overlap(self):
        """
        Test that overlapping balls on one level are reported.
        """
        balls = BallSystem()
        balls.add_ball(3, 0)
        balls.add_ball(3, 1)
        self.assertFalse(balls.is_disjoint(Metric(path_graph(1))))


class FotakisEngineTests(unittest.TestCase):
    """
    Online facility location tests
    """

    def test_first_client_opens_cheapest_facility(self):
        """
        Test the first client of a component: actual cost f + d and alpha
        2 (f - p + d).
        """
        graph = WeightedGraph([0, 1], [(0, 1, 1)],
                              facility_costs={1: Fraction(1, 2)})
        engine = FotakisEngine(Metric(graph))
        record = engine.serve(Request.client(0, 0))
        self.assertEqual(record.actual_cost, Fraction(3, 2))
        self.assertEqual(record.charged_cost, 3)
        self.assertEqual(record.opened_facilities, (1,))
        self.assertEqual(record.connection, 1)

    def test_potential_opens_facility(self):
        """
        Test that a facility opens once its potential exceeds its cost.
        """
        engine = FotakisEngine(Metric(path_graph(2, facility_cost=2)))
        records = serve_all(engine, clients(0, 2, 2))
        self.assertEqual([r.actual_cost for r in records], [2, 2, 2])
        self.assertEqual([r.charged_cost for r in records], [4, 4, 0])
        self.assertEqual(engine.actions, [
            ('open', 0), ('connect', 0, 0), ('connect', 2, 0), ('open', 2),
            ('connect', 2, 2)])
        self.assertEqual(engine.opened_facilities, (0, 2))
        self.assertTrue(engine.potentials_stable())
        self.assertGreaterEqual(engine.total_charged, engine.total_actual)

    def test_equal_potential_does_not_open(self):
        """
        Test that a potential equal to the cost keeps the facility closed.
        """
        engine = FotakisEngine(Metric(path_graph(2, facility_cost=2)))
        serve_all(engine, clients(0, 2))
        self.assertEqual(engine.potentials[2], 2)
        self.assertEqual(engine.opened_facilities, (0,))

    def test_adopted_facilities(self):
        """
        Test that adopted facilities serve clients without being charged.
        """
        engine = FotakisEngine(Metric(path_graph(2, facility_cost=2)))
        engine.adopt_facilities([1])
        record = engine.serve(Request.client(0, 0))
        self.assertEqual(record.actual_cost, 1)
        self.assertEqual(record.charged_cost, 2)
        self.assertEqual(engine.actions, [('adopt', 1), ('connect', 0, 1)])

    def test_requires_facilities(self):
        """
        Test that a graph without facility costs is refused.
        """
        with self.assertRaises(EngineException) as cm:
            make_engine(FACILITY_LOCATION, Metric(path_graph(2)))
        self.assertEqual(cm.exception.status_code, 101)

    def test_unreachable_facility(self):
        """
        Test that a client with no reachable facility raises code 103.
        """
        graph = WeightedGraph([0, 1], facility_costs={1: 1})
        engine = FotakisEngine(Metric(graph))
        with self.assertRaises(EngineException) as cm:
            engine.serve(Request.client(0))
        self.assertEqual(cm.exception.status_code, 103)


class MakeEngineTests(unittest.TestCase):
    """
    Engine registry tests
    """

    def test_unknown_problem(self):
        """
        Test that an unknown problem raises code 104.
        """
        with self.assertRaises(EngineException) as cm:
            make_engine('tsp', Metric(path_graph(1)))
        self.assertEqual(cm.exception.status_code, 104)

    def test_root_defaults_to_graph_root(self):
        """
        Test that the Steiner tree engine uses the graph root by default.
        """
        graph = WeightedGraph(range(3), [(0, 1, 1), (1, 2, 1)], root=2)
        engine = make_engine(STEINER_TREE, Metric(graph))
        self.assertEqual(engine.root, 2)


if __name__ == '__main__':
    unittest.main()
