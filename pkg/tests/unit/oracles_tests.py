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
oracles module - Unit tests for the exact solvers
"""
import unittest

from onlinegraph._common_util import FACILITY_LOCATION, STEINER_TREE
from onlinegraph.demand import Request
from onlinegraph.error import OnlineGraphArgumentError, OracleBudgetException
from onlinegraph.graph import Metric, WeightedGraph
from onlinegraph.oracles import (
    exact_capacitated_fl,
    exact_facility_location,
    exact_matching_frontier,
    exact_min_cost_with_outliers,
    exact_optimum,
    exact_priority_steiner_forest,
    exact_prize_collecting,
    exact_steiner_forest,
    exact_steiner_tree)

from ._test_util import clients, path_graph, square, star, terminals


class SteinerOracleTests(unittest.TestCase):
    """
    Exact Steiner tree and forest tests
    """

    def test_tree(self):
        """
        Test the optimal tree of the weighted square.
        """
        self.assertEqual(exact_steiner_tree(square(), [1, 2, 3], 0),
                         (6, [0, 1, 2]))
        self.assertEqual(exact_steiner_tree(star(3), [1, 2, 3], 0),
                         (3, [0, 1, 2]))

    def test_tree_large_costs(self):
        """
        Test that the tree table stays exact beyond double precision.
        """
        big = 2 ** 60
        graph = WeightedGraph(range(4), [(0, 3, big), (3, 1, 1), (3, 2, 1),
                                         (0, 1, big + 1), (0, 2, big + 1)])
        self.assertEqual(exact_steiner_tree(graph, [1, 2], 0),
                         (big + 2, [0, 1, 2]))

    def test_tree_ignores_root_terminal(self):
        """
        Test that the root as a terminal adds nothing.
        """
        self.assertEqual(exact_steiner_tree(path_graph(2), [0, 2], 0),
                         (2, [0, 1]))

    def test_tree_disconnected(self):
        """
        Test that a terminal without a root path is infeasible.
        """
        graph = WeightedGraph(range(3), [(0, 1, 1)])
        with self.assertRaises(OracleBudgetException) as cm:
            exact_steiner_tree(graph, [2], 0)
        self.assertEqual(cm.exception.status_code, 102)

    def test_tree_budget(self):
        """
        Test that thirteen terminals exceed the budget.
        """
        with self.assertRaises(OracleBudgetException) as cm:
            exact_steiner_tree(path_graph(13), range(1, 14), 0)
        self.assertEqual(cm.exception.status_code, 101)

    def test_forest(self):
        """
        Test the optimal forests of the weighted square.
        """
        self.assertEqual(exact_steiner_forest(square(), [(0, 1), (2, 3)]),
                         (4, [0, 2]))
        self.assertEqual(exact_steiner_forest(square(), [(1, 3)])[0], 5)

    def test_rooted_forest_equals_tree(self):
        """
        Test that pairing every terminal with the root gives the tree.
        """
        tree, _ = exact_steiner_tree(square(), [1, 2, 3], 0)
        forest, _ = exact_steiner_forest(square(), [(0, 1), (0, 2), (0, 3)])
        self.assertEqual(tree, forest)

    def test_priority_forest(self):
        """
        Test that a pair may only use edges of its priority or higher.
        """
        graph = WeightedGraph(range(2), [(0, 1, 5, 2), (0, 1, 1, 1)])
        self.assertEqual(exact_priority_steiner_forest(graph, [(0, 1, 2)]),
                         (5, [0]))
        self.assertEqual(exact_priority_steiner_forest(graph, [(0, 1, 1)]),
                         (1, [1]))


class FacilityOracleTests(unittest.TestCase):
    """
    Exact facility location tests
    """

    def test_uncapacitated(self):
        """
        Test the optimal facility location of a short path.
        """
        graph = path_graph(2, facility_cost=2)
        self.assertEqual(exact_facility_location(graph, [0, 0, 2]),
                         (4, [0], [0, 0, 0]))
        self.assertEqual(exact_facility_location(graph, []), (0, [], []))

    def test_uncapacitated_large_costs(self):
        """
        Test that opening costs beyond double precision are compared
        exactly.
        """
        big = 2 ** 60
        graph = WeightedGraph(range(2), [(0, 1, 1)],
                              facility_costs={0: big + 3, 1: big})
        self.assertEqual(exact_facility_location(graph, [0]),
                         (big + 1, [1], [1]))

    def test_candidates(self):
        """
        Test restricting the candidate facilities.
        """
        graph = path_graph(2, facility_cost=2)
        self.assertEqual(exact_facility_location(graph, [0, 2], [1])[0], 4)

    def test_capacitated(self):
        """
        Test that a full facility makes a second facility worthwhile.
        """
        graph = WeightedGraph(range(2), [(0, 1, 1)],
                              facility_costs={0: 6, 1: 4},
                              capacities={0: 3, 1: 3})
        self.assertEqual(exact_capacitated_fl(graph, [0, 0, 0, 0]), 11)
        self.assertEqual(exact_capacitated_fl(graph, [0]), 5)


class OutlierOracleTests(unittest.TestCase):
    """
    Exact optima with outliers and penalties
    """

    def test_optimum(self):
        """
        Test the optimum serving every request.
        """
        self.assertEqual(exact_optimum(STEINER_TREE, terminals(1, 2, 3),
                                       Metric(square()), 0), 6)

    def test_outliers(self):
        """
        Test dropping the most expensive requests.
        """
        metric = Metric(square())
        requests = terminals(1, 2, 3)
        self.assertEqual(exact_min_cost_with_outliers(
            STEINER_TREE, requests, metric, 1, 0), 3)
        self.assertEqual(exact_min_cost_with_outliers(
            STEINER_TREE, requests, metric, 3, 0), 0)
        self.assertEqual(exact_min_cost_with_outliers(
            FACILITY_LOCATION, clients(0, 0, 2),
            Metric(path_graph(2, facility_cost=2)), 1), 2)

    def test_prize_collecting(self):
        """
        Test the exact prize-collecting objective.
        """
        objective, edges, _, _, satisfied = exact_prize_collecting(
            STEINER_TREE, terminals(1, 2, 3), Metric(square()), 2, 0)
        self.assertEqual(objective, 5)
        self.assertEqual(list(edges), [0])
        self.assertEqual(list(satisfied), [0])

    def test_unknown_problem(self):
        """
        Test that an unknown problem kind is rejected.
        """
        with self.assertRaises(OnlineGraphArgumentError) as cm:
            exact_optimum('knapsack', terminals(1), Metric(square()), 0)
        self.assertEqual(cm.exception.status_code, 104)

    def test_frontier_budget(self):
        """
        Test that the enumerated frontier refuses large inputs.
        """
        requests = [Request.terminal(1)] * 7
        with self.assertRaises(OracleBudgetException) as cm:
            exact_matching_frontier(requests, [], Metric(square()))
        self.assertEqual(cm.exception.status_code, 101)


if __name__ == '__main__':
    unittest.main()
