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
prize_collecting module - Unit tests for the prize-collecting solvers
"""
import unittest
from fractions import Fraction

from onlinegraph._common_util import (
    FACILITY_LOCATION,
    INFINITY,
    STEINER_FOREST,
    STEINER_TREE)
from onlinegraph.error import SolverException
from onlinegraph.graph import Metric, WeightedGraph, ZeroCostOverlay
from onlinegraph.prize_collecting import (
    PenaltyInstance,
    evaluate,
    get_solver,
    pc_exact,
    pc_facility_location,
    pc_steiner_forest,
    pc_steiner_tree)

from ._test_util import clients, pairs, path_graph, square, star, terminals


class PenaltyInstanceTests(unittest.TestCase):
    """
    PenaltyInstance construction and evaluation tests
    """

    def test_negative_penalty(self):
        """
        Test that a negative penalty is rejected.
        """
        with self.assertRaises(SolverException) as cm:
            PenaltyInstance(STEINER_TREE, terminals(1), -1,
                            Metric(path_graph(1)))
        self.assertEqual(cm.exception.status_code, 101)

    def test_missing_root(self):
        """
        Test that a rooted problem needs a root.
        """
        graph = WeightedGraph(range(2), [(0, 1, 1)])
        with self.assertRaises(SolverException) as cm:
            PenaltyInstance(STEINER_TREE, terminals(1), 1, Metric(graph))
        self.assertEqual(cm.exception.status_code, 104)

    def test_missing_facilities(self):
        """
        Test that facility location needs facility costs.
        """
        with self.assertRaises(SolverException) as cm:
            PenaltyInstance(FACILITY_LOCATION, clients(1), 1,
                            Metric(path_graph(1)))
        self.assertEqual(cm.exception.status_code, 106)

    def test_request_kind_mismatch(self):
        """
        Test that requests must match the problem kind.
        """
        with self.assertRaises(SolverException) as cm:
            PenaltyInstance(STEINER_TREE, clients(1), 1,
                            Metric(path_graph(1)))
        self.assertEqual(cm.exception.status_code, 107)

    def test_overlay_dropped(self):
        """
        Test that the instance prices elements at their original cost.
        """
        metric = Metric(path_graph(1), ZeroCostOverlay(zeroed_edges=[0]))
        instance = PenaltyInstance(STEINER_TREE, terminals(1), 1, metric)
        self.assertEqual(instance.metric.edge_cost(0), 1)

    def test_penalty_for(self):
        """
        Test that no unsatisfied request costs nothing even at infinity.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(1), INFINITY,
                                   Metric(path_graph(1)))
        self.assertEqual(instance.penalty_for(0), 0)
        self.assertEqual(instance.penalty_for(2), INFINITY)

    def test_evaluate_tree(self):
        """
        Test evaluating a rooted edge set.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(1, 3), 5,
                                   Metric(square()))
        self.assertEqual(evaluate(instance, edges=[0]), ([0], 1, 6))
        self.assertEqual(evaluate(instance, edges=[0, 3]), ([0, 1], 5, 5))

    def test_evaluate_forest(self):
        """
        Test evaluating an edge set against terminal pairs.
        """
        instance = PenaltyInstance(STEINER_FOREST, pairs((1, 2), (0, 3)), 7,
                                   Metric(square()))
        self.assertEqual(evaluate(instance, edges=[1]), ([0], 2, 9))

    def test_evaluate_facilities(self):
        """
        Test that clients assigned to closed facilities are unsatisfied.
        """
        instance = PenaltyInstance(FACILITY_LOCATION, clients(0, 2), 10,
                                   Metric(path_graph(2, facility_cost=2)))
        self.assertEqual(
            evaluate(instance, facilities=[0], assignment={0: 0, 1: 0}),
            ([0, 1], 4, 4))
        self.assertEqual(
            evaluate(instance, facilities=[0], assignment={1: 2}),
            ([], 2, 22))


class SteinerTreeSolverTests(unittest.TestCase):
    """
    Moat-growing prize-collecting Steiner tree tests
    """

    def test_connects_all(self):
        """
        Test that a large penalty connects every leaf of a star.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(1, 2, 3), 10,
                                   Metric(star(3)))
        solution = pc_steiner_tree(instance)
        self.assertEqual(solution.edges, frozenset([0, 1, 2]))
        self.assertEqual(solution.objective, 3)
        self.assertEqual(solution.unsatisfied_count, 0)
        self.assertEqual(solution.declared_gamma, 2)

    def test_small_penalty(self):
        """
        Test that a penalty below the edge cost pays every penalty.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(1, 2, 3),
                                   Fraction(1, 2), Metric(star(3)))
        solution = pc_steiner_tree(instance)
        self.assertEqual(solution.edges, frozenset())
        self.assertEqual(solution.objective, Fraction(3, 2))
        self.assertEqual(solution.unsatisfied_count, 3)

    def test_zero_penalty(self):
        """
        Test that a zero penalty yields the empty solution.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(1), 0,
                                   Metric(star(1)))
        self.assertEqual(pc_steiner_tree(instance).objective, 0)

    def test_infinite_penalty(self):
        """
        Test that an infinite penalty forces every terminal to connect.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(1, 2, 3),
                                   INFINITY, Metric(star(3)))
        solution = pc_steiner_tree(instance)
        self.assertEqual(solution.objective, 3)
        self.assertEqual(solution.unsatisfied_count, 0)

    def test_moat_cannot_pay(self):
        """
        Test that a terminal whose moat stops short of the root is dropped.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(2),
                                   Fraction(3, 2), Metric(path_graph(2)))
        solution = pc_steiner_tree(instance)
        self.assertEqual(solution.edges, frozenset())
        self.assertEqual(solution.objective, Fraction(3, 2))

    def test_moat_pays(self):
        """
        Test that a terminal whose moat reaches the root is connected.
        """
        instance = PenaltyInstance(STEINER_TREE, terminals(2), 3,
                                   Metric(path_graph(2)))
        solution = pc_steiner_tree(instance)
        self.assertEqual(solution.edges, frozenset([0, 1]))
        self.assertEqual(solution.objective, 2)

    def test_infinite_penalty_disconnected(self):
        """
        Test that a disconnected terminal with infinite penalty is an error.
        """
        graph = WeightedGraph(range(3), [(0, 1, 1)], root=0)
        instance = PenaltyInstance(STEINER_TREE, terminals(2), INFINITY,
                                   Metric(graph))
        with self.assertRaises(SolverException) as cm:
            pc_steiner_tree(instance)
        self.assertEqual(cm.exception.status_code, 102)

    def test_within_factor_of_optimum(self):
        """
        Test the moat-growing objective against the exact optimum.
        """
        for penalty in (1, 2, 3, 5, 8):
            instance = PenaltyInstance(STEINER_TREE, terminals(1, 2, 3),
                                       penalty, Metric(square()))
            approx = pc_steiner_tree(instance).objective
            optimum = pc_exact(instance).objective
            self.assertLessEqual(optimum, approx)
            self.assertLessEqual(approx, 2 * optimum)


class SteinerForestSolverTests(unittest.TestCase):
    """
    Relaxation-rounding prize-collecting Steiner forest tests
    """

    def test_connects_pair(self):
        """
        Test that a large penalty connects the pair.
        """
        instance = PenaltyInstance(STEINER_FOREST, pairs((0, 2)), 10,
                                   Metric(path_graph(2)))
        solution = pc_steiner_forest(instance)
        self.assertEqual(solution.edges, frozenset([0, 1]))
        self.assertEqual(solution.objective, 2)
        self.assertEqual(solution.declared_gamma, 3)

    def test_pays_penalty(self):
        """
        Test that a small penalty is paid instead of connecting.
        """
        instance = PenaltyInstance(STEINER_FOREST, pairs((0, 2)),
                                   Fraction(1, 2), Metric(path_graph(2)))
        solution = pc_steiner_forest(instance)
        self.assertEqual(solution.edges, frozenset())
        self.assertEqual(solution.objective, Fraction(1, 2))

    def test_infinite_penalty(self):
        """
        Test that an infinite penalty connects every pair.
        """
        instance = PenaltyInstance(STEINER_FOREST, pairs((0, 2), (1, 2)),
                                   INFINITY, Metric(path_graph(2)))
        solution = pc_steiner_forest(instance)
        self.assertEqual(solution.objective, 2)
        self.assertEqual(solution.unsatisfied_count, 0)

    def test_trivial_pairs(self):
        """
        Test that pairs with equal endpoints are always satisfied.
        """
        instance = PenaltyInstance(STEINER_FOREST, pairs((1, 1)), 5,
                                   Metric(path_graph(2)))
        solution = pc_steiner_forest(instance)
        self.assertEqual(solution.objective, 0)
        self.assertEqual(solution.satisfied, frozenset([0]))


class FacilityLocationSolverTests(unittest.TestCase):
    """
    Dual-ascent prize-collecting facility location tests
    """

    def test_serves_clients(self):
        """
        Test that a large penalty serves both ends of a path.
        """
        instance = PenaltyInstance(FACILITY_LOCATION, clients(0, 2), 10,
                                   Metric(path_graph(2, facility_cost=2)))
        solution = pc_facility_location(instance)
        self.assertEqual(solution.facilities, (0, 2))
        self.assertEqual(solution.objective, 4)
        self.assertEqual(solution.unsatisfied_count, 0)
        self.assertEqual(pc_exact(instance).objective, 4)

    def test_pays_penalties(self):
        """
        Test that clients stop at a penalty below every facility cost.
        """
        instance = PenaltyInstance(FACILITY_LOCATION, clients(0, 2), 1,
                                   Metric(path_graph(2, facility_cost=2)))
        solution = pc_facility_location(instance)
        self.assertEqual(solution.facilities, ())
        self.assertEqual(solution.objective, 2)
        self.assertEqual(solution.declared_gamma, 3)


class PenaltySweepTests(unittest.TestCase):
    """
    Solutions across a range of penalties
    """

    PENALTIES = (0, 1, 2, 3, 5, 8, 20)

    def setUp(self):
        """
        Set up one small instance per problem.
        """
        self.cases = [
            (STEINER_TREE, terminals(1, 2, 3), Metric(square())),
            (STEINER_FOREST, pairs((0, 2), (1, 3)), Metric(square())),
            (FACILITY_LOCATION, clients(0, 0, 2),
             Metric(path_graph(2, facility_cost=2))),
        ]

    def test_exact_unsatisfied_count_non_increasing(self):
        """
        Test that the optimum leaves fewer requests unsatisfied as the
        penalty grows.
        """
        for problem, requests, metric in self.cases:
            counts = [pc_exact(PenaltyInstance(problem, requests, penalty,
                                               metric)).unsatisfied_count
                      for penalty in self.PENALTIES]
            self.assertEqual(counts, sorted(counts, reverse=True), problem)
            self.assertEqual(counts[0], len(requests))
            self.assertEqual(counts[-1], 0)

    def test_objective_matches_elements(self):
        """
        Test that every solver's objective is its element cost plus the
        penalties of its unsatisfied requests.
        """
        for problem, requests, metric in self.cases:
            for penalty in self.PENALTIES:
                instance = PenaltyInstance(problem, requests, penalty,
                                           metric)
                for name in ('approx', 'exact'):
                    solution = get_solver(problem, name).solve(instance)
                    satisfied, cost, objective = evaluate(
                        instance, solution.edges, solution.facilities,
                        solution.assignment)
                    self.assertEqual(frozenset(satisfied),
                                     solution.satisfied)
                    self.assertEqual(cost, solution.element_cost)
                    self.assertEqual(objective, solution.objective)
                    self.assertEqual(
                        solution.objective,
                        solution.element_cost + instance.penalty_for(
                            solution.unsatisfied_count))


class SolverRegistryTests(unittest.TestCase):
    """
    Solver lookup tests
    """

    def test_lookup(self):
        """
        Test the declared factors of the registered solvers.
        """
        self.assertEqual(get_solver(STEINER_TREE).gamma, 2)
        self.assertEqual(get_solver(STEINER_FOREST).gamma, 3)
        self.assertEqual(get_solver(FACILITY_LOCATION).gamma, 3)
        self.assertEqual(get_solver(STEINER_TREE, 'exact').gamma, 1)

    def test_unknown_solver(self):
        """
        Test that an unknown solver name is rejected.
        """
        with self.assertRaises(SolverException) as cm:
            get_solver(STEINER_TREE, 'bogus')
        self.assertEqual(cm.exception.status_code, 105)


if __name__ == '__main__':
    unittest.main()
