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
Exact brute-force optimum solvers.

The oracles are deliberately simple and independent of the approximate
solvers and the online engines; they only share the graph-core metric.  Each
oracle refuses inputs over its :class:`OracleBudget` instead of degrading.
Ties between optimal solutions go to the smallest solution encoding (subset
bitmask order).
"""
import logging
from collections import namedtuple
from itertools import combinations, permutations, product

import numpy as np

from ._common_util import (
    FACILITY_LOCATION,
    INFINITY,
    MAX_ORACLE_EDGES,
    MAX_ORACLE_FACILITIES,
    MAX_ORACLE_FRONTIER_SIDE,
    MAX_ORACLE_TERMINALS,
    STEINER_FOREST,
    STEINER_TREE,
    exact,
    is_infinite)
from .error import OnlineGraphArgumentError, OracleBudgetException
from .graph import Metric, WeightedGraph
from .outlier import (
    OutlierError,
    ParetoFrontier,
    matching_cost_matrix,
    min_cost_matching_of_size)

LOG = logging.getLogger(__name__)

OracleBudget = namedtuple('OracleBudget', [
    'max_terminals', 'max_edges', 'max_facilities', 'max_frontier_side'])

DEFAULT_BUDGET = OracleBudget(MAX_ORACLE_TERMINALS, MAX_ORACLE_EDGES,
                              MAX_ORACLE_FACILITIES, MAX_ORACLE_FRONTIER_SIDE)


def _as_metric(graph_or_metric):
    if isinstance(graph_or_metric, WeightedGraph):
        return Metric(graph_or_metric)
    return graph_or_metric.without_overlay()


def _check(name, value, limit):
    if value > limit:
        LOG.info('oracle refused: %s = %d > %d', name, value, limit)
        raise OracleBudgetException(101, name, value, limit)


def _popcount(mask):
    return bin(mask).count('1')


# Steiner tree


class SteinerTreeTable(object):
    """
    Dreyfus-Wagner table over the distinct terminal vertices.  ``cost(S)`` is
    the optimal cost of a tree spanning the terminal subset S (a bitmask over
    :attr:`terminals`) and the root.
    """
    def __init__(self, metric, terminals, root, budget=DEFAULT_BUDGET):
        metric = _as_metric(metric)
        metric.graph.check_vertex(root)
        self._metric = metric
        self._root = root
        self._terminals = sorted(set(terminals) - {root})
        for vertex in self._terminals:
            metric.graph.check_vertex(vertex)
        _check('terminals', len(self._terminals), budget.max_terminals)
        self._vertices = list(metric.graph.vertices)
        self._index = dict((v, i) for i, v in enumerate(self._vertices))
        self._dist = metric.distance_matrix(self._vertices)
        self._run()

    @property
    def terminals(self):
        return list(self._terminals)

    def _run(self):
        k = len(self._terminals)
        n = len(self._vertices)
        full = 1 << k
        self._dp = np.full((full, n), INFINITY, dtype=object)
        self._dp[0, :] = 0
        self._split = {}
        self._move = {}
        for i, terminal in enumerate(self._terminals):
            self._dp[1 << i] = self._dist[self._index[terminal]]
        for mask in range(1, full):
            if _popcount(mask) < 2:
                continue
            low = mask & -mask
            best = np.full(n, INFINITY, dtype=object)
            best_sub = np.zeros(n, dtype=int)
            sub = (mask - 1) & mask
            while sub:
                if sub & low:
                    candidate = self._dp[sub] + self._dp[mask ^ sub]
                    better = np.asarray(candidate < best, dtype=bool)
                    best = np.where(better, candidate, best)
                    best_sub = np.where(better, sub, best_sub)
                sub = (sub - 1) & mask
            totals = best[:, None] + self._dist
            origin = np.argmin(totals, axis=0)
            self._dp[mask] = totals[origin, np.arange(n)]
            self._split[mask] = best_sub
            self._move[mask] = origin

    def cost(self, mask):
        value = self._dp[mask, self._index[self._root]]
        return value if is_infinite(value) else exact(value)

    def mask_of(self, vertices):
        wanted = set(vertices)
        return sum(1 << i for i, v in enumerate(self._terminals)
                   if v in wanted)

    def edges(self, mask):
        """
        Edge ids of an optimal tree for the terminal subset ``mask``.
        """
        edges = set()
        if mask:
            self._collect(mask, self._index[self._root], edges)
        return sorted(edges)

    def _path(self, u, v, edges):
        _, path = self._metric.shortest_path(self._vertices[u],
                                             self._vertices[v])
        edges.update(path)

    def _collect(self, mask, v, edges):
        if _popcount(mask) == 1:
            terminal = self._terminals[mask.bit_length() - 1]
            self._path(self._index[terminal], v, edges)
            return
        u = int(self._move[mask][v])
        self._path(u, v, edges)
        sub = int(self._split[mask][u])
        self._collect(sub, u, edges)
        self._collect(mask ^ sub, u, edges)


def exact_steiner_tree(graph, terminals, root, budget=DEFAULT_BUDGET):
    """
    Minimum Steiner tree spanning the terminals and the root.

    :param graph: A WeightedGraph or Metric (any overlay is ignored).
    :returns: ``(cost, sorted edge ids)``.
    """
    table = SteinerTreeTable(graph, terminals, root, budget)
    full = (1 << len(table.terminals)) - 1
    cost = table.cost(full)
    if is_infinite(cost):
        raise OracleBudgetException(102, 'terminals disconnected from root')
    return cost, table.edges(full)


# Steiner forest


def _usable_edges(metric):
    return [edge for edge in metric.graph.edges
            if edge.priority >= metric.priority_floor]


def _component_labels(vertices, edges):
    """
    Yields ``(mask, cost, labels)`` for every edge subset in mask order;
    labels[i] names the component of vertex i.
    """
    index = dict((v, i) for i, v in enumerate(vertices))
    base = np.arange(len(vertices))
    labels = {0: base}
    costs = {0: 0}
    yield 0, 0, base
    for mask in range(1, 1 << len(edges)):
        top = mask.bit_length() - 1
        prev = mask ^ (1 << top)
        edge = edges[top]
        current = labels[prev].copy()
        a, b = current[index[edge.u]], current[index[edge.v]]
        if a != b:
            current[current == b] = a
        labels[mask] = current
        costs[mask] = costs[prev] + edge.cost
        yield mask, costs[mask], current


def _labels(index, edges):
    labels = np.arange(len(index))
    for edge in edges:
        a, b = labels[index[edge.u]], labels[index[edge.v]]
        if a != b:
            labels[labels == b] = a
    return labels


class SteinerForestTable(object):
    """
    Edge-subset enumeration table: for each set of satisfied pairs (bitmask
    over the pair list), the cheapest edge subset satisfying at least those
    pairs.
    """
    def __init__(self, metric, pairs, budget=DEFAULT_BUDGET):
        metric = _as_metric(metric)
        self._metric = metric
        self._pairs = [tuple(pair) for pair in pairs]
        _check('requests', len(self._pairs), budget.max_terminals)
        edges = _usable_edges(metric)
        _check('edges', len(edges), budget.max_edges)
        vertices = list(metric.graph.vertices)
        index = dict((v, i) for i, v in enumerate(vertices))
        for s, t in self._pairs:
            metric.graph.check_vertex(s)
            metric.graph.check_vertex(t)
        sources = np.array([index[s] for s, _ in self._pairs], dtype=int)
        sinks = np.array([index[t] for _, t in self._pairs], dtype=int)
        weights = 1 << np.arange(len(self._pairs), dtype=np.int64)
        self._best = {}
        for mask, cost, labels in _component_labels(vertices, edges):
            satisfied = int(((labels[sources] == labels[sinks]) *
                             weights).sum()) if self._pairs else 0
            if satisfied not in self._best or cost < self._best[satisfied][0]:
                self._best[satisfied] = (
                    cost, [edges[i].eid for i in range(len(edges))
                           if mask >> i & 1])

    @property
    def pair_count(self):
        return len(self._pairs)

    def entries(self):
        """
        :returns: List of ``(satisfied mask, cost, edge ids)``.
        """
        return [(mask, cost, edges) for mask, (cost, edges)
                in sorted(self._best.items())]


def exact_steiner_forest(graph, pairs, budget=DEFAULT_BUDGET):
    """
    Minimum-cost edge set connecting every pair.

    :returns: ``(cost, sorted edge ids)``.
    """
    table = SteinerForestTable(graph, pairs, budget)
    full = (1 << table.pair_count) - 1
    best = None
    for mask, cost, edges in table.entries():
        if mask == full and (best is None or cost < best[0]):
            best = (cost, edges)
    if best is None:
        raise OracleBudgetException(102, 'a pair is disconnected')
    return best


def exact_priority_steiner_forest(graph, pairs, budget=DEFAULT_BUDGET):
    """
    Minimum-cost edge set in which every pair ``(s, t, priority)`` is
    connected using edges of its priority or higher only.

    :returns: ``(cost, sorted edge ids)``.
    """
    _check('requests', len(pairs), budget.max_terminals)
    edges = list(graph.edges)
    _check('edges', len(edges), budget.max_edges)
    vertices = list(graph.vertices)
    index = dict((v, i) for i, v in enumerate(vertices))
    by_priority = {}
    for s, t, priority in pairs:
        by_priority.setdefault(priority, []).append((s, t))
    best = None
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        cost = sum(edge.cost for edge in chosen)
        if best is not None and cost >= best[0]:
            continue
        feasible = True
        for priority, group in by_priority.items():
            labels = _labels(index, [edge for edge in chosen
                                     if edge.priority >= priority])
            if any(labels[index[s]] != labels[index[t]] for s, t in group):
                feasible = False
                break
        if feasible:
            best = (cost, [edge.eid for edge in chosen])
    if best is None:
        raise OracleBudgetException(102, 'a pair is disconnected')
    return best


# Facility location


def _candidates(metric, candidates, budget):
    graph = metric.graph
    if candidates is None:
        candidates = sorted(graph.facility_costs)
    else:
        candidates = sorted(v for v in set(candidates)
                            if not is_infinite(graph.facility_cost(v)))
    _check('facilities', len(candidates), budget.max_facilities)
    return candidates


def _client_distances(metric, clients, facilities):
    matrix = np.full((len(clients), len(facilities)), INFINITY,
                     dtype=object)
    for i, client in enumerate(clients):
        row = metric.distances_from(client)
        for j, facility in enumerate(facilities):
            matrix[i, j] = row.get(facility, INFINITY)
    return matrix


def _facility_subsets(metric, clients, candidates, budget):
    """
    Yields ``(opened facilities, opening cost, distance matrix columns)`` for
    every subset of candidate facilities, empty set included.
    """
    metric = _as_metric(metric)
    candidates = _candidates(metric, candidates, budget)
    dist = _client_distances(metric, list(clients), candidates)
    fcost = [metric.graph.facility_cost(v) for v in candidates]
    for mask in range(1 << len(candidates)):
        chosen = [i for i in range(len(candidates)) if mask >> i & 1]
        yield ([candidates[i] for i in chosen], sum(fcost[i] for i in chosen),
               dist[:, chosen])


def exact_facility_location(graph, clients, candidates=None,
                            budget=DEFAULT_BUDGET):
    """
    Optimal uncapacitated facility location by facility-subset enumeration
    with nearest-open assignment.

    :param clients: Client vertices (duplicates allowed).
    :param candidates: Optional restriction of the candidate facilities.
    :returns: ``(cost, opened facilities, assignment)`` where assignment
        lists the facility serving each client.
    """
    clients = list(clients)
    metric = _as_metric(graph)
    if not clients:
        return 0, [], []
    best = None
    for opened, opening, columns in _facility_subsets(
            metric, clients, candidates, budget):
        if not opened:
            continue
        nearest = columns.min(axis=1)
        if any(is_infinite(value) for value in nearest):
            continue
        total = opening + nearest.sum()
        if best is None or total < best[0]:
            best = (total, opened, columns.argmin(axis=1))
    if best is None:
        raise OracleBudgetException(102, 'a client reaches no facility')
    _, opened, choice = best
    assignment = [opened[int(j)] for j in choice]
    cost = sum(metric.graph.facility_cost(v) for v in opened) + sum(
        metric.distance(client, facility)
        for client, facility in zip(clients, assignment))
    return cost, opened, assignment


def exact_capacitated_fl(graph, clients, budget=DEFAULT_BUDGET):
    """
    Optimal soft-capacitated facility location: enumerates how many copies
    of each facility to open (at most enough to hold every client) and
    assigns clients to copies by a minimum-cost assignment.  Vertices without
    a capacity hold any number of clients.

    :returns: The optimal cost.
    """
    clients = list(clients)
    metric = _as_metric(graph)
    if not clients:
        return 0
    candidates = _candidates(metric, None, budget)
    dist = _client_distances(metric, clients, candidates)
    n = len(clients)
    ranges = []
    for v in candidates:
        capacity = metric.graph.capacity(v)
        most = 1 if capacity is None else -(-n // capacity)
        ranges.append(range(most + 1))
    best = INFINITY
    for copies in product(*ranges):
        slots = []
        opening = 0
        for j, (v, count) in enumerate(zip(candidates, copies)):
            if not count:
                continue
            capacity = metric.graph.capacity(v)
            room = n if capacity is None else min(n, count * capacity)
            slots.extend([j] * room)
            opening += count * metric.graph.facility_cost(v)
        if len(slots) < n or opening >= best:
            continue
        matrix = dist[:, slots]
        cost, _ = min_cost_matching_of_size(matrix, n)
        if not is_infinite(cost) and opening + cost < best:
            best = opening + cost
    if is_infinite(best):
        raise OracleBudgetException(102, 'a client reaches no facility')
    return exact(best)


# Prize-collecting and outlier-constrained optima


def _tree_entries(metric, requests, root, budget):
    vertices = [request.vertex for request in requests]
    _check('requests', len(vertices), budget.max_terminals)
    table = SteinerTreeTable(metric, vertices, root, budget)
    terminals = table.terminals
    for mask in range(1 << len(terminals)):
        cost = table.cost(mask)
        if is_infinite(cost):
            continue
        chosen = set(terminals[i] for i in range(len(terminals))
                     if mask >> i & 1) | {root}
        satisfied = [i for i, v in enumerate(vertices) if v in chosen]
        yield cost, satisfied, (lambda m=mask: (table.edges(m), (), {}))


def _forest_entries(metric, requests, budget):
    table = SteinerForestTable(metric, [r.vertices for r in requests], budget)
    for mask, cost, edges in table.entries():
        satisfied = [i for i in range(len(requests)) if mask >> i & 1]
        yield cost, satisfied, (lambda e=edges: (e, (), {}))


def _facility_entries(metric, requests, keep, budget):
    """
    For each facility subset, serves the clients chosen by ``keep``: either
    every client cheaper than the penalty, or the cheapest ones.
    """
    clients = [request.vertex for request in requests]
    _check('requests', len(clients), budget.max_terminals)
    for opened, opening, columns in _facility_subsets(
            metric, clients, None, budget):
        if not opened:
            yield opening, [], (lambda: ([], (), {}))
            continue
        nearest = columns.min(axis=1)
        served = keep(nearest)
        connection = sum(nearest[i] for i in served)
        choice = columns.argmin(axis=1)
        assignment = dict((i, opened[int(choice[i])]) for i in served)
        yield (opening + connection, sorted(served),
               (lambda o=opened, a=assignment: ([], tuple(o), a)))


def _entries(problem, metric, requests, root, keep, budget):
    if problem == STEINER_TREE:
        return _tree_entries(metric, requests, root, budget)
    if problem == STEINER_FOREST:
        return _forest_entries(metric, requests, budget)
    if problem == FACILITY_LOCATION:
        return _facility_entries(metric, requests, keep, budget)
    raise OnlineGraphArgumentError(104, problem, 'problem',
                                   (STEINER_TREE, STEINER_FOREST,
                                    FACILITY_LOCATION))


def exact_prize_collecting(problem, requests, metric, penalty, root=None,
                           budget=DEFAULT_BUDGET):
    """
    Exact optimum of the prize-collecting problem with uniform penalty.

    :returns: ``(objective, edges, facilities, assignment, satisfied)``.
    """
    metric = _as_metric(metric)
    requests = list(requests)
    n = len(requests)

    def keep(nearest):
        return [i for i in range(n) if not is_infinite(nearest[i]) and
                nearest[i] <= penalty]

    best = None
    for cost, satisfied, solution in _entries(problem, metric, requests, root,
                                              keep, budget):
        unsatisfied = n - len(satisfied)
        objective = cost + (penalty * unsatisfied if unsatisfied else 0)
        if best is None or objective < best[0]:
            best = (objective, satisfied, solution)
    objective, satisfied, solution = best
    edges, facilities, assignment = solution()
    return objective, edges, facilities, assignment, satisfied


def exact_min_cost_with_outliers(problem, requests, metric, u, root=None,
                                 budget=DEFAULT_BUDGET):
    """
    Cheapest solution leaving at most ``u`` requests unsatisfied.

    :returns: The optimal cost (``INFINITY`` if no such solution exists).
    """
    metric = _as_metric(metric)
    requests = list(requests)
    n = len(requests)

    def keep(nearest):
        order = sorted(range(n), key=lambda i: (nearest[i], i))
        return [i for i in order[:max(n - u, 0)]]

    best = INFINITY
    for cost, satisfied, _ in _entries(problem, metric, requests, root,
                                       keep, budget):
        if n - len(satisfied) <= u and cost < best:
            best = cost
    return best


def exact_optimum(problem, requests, metric, root=None,
                  budget=DEFAULT_BUDGET):
    """
    Offline optimum serving every request.
    """
    return exact_min_cost_with_outliers(problem, requests, metric, 0, root,
                                        budget)


# Matching frontier


def exact_matching_frontier(requests, predictions, metric, kind=None,
                            budget=DEFAULT_BUDGET):
    """
    Pareto frontier by enumerating every partial bijection.
    """
    requests = list(requests)
    predictions = list(predictions)
    _check('requests', len(requests), budget.max_frontier_side)
    _check('predictions', len(predictions), budget.max_frontier_side)
    costs = matching_cost_matrix(kind, requests, predictions, metric)
    total = len(requests) + len(predictions)
    candidates = []
    for k in range(min(len(requests), len(predictions)) + 1):
        best = None
        for rows in combinations(range(len(requests)), k):
            for cols in permutations(range(len(predictions)), k):
                cost = sum(costs[r][c] for r, c in zip(rows, cols))
                if is_infinite(cost):
                    continue
                if best is None or cost < best[0]:
                    best = (cost, list(zip(rows, cols)))
        if best is not None:
            candidates.append(OutlierError(total - 2 * k, best[0], best[1]))
    return ParetoFrontier.from_candidates(candidates)
