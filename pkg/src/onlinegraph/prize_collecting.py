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
Prize-collecting solvers with a declared approximation factor.

Every solver receives a :class:`PenaltyInstance` (requests with one uniform
penalty) and returns a :class:`PCSolution` whose objective is the element
cost plus the penalty of every unsatisfied request.  Solvers work in the
original metric; a zero-cost overlay is never applied here.

* :func:`pc_steiner_tree` - rooted Goemans-Williamson moat growing with
  penalty-capped moats and dead-set pruning (gamma 2).
* :func:`pc_steiner_forest` - LP relaxation with threshold 1/3 followed by
  moat-growing Steiner forest on the kept pairs (gamma 3).
* :func:`pc_facility_location` - Jain-Vazirani dual ascent where each client
  stops growing at the penalty (gamma 3).
* :func:`pc_exact` - enumeration oracle (gamma 1).
"""
import logging
from collections import namedtuple
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from ._common_util import (
    DEFAULT_GAMMA,
    FACILITY_LOCATION,
    INFINITY,
    REQUEST_KIND_FOR_PROBLEM,
    STEINER_FOREST,
    STEINER_TREE,
    exact,
    is_infinite,
    positive_part)
from .error import SolverException
from .oracles import DEFAULT_BUDGET, exact_prize_collecting

LOG = logging.getLogger(__name__)

_THRESHOLD = 1.0 / 3.0
_LP_TOLERANCE = 1e-9


class PenaltyInstance(object):
    """
    Requests of one kind sharing the uniform penalty ``penalty``.

    :param str problem: Problem kind.
    :param list requests: The requests (duplicates allowed).
    :param penalty: Nonnegative int, Fraction or ``INFINITY``.
    :param Metric metric: Instance metric.  Its overlay is dropped.
    :param root: Root vertex for Steiner tree.  Defaults to the graph root.
    """
    def __init__(self, problem, requests, penalty, metric, root=None):
        penalty = exact(penalty)
        if penalty < 0:
            raise SolverException(101, penalty)
        self.problem = problem
        self.requests = list(requests)
        self.penalty = penalty
        self.metric = metric.without_overlay()
        self.root = root if root is not None else metric.graph.root
        if problem == STEINER_TREE and self.root is None:
            raise SolverException(104)
        if problem == FACILITY_LOCATION and \
                not self.metric.graph.has_facilities:
            raise SolverException(106)
        kind = REQUEST_KIND_FOR_PROBLEM[problem]
        for request in self.requests:
            if request.kind != kind:
                raise SolverException(107, request.kind, problem)

    def penalty_for(self, count):
        """
        Total penalty of ``count`` unsatisfied requests (0 when count is 0,
        even for an infinite penalty).
        """
        return self.penalty * count if count else 0


PCSolution = namedtuple('PCSolution', [
    'edges',
    'facilities',
    'assignment',
    'satisfied',
    'unsatisfied_count',
    'element_cost',
    'objective',
    'declared_gamma',
])
PCSolution.__doc__ = """
A prize-collecting solution.  ``assignment`` maps the position of each served
client to its facility; ``satisfied`` holds request positions;
``element_cost`` is c(S) and ``objective`` adds the penalties.
"""


def evaluate(instance, edges=(), facilities=(), assignment=None):
    """
    Determines which requests a set of elements satisfies and prices it.

    :returns: ``(satisfied positions, element cost, objective)``.
    """
    metric = instance.metric
    requests = instance.requests
    if instance.problem == FACILITY_LOCATION:
        assignment = dict(assignment or {})
        satisfied = sorted(i for i, facility in assignment.items()
                           if facility in facilities)
        cost = sum(metric.facility_cost(v) for v in facilities) + sum(
            metric.distance(requests[i].vertex, assignment[i])
            for i in satisfied)
    else:
        components = nx.Graph()
        components.add_nodes_from(metric.graph.vertices)
        for eid in edges:
            edge = metric.graph.edge(eid)
            components.add_edge(edge.u, edge.v)
        cost = sum(metric.edge_cost(eid) for eid in set(edges))
        if instance.problem == STEINER_TREE:
            satisfied = [i for i, request in enumerate(requests)
                         if nx.has_path(components, request.vertex,
                                        instance.root)]
        else:
            satisfied = [i for i, request in enumerate(requests)
                         if nx.has_path(components, *request.vertices)]
    unsatisfied = len(requests) - len(satisfied)
    return satisfied, cost, cost + instance.penalty_for(unsatisfied)


def _solution(instance, gamma, edges=(), facilities=(), assignment=None):
    satisfied, cost, objective = evaluate(instance, edges, facilities,
                                          assignment)
    return PCSolution(frozenset(edges), tuple(sorted(facilities)),
                      dict(assignment or {}), frozenset(satisfied),
                      len(instance.requests) - len(satisfied), cost,
                      objective, gamma)


def _better(first, second):
    return first if first.objective <= second.objective else second


class _MoatGrowth(object):
    """
    Primal-dual moat growing over the graph.

    Every component grows its moat at unit rate while ``wants(members)``
    holds and its moat is below the sum of its vertices' capacities.  An
    edge joins the forest when the moats on both sides pay for it.  A
    component that stops because its capacity is exhausted is recorded as
    dead.
    """
    def __init__(self, metric, capacity, wants):
        self._edges = [(edge.eid, edge.u, edge.v, metric.edge_cost(edge.eid))
                       for edge in metric.graph.edges
                       if edge.priority >= metric.priority_floor]
        self._load = dict((eid, Fraction(0)) for eid, _, _, _ in self._edges)
        self._wants = wants
        self._parent = {}
        self._members = {}
        self._moat = {}
        self._capacity = {}
        self._active = {}
        self.forest = []
        self.dead = []
        for vertex in metric.graph.vertices:
            self._parent[vertex] = vertex
            self._members[vertex] = {vertex}
            self._moat[vertex] = Fraction(0)
            self._capacity[vertex] = capacity.get(vertex, 0)
            self._classify(vertex)

    def _find(self, vertex):
        root = vertex
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[vertex] != root:
            self._parent[vertex], vertex = root, self._parent[vertex]
        return root

    def _classify(self, rep):
        members = self._members[rep]
        if not self._wants(members):
            self._active[rep] = False
        elif self._capacity[rep] - self._moat[rep] > 0:
            self._active[rep] = True
        else:
            self._active[rep] = False
            self.dead.append(frozenset(members))

    def _next_event(self):
        best = None
        for eid, u, v, cost in self._edges:
            cu, cv = self._find(u), self._find(v)
            if cu == cv:
                continue
            rate = self._active[cu] + self._active[cv]
            if rate:
                event = ((cost - self._load[eid]) / rate, 0, eid)
                if best is None or event < best:
                    best = event
        for rep, active in self._active.items():
            if active and not is_infinite(self._capacity[rep]):
                event = (self._capacity[rep] - self._moat[rep], 1, rep)
                if best is None or event < best:
                    best = event
        return best

    def _advance(self, delta):
        for eid, u, v, _ in self._edges:
            cu, cv = self._find(u), self._find(v)
            if cu != cv:
                self._load[eid] += delta * (self._active[cu] +
                                            self._active[cv])
        for rep, active in self._active.items():
            if active:
                self._moat[rep] += delta

    def _merge(self, eid, u, v):
        keep, gone = sorted((self._find(u), self._find(v)))
        self._parent[gone] = keep
        self._members[keep] |= self._members.pop(gone)
        self._moat[keep] += self._moat.pop(gone)
        self._capacity[keep] += self._capacity.pop(gone)
        self._active.pop(gone)
        self.forest.append(eid)
        self._classify(keep)

    def run(self):
        endpoints = dict((eid, (u, v)) for eid, u, v, _ in self._edges)
        while any(self._active.values()):
            event = self._next_event()
            if event is None:
                stuck = min(rep for rep, active in self._active.items()
                            if active)
                raise SolverException(102, stuck)
            delta, kind, key = event
            if delta > 0:
                self._advance(delta)
            if kind == 0:
                self._merge(key, *endpoints[key])
            else:
                self._active[key] = False
                self.dead.append(frozenset(self._members[key]))
        return self


def _root_tree(metric, forest, root):
    graph = nx.MultiGraph()
    graph.add_node(root)
    for eid in forest:
        edge = metric.graph.edge(eid)
        graph.add_edge(edge.u, edge.v, key=eid)
    reach = nx.node_connected_component(graph, root)
    return set(key for u, v, key in graph.edges(keys=True) if u in reach)


def _prune_dead_sets(metric, tree, dead, root):
    ends = dict((eid, (metric.graph.edge(eid).u, metric.graph.edge(eid).v))
                for eid in tree)
    changed = True
    while changed:
        changed = False
        for members in reversed(dead):
            if root in members:
                continue
            touching = [eid for eid in tree
                        if ends[eid][0] in members or ends[eid][1] in members]
            crossing = [eid for eid in touching
                        if (ends[eid][0] in members) !=
                        (ends[eid][1] in members)]
            if touching and len(crossing) == 1:
                tree.difference_update(touching)
                changed = True
    return tree


def pc_steiner_tree(instance):
    """
    Rooted prize-collecting Steiner tree by moat growing.  A component stops
    growing when its moat pays the penalties of its terminals; the component
    of the root never grows.  The root tree is then pruned of every dead set
    hanging on a single edge.

    :param PenaltyInstance instance: Terminal requests and root.
    :returns: A :class:`PCSolution` with ``declared_gamma`` 2.
    """
    gamma = DEFAULT_GAMMA[STEINER_TREE]
    empty = _solution(instance, gamma)
    if not instance.requests or instance.penalty == 0:
        return empty
    capacity = {}
    for request in instance.requests:
        capacity[request.vertex] = capacity.get(request.vertex, 0) + \
            instance.penalty
    root = instance.root
    growth = _MoatGrowth(instance.metric, capacity,
                         lambda members: root not in members).run()
    tree = _root_tree(instance.metric, growth.forest, root)
    tree = _prune_dead_sets(instance.metric, tree, growth.dead, root)
    return _better(_solution(instance, gamma, tree), empty)


def _moat_forest(metric, pairs):
    """
    Moat-growing Steiner forest connecting every pair, pruned to the union of
    the forest paths between pair endpoints.
    """
    if not pairs:
        return set()
    growth = _MoatGrowth(
        metric, dict((v, INFINITY) for v in metric.graph.vertices),
        lambda members: any((s in members) != (t in members)
                            for s, t in pairs)).run()
    forest = nx.Graph()
    for eid in growth.forest:
        edge = metric.graph.edge(eid)
        forest.add_edge(edge.u, edge.v, eid=eid)
    kept = set()
    for s, t in pairs:
        path = nx.shortest_path(forest, s, t)
        kept.update(forest[a][b]['eid'] for a, b in zip(path, path[1:]))
    return kept


def _relaxation(metric, pairs, penalty):
    """
    Solves the multicommodity-flow relaxation of prize-collecting Steiner
    forest.

    :returns: The fractional penalty share z of every pair.
    """
    edges = [edge for edge in metric.graph.edges
             if edge.priority >= metric.priority_floor]
    vertices = list(metric.graph.vertices)
    index = dict((v, i) for i, v in enumerate(vertices))
    n_edges, n_pairs, n_arcs = len(edges), len(pairs), 2 * len(edges)
    offset = n_edges + n_pairs
    size = offset + n_pairs * n_arcs
    weights = np.zeros(size)
    weights[:n_edges] = [float(metric.edge_cost(edge.eid)) for edge in edges]
    if not is_infinite(penalty):
        weights[n_edges:offset] = float(penalty)
    eq = sparse.lil_matrix((n_pairs * len(vertices), size))
    eq_rhs = np.zeros(n_pairs * len(vertices))
    ub = sparse.lil_matrix((n_pairs * n_arcs, size))
    for p, (s, t) in enumerate(pairs):
        base = offset + p * n_arcs
        row = p * len(vertices)
        for k, edge in enumerate(edges):
            for a, (tail, head) in enumerate(((edge.u, edge.v),
                                              (edge.v, edge.u))):
                column = base + 2 * k + a
                eq[row + index[tail], column] += 1
                eq[row + index[head], column] -= 1
                ub[p * n_arcs + 2 * k + a, column] = 1
                ub[p * n_arcs + 2 * k + a, k] = -1
        eq[row + index[s], n_edges + p] = 1
        eq[row + index[t], n_edges + p] = -1
        eq_rhs[row + index[s]] = 1
        eq_rhs[row + index[t]] = -1
    z_bound = (0, 0) if is_infinite(penalty) else (0, 1)
    bounds = [(0, 1)] * n_edges + [z_bound] * n_pairs + \
        [(0, None)] * (n_pairs * n_arcs)
    result = linprog(weights, A_ub=ub.tocsr(), b_ub=np.zeros(ub.shape[0]),
                     A_eq=eq.tocsr(), b_eq=eq_rhs, bounds=bounds,
                     method='highs')
    if result.status == 2 and is_infinite(penalty):
        raise SolverException(102, 0)
    if not result.success:
        raise SolverException(103, result.message)
    return result.x[n_edges:offset]


def pc_steiner_forest(instance):
    """
    Prize-collecting Steiner forest.  Solves the flow relaxation, pays the
    penalty of every pair whose fractional penalty share is at least 1/3 and
    connects the remaining pairs by moat growing.

    :param PenaltyInstance instance: Terminal-pair requests.
    :returns: A :class:`PCSolution` with ``declared_gamma`` 3.
    """
    gamma = DEFAULT_GAMMA[STEINER_FOREST]
    empty = _solution(instance, gamma)
    pairs = [request.vertices for request in instance.requests
             if request.vertices[0] != request.vertices[1]]
    if not pairs or instance.penalty == 0:
        return empty
    shares = _relaxation(instance.metric, pairs, instance.penalty)
    kept = [pair for pair, share in zip(pairs, shares)
            if share < _THRESHOLD - _LP_TOLERANCE]
    LOG.debug('forest relaxation keeps %d of %d pairs', len(kept),
              len(pairs))
    edges = _moat_forest(instance.metric, kept)
    return _better(_solution(instance, gamma, edges), empty)


def _payment_time(cost, frozen, distances, now):
    """
    Earliest time >= now at which ``frozen + sum((time - d)+)`` reaches
    ``cost``.
    """
    ordered = sorted(d for d in distances if not is_infinite(d))
    total = 0
    for position, distance in enumerate(ordered):
        total += distance
        count = position + 1
        upper = ordered[count] if count < len(ordered) else INFINITY
        when = Fraction(cost - frozen + total) / count
        if when <= upper:
            return max(when, now, distance)
    return INFINITY


class _DualAscent(object):
    """
    Facility location dual ascent where a client also stops at the penalty.
    """
    def __init__(self, instance):
        metric = instance.metric
        self.penalty = instance.penalty
        self.clients = [request.vertex for request in instance.requests]
        self.facilities = sorted(metric.graph.facility_costs)
        self.cost = dict((v, metric.facility_cost(v))
                         for v in self.facilities)
        self.dist = []
        for client in self.clients:
            row = metric.distances_from(client)
            self.dist.append(dict((v, row.get(v, INFINITY))
                                  for v in self.facilities))
        self.alpha = [None] * len(self.clients)
        self.opened_at = {}

    def _paid(self, facility, now, active):
        return sum(positive_part((now if j in active else self.alpha[j]) -
                                 self.dist[j][facility])
                   for j in range(len(self.clients)))

    def _settle(self, now, active):
        progressed = True
        while progressed:
            progressed = False
            for facility in self.facilities:
                if facility not in self.opened_at and \
                        self._paid(facility, now, active) >= \
                        self.cost[facility]:
                    self.opened_at[facility] = now
                    progressed = True
            for j in sorted(active):
                if now >= self.penalty or any(
                        self.dist[j][facility] <= now
                        for facility in self.opened_at):
                    active.discard(j)
                    self.alpha[j] = now
                    progressed = True

    def _next_time(self, now, active):
        times = [INFINITY]
        if not is_infinite(self.penalty):
            times.append(self.penalty)
        for facility in self.opened_at:
            times.extend(self.dist[j][facility] for j in active
                         if self.dist[j][facility] > now)
        for facility in self.facilities:
            if facility in self.opened_at:
                continue
            frozen = sum(positive_part(self.alpha[j] -
                                       self.dist[j][facility])
                         for j in range(len(self.clients))
                         if j not in active)
            times.append(_payment_time(
                self.cost[facility], frozen,
                [self.dist[j][facility] for j in active], now))
        return min(time for time in times if time > now) \
            if any(time > now for time in times) else INFINITY

    def run(self):
        active = set(range(len(self.clients)))
        now = Fraction(0)
        while True:
            self._settle(now, active)
            if not active:
                return self
            now = self._next_time(now, active)
            if is_infinite(now):
                raise SolverException(102, min(active))

    def independent_openings(self):
        """
        Greedy maximal set of temporarily opened facilities, in opening
        order, no two of which receive a positive contribution from the same
        client.
        """
        order = sorted(self.opened_at, key=lambda v: (self.opened_at[v], v))
        contributors = dict(
            (v, set(j for j in range(len(self.clients))
                    if self.alpha[j] > self.dist[j][v])) for v in order)
        chosen = []
        for facility in order:
            if all(not contributors[facility] & contributors[other]
                   for other in chosen):
                chosen.append(facility)
        return chosen

    def assign(self, opened):
        """
        Connects each client to its nearest opened facility when that costs
        no more than the penalty.
        """
        assignment = {}
        for j in range(len(self.clients)):
            best = min(((self.dist[j][v], v) for v in opened),
                       default=(INFINITY, None))
            if not is_infinite(best[0]) and best[0] <= self.penalty:
                assignment[j] = best[1]
        return assignment


def pc_facility_location(instance):
    """
    Prize-collecting facility location by dual ascent with penalty caps,
    followed by a conflict-free selection of the paid facilities.  Opened
    facilities whose removal lowers the objective are then closed one at a
    time.

    :param PenaltyInstance instance: Client requests.
    :returns: A :class:`PCSolution` with ``declared_gamma`` 3.
    """
    gamma = DEFAULT_GAMMA[FACILITY_LOCATION]
    empty = _solution(instance, gamma)
    if not instance.requests or instance.penalty == 0:
        return empty
    ascent = _DualAscent(instance).run()
    opened = ascent.independent_openings()
    best = _solution(instance, gamma, facilities=opened,
                     assignment=ascent.assign(opened))
    improved = True
    while improved and best.facilities:
        improved = False
        for facility in best.facilities:
            rest = [v for v in best.facilities if v != facility]
            candidate = _solution(instance, gamma, facilities=rest,
                                  assignment=ascent.assign(rest))
            if candidate.objective < best.objective:
                best = candidate
                improved = True
                break
    return _better(best, empty)


def pc_exact(instance, budget=DEFAULT_BUDGET):
    """
    Exact prize-collecting optimum by enumeration.

    :raises OracleBudgetException: When the instance exceeds the budget.
    """
    _, edges, facilities, assignment, _ = exact_prize_collecting(
        instance.problem, instance.requests, instance.metric,
        instance.penalty, instance.root, budget)
    return _solution(instance, 1, edges, facilities, assignment)


PCSolver = namedtuple('PCSolver', ['name', 'solve', 'gamma'])

SOLVERS = {
    (STEINER_TREE, 'approx'): PCSolver('moat-tree', pc_steiner_tree, 2),
    (STEINER_FOREST, 'approx'): PCSolver('lp-forest', pc_steiner_forest, 3),
    (FACILITY_LOCATION, 'approx'): PCSolver('dual-ascent',
                                            pc_facility_location, 3),
    (STEINER_TREE, 'exact'): PCSolver('exact', pc_exact, 1),
    (STEINER_FOREST, 'exact'): PCSolver('exact', pc_exact, 1),
    (FACILITY_LOCATION, 'exact'): PCSolver('exact', pc_exact, 1),
}


def get_solver(problem, name='approx'):
    """
    :returns: The :class:`PCSolver` registered for the problem and name
        (``approx`` or ``exact``).
    """
    try:
        return SOLVERS[(problem, name)]
    except KeyError:
        raise SolverException(105, name)
