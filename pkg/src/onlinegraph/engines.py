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
Subset-competitive online engines.

Every engine accepts one request at a time, augments its solution so that the
request becomes feasible, and logs the cost charged for it.  The charged cost
is the actual cost for the Steiner engines and the amortized cost for the
facility location engine.
"""
import logging
from collections import Counter

import networkx as nx

from ._common_util import (
    CLIENT,
    FACILITY_LOCATION,
    INFINITY,
    STEINER_FOREST,
    STEINER_TREE,
    TERMINAL,
    TERMINAL_PAIR,
    floor_log2,
    is_infinite,
    positive_part,
    power_of_two)
from .error import EngineException, GraphException, OnlineGraphArgumentError
from .result import ChargeLog, ServeRecord

LOG = logging.getLogger(__name__)


class OnlineEngine(object):
    """
    Base class of the online engines.

    :param Metric metric: The metric the engine works in.  Its overlay is
        owned by the engine from now on.
    """
    problem = None
    request_kind = None

    def __init__(self, metric):
        self._metric = metric
        self._log = ChargeLog()
        self._edges = set()
        self._facilities = []

    @property
    def metric(self):
        return self._metric

    @property
    def log(self):
        """
        The :class:`~onlinegraph.result.ChargeLog` of served requests.
        """
        return self._log

    @property
    def bought_edges(self):
        return frozenset(self._edges)

    @property
    def opened_facilities(self):
        return tuple(self._facilities)

    @property
    def total_charged(self):
        return self._log.total()

    @property
    def total_actual(self):
        return self._log.total(field='actual_cost')

    def solution_vertices(self):
        """
        Vertices touched by the engine's solution.
        """
        graph = self._metric.graph
        vertices = set(self._facilities)
        for eid in self._edges:
            edge = graph.edge(eid)
            vertices.update((edge.u, edge.v))
        return vertices

    def serve(self, request):
        """
        Serves one request.

        :param Request request: A request of the engine's kind.
        :returns: The :class:`~onlinegraph.result.ServeRecord` logged for it.
        """
        if request.kind != self.request_kind:
            raise EngineException(102, request.kind, type(self).__name__)
        for vertex in request.vertices:
            self._metric.graph.check_vertex(vertex)
        index = request.arrival_index
        if index is None:
            index = len(self._log)
        record = ServeRecord(index, request, *self._serve(request))
        self._log.append(record)
        return record

    def _serve(self, request):
        raise NotImplementedError()

    def _buy_edges(self, eids):
        self._edges.update(eids)


class GreedySteinerTreeEngine(OnlineEngine):
    """
    Greedy online Steiner tree: every terminal buys a shortest path to the
    closest of the root and the earlier terminals of this engine instance.

    :param Metric metric: Metric with the engine's overlay.
    :param root: The root vertex.
    """
    problem = STEINER_TREE
    request_kind = TERMINAL

    def __init__(self, metric, root):
        super(GreedySteinerTreeEngine, self).__init__(metric)
        metric.graph.check_vertex(root)
        self._root = root
        self._terminals = set()

    @property
    def root(self):
        return self._root

    def _serve(self, request):
        vertex = request.vertex
        cost, target = self._metric.nearest(
            vertex, self._terminals | {self._root})
        if is_infinite(cost):
            raise GraphException(102, vertex, self._root)
        _, path = self._metric.shortest_path(vertex, target)
        self._terminals.add(vertex)
        self._buy_edges(path)
        return cost, cost, tuple(path), (), None


class BallSystem(object):
    """
    Levels of pairwise disjoint open balls and their meta-graphs.

    Level j holds balls of radius ``2**(j-2)``; meta-graph ``M_j`` has one
    node per ball and one edge per pair that was routed through two balls.
    Levels are stored sparsely and j may be negative.
    """
    def __init__(self):
        self._balls = {}
        self._meta = {}
        self._pairs = Counter()

    @staticmethod
    def radius(level):
        return power_of_two(level - 2)

    @property
    def levels(self):
        return sorted(self._balls)

    def centers(self, level):
        return list(self._balls.get(level, ()))

    def meta_graph(self, level):
        return self._meta.setdefault(level, nx.MultiGraph())

    def pair_count(self, level):
        """
        The number of pairs n_j assigned to the level.
        """
        return self._pairs[level]

    def count_pair(self, level):
        self._pairs[level] += 1

    def intersecting(self, metric, level, vertex):
        """
        Centers of level balls intersecting ``B(vertex, radius(level))``,
        sorted by vertex id.
        """
        radius = self.radius(level)
        return sorted(center for center in self._balls.get(level, ())
                      if metric.ball_intersects(vertex, radius, center,
                                                radius))

    def add_ball(self, level, center):
        self._balls.setdefault(level, []).append(center)
        self.meta_graph(level).add_node(center)

    def add_meta_edge(self, level, first, second):
        self.meta_graph(level).add_edge(first, second)

    def is_disjoint(self, metric):
        for level, centers in self._balls.items():
            radius = self.radius(level)
            for i, first in enumerate(centers):
                for second in centers[i + 1:]:
                    if metric.ball_intersects(first, radius, second, radius):
                        return False
        return True

    def is_acyclic(self):
        return all(nx.is_forest(graph) for graph in self._meta.values()
                   if graph.number_of_nodes())

    def counting_holds(self):
        """
        True iff ``n_j <= 2 |D_j|`` on every level.
        """
        return all(self._pairs[level] <= 2 * len(self._balls.get(level, ()))
                   for level in self._pairs)


class BermanCoulstonEngine(OnlineEngine):
    """
    Berman-Coulston online Steiner forest.

    Each pair buys a shortest path in the metric where previously bought
    edges are free.  A paid connection of cost c gets level
    ``floor(log2 c)``; the pair either places a new ball at one of its
    terminals or, when both terminals' balls collide with existing balls,
    connects each terminal to the center of the colliding ball with smallest
    vertex id.  Requests served at cost 0 skip the ball bookkeeping.
    """
    problem = STEINER_FOREST
    request_kind = TERMINAL_PAIR

    def __init__(self, metric):
        super(BermanCoulstonEngine, self).__init__(metric)
        self._free = metric.overlay.copy()
        self._free_metric = metric.with_overlay(self._free)
        self._balls = BallSystem()

    @property
    def balls(self):
        return self._balls

    def _buy_edges(self, eids):
        super(BermanCoulstonEngine, self)._buy_edges(eids)
        self._free.zero_edges(eids)

    def _serve(self, request):
        s, t = request.vertices
        cost, path = self._free_metric.shortest_path(s, t)
        if is_infinite(cost):
            raise GraphException(102, t, s)
        self._buy_edges(path)
        bought = list(path)
        charged = cost
        if cost > 0:
            level = floor_log2(cost)
            self._balls.count_pair(level)
            hits = dict((v, self._balls.intersecting(self._metric, level, v))
                        for v in (s, t))
            lonely = [v for v in (s, t) if not hits[v]]
            if lonely:
                self._balls.add_ball(level, lonely[0])
            else:
                for vertex in (s, t):
                    extra, link = self._free_metric.shortest_path(
                        hits[vertex][0], vertex)
                    self._buy_edges(link)
                    bought.extend(link)
                    charged += extra
                self._balls.add_meta_edge(level, hits[s][0], hits[t][0])
            LOG.debug('pair %s-%s at level %d charged %s', s, t, level,
                      charged)
        return charged, charged, tuple(bought), (), None

    def structure_holds(self):
        """
        True iff balls within each level are disjoint and every meta-graph is
        acyclic.
        """
        return self._balls.is_disjoint(self._metric) and \
            self._balls.is_acyclic()


class FotakisEngine(OnlineEngine):
    """
    Fotakis' potential-based online facility location.

    Each client raises the potential of every candidate facility v by
    ``(d(F, r) - d(v, r))+``; the candidate maximizing ``p(v) - f_v`` (smallest
    id on ties) opens when ``p(v) > f_v``, after which potentials are
    recomputed from the live clients.  The first client of a component with
    no open facility opens the facility minimizing ``f_v + d(v, r)``.  The
    charged cost is the amortized cost
    ``2 min(d(F, r), min_v(f_v - p(v) + d(v, r)))`` with potentials taken
    before the update.
    """
    problem = FACILITY_LOCATION
    request_kind = CLIENT

    def __init__(self, metric):
        super(FotakisEngine, self).__init__(metric)
        if not metric.graph.has_facilities:
            raise EngineException(101)
        self._candidates = sorted(metric.graph.facility_costs)
        self._potential = dict((v, 0) for v in self._candidates)
        self._clients = Counter()
        self._actions = []

    @property
    def potentials(self):
        return dict(self._potential)

    @property
    def actions(self):
        """
        ``('open', v)`` and ``('connect', client vertex, facility)`` tuples in
        execution order.
        """
        return list(self._actions)

    def _cost(self, vertex):
        return self._metric.facility_cost(vertex)

    def _nearest_open(self, dist):
        best = (INFINITY, None)
        for facility in sorted(self._facilities):
            d = dist.get(facility, INFINITY)
            if d < best[0]:
                best = (d, facility)
        return best

    def _open(self, vertex):
        self._facilities.append(vertex)
        self._actions.append(('open', vertex))
        LOG.debug('opened facility at %s', vertex)

    def adopt_facilities(self, vertices):
        """
        Treats facilities opened outside the engine as open, without charging
        for them.
        """
        for vertex in sorted(set(vertices) - set(self._facilities)):
            self._facilities.append(vertex)
            self._actions.append(('adopt', vertex))
        if self._clients:
            self._recompute_potentials()

    def _recompute_potentials(self):
        opened = {}
        for client in self._clients:
            dist = self._metric.distances_from(client)
            opened[client] = (self._nearest_open(dist)[0], dist)
        for vertex in self._candidates:
            self._potential[vertex] = sum(
                count * positive_part(
                    opened[client][0] -
                    opened[client][1].get(vertex, INFINITY))
                for client, count in self._clients.items())

    def _serve(self, request):
        client = request.vertex
        dist = self._metric.distances_from(client)
        d_open = self._nearest_open(dist)[0]
        alpha = 2 * min([d_open] + [
            self._cost(v) - self._potential[v] + dist.get(v, INFINITY)
            for v in self._candidates])
        self._clients[client] += 1
        opened = None
        if is_infinite(d_open):
            reachable = [v for v in self._candidates if v in dist]
            if not reachable:
                raise EngineException(103, client)
            opened = min(reachable,
                         key=lambda v: (self._cost(v) + dist[v], v))
        else:
            for vertex in self._candidates:
                self._potential[vertex] += positive_part(
                    d_open - dist.get(vertex, INFINITY))
            best = max(self._candidates, key=lambda v: (
                self._potential[v] - self._cost(v), -v))
            if self._potential[best] > self._cost(best):
                opened = best
        opening = 0
        if opened is not None:
            self._open(opened)
            opening = self._cost(opened)
            self._recompute_potentials()
        connection, facility = self._nearest_open(dist)
        self._actions.append(('connect', client, facility))
        return (opening + connection, alpha, (),
                (opened,) if opened is not None else (), facility)

    def potentials_stable(self):
        """
        True iff ``p(v) <= f_v`` for every candidate facility.
        """
        return all(self._potential[v] <= self._cost(v)
                   for v in self._candidates)


ENGINES = {
    STEINER_TREE: GreedySteinerTreeEngine,
    STEINER_FOREST: BermanCoulstonEngine,
    FACILITY_LOCATION: FotakisEngine,
}


def make_engine(problem, metric, root=None):
    """
    Builds the engine for a problem kind.

    :param str problem: One of the problem kinds.
    :param Metric metric: Metric whose overlay the engine will own.
    :param root: Root vertex, required for Steiner tree.
    """
    if problem not in ENGINES:
        raise EngineException(104, problem)
    if problem == STEINER_TREE:
        return GreedySteinerTreeEngine(
            metric, root if root is not None else metric.graph.root)
    return ENGINES[problem](metric)


def engine_total_charged(engine, subset=None):
    """
    Sum of per-request charged costs over a subset of arrival indices.

    :param OnlineEngine engine: A running or finished engine.
    :param subset: Iterable of arrival indices of served requests.  ``None``
        selects every served request.
    """
    if subset is not None:
        subset = list(subset)
        served = set(engine.log.arrival_indices)
        for index in subset:
            if index not in served:
                raise OnlineGraphArgumentError(108, index)
    return engine.log.total(subset)
