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
Graph representation and shortest-path queries shared by every algorithm.

A :class:`WeightedGraph` is immutable once built.  A :class:`Metric` is a view
of a graph through a :class:`ZeroCostOverlay` (elements bought by a framework
cost nothing) and a priority floor (edges of lower priority are invisible).
"""
import json
import logging
from collections import namedtuple

import networkx as nx
import numpy as np

from ._common_util import INFINITY, exact, is_infinite
from .error import GraphException, InstanceFormatException

LOG = logging.getLogger(__name__)

Edge = namedtuple('Edge', ['eid', 'u', 'v', 'cost', 'priority'])


class WeightedGraph(object):
    """
    Undirected multigraph with nonnegative scaled-integer edge costs, edge
    priorities, and optional per-vertex facility costs and capacities.

    :param vertices: Iterable of integer vertex ids.
    :param edges: Iterable of ``(u, v, cost)`` or ``(u, v, cost, priority)``.
    :param dict facility_costs: Optional map vertex -> opening cost.  Vertices
        missing from the map cannot host a facility.
    :param dict capacities: Optional map vertex -> positive integer capacity.
    :param int scale_denominator: All costs are integers in units of
        ``1 / scale_denominator``.
    :param root: Optional designated root vertex.
    """
    def __init__(self, vertices, edges=(), facility_costs=None,
                 capacities=None, scale_denominator=1, root=None):
        if (isinstance(scale_denominator, bool) or
                not isinstance(scale_denominator, int) or
                scale_denominator < 1):
            raise GraphException(108, scale_denominator)
        self._scale = scale_denominator
        self._nx = nx.MultiGraph()
        self._vertices = []
        for vertex in vertices:
            if vertex in self._nx:
                raise GraphException(109, vertex)
            self._nx.add_node(vertex)
            self._vertices.append(vertex)
        self._edges = []
        for edge in edges:
            self._add_edge(*edge)
        self._facility_costs = {}
        for vertex, cost in (facility_costs or {}).items():
            self.check_vertex(vertex)
            cost = exact(cost)
            if cost < 0:
                raise GraphException(106, vertex, cost)
            if not is_infinite(cost):
                self._facility_costs[vertex] = cost
        self._capacities = {}
        for vertex, capacity in (capacities or {}).items():
            self.check_vertex(vertex)
            if (isinstance(capacity, bool) or not isinstance(capacity, int)
                    or capacity < 1):
                raise GraphException(107, vertex, capacity)
            self._capacities[vertex] = capacity
        if root is not None:
            self.check_vertex(root)
        self._root = root

    def _add_edge(self, u, v, cost, priority=1):
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise GraphException(103, u)
        cost = exact(cost)
        if is_infinite(cost) or cost < 0:
            raise GraphException(104, u, v, cost)
        if isinstance(priority, bool) or not isinstance(priority, int) or \
                priority < 1:
            raise GraphException(105, u, v, priority)
        eid = len(self._edges)
        self._edges.append(Edge(eid, u, v, cost, priority))
        self._nx.add_edge(u, v, key=eid, cost=cost, priority=priority)

    @property
    def vertices(self):
        """
        :returns: Tuple of vertex ids in insertion order.
        """
        return tuple(self._vertices)

    @property
    def edges(self):
        """
        :returns: Tuple of :class:`Edge` records indexed by edge id.
        """
        return tuple(self._edges)

    @property
    def scale_denominator(self):
        return self._scale

    @property
    def root(self):
        return self._root

    @property
    def nx_graph(self):
        """
        The underlying ``networkx.MultiGraph``.  Callers must not mutate it.
        """
        return self._nx

    @property
    def facility_costs(self):
        return dict(self._facility_costs)

    @property
    def capacities(self):
        return dict(self._capacities)

    @property
    def has_facilities(self):
        return bool(self._facility_costs)

    @property
    def max_priority(self):
        """
        The number of priority classes b (1 for a graph without edges).
        """
        return max([edge.priority for edge in self._edges] or [1])

    def edge(self, eid):
        try:
            return self._edges[eid]
        except (IndexError, TypeError):
            raise GraphException(110, eid)

    def facility_cost(self, vertex):
        """
        :returns: The opening cost at vertex, or ``INFINITY`` if the vertex
            cannot host a facility.
        """
        return self._facility_costs.get(vertex, INFINITY)

    def capacity(self, vertex):
        return self._capacities.get(vertex)

    def has_vertex(self, vertex):
        try:
            return vertex in self._nx
        except TypeError:
            return False

    def check_vertex(self, vertex):
        """
        Raises a GraphException if vertex is not part of the graph.
        """
        if not self.has_vertex(vertex):
            raise GraphException(101, vertex)

    def total_edge_cost(self, priority_floor=1):
        return sum(edge.cost for edge in self._edges
                   if edge.priority >= priority_floor)

    def check_connected(self, root, targets, priority_floor=1):
        """
        Ensures every target vertex is reachable from root using edges of
        priority at least ``priority_floor``.

        :raises GraphException: code 102 naming the first unreachable target.
        """
        reachable = Metric(self, priority_floor=priority_floor)\
            .distances_from(root)
        for target in targets:
            self.check_vertex(target)
            if target not in reachable:
                raise GraphException(102, target, root)

    def to_json(self):
        """
        :returns: A JSON-serializable dict.  ``from_json(g.to_json())``
            rebuilds an identical graph.
        """
        data = {
            'vertices': list(self._vertices),
            'edges': [[e.u, e.v, e.cost, e.priority] for e in self._edges],
            'facility_costs': {
                str(v): c for v, c in sorted(self._facility_costs.items())},
            'capacities': {
                str(v): c for v, c in sorted(self._capacities.items())},
            'scale_denominator': self._scale,
        }
        if self._root is not None:
            data['root'] = self._root
        return data

    @classmethod
    def from_json(cls, data, source='<instance>'):
        """
        Builds a graph from the dict produced by :meth:`to_json`.
        """
        if not isinstance(data, dict):
            raise InstanceFormatException(101, source, 'expected an object')
        for field in ('vertices', 'edges'):
            if field not in data:
                raise InstanceFormatException(102, field, source)
        try:
            return cls(
                data['vertices'],
                [tuple(edge) for edge in data['edges']],
                facility_costs={int(v): c for v, c in
                                data.get('facility_costs', {}).items()},
                capacities={int(v): c for v, c in
                            data.get('capacities', {}).items()},
                scale_denominator=data.get('scale_denominator', 1),
                root=data.get('root'))
        except (TypeError, ValueError) as ex:
            raise InstanceFormatException(101, source, ex)

    @classmethod
    def load(cls, path):
        with open(path) as infile:
            try:
                data = json.load(infile)
            except ValueError as ex:
                raise InstanceFormatException(101, path, ex)
        return cls.from_json(data, path)

    def dump(self, path):
        with open(path, 'w') as outfile:
            json.dump(self.to_json(), outfile, indent=2, sort_keys=True)
            outfile.write('\n')


class ZeroCostOverlay(object):
    """
    The set of elements whose cost is treated as zero.  An overlay only grows;
    every growth bumps :attr:`version` so that metrics drop cached distances.
    """
    def __init__(self, zeroed_edges=(), zeroed_facilities=()):
        self._edges = set(zeroed_edges)
        self._facilities = set(zeroed_facilities)
        self._version = 0

    @property
    def zeroed_edges(self):
        return frozenset(self._edges)

    @property
    def zeroed_facilities(self):
        return frozenset(self._facilities)

    @property
    def version(self):
        return self._version

    def zero_edges(self, eids):
        new = set(eids) - self._edges
        if new:
            self._edges.update(new)
            self._version += 1

    def zero_facilities(self, vertices):
        new = set(vertices) - self._facilities
        if new:
            self._facilities.update(new)
            self._version += 1

    def is_edge_zeroed(self, eid):
        return eid in self._edges

    def is_facility_zeroed(self, vertex):
        return vertex in self._facilities

    def copy(self):
        return ZeroCostOverlay(self._edges, self._facilities)


class Metric(object):
    """
    Shortest-path metric of a graph under an overlay and a priority floor.

    Read-only queries may be issued from several threads; the overlay belongs
    to exactly one running algorithm instance.

    :param WeightedGraph graph: Source graph.
    :param ZeroCostOverlay overlay: Optional overlay.  Defaults to an empty
        one.
    :param int priority_floor: Edges with priority below it are excluded.
    """
    def __init__(self, graph, overlay=None, priority_floor=1):
        self._graph = graph
        self._overlay = overlay if overlay is not None else ZeroCostOverlay()
        self._floor = priority_floor
        self._cache = {}
        self._cache_version = self._overlay.version

    @property
    def graph(self):
        return self._graph

    @property
    def overlay(self):
        return self._overlay

    @property
    def priority_floor(self):
        return self._floor

    def with_overlay(self, overlay):
        """
        :returns: A new Metric on the same graph and floor with ``overlay``.
        """
        return Metric(self._graph, overlay, self._floor)

    def without_overlay(self):
        return Metric(self._graph, None, self._floor)

    def edge_cost(self, eid):
        """
        Effective edge cost: 0 when zeroed, ``INFINITY`` below the floor.
        """
        edge = self._graph.edge(eid)
        if edge.priority < self._floor:
            return INFINITY
        if self._overlay.is_edge_zeroed(eid):
            return 0
        return edge.cost

    def facility_cost(self, vertex):
        """
        Effective opening cost: 0 when zeroed by the overlay.
        """
        cost = self._graph.facility_cost(vertex)
        if not is_infinite(cost) and self._overlay.is_facility_zeroed(vertex):
            return 0
        return cost

    def elements_cost(self, edges=(), facilities=()):
        return (sum(self.edge_cost(eid) for eid in edges) +
                sum(self.facility_cost(v) for v in facilities))

    def _weight(self, u, v, data):
        best = None
        for eid in data:
            cost = self.edge_cost(eid)
            if is_infinite(cost):
                continue
            if best is None or cost < best:
                best = cost
        return best

    def _cheapest_edge(self, u, v):
        best = None
        for eid in sorted(self._graph.nx_graph[u][v]):
            cost = self.edge_cost(eid)
            if is_infinite(cost):
                continue
            if best is None or cost < best[0]:
                best = (cost, eid)
        return best[1]

    def _single_source(self, source):
        if self._cache_version != self._overlay.version:
            self._cache = {}
            self._cache_version = self._overlay.version
        if source not in self._cache:
            self._graph.check_vertex(source)
            self._cache[source] = nx.single_source_dijkstra(
                self._graph.nx_graph, source, weight=self._weight)
        return self._cache[source]

    def distances_from(self, source):
        """
        :returns: Dict of reachable vertex -> distance from source.
            Unreachable vertices are absent.
        """
        return self._single_source(source)[0]

    def distance(self, u, v):
        self._graph.check_vertex(v)
        return self.distances_from(u).get(v, INFINITY)

    def shortest_path(self, u, v):
        """
        Exact least-cost path between u and v.

        :returns: ``(cost, [edge ids])``, or ``(INFINITY, [])`` when v is not
            reachable at this priority floor.
        """
        self._graph.check_vertex(v)
        dist, paths = self._single_source(u)
        if v not in dist:
            return INFINITY, []
        nodes = paths[v]
        eids = [self._cheapest_edge(a, b) for a, b in zip(nodes, nodes[1:])]
        return dist[v], eids

    def ball_intersects(self, c1, r1, c2, r2):
        """
        True iff the open balls ``B(c1, r1)`` and ``B(c2, r2)`` intersect,
        that is ``d(c1, c2) < r1 + r2``.
        """
        return self.distance(c1, c2) < r1 + r2

    def distance_matrix(self, points):
        """
        :returns: A ``numpy`` object array whose entry (i, j) is the exact
            distance between ``points[i]`` and ``points[j]`` (``INFINITY`` if
            disconnected).
        """
        points = list(points)
        matrix = np.full((len(points), len(points)), INFINITY, dtype=object)
        for i, p in enumerate(points):
            row = self.distances_from(p)
            for j, q in enumerate(points):
                self._graph.check_vertex(q)
                matrix[i, j] = row.get(q, INFINITY)
        return matrix

    def nearest(self, source, targets):
        """
        Nearest target to source, ties broken by smallest vertex id.

        :returns: ``(distance, target)`` or ``(INFINITY, None)``.
        """
        dist = self.distances_from(source)
        best = (INFINITY, None)
        for target in sorted(set(targets)):
            d = dist.get(target, INFINITY)
            if d < best[0]:
                best = (d, target)
        return best


def shortest_path(metric, u, v):
    """
    Module level wrapper for :meth:`Metric.shortest_path`.
    """
    return metric.shortest_path(u, v)


def ball_intersects(metric, c1, r1, c2, r2):
    """
    Module level wrapper for :meth:`Metric.ball_intersects`.
    """
    return metric.ball_intersects(c1, r1, c2, r2)


def distance_matrix(metric, points):
    """
    Module level wrapper for :meth:`Metric.distance_matrix`.
    """
    return metric.distance_matrix(points)
