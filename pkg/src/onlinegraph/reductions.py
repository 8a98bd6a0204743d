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
Problem reductions that reuse the framework.

Soft-capacitated facility location becomes uncapacitated facility location
on a graph where every vertex ``v`` gets a copy ``v'`` with the opening cost
of ``v`` behind a pendant bridge edge of cost ``f_v / beta_v``.  Priority
Steiner forest runs one Steiner forest framework instance per priority class
on the subgraph of edges of that priority or higher.
"""
import json
import logging
import math
from collections import Counter, namedtuple
from fractions import Fraction

from ._common_util import (
    FACILITY_LOCATION,
    STEINER_FOREST,
    TERMINAL,
    TERMINAL_PAIR,
    exact,
    format_cost,
    is_infinite)
from .demand import Request
from .error import ReductionException
from .framework import run_with_predictions
from .graph import Metric, WeightedGraph
from .outlier import OutlierError, ParetoFrontier, pareto_frontier
from .prize_collecting import get_solver

LOG = logging.getLogger(__name__)


class CapacitatedReduction(object):
    """
    A soft-capacitated instance and its uncapacitated transform.

    All transformed costs are multiplied by :attr:`scale`, the lcm of the
    capacities times the lcm of the cost denominators, so that every edge,
    facility and bridge cost of the transform is an integer.

    :param WeightedGraph original: The capacitated instance.
    """
    def __init__(self, original):
        self.original = original
        for vertex in original.vertices:
            cost = original.facility_cost(vertex)
            capacity = original.capacity(vertex)
            if capacity is not None and capacity < 1:
                raise ReductionException(101, vertex, capacity)
            if is_infinite(cost) or capacity is None:
                raise ReductionException(102, vertex)
        denominators = [Fraction(e.cost).denominator for e in original.edges]
        denominators.extend(Fraction(original.facility_cost(v)).denominator
                            for v in original.vertices)
        self.scale = math.lcm(*[original.capacity(v)
                                for v in original.vertices]) * \
            math.lcm(*denominators)
        first_copy = max(original.vertices, default=-1) + 1
        self.copy_of = dict((v, first_copy + i)
                            for i, v in enumerate(sorted(original.vertices)))
        self.original_of = dict((c, v) for v, c in self.copy_of.items())
        edges = [(e.u, e.v, e.cost * self.scale, e.priority)
                 for e in original.edges]
        self.bridge_edges = {}
        for vertex in sorted(original.vertices):
            self.bridge_edges[vertex] = len(edges)
            edges.append((vertex, self.copy_of[vertex],
                          self.bridge_cost(vertex)))
        self.transformed = WeightedGraph(
            list(original.vertices) + sorted(self.original_of),
            edges,
            facility_costs=dict(
                (self.copy_of[v], original.facility_cost(v) * self.scale)
                for v in original.vertices),
            scale_denominator=original.scale_denominator * self.scale,
            root=original.root)

    def bridge_cost(self, vertex):
        """
        Scaled bridge cost ``f_v * scale / beta_v`` (an exact integer).
        """
        cost = Fraction(self.original.facility_cost(vertex)) * self.scale / \
            self.original.capacity(vertex)
        return exact(cost)

    def preserves_distances(self):
        """
        True iff every distance between original vertices is the original
        distance times :attr:`scale`.
        """
        before = Metric(self.original)
        after = Metric(self.transformed)
        for u in self.original.vertices:
            near, far = before.distances_from(u), after.distances_from(u)
            for v in self.original.vertices:
                old = near.get(v)
                new = far.get(v)
                if old is None or new is None:
                    if old is not new:
                        return False
                elif old * self.scale != new:
                    return False
        return True


def capacitate_reduce(graph):
    """
    Builds the uncapacitated transform of a soft-capacitated instance.

    :param WeightedGraph graph: Instance where every vertex has a facility
        cost and a capacity >= 1.
    :returns: A :class:`CapacitatedReduction`.
    """
    return CapacitatedReduction(graph)


CapacitatedSolution = namedtuple('CapacitatedSolution', [
    'copies',
    'assignment',
    'cost',
    'transformed_cost',
])
CapacitatedSolution.__doc__ = """
Result of replaying a transformed run.  ``copies`` counts opened copies per
original vertex, ``assignment`` lists ``(client, vertex)`` pairs in arrival
order.  Both costs are in the transformed scale.
"""


def _original(reduction, vertex):
    try:
        return reduction.original_of[vertex]
    except KeyError:
        raise ReductionException(106, vertex)


def capacitate_playback(reduction, actions):
    """
    Maps the actions of a facility location run on the transformed graph
    back to the capacitated instance.

    Opening ``v'`` opens a first copy at ``v``.  Each connection to ``v'``
    becomes a connection to ``v``; a further copy opens whenever the current
    ones are full.

    :param CapacitatedReduction reduction: The reduction used for the run.
    :param actions: ``('open', v')``, ``('adopt', v')``,
        ``('partial-open', v')`` and ``('connect', client, v')`` tuples.
    :returns: A :class:`CapacitatedSolution`.
    """
    original = reduction.original
    transformed = Metric(reduction.transformed)
    opened = set()
    clients = Counter()
    copies = Counter()
    assignment = []
    transformed_cost = 0
    cost = 0
    for action in actions:
        name = action[0]
        if name in ('open', 'adopt', 'partial-open'):
            vertex = _original(reduction, action[1])
            if vertex not in opened:
                opened.add(vertex)
                transformed_cost += reduction.transformed.facility_cost(
                    action[1])
                if not copies[vertex]:
                    copies[vertex] = 1
                    cost += original.facility_cost(vertex) * reduction.scale
        elif name == 'connect':
            client, facility = action[1], action[2]
            vertex = _original(reduction, facility)
            transformed_cost += transformed.distance(client, facility)
            clients[vertex] += 1
            needed = -(-clients[vertex] // original.capacity(vertex))
            while copies[vertex] < needed:
                copies[vertex] += 1
                cost += original.facility_cost(vertex) * reduction.scale
            cost += transformed.distance(client, vertex)
            assignment.append((client, vertex))
        else:
            raise ReductionException(105, name)
    return CapacitatedSolution(dict(copies), assignment, cost,
                               transformed_cost)


def capacitated_run(graph, requests, predictions=(), solver=None,
                    gamma=None):
    """
    Runs facility location with predictions on the transform of a
    soft-capacitated instance and replays it on the original.

    :returns: ``(reduction, run report, capacitated solution)``.
    """
    reduction = capacitate_reduce(graph)
    report = run_with_predictions(Metric(reduction.transformed), requests,
                                  predictions, FACILITY_LOCATION,
                                  solver=solver, gamma=gamma)
    return reduction, report, capacitate_playback(reduction, report.actions)


def _as_pair(request, root):
    if request.kind == TERMINAL:
        return Request.pair(root, request.vertex, request.priority,
                            request.arrival_index)
    return request


def split_by_priority(items, classes):
    """
    Routes every item to the list of its priority class.

    :raises ReductionException: When a priority lies outside ``[1..b]``.
    """
    split = dict((j, []) for j in range(1, classes + 1))
    for item in items:
        if item.priority not in split:
            raise ReductionException(103, item.priority, classes)
        split[item.priority].append(item)
    return split


class PriorityReport(object):
    """
    Merged result of the per-class framework instances of a priority run.
    """
    def __init__(self, graph, reports, frontiers):
        self.reports = reports
        self.frontiers = frontiers
        self.summed_cost = sum(report.total_cost
                               for report in reports.values())
        edges = set()
        for report in reports.values():
            edges.update(report.solution_edges)
        self.solution_edges = frozenset(edges)
        self.deduplicated_cost = Metric(graph).elements_cost(edges)

    @property
    def total_cost(self):
        return self.summed_cost

    def combined_frontier(self):
        """
        Pareto frontier of the class-wise sums ``(sum delta_j, sum D_j)``.
        """
        combined = [OutlierError(0, 0, [])]
        for j in sorted(self.frontiers):
            combined = ParetoFrontier.from_candidates(
                OutlierError(first.delta + second.delta,
                             first.matching_cost + second.matching_cost, [])
                for first in combined for second in self.frontiers[j])
        return ParetoFrontier.from_candidates(combined)

    def to_json(self):
        return {
            'summed_cost': format_cost(self.summed_cost),
            'deduplicated_cost': format_cost(self.deduplicated_cost),
            'classes': dict(
                (str(j), {
                    'report': report.to_json(),
                    'frontier': [[delta, format_cost(cost)] for delta, cost
                                 in self.frontiers[j].pairs()],
                }) for j, report in sorted(self.reports.items())),
        }

    def dump(self, path):
        with open(path, 'w') as handle:
            json.dump(self.to_json(), handle, indent=2, sort_keys=True)
            handle.write('\n')


def priority_run(graph, requests, predictions, classes, solver_name='approx',
                 gamma=None, root=None):
    """
    Priority Steiner forest with predictions: one framework instance per
    priority class j on the subgraph of edges with priority >= j.

    Terminal requests are accepted when a root is known and become pairs
    ``(root, terminal)``.

    :param WeightedGraph graph: Instance with edge priorities.
    :param requests: Pair (or terminal) requests with priorities.
    :param predictions: Predicted requests of the same kind.
    :param int classes: Number of priority classes b.
    :param str solver_name: ``approx`` or ``exact``.
    :returns: A :class:`PriorityReport`.
    """
    root = root if root is not None else graph.root
    requests = [_as_pair(r, root) for r in requests]
    predictions = [_as_pair(p, root) for p in predictions]
    by_class = split_by_priority(requests, classes)
    predicted = split_by_priority(predictions, classes)
    solver = get_solver(STEINER_FOREST, solver_name)
    reports = {}
    frontiers = {}
    for j in range(1, classes + 1):
        metric = Metric(graph, priority_floor=j)
        for item in by_class[j] + predicted[j]:
            s, t = item.vertices
            if is_infinite(metric.distance(s, t)):
                raise ReductionException(104, s, t, j)
        LOG.debug('priority class %d: %d requests, %d predictions', j,
                  len(by_class[j]), len(predicted[j]))
        reports[j] = run_with_predictions(metric, by_class[j], predicted[j],
                                          STEINER_FOREST, solver=solver,
                                          gamma=gamma)
        frontiers[j] = pareto_frontier(by_class[j], predicted[j], metric,
                                       TERMINAL_PAIR)
    return PriorityReport(graph, reports, frontiers)
