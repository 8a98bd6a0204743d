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
Instance families and prediction perturbations for the experiment harness.
Every generator is deterministic for a given seed.
"""
import logging
from collections import namedtuple

import networkx as nx
import numpy as np

from ._common_util import (
    CLIENT,
    FACILITY_LOCATION,
    STEINER_FOREST,
    STEINER_TREE,
    TERMINAL_PAIR)
from .adversaries import (
    DiamondInstance,
    diamond_adversary,
    fotakis_lb_run,
    nk_delta_adversary)
from .demand import Request
from .error import ConfigException, OnlineGraphArgumentError
from .graph import WeightedGraph

LOG = logging.getLogger(__name__)

GeneratedInstance = namedtuple('GeneratedInstance', [
    'problem', 'graph', 'requests', 'predictions', 'transcript'])


def _requests_for(problem, vertices, count, rng, root=None):
    vertices = [v for v in vertices if v != root]
    if problem == STEINER_TREE:
        return [Request.terminal(int(v))
                for v in rng.choice(vertices, size=count)]
    if problem == FACILITY_LOCATION:
        return [Request.client(int(v))
                for v in rng.choice(vertices, size=count)]
    requests = []
    for _ in range(count):
        s, t = rng.choice(vertices, size=2, replace=False)
        requests.append(Request.pair(int(s), int(t)))
    return requests


def _connect_components(graph, positions):
    """
    Joins the components of a geometric graph, repeatedly linking the
    closest pair of points between the component of the smallest vertex and
    any other component.
    """
    while not nx.is_connected(graph):
        components = sorted((sorted(c) for c in
                             nx.connected_components(graph)),
                            key=lambda c: c[0])
        first = components[0]
        rest = [v for c in components[1:] for v in c]
        best = min(((float(np.linalg.norm(positions[u] - positions[v])), u,
                     v) for u in first for v in rest))
        graph.add_edge(best[1], best[2])


def geometric_instance(problem=STEINER_TREE, vertices=12, radius=0.4,
                       requests=6, scale=100, min_facility=50,
                       max_facility=200, max_capacity=0, seed=0):
    """
    Random geometric graph on the unit square with Euclidean edge costs
    rounded to integers in units of ``1 / scale``; components are joined so
    that the graph is connected.  The predictions equal the requests.

    :param int max_capacity: When positive, every vertex gets a capacity in
        ``[1, max_capacity]``.
    """
    rng = np.random.default_rng(seed)
    positions = rng.random((vertices, 2))
    graph = nx.random_geometric_graph(
        vertices, radius, pos=dict((v, positions[v]) for v in
                                   range(vertices)))
    _connect_components(graph, positions)
    edges = sorted((min(u, v), max(u, v), max(1, int(round(
        float(np.linalg.norm(positions[u] - positions[v])) * scale))))
        for u, v in graph.edges())
    facility_costs = capacities = None
    if problem == FACILITY_LOCATION:
        facility_costs = dict(
            (v, int(c)) for v, c in enumerate(
                rng.integers(min_facility, max_facility + 1,
                             size=vertices)))
        if max_capacity > 0:
            capacities = dict(
                (v, int(c)) for v, c in enumerate(
                    rng.integers(1, max_capacity + 1, size=vertices)))
    root = 0 if problem == STEINER_TREE else None
    weighted = WeightedGraph(range(vertices), edges, facility_costs,
                             capacities, scale, root)
    demands = _requests_for(problem, range(vertices), requests, rng, root)
    return GeneratedInstance(problem, weighted, demands, list(demands), None)


def star_instance(problem=STEINER_TREE, spokes=4, cost=1,
                  facility_cost=4, seed=0):
    """
    Star with center 0 and one request per leaf (a pair with the center for
    Steiner forest).
    """
    leaves = range(1, spokes + 1)
    facility_costs = None
    if problem == FACILITY_LOCATION:
        facility_costs = dict((v, facility_cost) for v in range(spokes + 1))
    graph = WeightedGraph(range(spokes + 1), [(0, v, cost) for v in leaves],
                          facility_costs, root=0)
    if problem == STEINER_TREE:
        demands = [Request.terminal(v) for v in leaves]
    elif problem == FACILITY_LOCATION:
        demands = [Request.client(v) for v in leaves]
    else:
        demands = [Request.pair(0, v) for v in leaves]
    return GeneratedInstance(problem, graph, demands, list(demands), None)


def path_instance(problem=STEINER_TREE, length=4, cost=1, facility_cost=4,
                  seed=0):
    """
    Path ``0 - 1 - ... - length``; the request is the far endpoint (the two
    endpoints for Steiner forest, every vertex for facility location).
    """
    facility_costs = None
    if problem == FACILITY_LOCATION:
        facility_costs = dict((v, facility_cost) for v in range(length + 1))
    graph = WeightedGraph(range(length + 1),
                          [(v, v + 1, cost) for v in range(length)],
                          facility_costs, root=0)
    if problem == STEINER_TREE:
        demands = [Request.terminal(length)]
    elif problem == FACILITY_LOCATION:
        demands = [Request.client(v) for v in range(length + 1)]
    else:
        demands = [Request.pair(0, length)]
    return GeneratedInstance(problem, graph, demands, list(demands), None)


def diamond_family(depth=2, seed=0):
    """
    Diamond graph with the adaptive sequence played against greedy.
    """
    transcript = diamond_adversary(depth)
    graph = DiamondInstance(depth).graph()
    return GeneratedInstance(STEINER_TREE, graph, transcript.requests,
                             list(transcript.requests), transcript)


def fotakis_family(m=2, seed=0):
    """
    Facility location lower-bound tree with the adaptive phases played
    against the potential-based engine.
    """
    transcript = fotakis_lb_run(m)
    graph = transcript.extra['graph']
    return GeneratedInstance(FACILITY_LOCATION, graph, transcript.requests,
                             list(transcript.requests), transcript)


def nkdelta_family(n=8, k=6, delta1=4, delta2=2, kind='st',
                   variant='auto', seed=0):
    """
    Padded adversary played against the framework with its predictions.
    """
    adversary = nk_delta_adversary(n, k, delta1, delta2, kind, variant)
    transcript = adversary.play()
    return GeneratedInstance(adversary.problem, adversary.graph,
                             transcript.requests, adversary.predictions,
                             transcript)


FAMILIES = {
    'geometric': geometric_instance,
    'star': star_instance,
    'path': path_instance,
    'diamond': diamond_family,
    'fotakis': fotakis_family,
    'nkdelta': nkdelta_family,
}


def _coerce(value):
    if not isinstance(value, str):
        return value
    for convert in (int, float):
        try:
            return convert(value)
        except ValueError:
            pass
    return value


def generate(family, params=None, seed=0):
    """
    Builds an instance of a family.

    :param str family: One of :data:`FAMILIES`.
    :param dict params: Family parameters; string values are converted to
        numbers where possible.
    :param int seed: Random seed.
    :returns: A :class:`GeneratedInstance`.
    """
    if family not in FAMILIES:
        raise ConfigException(105, family)
    params = dict((key, _coerce(value))
                  for key, value in (params or {}).items())
    builder = FAMILIES[family]
    code = builder.__code__
    known = code.co_varnames[:code.co_argcount]
    for key in params:
        if key not in known or key == 'seed':
            raise ConfigException(101, key)
    LOG.info('generating %s with %s', family, params)
    return builder(seed=seed, **params)


class Perturbation(namedtuple('Perturbation', [
        'drop_rate', 'add_rate', 'displacement_radius', 'seed'])):
    """
    Turns a request sequence into a prediction multiset.

    Each request is dropped with probability ``drop_rate``; a kept request is
    moved to a uniformly chosen vertex within distance
    ``displacement_radius`` (each endpoint separately for pairs).  Then
    ``Binomial(|R|, add_rate)`` spurious predictions are added at uniformly
    chosen vertices.  With all rates zero the predictions equal the
    requests.
    """
    __slots__ = ()

    def __new__(cls, drop_rate=0, add_rate=0, displacement_radius=0,
                seed=0):
        for name, rate in (('drop_rate', drop_rate), ('add_rate', add_rate)):
            if not 0 <= rate <= 1:
                raise OnlineGraphArgumentError(109, name, rate)
        if displacement_radius < 0:
            raise OnlineGraphArgumentError(103, 'displacement_radius',
                                           displacement_radius)
        return super(Perturbation, cls).__new__(
            cls, drop_rate, add_rate, displacement_radius, seed)

    def _displace(self, request, metric, rng):
        moved = []
        for vertex in request.vertices:
            nearby = sorted(v for v, d in metric.distances_from(vertex).items()
                            if d <= self.displacement_radius)
            moved.append(int(nearby[rng.integers(len(nearby))]))
        return Request(request.kind, moved, request.priority)

    def apply(self, requests, metric):
        """
        :param requests: The actual requests.
        :param Metric metric: Instance metric.
        :returns: List of predicted requests without arrival indices.
        """
        rng = np.random.default_rng(self.seed)
        requests = list(requests)
        predictions = []
        for request in requests:
            if rng.random() < self.drop_rate:
                continue
            if self.displacement_radius > 0:
                request = self._displace(request, metric, rng)
            predictions.append(request.with_index(None))
        if requests and self.add_rate > 0:
            vertices = sorted(metric.graph.vertices)
            kind = requests[0].kind
            for _ in range(int(rng.binomial(len(requests), self.add_rate))):
                if kind == TERMINAL_PAIR:
                    s, t = rng.choice(vertices, size=2, replace=False)
                    priority = requests[rng.integers(len(requests))].priority
                    predictions.append(Request.pair(int(s), int(t), priority))
                else:
                    vertex = int(vertices[rng.integers(len(vertices))])
                    predictions.append(Request(kind, (vertex,)))
        return predictions


def problem_for_kind(kind):
    """
    Problem kind served by requests of ``kind``.
    """
    return {CLIENT: FACILITY_LOCATION, TERMINAL_PAIR: STEINER_FOREST}.get(
        kind, STEINER_TREE)
