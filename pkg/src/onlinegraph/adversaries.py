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
Deterministic lower-bound instances and adaptive adversaries.

Adaptive adversaries are request choosers for an
:class:`~onlinegraph.feed.AdaptiveFeed`: before every request they look at
the running algorithm's solution and pick the request that hurts most.
Every game produces a :class:`Transcript`.
"""
import csv
import logging
import math

from ._common_util import (
    CLIENT,
    FACILITY_LOCATION,
    INFINITY,
    STEINER_TREE,
    format_cost,
    is_infinite)
from .demand import Request
from .error import AdversaryException, OracleBudgetException
from .feed import AdaptiveFeed
from .framework import describe_request, run_with_predictions
from .graph import Metric, WeightedGraph
from .oracles import exact_facility_location, exact_steiner_tree
from .outlier import (
    matching_cost_matrix,
    min_cost_matching_of_size,
    pareto_frontier)

LOG = logging.getLogger(__name__)

ADVERSARY_KINDS = {'st': STEINER_TREE, 'fl': FACILITY_LOCATION}
VARIANTS = ('auto', 'delta1', 'delta2')


class Transcript(object):
    """
    Step-by-step record of an adversary game.

    :param list rows: ``(step, request, algorithm_action, cumulative_cost)``
        tuples.
    :param alg_cost: Final cost of the algorithm.
    :param opt_cost: Offline optimum, or ``None`` when it was not computed.
    :param str opt_source: How the optimum was obtained.
    """
    def __init__(self, rows, alg_cost, opt_cost=None, opt_source=None,
                 requests=(), **extra):
        self.rows = list(rows)
        self.alg_cost = alg_cost
        self.opt_cost = opt_cost
        self.opt_source = opt_source
        self.requests = list(requests)
        self.extra = extra

    @property
    def ratio(self):
        """
        ``alg_cost / opt_cost`` as a float; ``None`` without an optimum.
        """
        if self.opt_cost is None:
            return None
        if self.opt_cost == 0:
            return 1.0 if self.alg_cost == 0 else INFINITY
        return float(self.alg_cost) / float(self.opt_cost)

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['step', 'request', 'algorithm_action',
                         'cumulative_cost'])
        for step, request, action, cost in self.rows:
            writer.writerow([step, request, action, format_cost(cost)])


def _describe_record(record):
    parts = ['open {0}'.format(v) for v in record.opened_facilities]
    if record.connection is not None:
        parts.append('connect {0}->{1}'.format(record.request.vertex,
                                               record.connection))
    if record.bought_edges:
        parts.append('buy ' + ';'.join(
            'e{0}'.format(eid) for eid in record.bought_edges))
    return ' '.join(parts) or 'none'


def transcript_rows(report):
    """
    Builds transcript rows from a framework report.  The cumulative cost is
    the actual online cost plus Partial purchases made so far.
    """
    records = sorted((record for engine in report.engines
                      for record in engine.log),
                     key=lambda record: record.arrival_index)
    paid = dict((major.iteration, major.paid_now) for major in report.majors)
    rows = []
    total = 0
    for record in records:
        total += record.actual_cost + paid.get(record.arrival_index, 0)
        rows.append((record.arrival_index, describe_request(record.request),
                     _describe_record(record), total))
    return rows, records


class _Schedule(object):
    """
    Concatenation of static request lists and adaptive choosers.
    """
    def __init__(self):
        self._parts = []

    def static(self, requests):
        requests = list(requests)
        if requests:
            self._parts.append((len(requests), lambda: (
                lambda view, step: requests[step])))

    def adaptive(self, length, factory):
        """
        :param int length: Number of requests the chooser produces.
        :param callable factory: Returns a fresh ``chooser(view, step)``.
        """
        if length:
            self._parts.append((length, factory))

    def __len__(self):
        return sum(length for length, _ in self._parts)

    def chooser(self):
        parts = [(length, factory()) for length, factory in self._parts]

        def choose(view, step):
            for length, part in parts:
                if step < length:
                    return part(view, step)
                step -= length
            return None
        return choose

    def feed(self):
        return AdaptiveFeed(self.chooser(), len(self))


class DiamondInstance(object):
    """
    Recursive diamond graph of depth ``i``.

    Depth 0 is the unit edge between the root 0 and vertex 1.  Each further
    level replaces every edge ``(u, v)`` by the two paths ``u-a-v`` and
    ``u-b-v`` through two new middle vertices.  All final edges have cost 1,
    so the root and vertex 1 are ``2**i`` apart.

    :param int depth: Recursion depth i >= 0.
    """
    def __init__(self, depth):
        if depth < 0:
            raise AdversaryException(105, depth)
        self.depth = depth
        self.root = 0
        self.target = 1
        self.middles = {}
        segments = [(0, 1)]
        next_vertex = 2
        for _ in range(depth):
            refined = []
            for u, v in segments:
                a, b = next_vertex, next_vertex + 1
                next_vertex += 2
                self.middles[(u, v)] = (a, b)
                refined.extend([(u, a), (a, v), (u, b), (b, v)])
            segments = refined
        self.vertex_count = next_vertex
        self.edges = [(u, v, 1) for u, v in segments]

    @property
    def request_count(self):
        return 1 << self.depth

    def graph(self):
        return WeightedGraph(range(self.vertex_count), self.edges,
                             root=self.root)

    def chooser(self):
        """
        Fresh adaptive chooser.  The first request is vertex 1; afterwards,
        level by level, every segment of the previous level requests the
        middle vertex of its diamond that is not in the algorithm's solution
        (the smaller id when both or neither are).
        """
        state = {'pending': [], 'active': [], 'level': 0}

        def choose(view, step):
            if step == 0:
                state['active'] = [(self.root, self.target)]
                return Request.terminal(self.target)
            if not state['pending']:
                state['level'] += 1
                if state['level'] > self.depth:
                    return None
                state['pending'] = state['active']
                state['active'] = []
            u, v = state['pending'].pop(0)
            a, b = self.middles[(u, v)]
            used = view.solution_vertices() if view is not None else set()
            middle = b if a in used and b not in used else a
            state['active'].extend([(u, middle), (middle, v)])
            return Request.terminal(middle)
        return choose


def _steiner_optimum(graph, terminals, root, path_length):
    """
    Exact optimum for terminals that all lie on one root path of known
    length whose endpoint is a terminal.
    """
    terminals = sorted(set(terminals) - {root})
    try:
        cost, _ = exact_steiner_tree(graph, terminals, root)
        return cost, 'oracle'
    except OracleBudgetException:
        return path_length, 'path-certificate'


def diamond_adversary(depth, engine_factory=None, predictions=(),
                      solver=None):
    """
    Plays the adaptive diamond sequence against an online Steiner tree
    algorithm.

    :param int depth: Diamond depth i.
    :param callable engine_factory: Engine under test.  Defaults to greedy.
    :param predictions: Optional predictions handed to the framework.
    :returns: A :class:`Transcript`.  The optimum is ``2**i``: every request
        lies on one root path of that length that ends at vertex 1.
    """
    instance = DiamondInstance(depth)
    graph = instance.graph()
    schedule = _Schedule()
    schedule.adaptive(instance.request_count, instance.chooser)
    feed = schedule.feed()
    report = run_with_predictions(graph, feed, predictions, STEINER_TREE,
                                  engine_factory=engine_factory,
                                  solver=solver, root=instance.root)
    rows, _ = transcript_rows(report)
    terminals = [request.vertex for request in feed.served]
    opt, source = _steiner_optimum(graph, terminals, instance.root,
                                   1 << depth)
    if source != 'oracle':
        LOG.info('diamond depth %d exceeds the oracle budget', depth)
    return Transcript(rows, report.total_cost, opt, source, feed.served,
                      report=report)


class FotakisTree(object):
    """
    Complete binary tree for the facility location lower bound.

    Vertices are numbered heap-style (children of v are 2v+1 and 2v+2).  With
    ``f = ratio**depth``, the edges from depth b-1 to depth b cost
    ``f / ratio**b`` and every vertex has opening cost ``f - 1``.  With
    ``copies`` set, each vertex at depth b gets ``ratio**b - 1`` colocated
    copies joined to it by zero-cost edges, so that phase requests land on
    distinct vertices.

    :param int depth: Tree depth.
    :param int ratio: Per-level cost decrease and phase growth factor.
    """
    def __init__(self, depth, ratio, copies=False, first_vertex=0):
        if depth < 0:
            raise AdversaryException(105, depth)
        if ratio < 2:
            raise AdversaryException(107, ratio)
        self.depth = depth
        self.ratio = ratio
        self.f = ratio ** depth
        self.first_vertex = first_vertex
        nodes = (1 << (depth + 1)) - 1
        self.nodes = [first_vertex + i for i in range(nodes)]
        self.edges = []
        for i in range(1, nodes):
            level = (i + 1).bit_length() - 1
            self.edges.append((first_vertex + (i - 1) // 2, first_vertex + i,
                               self.f // ratio ** level))
        self.colocated = dict((v, [v]) for v in self.nodes)
        self.owner = dict((v, v) for v in self.nodes)
        next_vertex = first_vertex + nodes
        if copies:
            for i in range(nodes):
                level = (i + 1).bit_length() - 1
                node = first_vertex + i
                for _ in range(ratio ** level - 1):
                    self.colocated[node].append(next_vertex)
                    self.owner[next_vertex] = node
                    self.edges.append((node, next_vertex, 0))
                    next_vertex += 1
        self.vertices = list(range(first_vertex, next_vertex))

    @property
    def opening_cost(self):
        return self.f - 1

    @property
    def request_count(self):
        return sum(self.ratio ** i for i in range(self.depth + 1))

    def facility_costs(self):
        return dict((v, self.opening_cost) for v in self.vertices)

    def graph(self):
        return WeightedGraph(self.vertices, self.edges,
                             facility_costs=self.facility_costs())

    def _children(self, node):
        i = node - self.first_vertex
        return [self.first_vertex + 2 * i + 1, self.first_vertex + 2 * i + 2]

    def _subtree_has(self, node, opened):
        i = node - self.first_vertex
        for vertex in opened:
            j = self.owner.get(vertex)
            if j is None:
                continue
            j -= self.first_vertex
            while j > i:
                j = (j - 1) // 2
            if j == i:
                return True
        return False

    def chooser(self, path=None):
        """
        Fresh adaptive chooser.  Phase 1 requests the root once; phase i
        requests ``ratio**(i-1)`` times a child of the previous phase vertex
        whose subtree holds no open facility (the left child when both or
        neither do).

        :param list path: Receives the phase vertices as they are chosen.
        """
        path = path if path is not None else []
        state = {'phase': 0, 'left': 0}

        def choose(view, step):
            if state['left'] == 0:
                if state['phase'] > self.depth:
                    return None
                if state['phase'] == 0:
                    node = self.nodes[0]
                else:
                    opened = view.solution_facilities() \
                        if view is not None else ()
                    children = self._children(path[-1])
                    free = [c for c in children
                            if not self._subtree_has(c, opened)]
                    node = (free or children)[0]
                path.append(node)
                state['left'] = self.ratio ** state['phase']
                state['phase'] += 1
            state['left'] -= 1
            node = path[-1]
            spots = self.colocated[node]
            index = (self.ratio ** (state['phase'] - 1) - 1 - state['left'])
            return Request.client(spots[index % len(spots)])
        return choose


def _fl_optimum(graph, clients, candidates):
    # clients sit on one root path, so facilities off it are dominated
    try:
        cost, _, _ = exact_facility_location(graph, clients, candidates)
        return cost, 'oracle'
    except OracleBudgetException:
        return None, None


def fotakis_lb_run(m, engine_factory=None):
    """
    Plays the facility location lower bound of depth ``m`` (phase growth
    ``m``) against an online facility location algorithm.

    The extra transcript fields are ``path`` (phase vertices), ``phase_last``
    (arrival index of the last request of every phase), ``alpha_total``,
    ``subset_actual`` and ``subset_alpha``, the actual and charged cost of
    the last requests.

    :param int m: Depth and ratio, m >= 2.
    :returns: A :class:`Transcript`.
    """
    if m < 2:
        raise AdversaryException(107, m)
    tree = FotakisTree(m, m)
    graph = tree.graph()
    path = []
    schedule = _Schedule()
    schedule.adaptive(tree.request_count, lambda: tree.chooser(path))
    feed = schedule.feed()
    report = run_with_predictions(graph, feed, (), FACILITY_LOCATION,
                                  engine_factory=engine_factory)
    rows, records = transcript_rows(report)
    phase_last = []
    position = -1
    for phase in range(m + 1):
        position += m ** phase
        phase_last.append(position)
    subset_actual = sum(records[i].actual_cost for i in phase_last)
    subset_alpha = sum(records[i].charged_cost for i in phase_last)
    clients = [request.vertex for request in feed.served]
    opt, source = _fl_optimum(graph, clients, path)
    return Transcript(rows, report.total_cost, opt, source, feed.served,
                      report=report, graph=graph, path=path,
                      phase_last=phase_last,
                      alpha_total=report.online_charged,
                      subset_actual=subset_actual,
                      subset_alpha=subset_alpha,
                      opened=[action[1] for action in report.actions
                              if action[0] == 'open'])


def _check_parameters(n, k, delta1, delta2):
    if min(n, k, delta1, delta2) < 0:
        raise AdversaryException(109, (n, k, delta1, delta2))
    total = n + k - delta1 - delta2
    if total % 2:
        raise AdversaryException(101, total)
    ell = total // 2
    if ell < 0:
        raise AdversaryException(102, ell)
    if n - delta1 != k - delta2:
        raise AdversaryException(103, n - delta1, k - delta2)
    return ell


class NKDeltaAdversary(object):
    """
    Adversary releasing ``k`` requests against ``n`` predictions such that
    ``delta1`` predictions never arrive and ``delta2`` requests are
    unpredicted.

    The ``delta2`` variant embeds a hard instance of size ``m = delta2`` that
    receives only unpredicted requests, after ``l`` requests on predicted
    free vertices.  The ``delta1`` variant embeds a hard instance of size
    ``m = min(l, floor(sqrt(n - l)))`` whose vertices are all predicted.
    Steiner tree uses the diamond graph padded with root copies (zero-cost
    edges to the root); facility location uses the binary lower-bound tree
    with colocated copies, padded with isolated zero-opening-cost vertices.

    :param int n: Number of predictions.
    :param int k: Number of requests.
    :param str kind: ``st`` or ``fl``.
    :param str variant: ``auto``, ``delta1`` or ``delta2``.
    """
    def __init__(self, n, k, delta1, delta2, kind='st', variant='auto'):
        if kind not in ADVERSARY_KINDS:
            raise AdversaryException(108, kind)
        if variant not in VARIANTS:
            raise AdversaryException(108, variant)
        self.ell = _check_parameters(n, k, delta1, delta2)
        self.n, self.k = n, k
        self.delta1, self.delta2 = delta1, delta2
        self.kind = kind
        self.problem = ADVERSARY_KINDS[kind]
        if variant == 'auto':
            variant = 'delta2' if delta2 >= min(self.ell, delta1) \
                else 'delta1'
        self.variant = variant
        if variant == 'delta2':
            self.m = delta2
        else:
            self.m = min(self.ell, math.isqrt(n - self.ell))
            if n - (self.m * self.m + self.m) < 0:
                raise AdversaryException(104, n - (self.m * self.m + self.m))
        self._vertices = []
        self._edges = []
        self._facility_costs = {}
        self.padded_vertices = 0
        self._build()

    # construction

    def _new_vertex(self):
        vertex = len(self._vertices)
        self._vertices.append(vertex)
        return vertex

    def _pad(self, count):
        """
        New free vertices: root copies for Steiner tree, isolated vertices
        with opening cost 0 for facility location.
        """
        padding = []
        for _ in range(count):
            vertex = self._new_vertex()
            if self.kind == 'st':
                self._edges.append((self.root, vertex, 0))
            else:
                self._facility_costs[vertex] = 0
            padding.append(vertex)
        self.padded_vertices += count
        return padding

    def _request(self, vertex):
        if self.kind == 'st':
            return Request.terminal(vertex)
        return Request.client(vertex)

    def _embed_hard_instance(self):
        """
        Adds the hard instance for size m and returns ``(its vertices,
        request count, chooser factory)``.
        """
        m = self.m
        if m == 0:
            return [], 0, None
        if self.kind == 'st':
            diamond = DiamondInstance(m.bit_length() - 1)
            for _ in range(diamond.vertex_count):
                self._new_vertex()
            self._edges.extend(diamond.edges)
            self.hard = diamond
            return (list(range(diamond.vertex_count)), diamond.request_count,
                    diamond.chooser)
        depth = 0
        while (1 << (depth + 2)) - 1 <= m:
            depth += 1
        tree = FotakisTree(depth, 2, copies=True,
                           first_vertex=len(self._vertices))
        for _ in tree.vertices:
            self._new_vertex()
        self._edges.extend(tree.edges)
        self._facility_costs.update(tree.facility_costs())
        self.hard = tree
        self.hard_path = []
        return (list(tree.vertices), tree.request_count,
                lambda: tree.chooser(self.hard_path))

    def _build(self):
        self.hard = None
        self.hard_path = []
        self.root = None
        hard, hard_count, factory = self._embed_hard_instance()
        if self.kind == 'st':
            self.root = 0
            if not hard:
                self._new_vertex()
        inner = self._pad(max(self.m * self.m + self.m - len(hard), 0))
        schedule = _Schedule()
        if self.variant == 'delta2':
            predicted = self._pad(self.n)
            schedule.static(self._request(v) for v in predicted[:self.ell])
            schedule.adaptive(hard_count, factory)
            schedule.static(self._request(v)
                            for v in inner[:self.m - hard_count])
        else:
            outer = self._pad(self.n - len(hard) - len(inner))
            unpredicted = self._pad(self.delta2)
            predicted = hard + inner + outer
            pool = outer + inner
            schedule.static(self._request(v) for v in unpredicted)
            schedule.static(self._request(v)
                            for v in pool[:self.ell - self.m])
            schedule.adaptive(hard_count, factory)
            schedule.static(
                self._request(v)
                for v in pool[self.ell - self.m:self.ell - hard_count])
        self.predictions = [self._request(v) for v in predicted]
        self.schedule = schedule
        self.graph = WeightedGraph(
            self._vertices, self._edges,
            facility_costs=self._facility_costs or None, root=self.root)

    # play

    def feed(self):
        return self.schedule.feed()

    def play(self, engine_factory=None, use_predictions=True, solver=None):
        """
        Plays the adversary against the framework (or the bare engine when
        ``use_predictions`` is false).

        :returns: A :class:`Transcript` whose ``requests`` are the released
            requests.
        """
        feed = self.feed()
        predictions = self.predictions if use_predictions else ()
        report = run_with_predictions(self.graph, feed, predictions,
                                      self.problem,
                                      engine_factory=engine_factory,
                                      solver=solver, root=self.root)
        rows, _ = transcript_rows(report)
        opt, source = self._optimum(feed.served)
        return Transcript(rows, report.total_cost, opt, source, feed.served,
                          report=report)

    def _optimum(self, requests):
        vertices = [request.vertex for request in requests]
        if self.kind == 'st':
            if self.hard is None:
                return 0, 'free'
            return _steiner_optimum(self.graph, vertices, self.root,
                                    1 << self.hard.depth)
        if self.hard is None:
            return 0, 'free'
        tree = self.hard
        clients = [v for v in vertices if v in tree.owner]
        return _fl_optimum(self.graph, clients, self.hard_path)

    def cardinalities(self, requests):
        """
        ``(|R_hat|, |R|, |R_hat \\ R|, |R \\ R_hat|)`` of a released sequence,
        as multisets of vertices.
        """
        predicted = [p.vertex for p in self.predictions]
        released = [r.vertex for r in requests]
        return (len(predicted), len(released),
                _multiset_minus(predicted, released),
                _multiset_minus(released, predicted))


def _multiset_minus(first, second):
    remaining = list(second)
    count = 0
    for item in first:
        if item in remaining:
            remaining.remove(item)
        else:
            count += 1
    return count


def nk_delta_adversary(n, k, delta1, delta2, kind='st', variant='auto'):
    """
    Builds an :class:`NKDeltaAdversary`.

    :raises AdversaryException: Naming the violated inequality.
    """
    return NKDeltaAdversary(n, k, delta1, delta2, kind, variant)


class GreedyMatcher(object):
    """
    Online metric matching that matches every red point to the nearest free
    blue point (smallest id on ties).

    :param Metric metric: The metric.
    :param blue: Blue point vertices.
    """
    def __init__(self, metric, blue):
        self._metric = metric
        self._free = sorted(blue)
        self.matched = []

    def match(self, red):
        """
        :returns: ``(blue point, cost)``.
        """
        if not self._free:
            raise AdversaryException(100)
        cost, blue = self._metric.nearest(red, self._free)
        self._free.remove(blue)
        self.matched.append((red, blue, cost))
        return blue, cost


def star_graph(spokes):
    """
    Unit-cost star with center 0 and leaves ``1..spokes``.
    """
    return WeightedGraph(range(spokes + 1),
                         [(0, leaf, 1) for leaf in range(1, spokes + 1)],
                         root=0)


def matching_lb_run(k, matcher_factory=GreedyMatcher):
    """
    Deterministic online matching lower bound on a star with ``k + 1`` unit
    spokes and blue points on the first k leaves.  The first red point
    arrives on the empty leaf; each further red point arrives on the blue
    point the algorithm matched last.  The prediction is one red point per
    blue point.

    :param int k: Number of blue points, k >= 2.
    :param callable matcher_factory: ``factory(metric, blue)`` returning an
        object with ``match(red) -> (blue, cost)``.
    :returns: A :class:`Transcript` carrying the error ``frontier``.
    """
    if k < 2:
        raise AdversaryException(106, k)
    graph = star_graph(k + 1)
    metric = Metric(graph)
    blue = list(range(1, k + 1))
    matcher = matcher_factory(metric, blue)
    red = k + 1
    rows = []
    reds = []
    total = 0
    for step in range(k):
        matched, cost = matcher.match(red)
        total += cost
        reds.append(Request.client(red, step))
        rows.append((step, 'red:{0}'.format(red),
                     'match {0}->{1}'.format(red, matched), total))
        red = matched
    predictions = [Request.client(v) for v in blue]
    costs = matching_cost_matrix(CLIENT, reds, predictions, metric)
    opt, _ = min_cost_matching_of_size(costs, k)
    frontier = pareto_frontier(reds, predictions, metric, CLIENT)
    if is_infinite(opt):
        opt = None
    return Transcript(rows, total, opt, 'assignment', reds,
                      frontier=frontier, predictions=predictions)
