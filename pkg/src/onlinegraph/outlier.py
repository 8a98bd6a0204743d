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
The metric error with outliers.

A prediction error is a pair (delta, D): delta counts the requests and
predictions left unmatched, D is the cost of a minimum-cost matching between
the rest.  Every feasible matching size k yields one candidate pair, and the
non-dominated candidates form a :class:`ParetoFrontier`.
"""
import csv
import logging
import math

from ._common_util import (
    INFINITY,
    PROBLEM_KINDS,
    REQUEST_KIND_FOR_PROBLEM,
    TERMINAL_PAIR,
    exact,
    format_cost,
    is_infinite)
from .error import OnlineGraphArgumentError
from .graph import Metric

LOG = logging.getLogger(__name__)


class OutlierError(object):
    """
    One (delta, D) pair with its witness matching.

    :param int delta: Number of unmatched requests plus unmatched predictions.
    :param matching_cost: Total cost of the witness matching.
    :param matching: Sorted list of ``(request position, prediction
        position)`` pairs.
    """
    def __init__(self, delta, matching_cost, matching):
        self._delta = delta
        self._cost = matching_cost
        self._matching = tuple(sorted(matching))

    @property
    def delta(self):
        return self._delta

    @property
    def matching_cost(self):
        return self._cost

    @property
    def matching(self):
        return self._matching

    @property
    def size(self):
        """
        The number of matched pairs k.
        """
        return len(self._matching)

    @property
    def matched_requests(self):
        return frozenset(i for i, _ in self._matching)

    @property
    def matched_predictions(self):
        return frozenset(j for _, j in self._matching)

    def as_pair(self):
        return (self._delta, self._cost)

    def __eq__(self, other):
        return isinstance(other, OutlierError) and \
            self.as_pair() == other.as_pair()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.as_pair())

    def __repr__(self):
        return 'OutlierError(delta={0}, D={1}, k={2})'.format(
            self._delta, self._cost, self.size)


class ParetoFrontier(object):
    """
    Non-dominated (delta, D) pairs sorted by increasing delta; D is strictly
    decreasing along the list.
    """
    def __init__(self, points=()):
        self._points = list(points)

    @classmethod
    def from_candidates(cls, candidates):
        """
        Drops every candidate dominated by another one.
        """
        kept = []
        best = INFINITY
        for point in sorted(candidates,
                            key=lambda p: (p.delta, p.matching_cost)):
            if point.matching_cost < best:
                kept.append(point)
                best = point.matching_cost
        return cls(kept)

    @property
    def points(self):
        return list(self._points)

    def pairs(self):
        """
        :returns: List of ``(delta, D)`` tuples.
        """
        return [point.as_pair() for point in self._points]

    def __iter__(self):
        return iter(self._points)

    def __len__(self):
        return len(self._points)

    def __getitem__(self, index):
        return self._points[index]

    def __contains__(self, pair):
        return tuple(pair) in self.pairs()

    def __eq__(self, other):
        return isinstance(other, ParetoFrontier) and \
            self.pairs() == other.pairs()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'ParetoFrontier({0!r})'.format(self.pairs())

    def write_csv(self, stream):
        """
        Writes the frontier as CSV with header ``delta,D,k``.
        """
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['delta', 'D', 'k'])
        for point in self._points:
            writer.writerow([point.delta, format_cost(point.matching_cost),
                             point.size])


def _request_kind(kind):
    if kind in PROBLEM_KINDS:
        return REQUEST_KIND_FOR_PROBLEM[kind]
    return kind


class _FloorMetrics(object):
    """
    Overlay-free metrics of one graph, one per priority floor.
    """
    def __init__(self, metric):
        self._base = metric.without_overlay()
        self._by_floor = {self._base.priority_floor: self._base}

    def get(self, floor):
        if floor not in self._by_floor:
            self._by_floor[floor] = Metric(self._base.graph,
                                           priority_floor=floor)
        return self._by_floor[floor]


def pair_matching_cost(kind, a, b, metric):
    """
    The cost of matching request ``a`` with request ``b``.

    Terminals and clients cost their distance.  Terminal pairs cost the
    cheaper of the two orientations.  Pairs of different priority cannot be
    matched and cost ``INFINITY``; pairs of a common priority j are measured
    in the subgraph of edges with priority at least j.  Distances never use
    a zero-cost overlay.

    :param str kind: A problem kind or request kind.
    """
    return _pair_cost(_request_kind(kind), a, b,
                      metric if isinstance(metric, _FloorMetrics)
                      else _FloorMetrics(metric))


def _pair_cost(kind, a, b, metrics):
    if a.kind != b.kind:
        raise OnlineGraphArgumentError(106, a.kind, b.kind)
    if kind is not None and a.kind != kind:
        raise OnlineGraphArgumentError(106, kind, a.kind)
    if a.kind != TERMINAL_PAIR:
        return metrics.get(1).distance(a.vertex, b.vertex)
    if a.priority != b.priority:
        return INFINITY
    metric = metrics.get(a.priority)
    (s1, t1), (s2, t2) = a.vertices, b.vertices
    return min(metric.distance(s1, s2) + metric.distance(t1, t2),
               metric.distance(s1, t2) + metric.distance(s2, t1))


def matching_cost_matrix(kind, requests, predictions, metric):
    """
    :returns: A ``len(requests) x len(predictions)`` list of lists of exact
        pair matching costs.
    """
    metrics = _FloorMetrics(metric)
    kind = _request_kind(kind)
    return [[_pair_cost(kind, a, b, metrics) for b in predictions]
            for a in requests]


def _dimensions(costs):
    rows = len(costs)
    cols = len(costs[0]) if rows else 0
    return rows, cols


def _exact_entries(costs, rows, cols):
    """
    Exact copy of the matrix with forbidden pairs as ``None``.
    """
    entries = []
    for r in range(rows):
        row = []
        for c in range(cols):
            value = costs[r][c]
            if is_infinite(value):
                row.append(None)
                continue
            if value != value or value < 0:
                raise OnlineGraphArgumentError(107, value)
            row.append(exact(value))
        entries.append(row)
    return entries


def _tie_broken_weights(entries, rows, cols):
    """
    Integer weights ordering matchings of equal size by exact cost first and
    by their sorted pairing second.

    With ``N = rows * cols`` and ``rank = row * cols + col``, pair (r, c)
    weighs ``cost * scale * 2**N + 2**N - 2**(N - 1 - rank)``.  The bonuses
    are superincreasing, so the set holding the smallest pair of a symmetric
    difference is the cheaper one, and together they stay below one unit of
    scaled cost.
    """
    scale = math.lcm(*(value.denominator for row in entries
                       for value in row if value is not None))
    bits = rows * cols
    weights = []
    for r, row in enumerate(entries):
        weights.append([
            None if value is None else
            (int(value * scale) << bits) + (1 << bits) -
            (1 << (bits - 1 - r * cols - c))
            for c, value in enumerate(row)])
    return weights


class _SuccessiveAssignment(object):
    """
    Min-cost bipartite matching grown by one shortest augmenting path at a
    time over exact integer weights.  Node potentials keep reduced costs
    nonnegative so every search is a plain Dijkstra.  After k augmentations
    the matching is optimal among all matchings of size k.

    :param list weights: ``rows x cols`` integers, ``None`` for forbidden
        pairs.
    """
    def __init__(self, weights, rows, cols):
        self._weights = weights
        self._rows = rows
        self._cols = cols
        self.row_mate = [None] * rows
        self.col_mate = [None] * cols
        self._row_pot = [0] * rows
        self._col_pot = [0] * cols

    def pairing(self):
        return [(r, c) for r, c in enumerate(self.row_mate) if c is not None]

    def augment(self):
        """
        Adds one pair along a shortest augmenting path.

        :returns: False when no augmenting path exists.
        """
        rows, cols = self._rows, self._cols
        row_dist = [0 if mate is None else None for mate in self.row_mate]
        col_dist = [None] * cols
        col_prev = [None] * cols
        row_done = [False] * rows
        col_done = [False] * cols
        while True:
            side, node = self._closest(row_dist, row_done, col_dist,
                                       col_done)
            if node is None:
                break
            if side == 'row':
                row_done[node] = True
                self._relax_row(node, row_dist[node], col_dist, col_prev,
                                col_done)
                continue
            col_done[node] = True
            r = self.col_mate[node]
            if r is not None and not row_done[r]:
                reduced = (col_dist[node] - self._weights[r][node] +
                           self._col_pot[node] - self._row_pot[r])
                if row_dist[r] is None or reduced < row_dist[r]:
                    row_dist[r] = reduced
        target = None
        for c in range(cols):
            if self.col_mate[c] is None and col_dist[c] is not None:
                length = col_dist[c] + self._col_pot[c]
                if target is None or length < target[0]:
                    target = (length, c)
        if target is None:
            return False
        self._update_potentials(row_dist, col_dist)
        c = target[1]
        while c is not None:
            r = col_prev[c]
            previous = self.row_mate[r]
            self.row_mate[r] = c
            self.col_mate[c] = r
            c = previous
        return True

    def _relax_row(self, r, dist, col_dist, col_prev, col_done):
        for c, weight in enumerate(self._weights[r]):
            if weight is None or col_done[c] or self.row_mate[r] == c:
                continue
            reduced = dist + weight + self._row_pot[r] - self._col_pot[c]
            if col_dist[c] is None or reduced < col_dist[c]:
                col_dist[c] = reduced
                col_prev[c] = r

    @staticmethod
    def _closest(row_dist, row_done, col_dist, col_done):
        best = (None, None, None)
        for side, dist, done in (('row', row_dist, row_done),
                                 ('col', col_dist, col_done)):
            for node, value in enumerate(dist):
                if value is None or done[node]:
                    continue
                if best[2] is None or value < best[2]:
                    best = (side, node, value)
        return best[0], best[1]

    def _update_potentials(self, row_dist, col_dist):
        reached = [d for d in row_dist + col_dist if d is not None]
        ceiling = max(reached)
        for r, dist in enumerate(row_dist):
            self._row_pot[r] += ceiling if dist is None else dist
        for c, dist in enumerate(col_dist):
            self._col_pot[c] += ceiling if dist is None else dist


def _successive_matchings(costs):
    """
    Yields ``(total cost, pairing)`` for k = 0, 1, ... up to the largest
    matching size with a finite pairing.  Each pairing is the
    lexicographically smallest among the minimum-cost pairings of its size.
    """
    rows, cols = _dimensions(costs)
    entries = _exact_entries(costs, rows, cols)
    weights = _tie_broken_weights(entries, rows, cols)
    assignment = _SuccessiveAssignment(weights, rows, cols)
    yield 0, []
    while assignment.augment():
        pairing = assignment.pairing()
        yield sum(entries[r][c] for r, c in pairing), pairing


def min_cost_matching_of_size(costs, k):
    """
    Minimum total cost over all pairings of exactly k rows to k distinct
    columns.  Infinite entries are forbidden pairs.  Costs are compared
    exactly, and among minimum-cost pairings the lexicographically smallest
    sorted pairing is returned.

    :param costs: Rectangular matrix (list of lists or numpy array) with
        entries >= 0 or ``INFINITY``.
    :param int k: Matching size, ``0 <= k <= min(rows, cols)``.
    :returns: ``(total cost, sorted list of (row, col))``, or
        ``(INFINITY, [])`` when no finite pairing of size k exists.
    """
    rows, cols = _dimensions(costs)
    if isinstance(k, bool) or not isinstance(k, int) or k < 0 or \
            k > min(rows, cols):
        raise OnlineGraphArgumentError(105, k, rows, cols)
    for size, (total, pairing) in enumerate(_successive_matchings(costs)):
        if size == k:
            return total, pairing
    return INFINITY, []


def pareto_frontier(requests, predictions, metric, kind=None):
    """
    Computes the Pareto frontier of (delta, D) errors between a request
    sequence and a prediction multiset.

    :param list requests: The actual requests R.
    :param predictions: The predictions, a list or
        :class:`~onlinegraph.demand.PredictionSet`.
    :param Metric metric: The instance metric.  Any overlay is ignored.
    :param str kind: Optional problem or request kind all items must share.
    :returns: A :class:`ParetoFrontier` whose points carry witness matchings.
    """
    requests = list(requests)
    predictions = list(predictions)
    costs = matching_cost_matrix(kind, requests, predictions, metric)
    total = len(requests) + len(predictions)
    candidates = []
    largest = 0
    for size, (cost, pairing) in enumerate(_successive_matchings(costs)):
        candidates.append(OutlierError(total - 2 * size, cost, pairing))
        largest = size
    if largest < min(len(requests), len(predictions)):
        LOG.debug('no finite pairing beyond size %d', largest)
    return ParetoFrontier.from_candidates(candidates)
