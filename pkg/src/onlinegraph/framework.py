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
Online algorithms augmented with predictions.

The framework runs a subset-competitive online engine and tracks its charged
cost ``B``.  Whenever ``B`` reaches twice the last snapshot ``B_hat`` a major
iteration takes place: ``B_hat`` becomes ``B``, the smallest outlier budget
``u`` whose :func:`partial` solution for the predictions costs at most
``3 * gamma * B_hat`` is found, its elements are bought and zero-costed, and a
fresh engine starts on the new overlay.
"""
import csv
import json
import logging
from collections import namedtuple
from fractions import Fraction

from ._common_util import (
    CLIENT,
    FACILITY_LOCATION,
    PROBLEM_KINDS,
    REQUEST_KIND_FOR_PROBLEM,
    ceil_log2,
    floor_log2,
    format_cost,
    is_infinite,
    power_of_two)
from .demand import PredictionSet
from .engines import make_engine
from .error import FrameworkException
from .feed import as_feed
from .graph import Metric, ZeroCostOverlay
from .prize_collecting import PenaltyInstance, get_solver

LOG = logging.getLogger(__name__)

_MAX_EXTRA_EXPONENTS = 64


class PartialResult(namedtuple('PartialResult', [
        'edges',
        'facilities',
        'assignment',
        'unsatisfied_count',
        'branch',
        'exponent',
        'cost'])):
    """
    Outcome of one :func:`partial` call.  ``branch`` is ``'empty'``, ``'S1'``
    (penalty ``2**(exponent-1)``) or ``'S2'`` (penalty ``2**exponent``).
    """
    __slots__ = ()

    @property
    def elements(self):
        return self.edges, self.facilities


def _empty_partial(count):
    return PartialResult(frozenset(), (), {}, count, 'empty', None, 0)


def partial_scan_bounds(predictions, metric):
    """
    Range of penalty exponents that contains the first exponent Partial
    looks for.

    ``i_min`` is ``floor(log2(c / (n + 1)))`` for the smallest positive
    element cost c, so that at penalty ``2**i_min`` serving nothing is
    optimal.  ``i_max`` is ``ceil(log2(total element cost)) + 1``.  Facility
    costs only count for client predictions.

    :param predictions: Nonempty sequence of predicted requests.
    :param Metric metric: Instance metric.
    :returns: ``(i_min, i_max)``; ``(0, 1)`` when every cost is zero.
    """
    predictions = list(predictions)
    if not predictions:
        raise FrameworkException(101, 0, 0)
    metric = metric.without_overlay()
    graph = metric.graph
    costs = [metric.edge_cost(edge.eid) for edge in graph.edges]
    if predictions[0].kind == CLIENT:
        costs.extend(graph.facility_costs.values())
    costs = [cost for cost in costs if not is_infinite(cost) and cost > 0]
    if not costs:
        return 0, 1
    i_min = floor_log2(Fraction(min(costs)) / (len(predictions) + 1))
    i_max = ceil_log2(sum(costs)) + 1
    return i_min, max(i_max, i_min + 1)


class _PenaltyCache(object):
    """
    Prize-collecting solutions by penalty exponent for one prediction set.
    """
    def __init__(self, problem, predictions, metric, solver, root):
        self.problem = problem
        self.predictions = list(predictions)
        self.metric = metric.without_overlay()
        self.solver = solver
        self.root = root
        self._solutions = {}

    def __call__(self, exponent):
        if exponent not in self._solutions:
            instance = PenaltyInstance(self.problem, self.predictions,
                                       power_of_two(exponent), self.metric,
                                       self.root)
            self._solutions[exponent] = self.solver.solve(instance)
        return self._solutions[exponent]


def _problem_of(predictions, problem):
    if problem is not None:
        return problem
    kind = predictions[0].kind
    for name, request_kind in REQUEST_KIND_FOR_PROBLEM.items():
        if request_kind == kind:
            return name
    raise FrameworkException(104, kind)


def partial(predictions, u, solver, gamma, metric, problem=None, root=None,
            cache=None):
    """
    Bi-criteria Partial subroutine.

    Returns the empty solution when ``gamma * u >= n``.  Otherwise finds the
    first exponent i in the scan range whose prize-collecting solution at
    penalty ``2**i`` leaves at most ``gamma * u`` predictions unsatisfied,
    and returns the solution at ``2**(i-1)`` when
    ``gamma * u >= (u1 + u2) / 2`` and the one at ``2**i`` otherwise.

    :param predictions: Predicted requests of one kind.
    :param int u: Outlier budget in ``[0, n]``.
    :param PCSolver solver: Prize-collecting solver.
    :param gamma: Approximation factor declared for the solver.
    :param Metric metric: Instance metric (overlay ignored).
    :param str problem: Problem kind.  Inferred from the predictions.
    :param root: Root for Steiner tree.
    :param cache: Optional per-run solution cache.
    :returns: A :class:`PartialResult`.
    """
    predictions = list(predictions)
    count = len(predictions)
    if not 0 <= u <= count:
        raise FrameworkException(101, count, u)
    if gamma * u >= count:
        return _empty_partial(count)
    if cache is None:
        cache = _PenaltyCache(_problem_of(predictions, problem), predictions,
                              metric, solver, root)
    i_min, i_max = partial_scan_bounds(predictions, metric)
    limit = i_max + _MAX_EXTRA_EXPONENTS
    exponent = i_min
    while cache(exponent).unsatisfied_count > gamma * u:
        exponent += 1
        if exponent > limit:
            raise FrameworkException(102, limit, gamma * u)
    if exponent > i_max:
        LOG.warning('partial scan passed i_max=%d up to %d', i_max, exponent)
    first, second = cache(exponent - 1), cache(exponent)
    if 2 * gamma * u >= first.unsatisfied_count + second.unsatisfied_count:
        chosen, branch = first, 'S1'
    else:
        chosen, branch = second, 'S2'
    return PartialResult(chosen.edges, chosen.facilities, chosen.assignment,
                         chosen.unsatisfied_count, branch, exponent,
                         chosen.element_cost)


IterationRecord = namedtuple('IterationRecord', [
    'iteration',
    'request',
    'charged_cost',
    'actual_cost',
    'b',
    'b_hat',
    'major',
    'phase',
])

MajorIteration = namedtuple('MajorIteration', [
    'iteration',
    'phase',
    'b_hat',
    'u',
    'partial_cost',
    'paid_now',
    'branch',
    'exponent',
    'unsatisfied_count',
    'restarted',
])


class FrameworkState(object):
    """
    Mutable state of one framework run.

    :param str problem: Problem kind.
    :param Metric metric: Instance metric.  Its overlay is ignored.
    :param predictions: Predicted requests.
    :param callable engine_factory: Builds an engine from a metric.
    :param PCSolver solver: Prize-collecting solver.
    :param gamma: Declared factor of ``solver``.
    :param root: Root for Steiner tree.
    """
    def __init__(self, problem, metric, predictions, engine_factory, solver,
                 gamma, root=None):
        if problem not in PROBLEM_KINDS:
            raise FrameworkException(104, problem)
        self.problem = problem
        self.predictions = PredictionSet(predictions)
        self.predictions.check_problem(problem)
        self.metric = metric.without_overlay()
        self.root = root if root is not None else metric.graph.root
        self.gamma = gamma
        self.solver = solver
        self._engine_factory = engine_factory
        self._cache = _PenaltyCache(problem, self.predictions.items,
                                    self.metric, solver, self.root)
        self.overlay = ZeroCostOverlay()
        self.b = 0
        self.b_hat = 0
        self.phase = 0
        self.phase_costs = [0]
        self.phase_actual = [0]
        self.iterations = []
        self.majors = []
        self.partial_edges = set()
        self.partial_facilities = set()
        self.committed_connections = 0
        self.connection_cost = 0
        self.engine_edges = set()
        self.engine_facilities = set()
        self.actions = []
        self.engines = []
        self.engine = None
        self.restart_engine()

    def restart_engine(self):
        metric = Metric(self.metric.graph, self.overlay.copy(),
                        self.metric.priority_floor)
        self.engine = self._engine_factory(metric)
        if self.partial_facilities and hasattr(self.engine,
                                               'adopt_facilities'):
            self.engine.adopt_facilities(self.partial_facilities)
        self.engines.append(self.engine)

    def solution_edges(self):
        return frozenset(self.partial_edges | self.engine_edges)

    def solution_facilities(self):
        return frozenset(self.partial_facilities | self.engine_facilities)

    def solution_vertices(self):
        """
        Vertices touched by any bought element.
        """
        graph = self.metric.graph
        vertices = set(self.solution_facilities())
        for eid in self.solution_edges():
            edge = graph.edge(eid)
            vertices.update((edge.u, edge.v))
        return vertices

    def partial(self, u):
        return partial(self.predictions.items, u, self.solver, self.gamma,
                       self.metric, self.problem, self.root, self._cache)

    def minimum_budget_u(self, budget):
        """
        Smallest u in ``[0, n]`` whose Partial cost is within ``budget``.

        Binary search assumes the predicate is monotone in u; when the sampled
        values contradict that, every u is checked.
        """
        count = len(self.predictions)
        seen = {}

        def fits(u):
            if u not in seen:
                seen[u] = self.partial(u).cost <= budget
            return seen[u]

        low, high = 0, count
        while low < high:
            middle = (low + high) // 2
            if fits(middle):
                high = middle
            else:
                low = middle + 1
        chosen = low if fits(low) else None
        sampled = sorted(seen)
        monotone = all(seen[a] <= seen[b]
                       for a, b in zip(sampled, sampled[1:]))
        if chosen is None or not monotone or (chosen > 0 and fits(chosen - 1)):
            LOG.debug('partial budget predicate not monotone, scanning all u')
            qualifying = [u for u in range(count + 1) if fits(u)]
            chosen = qualifying[0] if qualifying else count
        return chosen


def framework_step(state, request):
    """
    Serves one request and runs a major iteration when the online budget
    doubled.

    :param FrameworkState state: The run state.
    :param Request request: The arriving request.
    :returns: The :class:`IterationRecord` of the request.
    """
    iteration = len(state.iterations)
    record = state.engine.serve(request.with_index(iteration))
    state.b += record.charged_cost
    state.phase_costs[-1] += record.charged_cost
    state.phase_actual[-1] += record.actual_cost
    state.engine_edges.update(record.bought_edges)
    state.engine_facilities.update(record.opened_facilities)
    if record.connection is not None:
        state.connection_cost += record.actual_cost - sum(
            state.engine.metric.facility_cost(v)
            for v in record.opened_facilities)
    major = state.b > 0 and state.b >= 2 * state.b_hat
    if major:
        _major_iteration(state, iteration)
    entry = IterationRecord(iteration, request, record.charged_cost,
                            record.actual_cost, state.b, state.b_hat, major,
                            state.phase)
    state.iterations.append(entry)
    return entry


def _major_iteration(state, iteration):
    state.b_hat = state.b
    budget = 3 * state.gamma * state.b_hat
    u = state.minimum_budget_u(budget)
    bought = state.partial(u)
    new_edges = set(bought.edges) - state.partial_edges
    new_facilities = set(bought.facilities) - state.partial_facilities
    state.partial_edges.update(bought.edges)
    state.partial_facilities.update(bought.facilities)
    state.overlay.zero_edges(bought.edges)
    state.overlay.zero_facilities(bought.facilities)
    paid_now = bought.cost
    if state.problem == FACILITY_LOCATION:
        predictions = state.predictions
        committed = sum(
            state.metric.distance(predictions[i].vertex, facility)
            for i, facility in bought.assignment.items())
        state.committed_connections += committed
        paid_now = bought.cost - committed
        state.actions.extend(('partial-open', v)
                             for v in sorted(new_facilities))
    state.phase += 1
    state.phase_costs.append(0)
    state.phase_actual.append(0)
    restarted = bool(new_edges or new_facilities)
    if restarted:
        state.actions.extend(_engine_actions(state.engine))
        state.restart_engine()
    state.majors.append(MajorIteration(
        iteration, state.phase, state.b_hat, u, bought.cost, paid_now,
        bought.branch, bought.exponent, bought.unsatisfied_count, restarted))
    LOG.info('major iteration at request %d: B_hat=%s u=%d partial cost=%s',
             iteration, state.b_hat, u, bought.cost)


def _engine_actions(engine):
    return list(getattr(engine, 'actions', ()))


class RunReport(object):
    """
    Summary of a finished framework run.
    """
    def __init__(self, state):
        self.problem = state.problem
        self.iterations = list(state.iterations)
        self.majors = list(state.majors)
        self.phase_costs = list(state.phase_costs)
        self.phase_actual = list(state.phase_actual)
        self.online_charged = state.b
        self.online_actual = sum(state.phase_actual)
        self.partial_cost = sum(major.paid_now for major in self.majors)
        self.committed_connections = state.committed_connections
        self.solution_edges = state.solution_edges()
        self.solution_facilities = state.solution_facilities()
        self.deduplicated_cost = state.metric.elements_cost(
            self.solution_edges, self.solution_facilities) + \
            state.connection_cost
        self.actions = list(state.actions) + _engine_actions(state.engine)
        self.gamma = state.gamma
        self.engines = list(state.engines)

    @property
    def total_cost(self):
        """
        Actual online cost plus the cost of every Partial purchase.
        """
        return self.online_actual + self.partial_cost

    @property
    def total_charged(self):
        return self.online_charged + self.partial_cost

    @property
    def request_count(self):
        return len(self.iterations)

    def b_hat_before(self, major):
        """
        ``B_hat`` right before major iteration number ``major`` (1-based);
        0 for the first one.
        """
        if major <= 1:
            return 0
        return self.majors[major - 2].b_hat

    def first_major_with_u_at_most(self, limit):
        """
        1-based number of the first major iteration whose outlier budget is
        at most ``limit``, or ``None``.
        """
        for number, major in enumerate(self.majors, 1):
            if major.u <= limit:
                return number
        return None

    def telescoping_holds(self):
        """
        For every completed phase m: the charged costs of the phases before m
        sum to at most the charged cost of phase m.
        """
        completed = self.phase_costs[:len(self.majors)]
        return all(sum(completed[:m]) <= completed[m]
                   for m in range(len(completed)))

    def partial_budget_holds(self):
        """
        After every major iteration the Partial purchases so far cost at most
        ``6 * gamma * B_hat``.
        """
        spent = 0
        for major in self.majors:
            spent += major.partial_cost
            if spent > 6 * self.gamma * major.b_hat:
                return False
        return True

    def checks(self):
        return {
            'telescoping': self.telescoping_holds(),
            'partial_budget': self.partial_budget_holds(),
        }

    def to_json(self):
        return {
            'problem': self.problem,
            'requests': self.request_count,
            'total_cost': format_cost(self.total_cost),
            'total_charged': format_cost(self.total_charged),
            'online_actual': format_cost(self.online_actual),
            'online_charged': format_cost(self.online_charged),
            'partial_cost': format_cost(self.partial_cost),
            'committed_connections': format_cost(self.committed_connections),
            'deduplicated_cost': format_cost(self.deduplicated_cost),
            'phases': [{'phase': j, 'charged': format_cost(charged),
                        'actual': format_cost(actual)}
                       for j, (charged, actual) in enumerate(
                           zip(self.phase_costs, self.phase_actual))],
            'major_iterations': [{
                'iteration': major.iteration,
                'phase': major.phase,
                'b_hat': format_cost(major.b_hat),
                'u': major.u,
                'partial_cost': format_cost(major.partial_cost),
                'paid_now': format_cost(major.paid_now),
                'branch': major.branch,
                'exponent': major.exponent,
                'unsatisfied': major.unsatisfied_count,
                'restarted': major.restarted,
            } for major in self.majors],
            'checks': self.checks(),
        }

    def dump(self, path):
        with open(path, 'w') as handle:
            json.dump(self.to_json(), handle, indent=2, sort_keys=True)
            handle.write('\n')

    def write_trace_csv(self, stream):
        """
        One row per request: iteration, request, charged and actual cost,
        ``B``, ``B_hat``, whether a major iteration ran and the phase.
        """
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['iteration', 'request', 'charged_cost',
                         'actual_cost', 'B', 'B_hat', 'major', 'phase'])
        for entry in self.iterations:
            writer.writerow([
                entry.iteration, describe_request(entry.request),
                format_cost(entry.charged_cost),
                format_cost(entry.actual_cost), format_cost(entry.b),
                format_cost(entry.b_hat), int(entry.major), entry.phase])


def describe_request(request):
    """
    Compact text form of a request, e.g. ``pair:3-7@2``.
    """
    text = '{0}:{1}'.format(request.kind,
                            '-'.join(str(v) for v in request.vertices))
    if request.priority != 1:
        text += '@{0}'.format(request.priority)
    return text


def default_engine_factory(problem, root=None):
    """
    Engine factory building the bundled engine of ``problem``.
    """
    return lambda metric: make_engine(problem, metric, root)


def run_with_predictions(metric, requests, predictions, problem,
                         engine_factory=None, solver=None, gamma=None,
                         root=None):
    """
    Runs the framework over a request sequence or feed.

    :param metric: A :class:`~onlinegraph.graph.Metric` or a
        :class:`~onlinegraph.graph.WeightedGraph`.
    :param requests: Requests in arrival order, or a request feed.
    :param predictions: Predicted requests.
    :param str problem: Problem kind.
    :param callable engine_factory: Builds an engine from a metric.  Defaults
        to the bundled engine.
    :param PCSolver solver: Prize-collecting solver.  Defaults to the
        approximate solver of the problem.
    :param gamma: Factor declared for ``solver``.  Defaults to the solver's.
    :param root: Root for Steiner tree.
    :returns: A :class:`RunReport`.
    """
    if not isinstance(metric, Metric):
        metric = Metric(metric)
    if problem not in PROBLEM_KINDS:
        raise FrameworkException(104, problem)
    root = root if root is not None else metric.graph.root
    if engine_factory is None:
        engine_factory = default_engine_factory(problem, root)
    if solver is None:
        solver = get_solver(problem)
    if gamma is None:
        gamma = solver.gamma
    state = FrameworkState(problem, metric, predictions, engine_factory,
                           solver, gamma, root)
    feed = as_feed(requests)
    while True:
        request = feed.next_request(state)
        if request is None:
            break
        framework_step(state, request)
    report = RunReport(state)
    for name, passed in report.checks().items():
        if not passed:
            LOG.warning('run check %s failed', name)
    return report


def run_online(metric, requests, problem, engine_factory=None, root=None):
    """
    Engine-only run: the framework with no predictions.
    """
    return run_with_predictions(metric, requests, (), problem,
                                engine_factory=engine_factory, root=root)
