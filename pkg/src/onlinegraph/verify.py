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
Invariant suites run by ``onlinegraph verify``.

Each suite builds small seeded instances, runs the algorithms on them and
compares the outcome against the properties the algorithms guarantee, using
the exact oracles as ground truth.  Instances the oracles refuse are
skipped and counted in the check detail.
"""
import logging
import math
from collections import namedtuple
from itertools import combinations

from ._common_util import (
    FACILITY_LOCATION,
    INFINITY,
    STEINER_FOREST,
    STEINER_TREE,
    TERMINAL,
    is_infinite)
from .adversaries import (
    DiamondInstance,
    diamond_adversary,
    fotakis_lb_run,
    matching_lb_run,
    nk_delta_adversary)
from .demand import Request
from .engines import engine_total_charged, make_engine
from .error import ConfigException, OracleBudgetException
from .framework import partial, run_online, run_with_predictions
from .generators import Perturbation, geometric_instance
from .graph import Metric, WeightedGraph, ZeroCostOverlay
from .oracles import (
    exact_capacitated_fl,
    exact_facility_location,
    exact_matching_frontier,
    exact_min_cost_with_outliers,
    exact_optimum,
    exact_steiner_forest,
    exact_steiner_tree)
from .outlier import pareto_frontier
from .prize_collecting import PenaltyInstance, evaluate, get_solver, pc_exact
from .reductions import (
    capacitate_reduce,
    capacitated_run,
    split_by_priority)
from .trends import (
    displacement_trend,
    is_finite,
    outlier_trend,
    residual_holds)

LOG = logging.getLogger(__name__)

DEFAULT_INSTANCES = 12

#: Instance counts of the suites with a fixed acceptance sample size.
ACCEPTANCE_INSTANCES = {
    'framework': 500,
    'reductions': 200,
    'outlier': 300,
}

#: Declared constant C of charged(R') <= C (log2 |R'| + 2) OPT(R) per
#: engine.  Only the greedy tree constant is asserted.
SUBSET_CONSTANTS = {
    STEINER_TREE: 2,
    STEINER_FOREST: 8,
}

_SUBSET_FAMILIES = {
    STEINER_TREE: (4, 6, 8),
    STEINER_FOREST: (3, 4, 5),
}

# Perturbation sweeps of the error-versus-ratio trends
_TREND_RADII = (0, 25, 50, 100)
_TREND_RATES = (0.2, 0.4, 0.6, 0.8)

_TOLERANCE = 1e-9

Check = namedtuple('Check', ['suite', 'name', 'passed', 'detail'])


class _Recorder(object):
    def __init__(self, suite):
        self.suite = suite
        self.checks = []

    def record(self, name, passed, detail=''):
        self.checks.append(Check(self.suite, name, bool(passed), detail))
        if not passed:
            LOG.warning('%s/%s failed: %s', self.suite, name, detail)

    def flag(self, name, held, detail=''):
        """
        Records a check that is reported but never fails the suite.
        """
        if not held:
            LOG.warning('%s/%s flagged: %s', self.suite, name, detail)
            detail = 'flagged: ' + detail if detail else 'flagged'
        self.checks.append(Check(self.suite, name, True, detail))

    def tally(self, name, outcomes, skipped=0):
        """
        Records one check from a list of per-instance outcomes.
        """
        failures = outcomes.count(False)
        detail = '{0} violations in {1} cases'.format(failures,
                                                      len(outcomes))
        if skipped:
            detail += ', {0} skipped'.format(skipped)
        self.record(name, failures == 0, detail)


def _instances(problem, seed, count, **params):
    for offset in range(count):
        yield geometric_instance(problem, seed=seed + offset, **params)


def _served(engine, requests):
    for index, request in enumerate(requests):
        yield engine.serve(request.with_index(index))


def _with_priorities(graph, classes):
    # edge eid gets priority 1 + eid mod classes
    return WeightedGraph(graph.vertices, [
        (edge.u, edge.v, edge.cost, 1 + edge.eid % classes)
        for edge in graph.edges], root=graph.root)


def _floyd_warshall(graph, priority_floor=1):
    """
    All-pairs distances over the edges at or above the floor, by
    relaxation through every intermediate vertex.
    """
    vertices = graph.vertices
    dist = dict(((u, v), 0 if u == v else INFINITY)
                for u in vertices for v in vertices)
    for edge in graph.edges:
        if edge.priority < priority_floor:
            continue
        for a, b in ((edge.u, edge.v), (edge.v, edge.u)):
            dist[a, b] = min(dist[a, b], edge.cost)
    for w in vertices:
        for u in vertices:
            for v in vertices:
                through = dist[u, w] + dist[w, v]
                if through < dist[u, v]:
                    dist[u, v] = through
    return dist


def _is_walk(graph, eids, u, v, priority_floor):
    here = u
    for eid in eids:
        edge = graph.edge(eid)
        if edge.priority < priority_floor or here not in (edge.u, edge.v):
            return False
        here = edge.v if here == edge.u else edge.u
    return here == v


# Suites


def graph_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Metric axioms, overlay monotonicity, instance serialization, priority
    floors and shortest paths against an all-pairs relaxation.
    """
    recorder = _Recorder('graph')
    symmetric, triangle, monotone, persisted = [], [], [], []
    for generated in _instances(STEINER_TREE, seed, instances, vertices=7):
        graph = generated.graph
        metric = Metric(graph)
        vertices = graph.vertices
        for u in vertices:
            for v in vertices:
                symmetric.append(metric.distance(u, v) ==
                                 metric.distance(v, u))
                for w in vertices:
                    triangle.append(metric.distance(u, w) <=
                                    metric.distance(u, v) +
                                    metric.distance(v, w))
        zeroed = metric.with_overlay(ZeroCostOverlay([graph.edges[0].eid]))
        monotone.append(all(zeroed.distance(u, v) <= metric.distance(u, v)
                            for u in vertices for v in vertices))
        persisted.append(WeightedGraph.from_json(graph.to_json()).to_json()
                         == graph.to_json())
    recorder.tally('distance symmetry', symmetric)
    recorder.tally('triangle inequality', triangle)
    recorder.tally('zeroing never lengthens distances', monotone)
    recorder.tally('instance json persistence', persisted)

    floors, paths = [], []
    for generated in _instances(STEINER_TREE, seed, instances, vertices=9):
        graph = _with_priorities(generated.graph, 3)
        vertices = graph.vertices
        previous = None
        for floor in range(1, 4):
            metric = Metric(graph, priority_floor=floor)
            distances = _floyd_warshall(graph, floor)
            for u in vertices:
                for v in vertices:
                    cost, eids = metric.shortest_path(u, v)
                    paths.append(cost == distances[u, v] and (
                        is_infinite(cost) or
                        _is_walk(graph, eids, u, v, floor) and
                        sum(graph.edge(eid).cost for eid in eids) == cost))
            if previous is not None:
                floors.append(all(previous.distance(u, v) <=
                                  metric.distance(u, v)
                                  for u in vertices for v in vertices))
            previous = metric
    recorder.tally('raising the priority floor never shortens distances',
                   floors)
    recorder.tally('shortest paths match all-pairs relaxation', paths)
    return recorder.checks


def outlier_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Frontier computation against exhaustive enumeration of partial
    bijections.
    """
    recorder = _Recorder('outlier')
    equal = []
    for generated in _instances(STEINER_TREE, seed, instances, vertices=8,
                                requests=8):
        metric = Metric(generated.graph)
        requests = generated.requests[:4]
        predictions = Perturbation(0.3, 0.3, 40, seed).apply(
            generated.requests[4:], metric)[:5]
        fast = pareto_frontier(requests, predictions, metric, TERMINAL)
        slow = exact_matching_frontier(requests, predictions, metric,
                                       TERMINAL)
        equal.append(fast.pairs() == slow.pairs())
    recorder.tally('frontier equals enumeration', equal)
    isolated = WeightedGraph([0, 1])
    frontier = pareto_frontier([Request.terminal(0)], [Request.terminal(1)],
                               Metric(isolated))
    recorder.record('disjoint sets give a single point',
                    frontier.pairs() == [(2, 0)], repr(frontier.pairs()))
    return recorder.checks


def _subset_constant(engine, count, opt):
    """
    Largest ``charged(R') / ((log2 |R'| + 2) OPT(R))`` over the non-empty
    subsets ``R'`` of the ``count`` arrivals.
    """
    worst = 0.0
    for size in range(1, count + 1):
        scale = (math.log2(size) + 2) * float(opt)
        for subset in combinations(range(count), size):
            charged = engine_total_charged(engine, subset)
            if charged == 0:
                continue
            if opt == 0:
                return INFINITY
            worst = max(worst, float(charged) / scale)
    return worst


def _measure_subset_constants(problem, seed, instances):
    """
    Measures the subset constant of an engine on each family of instance
    sizes; every instance is played twice.

    :returns: ``(per-family maxima, per-instance constants, repeatable
        outcomes, skipped count)``.
    """
    families, measured, repeatable, skipped = [], [], [], 0
    for requests in _SUBSET_FAMILIES[problem]:
        family = 0.0
        for generated in _instances(problem, seed, instances, vertices=7,
                                    requests=requests):
            graph = generated.graph
            try:
                opt = exact_optimum(problem, generated.requests,
                                    Metric(graph), graph.root)
            except OracleBudgetException:
                skipped += 1
                continue
            runs = []
            for _ in range(2):
                engine = make_engine(problem, Metric(graph), graph.root)
                list(_served(engine, generated.requests))
                runs.append(_subset_constant(engine, len(generated.requests),
                                             opt))
            repeatable.append(runs[0] == runs[1])
            measured.append(runs[0])
            family = max(family, runs[0])
        families.append(family)
    return families, measured, repeatable, skipped


def _alpha_within_bound(engine, count, facilities, connection):
    """
    Outcomes of ``alpha(R') <= 2 (log2 |R'| + 1) f* + 4 (log2 |R'| + 1) C*``
    for every non-empty subset.
    """
    outcomes = []
    for size in range(1, count + 1):
        factor = math.log2(size) + 1
        bound = (2 * factor * float(facilities) +
                 4 * factor * float(connection))
        for subset in combinations(range(count), size):
            charged = float(engine_total_charged(engine, subset))
            outcomes.append(charged <= bound + _TOLERANCE)
    return outcomes


def engines_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Subset constants of the tree and forest engines, ball structure of the
    forest engine, and amortization, potential stability and the subset
    bound on alpha of the facility location engine.
    """
    recorder = _Recorder('engines')
    for problem in (STEINER_TREE, STEINER_FOREST):
        families, measured, repeatable, skipped = \
            _measure_subset_constants(problem, seed, instances)
        declared = SUBSET_CONSTANTS[problem]
        sizes = _SUBSET_FAMILIES[problem]
        detail = ', '.join('C={0:.4f} at {1} requests'.format(c, n)
                           for c, n in zip(families, sizes))
        name = '{0} subset bound with C={1}'.format(problem, declared)
        within = [c <= declared + _TOLERANCE for c in measured]
        if problem == STEINER_TREE:
            recorder.tally(name, within, skipped)
        else:
            recorder.flag(name, all(within), detail)
        recorder.tally('{0} subset constant repeatable'.format(problem),
                       repeatable)
        recorder.flag('{0} subset constant non-increasing'.format(problem),
                      families == sorted(families, reverse=True), detail)

    structure, counting, packing, skipped = [], [], [], 0
    for generated in _instances(STEINER_FOREST, seed, instances, vertices=7,
                                requests=4):
        graph = generated.graph
        engine = make_engine(STEINER_FOREST, Metric(graph))
        for _ in _served(engine, generated.requests):
            structure.append(engine.structure_holds())
        balls = engine.balls
        counting.append(balls.counting_holds())
        try:
            opt, _ = exact_steiner_forest(
                graph, [r.vertices for r in generated.requests])
        except OracleBudgetException:
            skipped += 1
            continue
        packing.append(all(len(balls.centers(level)) * balls.radius(level)
                           <= opt for level in balls.levels))
    recorder.tally('disjoint balls and acyclic meta-graphs', structure)
    recorder.tally('pairs per level at most twice the balls', counting)
    recorder.tally('ball packing below optimum', packing, skipped)

    amortized, stable = [], []
    for generated in _instances(FACILITY_LOCATION, seed, instances,
                                vertices=7, requests=6):
        engine = make_engine(FACILITY_LOCATION, Metric(generated.graph))
        for _ in _served(engine, generated.requests):
            stable.append(engine.potentials_stable())
        amortized.append(engine.total_charged >= engine.total_actual)
    recorder.tally('alpha covers actual cost', amortized)
    recorder.tally('potentials stay below facility costs', stable)

    alpha, skipped = [], 0
    for generated in _instances(FACILITY_LOCATION, seed, instances,
                                vertices=7, requests=6):
        graph = generated.graph
        clients = [r.vertex for r in generated.requests]
        try:
            cost, opened, _ = exact_facility_location(graph, clients)
        except OracleBudgetException:
            skipped += 1
            continue
        facilities = sum(graph.facility_cost(v) for v in opened)
        engine = make_engine(FACILITY_LOCATION, Metric(graph))
        list(_served(engine, generated.requests))
        alpha.extend(_alpha_within_bound(engine, len(clients), facilities,
                                         cost - facilities))
    recorder.tally('alpha of every subset within the log bound', alpha,
                   skipped)
    return recorder.checks


def _pc_consistent(instance, solution):
    """
    True iff re-pricing the solution's elements reproduces its satisfied
    set, element cost and objective, and the objective adds the penalties
    of exactly the unsatisfied requests.
    """
    satisfied, cost, objective = evaluate(
        instance, solution.edges, solution.facilities, solution.assignment)
    return (frozenset(satisfied) == solution.satisfied and
            cost == solution.element_cost and
            objective == solution.objective and
            solution.objective == solution.element_cost +
            instance.penalty_for(solution.unsatisfied_count))


def prize_collecting_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Approximate prize-collecting solvers against the exact optimum, priced
    objectives, and fewer unsatisfied requests in the optimum as the
    penalty grows.
    """
    recorder = _Recorder('prize_collecting')
    for problem in (STEINER_TREE, STEINER_FOREST, FACILITY_LOCATION):
        solver = get_solver(problem)
        within, consistent, monotone, skipped = [], [], [], 0
        for generated in _instances(problem, seed, instances, vertices=6,
                                    requests=4):
            metric = Metric(generated.graph)
            unsatisfied = []
            for penalty in (10, 60, 250):
                instance = PenaltyInstance(problem, generated.requests,
                                           penalty, metric,
                                           generated.graph.root)
                try:
                    best = pc_exact(instance)
                except OracleBudgetException:
                    skipped += 1
                    continue
                found = solver.solve(instance)
                within.append(found.objective <= solver.gamma *
                              best.objective and
                              found.objective <= instance.penalty_for(
                                  len(generated.requests)))
                consistent.append(_pc_consistent(instance, best) and
                                  _pc_consistent(instance, found))
                unsatisfied.append(best.unsatisfied_count)
            monotone.append(unsatisfied == sorted(unsatisfied, reverse=True))
        recorder.tally('{0} within factor {1}'.format(problem, solver.gamma),
                       within, skipped)
        recorder.tally('{0} objective matches its elements'.format(problem),
                       consistent)
        recorder.tally('{0} exact unsatisfied count non-increasing in the '
                       'penalty'.format(problem), monotone)
    return recorder.checks


def framework_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Bi-criteria guarantee of Partial, phase telescoping, the Partial budget
    and the B_hat bound at the first major iteration whose outlier budget
    is at most the number of predictions a frontier point leaves unmatched.
    """
    recorder = _Recorder('framework')
    for problem in (STEINER_TREE, STEINER_FOREST, FACILITY_LOCATION):
        solver = get_solver(problem)
        gamma = solver.gamma
        bicriteria, structure, b_hat, skipped = [], [], [], 0
        for generated in _instances(problem, seed, instances, vertices=6,
                                    requests=5):
            graph = generated.graph
            metric = Metric(graph)
            predictions = Perturbation(0.2, 0.2, 40, seed).apply(
                generated.requests, metric) or list(generated.requests)
            try:
                for u in range(len(predictions) + 1):
                    found = partial(predictions, u, solver, gamma, metric,
                                    problem, graph.root)
                    best = exact_min_cost_with_outliers(
                        problem, predictions, metric, u, graph.root)
                    bicriteria.append(
                        found.unsatisfied_count <= 2 * gamma * u and
                        found.cost <= 3 * gamma * best)
                opt = exact_optimum(problem, generated.requests, metric,
                                    graph.root)
            except OracleBudgetException:
                skipped += 1
                continue
            report = run_with_predictions(graph, generated.requests,
                                          predictions, problem,
                                          solver=solver, root=graph.root)
            structure.append(report.telescoping_holds() and
                             report.partial_budget_holds())
            for point in pareto_frontier(generated.requests, predictions,
                                         metric):
                major = report.first_major_with_u_at_most(
                    len(predictions) - point.size)
                if major is not None:
                    b_hat.append(report.b_hat_before(major) <=
                                 opt + point.matching_cost)
        recorder.tally('{0} partial bi-criteria'.format(problem),
                       bicriteria, skipped)
        recorder.tally('{0} telescoping and partial budget'.format(problem),
                       structure)
        recorder.tally('{0} b_hat below optimum plus error'.format(problem),
                       b_hat)
    return recorder.checks


def reductions_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Soft-capacitated reduction: distance scaling, playback never costs more
    than the transformed run, and the transformed optimum is within twice
    the capacitated optimum.  Priority classes partition the requests.
    """
    recorder = _Recorder('reductions')
    distances, playback, optimum, skipped = [], [], [], 0
    for generated in _instances(FACILITY_LOCATION, seed, instances,
                                vertices=6, requests=5, max_capacity=3):
        graph = generated.graph
        reduction = capacitate_reduce(graph)
        distances.append(reduction.preserves_distances())
        _, report, solution = capacitated_run(graph, generated.requests,
                                              generated.predictions)
        playback.append(solution.cost <= report.total_cost)
        clients = [r.vertex for r in generated.requests]
        try:
            transformed, _, _ = exact_facility_location(
                reduction.transformed, clients)
            original = exact_capacitated_fl(graph, clients)
        except OracleBudgetException:
            skipped += 1
            continue
        optimum.append(transformed <= 2 * original * reduction.scale)
    recorder.tally('scaled distances preserved', distances)
    recorder.tally('playback within transformed cost', playback)
    recorder.tally('transformed optimum within twice', optimum, skipped)

    lossless = []
    for generated in _instances(STEINER_FOREST, seed, instances, vertices=6,
                                requests=6):
        pairs = [Request.pair(*request.vertices, priority=1 + index % 3,
                              arrival_index=index)
                 for index, request in enumerate(generated.requests)]
        split = split_by_priority(pairs, 3)
        routed = [request for priority in sorted(split)
                  for request in split[priority]]
        lossless.append(
            sorted(routed, key=lambda r: r.arrival_index) == pairs and
            all(request.priority == priority
                for priority, members in split.items()
                for request in members))
    recorder.tally('priority split keeps every request once', lossless)
    return recorder.checks


def adversaries_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Lower-bound regressions of the adversarial constructions.
    """
    recorder = _Recorder('adversaries')
    ratios = [diamond_adversary(depth).ratio for depth in range(1, 5)]
    recorder.record('diamond ratios', ratios == [1.5, 2.0, 2.5, 3.0],
                    repr(ratios))
    transcript = fotakis_lb_run(2)
    opened = transcript.extra['opened']
    recorder.record('fotakis opens one facility per phase on the path',
                    opened == transcript.extra['path'] == [0, 1, 3],
                    repr(opened))
    recorder.record('fotakis alpha covers cost',
                    transcript.extra['alpha_total'] >= transcript.alg_cost)
    transcript = fotakis_lb_run(4)
    extra = transcript.extra
    size = len(extra['phase_last'])
    opt = transcript.opt_cost
    recorder.record(
        'fotakis last requests: actual linear, alpha logarithmic',
        opt is not None and
        4 * extra['subset_actual'] >= size * opt and
        extra['subset_alpha'] <= 8 * math.log2(size) * opt,
        'opened={0} actual={1} alpha={2} opt={3}'.format(
            extra['opened'], extra['subset_actual'], extra['subset_alpha'],
            opt))
    for k in (2, 4, 8):
        transcript = matching_lb_run(k)
        frontier = transcript.extra['frontier']
        recorder.record('matching k={0}'.format(k),
                        transcript.alg_cost == 2 * k and
                        transcript.opt_cost == 2 and (2, 0) in frontier,
                        'alg={0} opt={1}'.format(transcript.alg_cost,
                                                 transcript.opt_cost))
    for kind in ('st', 'fl'):
        adversary = nk_delta_adversary(8, 6, 4, 2, kind)
        transcript = adversary.play()
        sizes = adversary.cardinalities(transcript.requests)
        recorder.record('nk-delta {0} cardinalities'.format(kind),
                        sizes == (8, 6, 4, 2), repr(sizes))
    return recorder.checks


def oracles_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    Oracle consistency and lower bounds on every online solution.
    """
    recorder = _Recorder('oracles')
    for problem in (STEINER_TREE, STEINER_FOREST, FACILITY_LOCATION):
        below, skipped = [], 0
        for generated in _instances(problem, seed, instances, vertices=6,
                                    requests=4):
            graph = generated.graph
            metric = Metric(graph)
            try:
                opt = exact_optimum(problem, generated.requests, metric,
                                    graph.root)
            except OracleBudgetException:
                skipped += 1
                continue
            engine = make_engine(problem, Metric(graph), graph.root)
            list(_served(engine, generated.requests))
            report = run_with_predictions(graph, generated.requests,
                                          generated.predictions, problem,
                                          root=graph.root)
            below.append(opt <= engine.total_actual and
                         opt <= report.total_cost)
        recorder.tally('{0} optimum is a lower bound'.format(problem),
                       below, skipped)
    agree, skipped = [], 0
    for generated in _instances(STEINER_TREE, seed, instances, vertices=6,
                                requests=3):
        graph = generated.graph
        terminals = sorted(set(r.vertex for r in generated.requests) -
                           {graph.root})
        if not terminals:
            continue
        try:
            tree, _ = exact_steiner_tree(graph, terminals, graph.root)
            forest, _ = exact_steiner_forest(
                graph, [(graph.root, t) for t in terminals])
        except OracleBudgetException:
            skipped += 1
            continue
        agree.append(tree == forest)
    recorder.tally('rooted forest equals tree', agree, skipped)
    facility = []
    for generated in _instances(FACILITY_LOCATION, seed, instances,
                                vertices=6, requests=4):
        clients = [r.vertex for r in generated.requests]
        cost, opened, assignment = exact_facility_location(generated.graph,
                                                           clients)
        metric = Metric(generated.graph)
        facility.append(cost == sum(
            generated.graph.facility_cost(v) for v in opened) + sum(
                metric.distance(c, f) for c, f in zip(clients, assignment)))
    recorder.tally('facility optimum matches its witness', facility)
    star = WeightedGraph(range(14), [(0, v, 1) for v in range(1, 14)],
                         root=0)
    try:
        exact_steiner_tree(star, range(1, 14), 0)
        refused = False
    except OracleBudgetException:
        refused = True
    recorder.record('refuses terminals over budget', refused)
    return recorder.checks


def bench_suite(seed=0, instances=DEFAULT_INSTANCES):
    """
    End-to-end properties of runs: prediction-free runs match the bare
    engine, runs are deterministic, zero perturbation is the identity and
    perfect predictions keep the diamond ratio in a constant band while the
    bare engine's ratio grows.  Perturbation sweeps fit the excess cost
    against the matching cost and the ratio against the log of the outlier
    count.
    """
    recorder = _Recorder('bench')
    for problem in (STEINER_TREE, STEINER_FOREST, FACILITY_LOCATION):
        same, repeatable, identity = [], [], []
        for generated in _instances(problem, seed, instances, vertices=8,
                                    requests=6):
            graph = generated.graph
            metric = Metric(graph)
            engine = make_engine(problem, Metric(graph), graph.root)
            list(_served(engine, generated.requests))
            report = run_online(graph, generated.requests, problem,
                                root=graph.root)
            same.append(report.total_cost == engine.total_actual)
            predictions = Perturbation(0.3, 0.3, 30, seed).apply(
                generated.requests, metric)
            runs = [run_with_predictions(graph, generated.requests,
                                         predictions, problem,
                                         root=graph.root).to_json()
                    for _ in range(2)]
            repeatable.append(runs[0] == runs[1])
            identity.append(Perturbation(seed=seed).apply(
                generated.requests, metric) == [
                    r.with_index(None) for r in generated.requests])
        recorder.tally('{0} empty predictions match engine'.format(problem),
                       same)
        recorder.tally('{0} deterministic reports'.format(problem),
                       repeatable)
        recorder.tally('{0} zero perturbation'.format(problem), identity)
    framework, online = [], []
    for depth in range(1, 5):
        played = diamond_adversary(depth)
        online.append(played.ratio)
        graph = DiamondInstance(depth).graph()
        guided = run_with_predictions(graph, played.requests, played.requests,
                                      STEINER_TREE, root=graph.root)
        framework.append(float(guided.total_cost) / played.opt_cost)
    recorder.record('diamond ratio band with perfect predictions',
                    max(framework) <= 1.5 * min(framework),
                    repr(framework))
    recorder.record('diamond ratio grows without predictions',
                    online == sorted(online) and online[-1] > online[0],
                    repr(online))

    displaced, outlying, skipped = [], [], 0
    for generated in _instances(STEINER_TREE, seed, instances, vertices=8,
                                requests=6):
        graph = generated.graph
        metric = Metric(graph)
        try:
            opt = exact_optimum(STEINER_TREE, generated.requests, metric,
                                graph.root)
        except OracleBudgetException:
            skipped += 1
            continue
        for radius in _TREND_RADII:
            predictions = Perturbation(0, 0, radius, seed).apply(
                generated.requests, metric)
            point = min(pareto_frontier(generated.requests, predictions,
                                        metric), key=lambda p: p.delta)
            report = run_with_predictions(graph, generated.requests,
                                          predictions, STEINER_TREE,
                                          root=graph.root)
            displaced.append((point.matching_cost, report.total_cost, opt))
        for rate in _TREND_RATES:
            predictions = Perturbation(rate, rate, 0, seed).apply(
                generated.requests, metric)
            point = min((p for p in pareto_frontier(
                generated.requests, predictions, metric)
                if p.matching_cost == 0), key=lambda p: p.delta)
            report = run_with_predictions(graph, generated.requests,
                                          predictions, STEINER_TREE,
                                          root=graph.root)
            if opt > 0:
                outlying.append((point.delta,
                                 float(report.total_cost) / float(opt)))
    excess = displacement_trend(displaced)
    recorder.record('excess cost fitted linearly in D',
                    excess is None or is_finite(excess),
                    '{0!r}, {1} skipped'.format(excess, skipped))
    logarithmic = outlier_trend(outlying)
    recorder.record('ratio fitted against log delta',
                    logarithmic is None or is_finite(logarithmic),
                    repr(logarithmic))
    recorder.flag('ratio residual around log delta',
                  logarithmic is None or residual_holds(logarithmic),
                  repr(logarithmic))
    return recorder.checks


SUITES = {
    'graph': graph_suite,
    'outlier': outlier_suite,
    'engines': engines_suite,
    'prize_collecting': prize_collecting_suite,
    'framework': framework_suite,
    'reductions': reductions_suite,
    'adversaries': adversaries_suite,
    'oracles': oracles_suite,
    'bench': bench_suite,
}


def default_instances(name):
    return ACCEPTANCE_INSTANCES.get(name, DEFAULT_INSTANCES)


def run_suites(names=None, seed=0, instances=None):
    """
    Runs invariant suites.

    :param names: Suite names, or ``None`` (or ``['all']``) for every suite.
    :param int instances: Instances per suite, or ``None`` for each suite's
        default (see :data:`ACCEPTANCE_INSTANCES`).
    :returns: List of :class:`Check` tuples in suite order.
    """
    if not names or list(names) == ['all']:
        names = list(SUITES)
    for name in names:
        if name not in SUITES:
            raise ConfigException(104, name)
    checks = []
    for name in names:
        LOG.info('running suite %s', name)
        count = instances if instances is not None else \
            default_instances(name)
        checks.extend(SUITES[name](seed, count))
    return checks


def all_passed(checks):
    return all(check.passed for check in checks)
