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
Command-line harness: ``onlinegraph gen | perturb | run | error | verify |
report``.

Every command is deterministic for a given seed.  ``run`` writes its
timestamp only to ``metadata.json``, so two runs of the same configuration
produce identical files otherwise.
"""
import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from . import __version__
from ._common_util import PROBLEM_KINDS, format_cost, parse_cost
from .config import ALGORITHMS, SOLVER_NAMES, ExperimentConfig, worker_count
from .demand import PredictionSet, dump_requests, load_requests
from .error import (
    InstanceFormatException,
    OnlineGraphArgumentError,
    OnlineGraphException,
    OracleBudgetException)
from .framework import run_online, run_with_predictions
from .generators import FAMILIES, Perturbation, generate
from .graph import Metric, WeightedGraph
from .oracles import exact_optimum
from .outlier import pareto_frontier
from .plotting import (
    plot_frontier,
    plot_ratio_vs_delta,
    plot_ratio_vs_matching_cost)
from .prize_collecting import get_solver
from .result import ChargeLog
from .trends import trends_from_rows, write_trends_csv
from .verify import (
    ACCEPTANCE_INSTANCES,
    DEFAULT_INSTANCES,
    SUITES,
    all_passed,
    run_suites)

LOG = logging.getLogger(__name__)

SUMMARY_FIELDS = ['algorithm', 'repetition', 'requests', 'total_cost',
                  'optimum', 'ratio', 'delta', 'matching_cost']

AGGREGATE_FIELDS = ['algorithm', 'delta', 'matching_cost', 'episodes',
                    'mean_ratio', 'max_ratio']

# Run settings that may be given as flags instead of a config file.
_RUN_FLAGS = ('problem', 'instance', 'requests', 'predictions', 'algorithm',
              'gamma', 'solver', 'repetitions', 'out', 'seed', 'root')


def _parse_params(pairs):
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep or not key:
            raise OnlineGraphArgumentError(101, pair)
        params[key] = value
    return params


def _open_csv(path):
    return open(path, 'w', newline='')


# gen


def cmd_gen(args):
    """
    Writes ``instance.json``, ``requests.json`` and ``predictions.json`` (and
    ``transcript.csv`` for adversary families) into ``--out``.
    """
    params = _parse_params(args.param)
    if args.problem is not None:
        params['problem'] = args.problem
    generated = generate(args.family, params, args.seed)
    os.makedirs(args.out, exist_ok=True)
    generated.graph.dump(os.path.join(args.out, 'instance.json'))
    dump_requests(os.path.join(args.out, 'requests.json'),
                  generated.requests)
    PredictionSet(generated.predictions).dump(
        os.path.join(args.out, 'predictions.json'))
    if generated.transcript is not None:
        with _open_csv(os.path.join(args.out, 'transcript.csv')) as handle:
            generated.transcript.write_csv(handle)
    LOG.info('wrote %s instance to %s', args.family, args.out)
    return 0


# perturb


def cmd_perturb(args):
    graph = WeightedGraph.load(args.instance)
    requests = load_requests(args.requests)
    perturbation = Perturbation(args.drop, args.add, args.radius, args.seed)
    predictions = perturbation.apply(requests, Metric(graph))
    PredictionSet(predictions).dump(args.out)
    LOG.info('wrote %d predictions to %s', len(predictions), args.out)
    return 0


# run


def _load_inputs(config):
    graph = WeightedGraph.load(config['instance'])
    requests = load_requests(config['requests'])
    for request in requests:
        request.validate(graph)
    predictions = PredictionSet()
    if config['predictions'] is not None:
        predictions = PredictionSet.load(config['predictions'])
        predictions.check_problem(config['problem'])
    return graph, requests, predictions.items


def run_episode(episode):
    """
    Runs one episode in a worker.

    :param tuple episode: ``(config json, algorithm, repetition)``.
    :returns: Dict with the report JSON, the framework trace and the
        per-request charge log as CSV text, and the totals.
    """
    data, algorithm, repetition = episode
    config = ExperimentConfig.from_json(data)
    graph, requests, predictions = _load_inputs(config)
    problem = config['problem']
    root = config['root']
    if algorithm == 'engine':
        report = run_online(graph, requests, problem, root=root)
    else:
        report = run_with_predictions(
            graph, requests, predictions, problem,
            solver=get_solver(problem, config['solver']),
            gamma=config['gamma'], root=root)
    trace = io.StringIO()
    report.write_trace_csv(trace)
    charges = ChargeLog()
    for record in sorted((record for engine in report.engines
                          for record in engine.log),
                         key=lambda record: record.arrival_index):
        charges.append(record)
    charge_trace = io.StringIO()
    charges.write_csv(charge_trace)
    return {
        'algorithm': algorithm,
        'repetition': repetition,
        'report': report.to_json(),
        'trace': trace.getvalue(),
        'charges': charge_trace.getvalue(),
        'total_cost': report.total_cost,
        'checks': report.checks(),
    }


def _optimum(config, graph, requests):
    root = config['root'] if config['root'] is not None else graph.root
    try:
        return exact_optimum(config['problem'], requests, Metric(graph), root)
    except OracleBudgetException as ex:
        LOG.info('no exact optimum: %s', ex)
        return None


def _ratio(cost, optimum):
    if optimum is None:
        return ''
    if optimum == 0:
        return '1.000000' if cost == 0 else 'inf'
    return '{0:.6f}'.format(float(cost) / float(optimum))


def execute_run(config):
    """
    Runs every episode of a configuration and writes the run directory:
    ``config.json``, ``frontier.csv``, ``summary.csv``, ``metadata.json`` and
    one ``<algorithm>-<repetition>/`` directory with ``report.json``,
    ``trace.csv`` and ``charges.csv`` per episode.

    :param ExperimentConfig config: A validated configuration.
    :returns: 0 when every run check held, 1 otherwise.
    """
    out = config['out']
    os.makedirs(out, exist_ok=True)
    config.dump(os.path.join(out, 'config.json'))
    graph, requests, predictions = _load_inputs(config)
    frontier = pareto_frontier(requests, predictions, Metric(graph))
    with _open_csv(os.path.join(out, 'frontier.csv')) as handle:
        frontier.write_csv(handle)
    closest = min(frontier, key=lambda point: point.delta)
    optimum = _optimum(config, graph, requests)

    algorithms = ['engine', 'framework'] if config['algorithm'] == 'both' \
        else [config['algorithm']]
    episodes = [(config.to_json(), algorithm, repetition)
                for algorithm in algorithms
                for repetition in range(config['repetitions'])]
    workers = worker_count()
    if workers == 1:
        results = [run_episode(episode) for episode in episodes]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_episode, episodes))

    passed = True
    rows = []
    for result in results:
        folder = os.path.join(out, '{0}-{1}'.format(result['algorithm'],
                                                     result['repetition']))
        os.makedirs(folder, exist_ok=True)
        with open(os.path.join(folder, 'report.json'), 'w') as handle:
            json.dump(result['report'], handle, indent=2, sort_keys=True)
            handle.write('\n')
        with _open_csv(os.path.join(folder, 'trace.csv')) as handle:
            handle.write(result['trace'])
        with _open_csv(os.path.join(folder, 'charges.csv')) as handle:
            handle.write(result['charges'])
        passed = passed and all(result['checks'].values())
        rows.append({
            'algorithm': result['algorithm'],
            'repetition': result['repetition'],
            'requests': len(requests),
            'total_cost': format_cost(result['total_cost']),
            'optimum': '' if optimum is None else format_cost(optimum),
            'ratio': _ratio(result['total_cost'], optimum),
            'delta': closest.delta,
            'matching_cost': format_cost(closest.matching_cost),
        })
    with _open_csv(os.path.join(out, 'summary.csv')) as handle:
        writer = csv.DictWriter(handle, SUMMARY_FIELDS, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    with open(os.path.join(out, 'metadata.json'), 'w') as handle:
        json.dump({
            'created': datetime.now(timezone.utc).isoformat(),
            'version': __version__,
            'workers': workers,
            'episodes': len(episodes),
        }, handle, indent=2, sort_keys=True)
        handle.write('\n')
    LOG.info('wrote %d episodes to %s', len(episodes), out)
    return 0 if passed else 1


def cmd_run(args):
    if args.config is not None:
        config = ExperimentConfig.load(args.config)
    else:
        settings = dict((key, getattr(args, key)) for key in _RUN_FLAGS
                        if getattr(args, key) is not None)
        config = ExperimentConfig(**settings)
    return execute_run(config)


# error


def cmd_error(args):
    graph = WeightedGraph.load(args.instance)
    requests = load_requests(args.requests)
    predictions = PredictionSet.load(args.predictions)
    frontier = pareto_frontier(requests, predictions, Metric(graph))
    if args.out is None:
        frontier.write_csv(sys.stdout)
    else:
        with _open_csv(args.out) as handle:
            frontier.write_csv(handle)
    return 0


# verify


def cmd_verify(args):
    checks = run_suites(args.suites, args.seed, args.instances)
    for check in checks:
        print('{0:<17} {1:<5} {2}{3}'.format(
            check.suite, 'PASS' if check.passed else 'FAIL', check.name,
            ' ({0})'.format(check.detail) if check.detail else ''))
    return 0 if all_passed(checks) else 1


# report


def read_summary(path):
    """
    Reads a ``summary.csv``.

    :raises InstanceFormatException: Naming the line of a malformed row.
    """
    with open(path, newline='') as handle:
        reader = csv.DictReader(handle)
        rows = []
        for row in reader:
            missing = [name for name in SUMMARY_FIELDS
                       if row.get(name) is None]
            if missing:
                raise InstanceFormatException(
                    104, path, reader.line_num,
                    'missing ' + ', '.join(missing))
            rows.append(row)
    return rows


def read_frontier(path):
    with open(path, newline='') as handle:
        reader = csv.DictReader(handle)
        points = []
        for row in reader:
            try:
                points.append((int(row['delta']), parse_cost(row['D'])))
            except (KeyError, TypeError, ValueError) as ex:
                raise InstanceFormatException(104, path, reader.line_num, ex)
    return points


def aggregate(rows):
    """
    Mean and max ratio per ``(algorithm, delta, matching_cost)``; rows
    without a ratio are left out.
    """
    groups = {}
    for row in rows:
        if row['ratio'] == '':
            continue
        key = (row['algorithm'], int(row['delta']),
               parse_cost(row['matching_cost']))
        groups.setdefault(key, []).append(float(row['ratio']))
    return [{
        'algorithm': algorithm,
        'delta': delta,
        'matching_cost': format_cost(cost),
        'episodes': len(ratios),
        'mean_ratio': '{0:.6f}'.format(sum(ratios) / len(ratios)),
        'max_ratio': '{0:.6f}'.format(max(ratios)),
    } for (algorithm, delta, cost), ratios in sorted(groups.items())]


def cmd_report(args):
    rows = []
    for run in args.runs:
        rows.extend(read_summary(os.path.join(run, 'summary.csv')))
    out = args.out if args.out is not None else args.runs[0]
    os.makedirs(out, exist_ok=True)
    with _open_csv(os.path.join(out, 'aggregate.csv')) as handle:
        writer = csv.DictWriter(handle, AGGREGATE_FIELDS,
                                lineterminator='\n')
        writer.writeheader()
        writer.writerows(aggregate(rows))
    with _open_csv(os.path.join(out, 'trends.csv')) as handle:
        write_trends_csv(trends_from_rows(rows), handle)
    plot_ratio_vs_delta(rows, os.path.join(out, 'ratio_vs_delta.png'))
    plot_ratio_vs_matching_cost(
        rows, os.path.join(out, 'ratio_vs_matching_cost.png'))
    plot_frontier(read_frontier(os.path.join(args.runs[0], 'frontier.csv')),
                  os.path.join(out, 'frontier.png'))
    return 0


# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog='onlinegraph',
        description='Online graph algorithms with predictions.')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='log at DEBUG level')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    gen = commands.add_parser('gen', help='generate an instance family')
    gen.add_argument('family', choices=sorted(FAMILIES))
    gen.add_argument('--param', action='append', default=[],
                     metavar='KEY=VALUE', help='family parameter')
    gen.add_argument('--problem', choices=PROBLEM_KINDS)
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--out', required=True, help='output directory')
    gen.set_defaults(func=cmd_gen)

    perturb = commands.add_parser('perturb',
                                  help='derive predictions from requests')
    perturb.add_argument('--instance', required=True)
    perturb.add_argument('--requests', required=True)
    perturb.add_argument('--drop', type=float, default=0)
    perturb.add_argument('--add', type=float, default=0)
    perturb.add_argument('--radius', type=parse_cost, default=0)
    perturb.add_argument('--seed', type=int, default=0)
    perturb.add_argument('--out', required=True, help='predictions file')
    perturb.set_defaults(func=cmd_perturb)

    run = commands.add_parser('run', help='run engines and the framework')
    run.add_argument('--config', help='config.json to run instead of flags')
    run.add_argument('--problem', choices=PROBLEM_KINDS)
    run.add_argument('--instance')
    run.add_argument('--requests')
    run.add_argument('--predictions')
    run.add_argument('--algorithm', choices=ALGORITHMS)
    run.add_argument('--gamma', type=parse_cost)
    run.add_argument('--solver', choices=SOLVER_NAMES)
    run.add_argument('--repetitions', type=int)
    run.add_argument('--seed', type=int)
    run.add_argument('--root', type=int)
    run.add_argument('--out', help='run directory')
    run.set_defaults(func=cmd_run)

    error = commands.add_parser('error', help='prediction error frontier')
    error.add_argument('--instance', required=True)
    error.add_argument('--requests', required=True)
    error.add_argument('--predictions', required=True)
    error.add_argument('--out', help='frontier CSV (default: stdout)')
    error.set_defaults(func=cmd_error)

    verify = commands.add_parser('verify', help='run invariant suites')
    verify.add_argument('suites', nargs='*',
                        help='suite names, default all: ' +
                        ', '.join(SUITES))
    verify.add_argument('--seed', type=int, default=0)
    verify.add_argument(
        '--instances', type=int, default=None,
        help='instances per suite, default {0} ({1})'.format(
            DEFAULT_INSTANCES, ', '.join(
                '{0} for {1}'.format(count, name) for name, count in
                sorted(ACCEPTANCE_INSTANCES.items()))))
    verify.set_defaults(func=cmd_verify)

    report = commands.add_parser('report',
                                 help='aggregate runs and draw plots')
    report.add_argument('runs', nargs='+', help='run directories')
    report.add_argument('--out', help='output directory')
    report.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    """
    Runs one command.

    :returns: The exit code; 2 on library errors and unreadable files.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.func(args)
    except (OnlineGraphException, OSError) as ex:
        print('onlinegraph: error: {0}'.format(ex), file=sys.stderr)
        return 2
