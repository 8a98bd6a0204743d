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
Static plots of run summaries.
"""
import logging
from collections import Counter

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

LOG = logging.getLogger(__name__)

FIGURE_SIZE = (6, 4)

_MARKERS = {'engine': 'o', 'framework': 's'}


def _number(value):
    if value in (None, ''):
        return None
    return float(value)


def _points(rows, x_key, fixed_key):
    """
    ``{algorithm: [(x, ratio)]}`` over the rows whose ``fixed_key`` equals
    its most common value (the smallest on ties).
    """
    rows = [row for row in rows if _number(row.get('ratio')) is not None]
    if not rows:
        return None, {}
    counts = Counter(_number(row[fixed_key]) for row in rows)
    fixed = min(counts, key=lambda value: (-counts[value], value))
    series = {}
    for row in rows:
        if _number(row[fixed_key]) != fixed:
            continue
        series.setdefault(row['algorithm'], []).append(
            (_number(row[x_key]), _number(row['ratio'])))
    return fixed, dict((name, sorted(points))
                       for name, points in series.items())


def _ratio_plot(rows, path, x_key, fixed_key, x_label, fixed_label):
    fixed, series = _points(rows, x_key, fixed_key)
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    for name in sorted(series):
        xs, ys = zip(*series[name])
        ax.plot(xs, ys, marker=_MARKERS.get(name, 'x'), label=name)
    ax.set_xlabel(x_label)
    ax.set_ylabel('ALG / OPT')
    if fixed is not None:
        ax.set_title('{0} = {1:g}'.format(fixed_label, fixed))
        ax.legend()
    ax.spines['right'].set_visible(False)
    ax.spines['top'].set_visible(False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    LOG.info('wrote %s', path)
    return path


def plot_ratio_vs_delta(rows, path):
    """
    Competitive ratio against the outlier count at the most common matching
    cost.

    :param rows: Summary rows (dicts with ``algorithm``, ``ratio``,
        ``delta`` and ``matching_cost``).
    :param path: Output image path.
    """
    return _ratio_plot(rows, path, 'delta', 'matching_cost', 'outliers',
                       'matching cost')


def plot_ratio_vs_matching_cost(rows, path):
    """
    Competitive ratio against the matching cost at the most common outlier
    count.
    """
    return _ratio_plot(rows, path, 'matching_cost', 'delta',
                       'matching cost', 'outliers')


def plot_frontier(points, path):
    """
    Scatter of one error frontier with its staircase.

    :param points: ``(delta, D)`` pairs sorted by delta.
    """
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    if points:
        deltas, costs = zip(*[(float(d), float(c)) for d, c in points])
        ax.step(deltas, costs, where='post', color='0.6')
        ax.scatter(deltas, costs, color='k', zorder=3)
    ax.set_xlabel('outliers')
    ax.set_ylabel('matching cost')
    ax.spines['right'].set_visible(False)
    ax.spines['top'].set_visible(False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    LOG.info('wrote %s', path)
    return path
