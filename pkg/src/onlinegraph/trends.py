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
Least-squares trends of the competitive ratio against the prediction error.

Two sweeps are fitted.  With displacement only (no outliers) the excess cost
``ALG - C0 * OPT`` is fitted linearly against the matching cost ``D``, where
``C0`` is the smallest ratio of the sweep.  With drops and additions only
(``D = 0``) the ratio is fitted against ``a * log(delta) + b``.
"""
import csv
import logging
import math
from collections import namedtuple

import numpy as np

from ._common_util import parse_cost

LOG = logging.getLogger(__name__)

DISPLACEMENT = 'displacement'
OUTLIERS = 'outliers'

#: Largest root-mean-square residual of the logarithmic fit, relative to the
#: mean ratio of the sweep.
LOG_RESIDUAL_LIMIT = 0.25

Trend = namedtuple('Trend', ['name', 'points', 'slope', 'intercept',
                             'r_squared', 'residual', 'mean'])

TREND_FIELDS = ['algorithm'] + list(Trend._fields) + ['holds']


def fit_line(name, xs, ys):
    """
    Fits ``y = slope * x + intercept``.

    :returns: A :class:`Trend`, or ``None`` with fewer than two distinct
        ``x`` values.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(np.unique(xs)) < 2:
        return None
    slope, intercept = np.polyfit(xs, ys, 1)
    residuals = ys - (slope * xs + intercept)
    ss_res = float(np.sum(residuals ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return Trend(name, len(ys), float(slope), float(intercept), r_squared,
                 math.sqrt(ss_res / len(ys)), float(ys.mean()))


def displacement_trend(samples):
    """
    :param samples: ``(D, ALG, OPT)`` triples of runs without outliers.
        Triples with ``OPT = 0`` are left out.
    """
    samples = [(float(d), float(alg), float(opt))
               for d, alg, opt in samples if opt > 0]
    if not samples:
        return None
    c0 = min(alg / opt for _, alg, opt in samples)
    return fit_line(DISPLACEMENT, [d for d, _, _ in samples],
                    [alg - c0 * opt for _, alg, opt in samples])


def outlier_trend(samples):
    """
    :param samples: ``(delta, ratio)`` pairs of runs with ``D = 0``.  Pairs
        with ``delta = 0`` are left out.
    """
    samples = [(delta, float(ratio)) for delta, ratio in samples if delta > 0]
    return fit_line(OUTLIERS, [math.log(delta) for delta, _ in samples],
                    [ratio for _, ratio in samples])


def is_finite(trend):
    return trend is not None and all(math.isfinite(value) for value in (
        trend.slope, trend.intercept, trend.r_squared, trend.residual))


def residual_holds(trend, limit=LOG_RESIDUAL_LIMIT):
    """
    True iff the fit residual is at most ``limit`` times the mean value.
    """
    return is_finite(trend) and trend.residual <= limit * abs(trend.mean)


def trend_holds(trend):
    if trend.name == OUTLIERS:
        return residual_holds(trend)
    return is_finite(trend)


def trends_from_rows(rows):
    """
    Fits both trends per algorithm over ``summary.csv`` rows; rows without
    an optimum are left out.

    :returns: List of ``(algorithm, Trend)`` for the fits that had enough
        distinct points.
    """
    sweeps = {}
    for row in rows:
        if row['optimum'] == '' or row['ratio'] == '':
            continue
        displacement, outliers = sweeps.setdefault(row['algorithm'],
                                                   ([], []))
        delta = int(row['delta'])
        matching_cost = parse_cost(row['matching_cost'])
        if delta == 0:
            displacement.append((matching_cost,
                                 parse_cost(row['total_cost']),
                                 parse_cost(row['optimum'])))
        elif matching_cost == 0 and row['ratio'] != 'inf':
            outliers.append((delta, row['ratio']))
    fitted = []
    for algorithm in sorted(sweeps):
        displacement, outliers = sweeps[algorithm]
        for trend in (displacement_trend(displacement),
                      outlier_trend(outliers)):
            if trend is not None:
                fitted.append((algorithm, trend))
    return fitted


def write_trends_csv(fitted, stream):
    """
    Writes one row per fitted trend and logs a warning for every trend that
    does not hold.
    """
    writer = csv.DictWriter(stream, TREND_FIELDS, lineterminator='\n')
    writer.writeheader()
    for algorithm, trend in fitted:
        holds = trend_holds(trend)
        if not holds:
            LOG.warning('%s %s trend does not hold: %r', algorithm,
                        trend.name, trend)
        row = dict(trend._asdict(), algorithm=algorithm, holds=int(holds))
        for field in ('slope', 'intercept', 'r_squared', 'residual',
                      'mean'):
            row[field] = '{0:.6f}'.format(row[field])
        writer.writerow(row)
