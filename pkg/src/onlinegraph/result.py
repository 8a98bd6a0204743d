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
Per-request charge log kept by every online engine.
"""
import csv
from collections import namedtuple

from ._common_util import format_cost
from .error import OnlineGraphArgumentError

ServeRecord = namedtuple('ServeRecord', [
    'arrival_index',
    'request',
    'actual_cost',
    'charged_cost',
    'bought_edges',
    'opened_facilities',
    'connection',
])


class ByArrival(int):
    """
    Wraps an arrival index so that :class:`ChargeLog` looks a record up by
    the request's arrival index rather than by log position.

    .. code-block:: python

        log[ByArrival(7)]   # record of the request with arrival index 7
        log[7]              # eighth record in the log
    """
    pass


class ChargeLog(object):
    """
    Ordered collection of :class:`ServeRecord` entries.  Records can be
    accessed by log position, by slice, or by arrival index using
    :class:`ByArrival`.  Subset totals are answered from the log without
    re-simulating the engine.
    """
    def __init__(self):
        self._records = []
        self._by_arrival = {}

    def append(self, record):
        self._records.append(record)
        self._by_arrival[record.arrival_index] = record

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __getitem__(self, key):
        if isinstance(key, ByArrival):
            try:
                return self._by_arrival[int(key)]
            except KeyError:
                raise OnlineGraphArgumentError(108, int(key))
        return self._records[key]

    @property
    def arrival_indices(self):
        return [record.arrival_index for record in self._records]

    def total(self, subset=None, field='charged_cost'):
        """
        Sums one cost field over the records.

        :param subset: Optional iterable of arrival indices.  Defaults to all
            records.
        :param str field: ``charged_cost`` or ``actual_cost``.
        :returns: The exact sum.
        """
        if subset is None:
            return sum(getattr(record, field) for record in self._records)
        return sum(getattr(self[ByArrival(index)], field)
                   for index in subset)

    def write_csv(self, stream):
        """
        Writes one row per request: ``arrival_index, actual_cost,
        charged_cost, opened_facilities/bought_edges``.  Element lists are
        joined with ``;``.
        """
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['arrival_index', 'actual_cost', 'charged_cost',
                         'opened_facilities/bought_edges'])
        for record in self._records:
            elements = ['f{0}'.format(v) for v in record.opened_facilities] + \
                ['e{0}'.format(e) for e in record.bought_edges]
            writer.writerow([record.arrival_index,
                             format_cost(record.actual_cost),
                             format_cost(record.charged_cost),
                             ';'.join(elements)])
