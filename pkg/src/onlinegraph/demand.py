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
Problem-tagged requests and prediction sets, with their JSON file formats.

Request files are JSON lists in arrival order; prediction files are JSON lists
of the same entries without arrival indices.  Entries look like
``{"kind": "terminal", "vertex": 3}``, ``{"kind": "client", "vertex": 3}`` or
``{"kind": "pair", "s": 1, "t": 4, "priority": 2}``.
"""
import json
from collections import namedtuple

from ._common_util import (
    CLIENT,
    REQUEST_KINDS,
    REQUEST_KIND_FOR_PROBLEM,
    TERMINAL,
    TERMINAL_PAIR)
from .error import (
    FrameworkException,
    InstanceFormatException,
    OnlineGraphArgumentError)


class Request(namedtuple('Request',
                         ['kind', 'vertices', 'priority', 'arrival_index'])):
    """
    A single demand.  ``vertices`` is a 1-tuple for terminals and clients and
    an ``(s, t)`` tuple for terminal pairs.  Duplicate requests are distinct
    items.
    """
    __slots__ = ()

    def __new__(cls, kind, vertices, priority=1, arrival_index=None):
        if kind not in REQUEST_KINDS:
            raise OnlineGraphArgumentError(104, kind, 'kind', REQUEST_KINDS)
        vertices = tuple(vertices)
        if len(vertices) != (2 if kind == TERMINAL_PAIR else 1):
            raise OnlineGraphArgumentError(101, vertices)
        if isinstance(priority, bool) or not isinstance(priority, int) or \
                priority < 1:
            raise OnlineGraphArgumentError(101, priority)
        return super(Request, cls).__new__(
            cls, kind, vertices, priority, arrival_index)

    @classmethod
    def terminal(cls, vertex, arrival_index=None):
        return cls(TERMINAL, (vertex,), 1, arrival_index)

    @classmethod
    def pair(cls, s, t, priority=1, arrival_index=None):
        return cls(TERMINAL_PAIR, (s, t), priority, arrival_index)

    @classmethod
    def client(cls, vertex, arrival_index=None):
        return cls(CLIENT, (vertex,), 1, arrival_index)

    @property
    def vertex(self):
        """
        The single vertex of a terminal or client request.
        """
        return self.vertices[0]

    def with_index(self, arrival_index):
        return self._replace(arrival_index=arrival_index)

    def validate(self, graph):
        for vertex in self.vertices:
            graph.check_vertex(vertex)
        if self.kind == TERMINAL_PAIR and self.priority > graph.max_priority:
            raise OnlineGraphArgumentError(101, self.priority)

    def to_json(self):
        if self.kind == TERMINAL_PAIR:
            data = {'kind': self.kind, 's': self.vertices[0],
                    't': self.vertices[1]}
            if self.priority != 1:
                data['priority'] = self.priority
            return data
        return {'kind': self.kind, 'vertex': self.vertices[0]}

    @classmethod
    def from_json(cls, data, arrival_index=None):
        kind = data['kind']
        if kind == TERMINAL_PAIR:
            return cls(kind, (data['s'], data['t']), data.get('priority', 1),
                       arrival_index)
        return cls(kind, (data['vertex'],), 1, arrival_index)


def _parse_entries(data, source, indexed):
    if not isinstance(data, list):
        raise InstanceFormatException(101, source, 'expected a JSON list')
    items = []
    for position, entry in enumerate(data):
        try:
            items.append(Request.from_json(
                entry, position if indexed else None))
        except (KeyError, TypeError, AttributeError,
                OnlineGraphArgumentError) as ex:
            raise InstanceFormatException(103, position, source, ex)
    return items


def _read_json(path):
    with open(path) as infile:
        try:
            return json.load(infile)
        except ValueError as ex:
            raise InstanceFormatException(101, path, ex)


def _write_json(path, items):
    with open(path, 'w') as outfile:
        json.dump([item.to_json() for item in items], outfile, indent=2,
                  sort_keys=True)
        outfile.write('\n')


def index_requests(requests):
    """
    Returns the requests with arrival indices 0..n-1 in list order.
    """
    return [request.with_index(i) for i, request in enumerate(requests)]


def load_requests(path):
    """
    Reads a request sequence file.  Arrival indices follow file order.
    """
    return _parse_entries(_read_json(path), path, indexed=True)


def dump_requests(path, requests):
    _write_json(path, requests)


class PredictionSet(object):
    """
    Multiset of predicted requests.  All items share one kind.

    :param items: Iterable of :class:`Request`.  Arrival indices are dropped.
    :param str kind: Optional expected kind, checked against every item.
    """
    def __init__(self, items=(), kind=None):
        self._items = [item.with_index(None) for item in items]
        kinds = set(item.kind for item in self._items)
        if kind is not None:
            kinds.add(kind)
        if len(kinds) > 1:
            raise OnlineGraphArgumentError(106, *sorted(kinds)[:2])
        self._kind = kinds.pop() if kinds else kind

    @property
    def kind(self):
        return self._kind

    @property
    def items(self):
        return list(self._items)

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __getitem__(self, index):
        return self._items[index]

    def __eq__(self, other):
        return isinstance(other, PredictionSet) and \
            self._items == other._items

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'PredictionSet({0!r})'.format(self._items)

    def check_problem(self, problem):
        """
        Ensures the items can serve as predictions for ``problem``.
        """
        if self._items and self._kind != REQUEST_KIND_FOR_PROBLEM[problem]:
            raise FrameworkException(103, self._kind, problem)

    @classmethod
    def load(cls, path):
        return cls(_parse_entries(_read_json(path), path, indexed=False))

    def dump(self, path):
        _write_json(path, self._items)
