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
Module containing shared fixtures and helpers used for unit testing.
"""
from onlinegraph.demand import Request
from onlinegraph.graph import WeightedGraph


def path_graph(length, cost=1, facility_cost=None, root=0):
    """
    Path ``0 - 1 - ... - length`` with uniform edge costs.
    """
    facility_costs = None
    if facility_cost is not None:
        facility_costs = dict((v, facility_cost) for v in range(length + 1))
    return WeightedGraph(range(length + 1),
                         [(v, v + 1, cost) for v in range(length)],
                         facility_costs, root=root)


def star(spokes, cost=1, facility_cost=None):
    """
    Star with center 0 and leaves ``1..spokes``.
    """
    facility_costs = None
    if facility_cost is not None:
        facility_costs = dict((v, facility_cost) for v in range(spokes + 1))
    return WeightedGraph(range(spokes + 1),
                         [(0, v, cost) for v in range(1, spokes + 1)],
                         facility_costs, root=0)


def square():
    """
    Four-cycle ``0-1-2-3-0`` with costs 1, 2, 3, 4 and a diagonal 0-2 of
    cost 4.
    """
    return WeightedGraph(range(4), [(0, 1, 1), (1, 2, 2), (2, 3, 3),
                                    (3, 0, 4), (0, 2, 4)], root=0)


def terminals(*vertices):
    return [Request.terminal(v, i) for i, v in enumerate(vertices)]


def clients(*vertices):
    return [Request.client(v, i) for i, v in enumerate(vertices)]


def pairs(*vertex_pairs):
    return [Request.pair(s, t, 1, i)
            for i, (s, t) in enumerate(vertex_pairs)]
