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
Module that contains exception messages for the onlinegraph library.
"""
ARGUMENT_ERROR = {
    100: 'A general onlinegraph argument error was raised.',
    101: 'Invalid argument: {0}',
    102: 'Argument {0} is not an instance of expected type: {1}',
    103: 'Argument {0} must be >= 0.  Found: {1}',
    104: 'Invalid value ({0}) for {1}.  Must be one of {2}',
    105: 'Matching size {0} exceeds matrix dimensions {1}x{2}.',
    106: 'Requests of different kinds cannot be compared: {0} and {1}.',
    107: 'Matrix entries must be >= 0 or infinite.  Found: {0}',
    108: 'Subset index {0} does not refer to a served request.',
    109: 'Perturbation rate {0} must lie in [0, 1].  Found: {1}',
}

GRAPH = {
    100: 'A general graph error was raised.',
    101: 'Unknown vertex id: {0}',
    102: 'Vertex {0} is disconnected from {1}.  The instance is infeasible.',
    103: 'Self-loop on vertex {0} is not permitted.',
    104: 'Edge ({0}, {1}) has negative cost {2}.',
    105: 'Edge ({0}, {1}) has invalid priority {2}.  Priorities start at 1.',
    106: 'Vertex {0} has negative facility cost {1}.',
    107: 'Vertex {0} has invalid capacity {1}.  Capacities must be positive '
         'integers.',
    108: 'Invalid scale denominator: {0}',
    109: 'Duplicate vertex id: {0}',
    110: 'Unknown edge id: {0}',
}

INSTANCE_FORMAT = {
    100: 'A general instance format error was raised.',
    101: 'Malformed file {0}: {1}',
    102: 'Missing field {0} in {1}',
    103: 'Invalid request entry at position {0} in {1}: {2}',
    104: 'Malformed CSV file {0} at line {1}: {2}',
}

OUTLIER = {
    100: 'A general outlier error was raised.',
    101: 'Unknown request kind: {0}',
}

ENGINE = {
    100: 'A general engine error was raised.',
    101: 'The graph carries no facility costs.  Facility location requires '
         'facility-cost data.',
    102: 'Request kind {0} cannot be served by {1}.',
    103: 'No facility is reachable from the client at vertex {0}.',
    104: 'Unknown engine name: {0}',
}

SOLVER = {
    100: 'A general prize-collecting solver error was raised.',
    101: 'Penalty must be >= 0.  Found: {0}',
    102: 'Request at position {0} cannot be satisfied although its penalty '
         'is infinite.',
    103: 'Linear program failed: {0}',
    104: 'A rooted instance requires a root vertex.',
    105: 'Unknown solver name: {0}',
    106: 'Facility location requires facility costs.',
    107: 'Request kind {0} does not match problem {1}.',
}

FRAMEWORK = {
    100: 'A general framework error was raised.',
    101: 'Outlier budget u must be in [0, {0}].  Found: {1}',
    102: 'No penalty exponent up to {0} leaves at most {1} predicted '
         'requests unsatisfied.',
    103: 'Prediction kind {0} does not match problem {1}.',
    104: 'Unknown problem kind: {0}',
}

REDUCTION = {
    100: 'A general reduction error was raised.',
    101: 'Vertex {0} has capacity {1}.  Capacities must be >= 1.',
    102: 'Vertex {0} lacks a facility cost or a capacity.',
    103: 'Priority {0} is outside [1..{1}].',
    104: 'Pair ({0}, {1}) of priority {2} is disconnected in its priority '
         'subgraph.',
    105: 'Unknown playback action: {0}',
    106: 'Playback refers to vertex {0} which is not a facility copy.',
}

ADVERSARY = {
    100: 'A general adversary error was raised.',
    101: 'Violated: n + k - delta1 - delta2 = {0} must be even.',
    102: 'Violated: l = (n + k - delta1 - delta2) / 2 = {0} must be >= 0.',
    103: 'Violated: n - delta1 = {0} must equal k - delta2 = {1}.',
    104: 'Violated: n - (m^2 + m) = {0} must be >= 0.',
    105: 'Violated: depth {0} must be >= 0.',
    106: 'Violated: k = {0} must be >= 2.',
    107: 'Violated: m = {0} must be >= 2.',
    108: 'Unknown adversary variant or kind: {0}',
    109: 'Violated: delta1, delta2, n, k must all be >= 0.  Found: {0}',
}

ORACLE = {
    100: 'A general oracle error was raised.',
    101: 'Oracle budget exceeded: {0} = {1} > limit {2}.',
    102: 'The instance is infeasible for the exact solver: {0}',
}

CONFIG = {
    100: 'A general configuration error was raised.',
    101: 'Unknown configuration key: {0}',
    102: 'Missing required configuration key: {0}',
    103: 'Invalid value ({1}) for {0}.  Must be one of {2}',
    104: 'Unknown verification suite: {0}',
    105: 'Unknown instance family: {0}',
}
