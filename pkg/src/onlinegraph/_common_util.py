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
Module containing miscellaneous functions and constants used throughout the
library.
"""
from fractions import Fraction
from numbers import Integral, Rational

from .error import OnlineGraphArgumentError

# Library Constants

INFINITY = float('inf')

# Problem kinds

STEINER_TREE = 'steiner_tree'
STEINER_FOREST = 'steiner_forest'
FACILITY_LOCATION = 'facility_location'
PROBLEM_KINDS = (STEINER_TREE, STEINER_FOREST, FACILITY_LOCATION)

# Request kinds

TERMINAL = 'terminal'
TERMINAL_PAIR = 'pair'
CLIENT = 'client'
REQUEST_KINDS = (TERMINAL, TERMINAL_PAIR, CLIENT)

REQUEST_KIND_FOR_PROBLEM = {
    STEINER_TREE: TERMINAL,
    STEINER_FOREST: TERMINAL_PAIR,
    FACILITY_LOCATION: CLIENT,
}

# Declared approximation factors of the bundled prize-collecting solvers

DEFAULT_GAMMA = {
    STEINER_TREE: 2,
    STEINER_FOREST: 3,
    FACILITY_LOCATION: 3,
}

# Oracle budget

MAX_ORACLE_TERMINALS = 12
MAX_ORACLE_EDGES = 16
MAX_ORACLE_FACILITIES = 15
MAX_ORACLE_FRONTIER_SIDE = 6

WORKERS_ENV_VAR = 'ONLINEGRAPH_WORKERS'

# Argument Types

COST_TYPES = (Integral, Rational, float)


def is_infinite(value):
    """
    Returns True if the value is the disconnection / infinite-cost sentinel.
    """
    return isinstance(value, float) and value == INFINITY


def exact(value):
    """
    Normalizes a cost so that integral values become ``int`` and sub-unit
    values stay exact ``Fraction`` instances.  The infinity sentinel passes
    through unchanged.

    :param value: An int, Fraction, or integral float.
    :returns: An int, a Fraction, or ``INFINITY``.
    """
    if is_infinite(value):
        return INFINITY
    if isinstance(value, bool):
        raise OnlineGraphArgumentError(102, 'cost', COST_TYPES)
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, float):
        value = Fraction(value)
    if isinstance(value, Rational):
        value = Fraction(value)
        if value.denominator == 1:
            return int(value.numerator)
        return value
    raise OnlineGraphArgumentError(102, 'cost', COST_TYPES)


def floor_log2(value):
    """
    Exact ``floor(log2(value))`` for a positive int or Fraction.
    """
    value = Fraction(value)
    if value <= 0:
        raise OnlineGraphArgumentError(101, 'log2 of {0}'.format(value))
    num, den = value.numerator, value.denominator
    k = num.bit_length() - den.bit_length()
    # 2**k <= num/den < 2**(k+1), adjusted by at most one step
    if k >= 0:
        if num < den << k:
            k -= 1
    elif num << -k < den:
        k -= 1
    return k


def ceil_log2(value):
    """
    Exact ``ceil(log2(value))`` for a positive int or Fraction.
    """
    k = floor_log2(value)
    if Fraction(2) ** k == Fraction(value):
        return k
    return k + 1


def power_of_two(exponent):
    """
    Returns ``2**exponent`` exactly, as an int for nonnegative exponents and
    a Fraction otherwise.
    """
    if exponent >= 0:
        return 1 << exponent
    return Fraction(1, 1 << -exponent)


def positive_part(value):
    """
    Returns ``max(value, 0)``; ``-INFINITY`` maps to 0.
    """
    return value if value > 0 else 0


def validate_args(arg_types, **kwargs):
    """
    Ensures that each keyword argument is an instance of its declared type
    and, for numbers, nonnegative.

    :param dict arg_types: Maps argument names to a type or tuple of types.
    """
    for key, val in kwargs.items():
        if key not in arg_types:
            raise OnlineGraphArgumentError(101, key)
        types = arg_types[key]
        if (not isinstance(val, types) or
                (isinstance(val, bool) and bool not in _as_tuple(types))):
            raise OnlineGraphArgumentError(102, key, types)
        if (isinstance(val, COST_TYPES) and not isinstance(val, bool)
                and val < 0):
            raise OnlineGraphArgumentError(103, key, val)


def _as_tuple(types):
    return types if isinstance(types, tuple) else (types,)


def format_cost(value):
    """
    Renders a cost for CSV/JSON output: ints as ints, fractions as
    ``"p/q"`` strings and the infinity sentinel as ``"inf"``.
    """
    if is_infinite(value):
        return 'inf'
    value = exact(value)
    if isinstance(value, Fraction):
        return '{0}/{1}'.format(value.numerator, value.denominator)
    return value


def parse_cost(value):
    """
    Inverse of :func:`format_cost`.
    """
    if value == 'inf':
        return INFINITY
    if isinstance(value, str):
        return exact(Fraction(value))
    return exact(value)
