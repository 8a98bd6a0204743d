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
Experiment configuration for the command-line harness.
"""
import json
import os
from fractions import Fraction

from ._common_util import (
    PROBLEM_KINDS,
    WORKERS_ENV_VAR,
    format_cost,
    parse_cost,
    validate_args)
from .error import ConfigException

NONETYPE = type(None)

ALGORITHMS = ('engine', 'framework', 'both')
SOLVER_NAMES = ('approx', 'exact')

CONFIG_ARG_TYPES = {
    'problem': str,
    'instance': str,
    'requests': str,
    'predictions': (str, NONETYPE),
    'algorithm': str,
    'gamma': (int, Fraction, NONETYPE),
    'solver': str,
    'repetitions': int,
    'out': str,
    'seed': int,
    'root': (int, NONETYPE),
}

_REQUIRED = ('problem', 'instance', 'requests')

_DEFAULTS = {
    'predictions': None,
    'algorithm': 'both',
    'gamma': None,
    'solver': 'approx',
    'repetitions': 1,
    'out': 'runs',
    'seed': 0,
    'root': None,
}

_CHOICES = {
    'problem': PROBLEM_KINDS,
    'algorithm': ALGORITHMS,
    'solver': SOLVER_NAMES,
}


class ExperimentConfig(dict):
    """
    Encapsulates the settings of one ``run`` invocation.  It is a dict, so
    settings are read and changed with the usual dict syntax; every change
    should be followed by :meth:`validate`.

    .. code-block:: python

        config = ExperimentConfig(problem='steiner_tree',
                                  instance='instance.json',
                                  requests='requests.json')
        config['repetitions'] = 3
        config.validate()

    :param kwargs: Settings.  Unset optional settings take their defaults.
    """
    def __init__(self, **kwargs):
        super(ExperimentConfig, self).__init__()
        self.update(_DEFAULTS)
        self.update(kwargs)
        self.validate()

    def validate(self):
        """
        Checks that every key is known, required keys are set and every value
        has the right type and range.

        :raises ConfigException: On unknown or missing keys and bad choices.
        """
        for key in self:
            if key not in CONFIG_ARG_TYPES:
                raise ConfigException(101, key)
        for key in _REQUIRED:
            if self.get(key) is None:
                raise ConfigException(102, key)
        validate_args(CONFIG_ARG_TYPES, **self)
        for key, choices in _CHOICES.items():
            if self[key] not in choices:
                raise ConfigException(103, key, self[key], choices)
        if self['repetitions'] < 1:
            raise ConfigException(103, 'repetitions', self['repetitions'],
                                  '>= 1')
        if self['gamma'] is not None and self['gamma'] < 1:
            raise ConfigException(103, 'gamma', self['gamma'], '>= 1')

    def to_json(self):
        data = dict(self)
        if data['gamma'] is not None:
            data['gamma'] = format_cost(data['gamma'])
        return data

    @classmethod
    def from_json(cls, data):
        data = dict(data)
        if data.get('gamma') is not None:
            data['gamma'] = parse_cost(data['gamma'])
        return cls(**data)

    @classmethod
    def load(cls, path):
        with open(path) as handle:
            return cls.from_json(json.load(handle))

    def dump(self, path):
        """
        Persists the configuration as JSON (``config.json`` in a run
        directory).
        """
        with open(path, 'w') as handle:
            json.dump(self.to_json(), handle, indent=2, sort_keys=True)
            handle.write('\n')


def worker_count(environ=None):
    """
    Size of the episode worker pool, read from ``ONLINEGRAPH_WORKERS``.

    :returns: A positive int; 1 when unset.
    """
    environ = os.environ if environ is None else environ
    value = environ.get(WORKERS_ENV_VAR, '1')
    try:
        count = int(value)
    except ValueError:
        raise ConfigException(103, WORKERS_ENV_VAR, value, 'a positive int')
    if count < 1:
        raise ConfigException(103, WORKERS_ENV_VAR, value, 'a positive int')
    return count
