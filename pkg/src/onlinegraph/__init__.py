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
Online graph algorithms with predictions: online Steiner tree, Steiner
forest and facility location engines, the prediction framework that
combines them with prize-collecting solvers, the outlier error model and the
adversarial lower-bound constructions.
"""
__version__ = '0.1.0'

# pylint: disable=wrong-import-position
import logging

from .demand import PredictionSet, Request
from .framework import partial, run_online, run_with_predictions
from .graph import Metric, WeightedGraph, ZeroCostOverlay
from .outlier import pareto_frontier

logging.getLogger(__name__).addHandler(logging.NullHandler())
