# Copyright 2026 The cpsearch Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Clifford-prefix search for warm-starting variational circuits.

Thin wrapper over the compiled core: JSON crossing the boundary becomes dicts.
"""

import json
import os

from . import _core
from ._core import (
    Environment as _Environment,
    ResourceError,
    TrainingError,
    clifford_images,
    gate_names,
    normalize_reward,
    pauli_expectation,
)

__all__ = [
    "Environment",
    "ResourceError",
    "TrainingError",
    "clifford_images",
    "compare",
    "default_config",
    "gate_names",
    "generate_instance",
    "normalize_reward",
    "pauli_expectation",
    "run_ga",
    "save_instance",
    "summarize_instance",
    "train",
]


def generate_instance(kind, n, J=1.0, seed=0):
    """Instance dict with its exact ground energy under "computed_E_opt"."""
    return json.loads(_core.generate_instance_json(kind, n, J, seed))


def save_instance(instance, path):
    with open(path, "w") as f:
        json.dump(instance, f, indent=2)
    return path


def summarize_instance(instance):
    return json.loads(_core.instance_summary_json(json.dumps(instance)))


def Environment(instance):
    """Reward oracle for an instance dict."""
    return _Environment(json.dumps(instance))


def default_config():
    return json.loads(_core.default_config_json())


def train(instance_path, run_dir, seed=0, config=None, resume=False):
    """Trains one seed into run_dir; `config` is a partial config dict."""
    text = json.dumps(config) if config else ""
    return json.loads(_core.train_json(os.fspath(instance_path), text, seed, os.fspath(run_dir), resume))


def run_ga(instance_path, run_dir, budget, mode="evals", seed=0, population=100):
    return json.loads(
        _core.ga_json(os.fspath(instance_path), mode, budget, seed, os.fspath(run_dir), population))


def compare(runs, out_csv, mode="both"):
    return _core.compare([os.fspath(r) for r in runs], mode, os.fspath(out_csv))
