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

import csv
import itertools

import pytest

import cpsearch


def test_gate_table():
    names = cpsearch.gate_names()
    assert len(names) == 24
    assert names[0] == "I"
    assert cpsearch.clifford_images(names.index("H")) == ("+Z", "+X")


def test_bell_state_expectations():
    ops = [("H", 0, 0), ("CNOT", 0, 1)]
    assert cpsearch.pauli_expectation(2, ops, "XX") == 1
    assert cpsearch.pauli_expectation(2, ops, "YY") == -1
    assert cpsearch.pauli_expectation(2, ops, "ZI") == 0


def test_normalize_reward_examples():
    assert cpsearch.normalize_reward(10.0, 5.0, 20.0) == 1.0
    assert cpsearch.normalize_reward(-5.0, 2.0, 0.0) == -1.0
    assert cpsearch.normalize_reward(0.0, 1.0, 10.0) == 1.0


def test_maxcut_instance_matches_brute_force():
    inst = cpsearch.generate_instance("maxcut", 5, seed=4)
    best = 0.0
    for bits in itertools.product((0, 1), repeat=5):
        best = max(best, sum(w for i, j, w in inst["edges"] if bits[i] != bits[j]))
    assert inst["computed_E_opt"] == pytest.approx(-best)
    summary = cpsearch.summarize_instance(inst)
    assert summary["n_params"] == 10 + 5


def test_tfim_ground_energy():
    inst = cpsearch.generate_instance("tfim", 10, J=0.5)
    assert abs(inst["computed_E_opt"] + 10.570) <= 1e-3


def test_bad_instance_requests():
    with pytest.raises(ValueError):
        cpsearch.generate_instance("maxcut", 1)
    with pytest.raises(cpsearch.ResourceError):
        cpsearch.generate_instance("xxz", 30)


def test_environment_counts_distinct_circuits():
    env = cpsearch.Environment(cpsearch.generate_instance("maxcut", 3, seed=1))
    r0 = env.reward([])
    assert env.reward([0, 0, 0]) == r0
    env.reward([5])
    assert env.counters()["distinct"] == 2
    assert env.best_reward >= r0


def test_train_ga_compare(tmp_path):
    inst_path = cpsearch.save_instance(cpsearch.generate_instance("maxcut", 4, seed=2), tmp_path / "mc4.json")
    config = {
        "total_episodes": 12, "episodes_per_round": 6, "workers": 1,
        "warmup_simulations": 3, "standard_simulations": 4, "eval_simulations": 4,
        "epochs": 1, "batch_size": 8, "replay_only_after": 6, "mix_after": 6,
        "net": {"model_dim": 16, "heads": 2, "layers": 1, "ff_dim": 32, "state_embed_dim": 4,
                "pos_embed_dim": 12, "context_len": 6, "policy_head": [8, 24], "value_head": [8, 4, 1],
                "ham_mlp": [8, 16], "max_ham_qubits": 4},
    }
    out = cpsearch.train(inst_path, tmp_path / "runs" / "seed_0", seed=0, config=config)
    assert out["rounds"] == 2
    assert 0.0 < out["accuracy"] <= 1.0 + 1e-12

    ga = cpsearch.run_ga(inst_path, tmp_path / "ga", budget=out["evaluations"])
    assert ga["evaluations"] == out["evaluations"]

    tasks, match = cpsearch.compare([tmp_path / "runs"], tmp_path / "compare.csv")
    assert (tasks, match) == (1, True)
    with open(tmp_path / "compare.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0][:4] == ["task", "n", "N_params", "E_opt"]
    assert rows[1][0] == "MaxCut_4"
    assert rows[-1][0] == "ArithMean"
