// Copyright 2026 The cpsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Benchmark task files. An instance pins the problem data (graph weights,
// knapsack items or chain coupling) together with its exact ground energy, so
// every run on the file optimizes the same Hamiltonian.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "cps/ansatz.hpp"
#include "cps/hamiltonian.hpp"

namespace cps {

struct Instance {
  std::string type;  // maxcut | knapsack | tfim | xxz
  std::size_t n = 0;  // vertices, items, or chain sites
  std::uint64_t seed = 0;
  double coupling = 0.0;  // chains only
  std::size_t reps = 1;   // ansatz repetitions for chains
  std::optional<WeightedGraph> graph;
  std::optional<KnapsackInstance> knapsack;
  double ground_energy = 0.0;

  /// Display name such as "MaxCut_6" or "Ising_0.5".
  std::string name() const;
  Hamiltonian hamiltonian() const;
  /// ma-QAOA for the diagonal problems, hardware-efficient for chains.
  CircuitSkeleton skeleton() const;
};

/// Builds a seeded instance and computes its exact ground energy. Throws
/// std::invalid_argument for an unknown type or degenerate size and
/// ResourceError when the exact solver cannot handle the size.
Instance generate_instance(const std::string& type, std::size_t n, double coupling, std::uint64_t seed);

nlohmann::json instance_to_json(const Instance& inst);
/// Throws std::invalid_argument on missing or inconsistent fields.
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const std::string& path, const Instance& inst);
Instance load_instance(const std::string& path);

}  // namespace cps
