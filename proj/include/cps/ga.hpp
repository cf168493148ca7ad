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

// Genetic-algorithm baseline over full-length prefix assignments. Fitness is
// the environment reward, so cache hits are free exactly as in self-play.

#include <cstdint>
#include <vector>

#include "cps/environment.hpp"

namespace cps {

struct GaConfig {
  int population = 100;
  int elites = 5;
  int tournament = 3;
  double crossover_rate = 0.9;
  /// Per-gene mutation probability; non-positive means 1/D.
  double mutation_rate = 0.0;
  /// Evaluation-matched runs stop after this many consecutive generations
  /// without a new distinct evaluation (the reachable space is exhausted).
  int stall_generations = 1000;
  int threads = 1;

  void validate() const;
};

struct GaBudget {
  enum class Mode { kEvaluations, kGenerations };
  Mode mode = Mode::kEvaluations;
  /// Distinct evaluations, or generations counting the initial population.
  std::uint64_t limit = 0;

  static GaBudget evaluations(std::uint64_t n) { return {Mode::kEvaluations, n}; }
  static GaBudget generations(std::uint64_t n) { return {Mode::kGenerations, n}; }
};

struct GaGeneration {
  std::uint64_t generation = 0;  // 0 is the initial population
  double best_reward = 0.0;      // best ever, so non-decreasing
  double mean_reward = 0.0;      // over the genomes scored this generation
  std::uint64_t evaluations = 0;  // cumulative distinct evaluations
};

struct GaResult {
  std::vector<GateId> best_genome;
  double best_reward = 0.0;
  std::vector<GaGeneration> history;
  std::uint64_t evaluations = 0;
  bool budget_exhausted = false;
};

/// Runs the GA against `env` (whose counters it consumes). A zero budget
/// scores only the all-identity genome, without counting it.
GaResult ga_search(Environment& env, const GaConfig& config, GaBudget budget, std::uint64_t seed);

}  // namespace cps
