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

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cps/ansatz.hpp"
#include "cps/hamiltonian.hpp"

namespace cps {

/// Who asked for a circuit evaluation; only used to split the budget counters.
enum class EvalSource : std::uint8_t { kTraining, kEvaluation, kBaseline };

struct EvalCounters {
  /// Distinct circuits simulated (cache misses).
  std::uint64_t distinct = 0;
  /// Distinct circuits first reached by greedy policy evaluation.
  std::uint64_t from_evaluation = 0;
  /// All reward requests, cache hits included.
  std::uint64_t requests = 0;

  std::uint64_t without_evaluation() const { return distinct - from_evaluation; }
};

/// Streaming mean/std (Welford) of raw rewards and the clipped normalization
/// R_norm = clip((R - max(mu, 0)) / max(sigma, eps) - 1, -1, 1).
class RewardNormalizer {
 public:
  explicit RewardNormalizer(double eps = 1e-8) : eps_(eps) {}

  void update(double reward);
  double normalize(double reward) const;

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Population standard deviation; 0 before two observations.
  double stddev() const;
  double eps() const { return eps_; }

  /// Directly sets the statistics; `m2` is the sum of squared deviations.
  void set_state(std::uint64_t count, double mean, double m2) {
    count_ = count;
    mean_ = mean;
    m2_ = m2;
  }
  double m2() const { return m2_; }

  /// Normalizer whose statistics give exactly (mean, stddev); for tests.
  static RewardNormalizer with_stats(double mean, double stddev, double eps = 1e-8);

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double eps_;
};

/// The deterministic prefix-assignment MDP for one (skeleton, Hamiltonian)
/// pair, with a shared evaluation cache. Safe for concurrent use.
///
/// reward(prefix) pads the prefix with identity up to D, simulates the
/// circuit on a fresh tableau and returns R = -<H>. Each distinct padded
/// prefix is simulated once; repeated requests hit the cache and do not count
/// as evaluations.
class Environment {
 public:
  Environment(std::shared_ptr<const CircuitSkeleton> skeleton,
              std::shared_ptr<const Hamiltonian> hamiltonian);

  const CircuitSkeleton& skeleton() const { return *skeleton_; }
  const Hamiltonian& hamiltonian() const { return *hamiltonian_; }
  std::shared_ptr<const CircuitSkeleton> skeleton_ptr() const { return skeleton_; }
  std::shared_ptr<const Hamiltonian> hamiltonian_ptr() const { return hamiltonian_; }
  std::size_t num_slots() const { return skeleton_->num_slots(); }

  /// Cache-aware raw reward. Throws std::invalid_argument if the prefix is
  /// longer than D or holds an invalid gate id.
  double reward(std::span<const GateId> prefix, EvalSource source = EvalSource::kTraining);

  /// Whether the padded prefix is already in the cache.
  bool contains(std::span<const GateId> prefix) const;

  /// Raw reward without touching the cache or counters.
  double reward_uncached(std::span<const GateId> prefix) const;

  EvalCounters counters() const;

  /// Best raw reward over every circuit evaluated so far, and its padded
  /// prefix. Ties keep the lexicographically smaller prefix.
  double best_reward() const;
  std::vector<GateId> best_prefix() const;
  bool has_best() const;

  /// Snapshot of the cache as (padded prefix, reward) pairs sorted by prefix.
  std::vector<std::pair<std::vector<GateId>, double>> cache_entries() const;
  /// Restores cache, counters and best from a previous snapshot.
  void restore(const std::vector<std::pair<std::vector<GateId>, double>>& entries,
               const EvalCounters& counters);

 private:
  std::string key_for(std::span<const GateId> prefix) const;
  void note_best(const std::string& key, double reward);

  std::shared_ptr<const CircuitSkeleton> skeleton_;
  std::shared_ptr<const Hamiltonian> hamiltonian_;

  mutable std::shared_mutex cache_mutex_;
  std::unordered_map<std::string, double> cache_;
  EvalCounters counters_;
  std::atomic<std::uint64_t> requests_{0};
  std::string best_key_;
  double best_reward_ = 0.0;
  bool has_best_ = false;
};

}  // namespace cps
