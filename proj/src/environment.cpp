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

#include "cps/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cps {

void RewardNormalizer::update(double reward) {
  ++count_;
  const double delta = reward - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (reward - mean_);
}

double RewardNormalizer::stddev() const {
  if (count_ < 2) return 0.0;
  return std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_)));
}

double RewardNormalizer::normalize(double reward) const {
  // eps floors the spread so a constant reward stream stays finite.
  const double out = (reward - std::max(mean_, 0.0)) / std::max(stddev(), eps_) - 1.0;
  return std::clamp(out, -1.0, 1.0);
}

RewardNormalizer RewardNormalizer::with_stats(double mean, double stddev, double eps) {
  RewardNormalizer n(eps);
  // Two observations mean +/- stddev reproduce the requested statistics.
  n.set_state(2, mean, 2.0 * stddev * stddev);
  return n;
}

Environment::Environment(std::shared_ptr<const CircuitSkeleton> skeleton,
                         std::shared_ptr<const Hamiltonian> hamiltonian)
    : skeleton_(std::move(skeleton)), hamiltonian_(std::move(hamiltonian)) {
  if (!skeleton_ || !hamiltonian_) throw std::invalid_argument("environment needs a skeleton and a Hamiltonian");
  if (skeleton_->n_qubits() != hamiltonian_->n_qubits()) {
    throw std::invalid_argument("skeleton and Hamiltonian differ in qubit count");
  }
}

std::string Environment::key_for(std::span<const GateId> prefix) const {
  const std::size_t d = skeleton_->num_slots();
  if (prefix.size() > d) throw std::invalid_argument("prefix longer than slot count");
  std::string key(d, static_cast<char>(kIdentityGate));
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] >= kNumCliffords) throw std::invalid_argument("invalid Clifford gate id");
    key[i] = static_cast<char>(prefix[i]);
  }
  return key;
}

bool Environment::contains(std::span<const GateId> prefix) const {
  const std::string key = key_for(prefix);
  std::shared_lock lock(cache_mutex_);
  return cache_.count(key) != 0;
}

double Environment::reward_uncached(std::span<const GateId> prefix) const {
  return -hamiltonian_energy(skeleton_->simulate(prefix), *hamiltonian_);
}

double Environment::reward(std::span<const GateId> prefix, EvalSource source) {
  const std::string key = key_for(prefix);
  requests_.fetch_add(1, std::memory_order_relaxed);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const double r = reward_uncached(prefix);
  std::unique_lock lock(cache_mutex_);
  auto [it, inserted] = cache_.emplace(key, r);
  if (inserted) {
    ++counters_.distinct;
    if (source == EvalSource::kEvaluation) ++counters_.from_evaluation;
    note_best(key, r);
  }
  return it->second;
}

void Environment::note_best(const std::string& key, double reward) {
  if (!has_best_ || reward > best_reward_ || (reward == best_reward_ && key < best_key_)) {
    has_best_ = true;
    best_reward_ = reward;
    best_key_ = key;
  }
}

EvalCounters Environment::counters() const {
  std::shared_lock lock(cache_mutex_);
  EvalCounters c = counters_;
  c.requests = requests_.load(std::memory_order_relaxed);
  return c;
}

double Environment::best_reward() const {
  std::shared_lock lock(cache_mutex_);
  return best_reward_;
}

bool Environment::has_best() const {
  std::shared_lock lock(cache_mutex_);
  return has_best_;
}

std::vector<GateId> Environment::best_prefix() const {
  std::shared_lock lock(cache_mutex_);
  return {best_key_.begin(), best_key_.end()};
}

std::vector<std::pair<std::vector<GateId>, double>> Environment::cache_entries() const {
  std::shared_lock lock(cache_mutex_);
  std::vector<std::pair<std::vector<GateId>, double>> out;
  out.reserve(cache_.size());
  for (const auto& [k, v] : cache_) out.emplace_back(std::vector<GateId>(k.begin(), k.end()), v);
  std::sort(out.begin(), out.end());
  return out;
}

void Environment::restore(const std::vector<std::pair<std::vector<GateId>, double>>& entries,
                          const EvalCounters& counters) {
  std::unique_lock lock(cache_mutex_);
  cache_.clear();
  has_best_ = false;
  for (const auto& [prefix, r] : entries) {
    std::string key(prefix.begin(), prefix.end());
    if (key.size() != skeleton_->num_slots()) throw std::invalid_argument("cache entry has wrong length");
    cache_.emplace(key, r);
    note_best(key, r);
  }
  counters_ = counters;
  requests_.store(counters.requests, std::memory_order_relaxed);
}

}  // namespace cps
