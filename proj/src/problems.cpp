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

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cps/hamiltonian.hpp"

namespace cps {

void WeightedGraph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.i == e.j) throw std::invalid_argument("graph has a self loop");
    if (e.i > e.j) throw std::invalid_argument("edges must be stored with i < j");
    if (e.j >= n_vertices) throw std::invalid_argument("edge endpoint out of range");
    if (!std::isfinite(e.weight)) throw std::invalid_argument("edge weight must be finite");
    if (!seen.emplace(e.i, e.j).second) throw std::invalid_argument("duplicate edge");
  }
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.weight;
  return total;
}

WeightedGraph WeightedGraph::random_complete(std::size_t n, std::uint64_t seed, int w_min,
                                             int w_max) {
  if (n < 2) throw std::invalid_argument("a MaxCut graph needs at least 2 vertices");
  if (w_min > w_max) throw std::invalid_argument("empty weight range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(w_min, w_max);
  WeightedGraph g;
  g.n_vertices = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back({i, j, static_cast<double>(dist(rng))});
  }
  return g;
}

Hamiltonian maxcut_hamiltonian(const WeightedGraph& graph) {
  graph.validate();
  if (graph.edges.empty()) throw std::invalid_argument("MaxCut needs at least one edge");
  Hamiltonian h(graph.n_vertices, "maxcut");
  for (const auto& e : graph.edges) {
    h.add_identity(-0.5 * e.weight);
    h.add_term(0.5 * e.weight, PauliString::from_sparse(graph.n_vertices, {{e.i, 'Z'}, {e.j, 'Z'}}));
  }
  h.prune();
  return h;
}

// ---------------------------------------------------------------------------

void KnapsackInstance::validate() const {
  if (values.empty()) throw std::invalid_argument("knapsack needs at least one item");
  if (values.size() != weights.size()) {
    throw std::invalid_argument("knapsack values and weights differ in length");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("item values must be positive");
  }
  for (long long w : weights) {
    if (w <= 0) throw std::invalid_argument("item weights must be positive integers");
  }
  if (capacity < 1) throw std::invalid_argument("knapsack capacity must be at least 1");
  if (num_slack_bits() > 30) throw std::invalid_argument("knapsack capacity too large for slack encoding");
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (penalty != 0.0 && !(penalty > total)) {
    throw std::invalid_argument("knapsack penalty must exceed the total item value");
  }
}

double KnapsackInstance::effective_penalty() const {
  if (penalty != 0.0) return penalty;
  return 2.0 * std::accumulate(values.begin(), values.end(), 0.0);
}

std::size_t KnapsackInstance::num_slack_bits() const {
  // ceil(log2(W + 1)) == bit length of W.
  std::size_t s = 0;
  for (long long w = capacity; w > 0; w >>= 1) ++s;
  return s;
}

double KnapsackInstance::classical_cost(std::uint64_t assignment) const {
  const std::size_t items = values.size();
  double value = 0.0;
  double load = -static_cast<double>(capacity);
  for (std::size_t i = 0; i < items; ++i) {
    if ((assignment >> i) & 1u) {
      value += values[i];
      load += static_cast<double>(weights[i]);
    }
  }
  for (std::size_t k = 0; k < num_slack_bits(); ++k) {
    if ((assignment >> (items + k)) & 1u) load += std::ldexp(1.0, static_cast<int>(k));
  }
  return -value + effective_penalty() * load * load;
}

KnapsackInstance KnapsackInstance::random(std::size_t n_items, std::uint64_t seed) {
  if (n_items < 1) throw std::invalid_argument("knapsack needs at least one item");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value_dist(1, 20);
  std::uniform_int_distribution<int> weight_dist(1, 10);
  KnapsackInstance inst;
  long long total_weight = 0;
  for (std::size_t i = 0; i < n_items; ++i) {
    inst.values.push_back(value_dist(rng));
    inst.weights.push_back(weight_dist(rng));
    total_weight += inst.weights.back();
  }
  inst.capacity = std::max<long long>(1, total_weight / 2);
  return inst;
}

Hamiltonian knapsack_hamiltonian(const KnapsackInstance& instance) {
  instance.validate();
  const std::size_t items = instance.values.size();
  const std::size_t n = instance.num_qubits();
  const double lambda = instance.effective_penalty();
  const double cap = static_cast<double>(instance.capacity);

  // Coefficients a_q of the load expression sum a_q b_q - W.
  std::vector<double> a(n);
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < items; ++i) {
    a[i] = static_cast<double>(instance.weights[i]);
    v[i] = instance.values[i];
  }
  for (std::size_t k = 0; k < n - items; ++k) a[items + k] = std::ldexp(1.0, static_cast<int>(k));

  // f = lambda W^2 + sum_q (lambda (a_q^2 - 2 W a_q) - v_q) b_q
  //     + sum_{p<q} 2 lambda a_p a_q b_p b_q, then b = (1 - Z) / 2.
  Hamiltonian h(n, "knapsack");
  h.add_identity(lambda * cap * cap);
  for (std::size_t q = 0; q < n; ++q) {
    const double lin = lambda * (a[q] * a[q] - 2.0 * cap * a[q]) - v[q];
    h.add_identity(0.5 * lin);
    h.add_term(-0.5 * lin, PauliString::single(n, q, 'Z'));
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double quad = 2.0 * lambda * a[p] * a[q];
      h.add_identity(0.25 * quad);
      h.add_term(-0.25 * quad, PauliString::single(n, p, 'Z'));
      h.add_term(-0.25 * quad, PauliString::single(n, q, 'Z'));
      h.add_term(0.25 * quad, PauliString::from_sparse(n, {{p, 'Z'}, {q, 'Z'}}));
    }
  }
  h.prune();
  return h;
}

// ---------------------------------------------------------------------------

Hamiltonian tfim_hamiltonian(std::size_t n, double coupling) {
  if (n < 2) throw std::invalid_argument("TFIM chain needs at least 2 sites");
  Hamiltonian h(n, "tfim");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h.add_term(coupling, PauliString::from_sparse(n, {{i, 'X'}, {i + 1, 'X'}}));
  }
  for (std::size_t i = 0; i < n; ++i) h.add_term(1.0, PauliString::single(n, i, 'Z'));
  return h;
}

Hamiltonian xxz_hamiltonian(std::size_t n, double coupling) {
  if (n < 2) throw std::invalid_argument("XXZ chain needs at least 2 sites");
  Hamiltonian h(n, "xxz");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h.add_term(coupling, PauliString::from_sparse(n, {{i, 'X'}, {i + 1, 'X'}}));
    h.add_term(coupling, PauliString::from_sparse(n, {{i, 'Y'}, {i + 1, 'Y'}}));
    h.add_term(1.0, PauliString::from_sparse(n, {{i, 'Z'}, {i + 1, 'Z'}}));
  }
  return h;
}

}  // namespace cps
