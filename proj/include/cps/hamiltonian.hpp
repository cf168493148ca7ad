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

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cps/pauli.hpp"
#include "cps/tableau.hpp"

namespace cps {

struct PauliTerm {
  double coeff = 0.0;
  PauliString pauli;  // phase always +1
};

/// Weighted sum of Pauli strings. Adding a term whose string is already present
/// merges the coefficients; signs carried by the string move into the
/// coefficient so every stored string has phase +1.
class Hamiltonian {
 public:
  Hamiltonian() = default;
  explicit Hamiltonian(std::size_t n_qubits, std::string label = {});

  /// Throws std::invalid_argument for a non-Hermitian string, a size mismatch
  /// or a non-finite coefficient.
  void add_term(double coeff, const PauliString& pauli);
  void add_term(double coeff, std::string_view pauli_text);
  void add_identity(double coeff) { add_term(coeff, PauliString(n_)); }

  /// Drops terms with |c| <= tol * max|c|.
  void prune(double tol = 1e-12);

  std::size_t n_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool is_diagonal() const;
  double identity_offset() const;
  std::size_t num_non_identity_terms() const;
  double max_abs_coeff() const;

  Hamiltonian scaled(double factor) const;
  /// Sum with another Hamiltonian on the same qubits.
  Hamiltonian plus(const Hamiltonian& other) const;

  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::string label_;
  std::vector<PauliTerm> terms_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
};

/// E = sum_i c_i <P_i> on a stabilizer state.
double hamiltonian_energy(const StabilizerTableau& state, const Hamiltonian& h);

// ---------------------------------------------------------------------------
// Benchmark problems

struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 1.0;
};

struct WeightedGraph {
  std::size_t n_vertices = 0;
  std::vector<WeightedEdge> edges;

  /// Throws std::invalid_argument on self loops, duplicate edges, i >= j or
  /// out-of-range endpoints.
  void validate() const;
  bool is_complete() const { return edges.size() == n_vertices * (n_vertices - 1) / 2; }
  double total_weight() const;

  /// Complete graph with integer weights drawn uniformly from [w_min, w_max].
  static WeightedGraph random_complete(std::size_t n, std::uint64_t seed, int w_min = 1,
                                       int w_max = 10);
};

/// -sum_{(i,j)} w_ij/2 (I - Z_i Z_j); ground energy = -(max cut weight).
Hamiltonian maxcut_hamiltonian(const WeightedGraph& graph);

struct KnapsackInstance {
  std::vector<double> values;
  std::vector<long long> weights;
  long long capacity = 1;
  /// Penalty weight; 0 selects the default 2 * sum(values).
  double penalty = 0.0;

  void validate() const;
  double effective_penalty() const;
  std::size_t num_slack_bits() const;
  std::size_t num_qubits() const { return values.size() + num_slack_bits(); }

  /// f(x, y) = -sum v_i x_i + lambda (sum w_i x_i + sum 2^k y_k - W)^2 where
  /// bit q of `assignment` is x_q for items and y_k for slack q = n_items + k.
  double classical_cost(std::uint64_t assignment) const;

  static KnapsackInstance random(std::size_t n_items, std::uint64_t seed);
};

/// Penalized slack-bit encoding of the 0/1 knapsack: qubits [0, n_items) are the
/// items, the rest binary slack bits. x = (1 - Z)/2 maps the cost to a
/// Hamiltonian with I, Z and ZZ terms whose diagonal equals classical_cost.
Hamiltonian knapsack_hamiltonian(const KnapsackInstance& instance);

/// Open chain: J sum X_i X_{i+1} + sum Z_i.
Hamiltonian tfim_hamiltonian(std::size_t n, double coupling);

/// Open chain: sum (J X_i X_{i+1} + J Y_i Y_{i+1} + Z_i Z_{i+1}).
Hamiltonian xxz_hamiltonian(std::size_t n, double coupling);

}  // namespace cps
