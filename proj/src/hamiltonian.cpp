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

#include "cps/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cps {

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::string label)
    : n_(n_qubits), label_(std::move(label)) {}

void Hamiltonian::add_term(double coeff, const PauliString& pauli) {
  if (pauli.n_qubits() != n_) {
    throw std::invalid_argument("term has " + std::to_string(pauli.n_qubits()) +
                                " qubits, Hamiltonian has " + std::to_string(n_));
  }
  if (!pauli.is_hermitian()) throw std::invalid_argument("Hamiltonian terms must be Hermitian");
  if (!std::isfinite(coeff)) throw std::invalid_argument("Hamiltonian coefficients must be finite");
  PauliString key = pauli;
  if (key.sign() < 0) coeff = -coeff;
  key.set_phase(0);
  auto it = index_.find(key);
  if (it != index_.end()) {
    terms_[it->second].coeff += coeff;
    return;
  }
  index_.emplace(key, terms_.size());
  terms_.push_back({coeff, std::move(key)});
}

void Hamiltonian::add_term(double coeff, std::string_view pauli_text) {
  add_term(coeff, PauliString::parse(pauli_text));
}

void Hamiltonian::prune(double tol) {
  const double cut = tol * max_abs_coeff();
  std::vector<PauliTerm> kept;
  kept.reserve(terms_.size());
  for (auto& t : terms_) {
    if (std::abs(t.coeff) > cut) kept.push_back(std::move(t));
  }
  terms_ = std::move(kept);
  index_.clear();
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i].pauli, i);
}

bool Hamiltonian::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.pauli.is_diagonal(); });
}

double Hamiltonian::identity_offset() const {
  double total = 0.0;
  for (const auto& t : terms_) {
    if (t.pauli.is_identity()) total += t.coeff;
  }
  return total;
}

std::size_t Hamiltonian::num_non_identity_terms() const {
  return static_cast<std::size_t>(std::count_if(
      terms_.begin(), terms_.end(), [](const PauliTerm& t) { return !t.pauli.is_identity(); }));
}

double Hamiltonian::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

Hamiltonian Hamiltonian::scaled(double factor) const {
  Hamiltonian out(n_, label_);
  for (const auto& t : terms_) out.add_term(t.coeff * factor, t.pauli);
  return out;
}

Hamiltonian Hamiltonian::plus(const Hamiltonian& other) const {
  if (other.n_ != n_) throw std::invalid_argument("Hamiltonians differ in qubit count");
  Hamiltonian out = *this;
  for (const auto& t : other.terms_) out.add_term(t.coeff, t.pauli);
  return out;
}

std::string Hamiltonian::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].coeff << "*" << terms_[i].pauli.str().substr(1);
  }
  return os.str();
}

double hamiltonian_energy(const StabilizerTableau& state, const Hamiltonian& h) {
  if (state.n_qubits() != h.n_qubits()) {
    throw std::invalid_argument("state and Hamiltonian differ in qubit count");
  }
  double energy = 0.0;
  for (const auto& t : h.terms()) {
    if (t.pauli.is_identity()) {
      energy += t.coeff;
    } else {
      energy += t.coeff * state.expectation(t.pauli);
    }
  }
  return energy;
}

}  // namespace cps
