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

#include "cps/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cps/errors.hpp"

namespace cps {

namespace {

using cd = std::complex<double>;

std::uint64_t low_word(std::span<const std::uint64_t> words) { return words.empty() ? 0 : words[0]; }

// i^k
cd ipow(unsigned k) {
  static const cd kTable[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kTable[k & 3u];
}

Unitary2 matmul(const Unitary2& a, const Unitary2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

template <typename Matrix, typename Scalar>
void fill_dense(const Hamiltonian& h, Matrix& m) {
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  for (const auto& t : h.terms()) {
    const std::uint64_t x = low_word(t.pauli.xs());
    const std::uint64_t z = low_word(t.pauli.zs());
    const cd base = t.coeff * ipow(static_cast<unsigned>(std::popcount(x & z)));
    for (std::uint64_t b = 0; b < dim; ++b) {
      const cd amp = (std::popcount(z & b) & 1) ? -base : base;
      if constexpr (std::is_same_v<Scalar, double>) {
        m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += amp.real();
      } else {
        m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += amp;
      }
    }
  }
}

}  // namespace

std::vector<double> diagonal_energies(const Hamiltonian& h) {
  if (!h.is_diagonal()) throw std::invalid_argument("Hamiltonian is not diagonal");
  if (h.n_qubits() > kMaxDiagonalQubits) {
    throw ResourceError("diagonal enumeration limited to " + std::to_string(kMaxDiagonalQubits) +
                        " qubits");
  }
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  // Each Z-mask contributes c * (-1)^{popcount(mask & b)}: a Walsh-Hadamard
  // transform of the coefficient table yields every basis energy at once.
  std::vector<double> e(dim, 0.0);
  for (const auto& t : h.terms()) e[low_word(t.pauli.zs())] += t.coeff;
  for (std::size_t len = 1; len < dim; len <<= 1) {
    for (std::size_t i = 0; i < dim; i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double u = e[j];
        const double v = e[j + len];
        e[j] = u + v;
        e[j + len] = u - v;
      }
    }
  }
  return e;
}

double exact_ground_energy(const Hamiltonian& h) {
  if (h.is_diagonal()) {
    const auto e = diagonal_energies(h);
    return *std::min_element(e.begin(), e.end());
  }
  if (h.n_qubits() > kMaxDenseQubits) {
    throw ResourceError("dense diagonalization limited to " + std::to_string(kMaxDenseQubits) +
                        " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(1) << h.n_qubits();
  const bool real = std::all_of(h.terms().begin(), h.terms().end(), [](const PauliTerm& t) {
    return (std::popcount(low_word(t.pauli.xs()) & low_word(t.pauli.zs())) % 2) == 0;
  });
  if (real) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    fill_dense<Eigen::MatrixXd, double>(h, m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  fill_dense<Eigen::MatrixXcd, cd>(h, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Unitary2 clifford_unitary(GateId gate) {
  const double r = 1.0 / std::sqrt(2.0);
  const Unitary2 hadamard{cd(r), cd(r), cd(r), cd(-r)};
  const Unitary2 phase{cd(1), cd(0), cd(0), cd(0, 1)};
  Unitary2 u{cd(1), cd(0), cd(0), cd(1)};
  for (char c : clifford_table().at(gate).word) u = matmul(c == 'H' ? hadamard : phase, u);
  return u;
}

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
  if (n_qubits > kMaxStateVectorQubits) {
    throw ResourceError("statevector reference limited to " +
                        std::to_string(kMaxStateVectorQubits) + " qubits");
  }
  amps_.assign(std::size_t{1} << n_qubits, cd(0));
  amps_[0] = 1.0;
}

void StateVector::apply_unitary(const Unitary2& u, std::size_t qubit) {
  if (qubit >= n_) throw std::out_of_range("qubit index out of range");
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) continue;
    const cd a0 = amps_[b];
    const cd a1 = amps_[b | bit];
    amps_[b] = u[0] * a0 + u[1] * a1;
    amps_[b | bit] = u[2] * a0 + u[3] * a1;
  }
}

void StateVector::apply_single_qubit(GateId gate, std::size_t qubit) {
  apply_unitary(clifford_unitary(gate), qubit);
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  if (control >= n_ || target >= n_) throw std::out_of_range("qubit index out of range");
  if (control == target) throw std::invalid_argument("CNOT control and target must differ");
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if ((b & cb) && !(b & tb)) std::swap(amps_[b], amps_[b | tb]);
  }
}

void StateVector::apply(std::span<const CircuitOp> circuit) {
  for (const auto& op : circuit) {
    if (op.kind == CircuitOp::Kind::kSingle) {
      apply_single_qubit(op.gate, op.q0);
    } else {
      apply_cnot(op.q0, op.q1);
    }
  }
}

std::complex<double> StateVector::expectation(const PauliString& p) const {
  if (p.n_qubits() != n_) throw std::invalid_argument("observable qubit count mismatch");
  const std::uint64_t x = low_word(p.xs());
  const std::uint64_t z = low_word(p.zs());
  const cd base = ipow(p.phase() + static_cast<unsigned>(std::popcount(x & z)));
  cd total = 0.0;
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    const cd amp = (std::popcount(z & b) & 1) ? -base : base;
    total += std::conj(amps_[b ^ x]) * amp * amps_[b];
  }
  return total;
}

double StateVector::energy(const Hamiltonian& h) const {
  double e = 0.0;
  for (const auto& t : h.terms()) e += t.coeff * expectation(t.pauli).real();
  return e;
}

StateVector statevector_reference(std::size_t n_qubits, std::span<const CircuitOp> circuit) {
  StateVector sv(n_qubits);
  sv.apply(circuit);
  return sv;
}

}  // namespace cps
