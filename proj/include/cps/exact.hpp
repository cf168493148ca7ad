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

// Exponential-cost reference methods: exact ground energies and a dense
// statevector simulator used to cross-check the stabilizer simulator.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cps/hamiltonian.hpp"
#include "cps/tableau.hpp"

namespace cps {

inline constexpr std::size_t kMaxDenseQubits = 14;
inline constexpr std::size_t kMaxDiagonalQubits = 26;
inline constexpr std::size_t kMaxStateVectorQubits = 10;

/// Energies of all 2^n computational basis states of a diagonal Hamiltonian;
/// entry b is the energy of the state whose qubit q equals bit q of b.
std::vector<double> diagonal_energies(const Hamiltonian& h);

/// Smallest eigenvalue. Diagonal Hamiltonians are enumerated exactly (up to 26
/// qubits); others use dense Hermitian diagonalization (up to 14 qubits).
/// Throws ResourceError beyond those limits.
double exact_ground_energy(const Hamiltonian& h);

using Unitary2 = std::array<std::complex<double>, 4>;  // row-major 2x2

/// Unitary of a table gate, multiplied out from its H/S word.
Unitary2 clifford_unitary(GateId gate);

/// Dense 2^n amplitude vector. Basis index bit q holds qubit q.
class StateVector {
 public:
  /// |0...0>. Throws ResourceError above kMaxStateVectorQubits.
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }

  void apply_unitary(const Unitary2& u, std::size_t qubit);
  void apply_single_qubit(GateId gate, std::size_t qubit);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(std::span<const CircuitOp> circuit);

  /// <psi|P|psi> including the phase of P; complex in general.
  std::complex<double> expectation(const PauliString& p) const;
  double energy(const Hamiltonian& h) const;

 private:
  std::size_t n_;
  std::vector<std::complex<double>> amps_;
};

/// Simulates `circuit` from |0...0> on a dense vector.
StateVector statevector_reference(std::size_t n_qubits, std::span<const CircuitOp> circuit);

}  // namespace cps
