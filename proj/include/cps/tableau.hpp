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
#include <cstdint>
#include <span>
#include <vector>

#include "cps/clifford.hpp"
#include "cps/pauli.hpp"

namespace cps {

/// One gate of a Clifford circuit: a single-qubit table gate or a CNOT.
struct CircuitOp {
  enum class Kind : std::uint8_t { kSingle, kCnot };
  Kind kind = Kind::kSingle;
  GateId gate = kIdentityGate;
  std::uint32_t q0 = 0;  // target qubit, or CNOT control
  std::uint32_t q1 = 0;  // CNOT target

  static CircuitOp single(GateId g, std::uint32_t q) { return {Kind::kSingle, g, q, 0}; }
  static CircuitOp cnot(std::uint32_t control, std::uint32_t target) {
    return {Kind::kCnot, kIdentityGate, control, target};
  }
};

using CliffordCircuit = std::vector<CircuitOp>;

/// Stabilizer state on n qubits stored as 2n signed generator rows: rows
/// [0, n) are destabilizers and rows [n, 2n) stabilizers. Each row is packed
/// into 64-bit words for its x and z halves. Global phase is not tracked.
class StabilizerTableau {
 public:
  /// |0...0>: destabilizers X_i, stabilizers Z_i, all signs +.
  explicit StabilizerTableau(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }

  /// Conjugates every row by `gate` on `qubit`. Throws std::out_of_range.
  void apply_single_qubit(GateId gate, std::size_t qubit);
  /// Throws std::invalid_argument when control == target, std::out_of_range
  /// when either index is out of range.
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(const CircuitOp& op);
  void apply(std::span<const CircuitOp> circuit);

  /// <psi|P|psi> for a Hermitian Pauli observable; always -1, 0 or +1.
  /// Throws std::invalid_argument for an imaginary phase or a size mismatch.
  int expectation(const PauliString& observable) const;

  PauliString destabilizer(std::size_t i) const { return row(i); }
  PauliString stabilizer(std::size_t i) const { return row(n_ + i); }

  /// Checks the symplectic structure: stabilizers commute pairwise,
  /// destabilizers commute pairwise, destabilizer i anticommutes exactly with
  /// stabilizer i, every row is Hermitian and the 2n x 2n binary matrix has
  /// full rank over GF(2).
  bool is_valid() const;

  bool operator==(const StabilizerTableau& other) const = default;

 private:
  PauliString row(std::size_t r) const;
  std::span<const std::uint64_t> xrow(std::size_t r) const { return {&xs_[r * w_], w_}; }
  std::span<const std::uint64_t> zrow(std::size_t r) const { return {&zs_[r * w_], w_}; }

  std::size_t n_ = 0;
  std::size_t w_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  std::vector<std::uint8_t> signs_;  // 1 means the row carries a - sign
};

}  // namespace cps
