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
#include <string>
#include <vector>

#include "cps/clifford.hpp"
#include "cps/hamiltonian.hpp"
#include "cps/tableau.hpp"

namespace cps {

/// Element of a circuit skeleton. Rotations sit at angle zero and vanish, so
/// only the fixed Clifford structure and the prefix slots in front of each
/// rotation remain.
struct SkeletonOp {
  enum class Kind : std::uint8_t { kGate, kCnot, kSlot };
  Kind kind = Kind::kGate;
  GateId gate = kIdentityGate;  // kGate only
  std::uint32_t q0 = 0;         // target qubit / CNOT control / slot qubit
  std::uint32_t q1 = 0;         // CNOT target
  std::uint32_t slot = 0;       // kSlot only

  static SkeletonOp fixed(GateId g, std::uint32_t q) { return {Kind::kGate, g, q, 0, 0}; }
  static SkeletonOp cnot(std::uint32_t c, std::uint32_t t) {
    return {Kind::kCnot, kIdentityGate, c, t, 0};
  }
  static SkeletonOp prefix_slot(std::uint32_t slot, std::uint32_t q) {
    return {Kind::kSlot, kIdentityGate, q, 0, slot};
  }
};

/// Fixed Clifford structure plus D ordered prefix slots, one per rotation.
class CircuitSkeleton {
 public:
  /// Validates slot numbering (0..D-1 in circuit order) and qubit ranges.
  CircuitSkeleton(std::size_t n_qubits, std::vector<SkeletonOp> ops, std::string name = {});

  std::size_t n_qubits() const { return n_; }
  std::size_t num_slots() const { return slot_qubits_.size(); }
  const std::vector<SkeletonOp>& ops() const { return ops_; }
  const std::string& name() const { return name_; }
  /// Qubit targeted by each slot, indexed by slot.
  const std::vector<std::uint32_t>& slot_qubits() const { return slot_qubits_; }

  /// Circuit with slot s < prefix.size() filled by prefix[s] and every later
  /// slot left as identity. Throws std::invalid_argument if the prefix is
  /// longer than D.
  CliffordCircuit instantiate(std::span<const GateId> prefix) const;

  /// Stabilizer state reached from |0...0> by the instantiated circuit.
  StabilizerTableau simulate(std::span<const GateId> prefix) const;

 private:
  std::size_t n_;
  std::vector<SkeletonOp> ops_;
  std::vector<std::uint32_t> slot_qubits_;
  std::string name_;
};

/// Cost terms (non-identity) in canonical slot order: by support size, then
/// lexicographically by qubit tuple.
std::vector<PauliTerm> canonical_cost_terms(const Hamiltonian& h);

/// Multi-angle QAOA with one layer: Hadamards on every qubit, then per cost term
/// a CNOT ladder onto the term's last qubit around one slot (a single-Z term is
/// just the slot), then one mixer slot per qubit. D = m + n.
/// Throws std::invalid_argument for a non-diagonal Hamiltonian.
CircuitSkeleton build_maqaoa_skeleton(const Hamiltonian& h);

/// Circular hardware-efficient ansatz from |0...0>: per repetition an Ry slot
/// and an Rz slot layer over all qubits, then CNOT(0,1), ..., CNOT(n-1,0);
/// a final Ry/Rz slot layer closes the circuit. D = 2n(reps + 1).
CircuitSkeleton build_hea_skeleton(std::size_t n, std::size_t reps);

}  // namespace cps
