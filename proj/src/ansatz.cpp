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

#include "cps/ansatz.hpp"

#include <algorithm>
#include <stdexcept>

namespace cps {

CircuitSkeleton::CircuitSkeleton(std::size_t n_qubits, std::vector<SkeletonOp> ops,
                                 std::string name)
    : n_(n_qubits), ops_(std::move(ops)), name_(std::move(name)) {
  for (const auto& op : ops_) {
    if (op.q0 >= n_ || (op.kind == SkeletonOp::Kind::kCnot && op.q1 >= n_)) {
      throw std::invalid_argument("skeleton op targets a qubit out of range");
    }
    if (op.kind == SkeletonOp::Kind::kCnot && op.q0 == op.q1) {
      throw std::invalid_argument("skeleton CNOT with equal control and target");
    }
    if (op.kind == SkeletonOp::Kind::kSlot) {
      if (op.slot != slot_qubits_.size()) {
        throw std::invalid_argument("prefix slots must be numbered 0..D-1 in circuit order");
      }
      slot_qubits_.push_back(op.q0);
    }
  }
}

CliffordCircuit CircuitSkeleton::instantiate(std::span<const GateId> prefix) const {
  if (prefix.size() > num_slots()) throw std::invalid_argument("prefix longer than slot count");
  CliffordCircuit out;
  out.reserve(ops_.size());
  for (const auto& op : ops_) {
    switch (op.kind) {
      case SkeletonOp::Kind::kGate:
        out.push_back(CircuitOp::single(op.gate, op.q0));
        break;
      case SkeletonOp::Kind::kCnot:
        out.push_back(CircuitOp::cnot(op.q0, op.q1));
        break;
      case SkeletonOp::Kind::kSlot:
        if (op.slot < prefix.size() && prefix[op.slot] != kIdentityGate) {
          out.push_back(CircuitOp::single(prefix[op.slot], op.q0));
        }
        break;
    }
  }
  return out;
}

StabilizerTableau CircuitSkeleton::simulate(std::span<const GateId> prefix) const {
  if (prefix.size() > num_slots()) throw std::invalid_argument("prefix longer than slot count");
  StabilizerTableau t(n_);
  for (const auto& op : ops_) {
    switch (op.kind) {
      case SkeletonOp::Kind::kGate:
        t.apply_single_qubit(op.gate, op.q0);
        break;
      case SkeletonOp::Kind::kCnot:
        t.apply_cnot(op.q0, op.q1);
        break;
      case SkeletonOp::Kind::kSlot:
        if (op.slot < prefix.size()) t.apply_single_qubit(prefix[op.slot], op.q0);
        break;
    }
  }
  return t;
}

std::vector<PauliTerm> canonical_cost_terms(const Hamiltonian& h) {
  std::vector<std::pair<std::vector<std::size_t>, PauliTerm>> keyed;
  for (const auto& t : h.terms()) {
    if (!t.pauli.is_identity()) keyed.emplace_back(t.pauli.support(), t);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<PauliTerm> out;
  out.reserve(keyed.size());
  for (auto& [support, term] : keyed) out.push_back(std::move(term));
  return out;
}

CircuitSkeleton build_maqaoa_skeleton(const Hamiltonian& h) {
  if (!h.is_diagonal()) {
    throw std::invalid_argument("ma-QAOA skeleton needs a diagonal (I/Z only) cost Hamiltonian");
  }
  const auto n = static_cast<std::uint32_t>(h.n_qubits());
  const GateId hadamard = gate_by_name("H");
  std::vector<SkeletonOp> ops;
  std::uint32_t slot = 0;
  for (std::uint32_t q = 0; q < n; ++q) ops.push_back(SkeletonOp::fixed(hadamard, q));
  for (const auto& term : canonical_cost_terms(h)) {
    const auto support = term.pauli.support();
    const auto last = static_cast<std::uint32_t>(support.back());
    for (std::size_t k = 0; k + 1 < support.size(); ++k) {
      ops.push_back(SkeletonOp::cnot(static_cast<std::uint32_t>(support[k]), last));
    }
    ops.push_back(SkeletonOp::prefix_slot(slot++, last));
    for (std::size_t k = support.size() - 1; k-- > 0;) {
      ops.push_back(SkeletonOp::cnot(static_cast<std::uint32_t>(support[k]), last));
    }
  }
  for (std::uint32_t q = 0; q < n; ++q) ops.push_back(SkeletonOp::prefix_slot(slot++, q));
  return CircuitSkeleton(n, std::move(ops), "maqaoa_p1");
}

CircuitSkeleton build_hea_skeleton(std::size_t n, std::size_t reps) {
  if (n < 2) throw std::invalid_argument("hardware-efficient ansatz needs at least 2 qubits");
  if (reps < 1) throw std::invalid_argument("hardware-efficient ansatz needs reps >= 1");
  const auto nq = static_cast<std::uint32_t>(n);
  std::vector<SkeletonOp> ops;
  std::uint32_t slot = 0;
  auto rotation_layer = [&] {
    for (std::uint32_t q = 0; q < nq; ++q) ops.push_back(SkeletonOp::prefix_slot(slot++, q));  // Ry
    for (std::uint32_t q = 0; q < nq; ++q) ops.push_back(SkeletonOp::prefix_slot(slot++, q));  // Rz
  };
  for (std::size_t r = 0; r < reps; ++r) {
    rotation_layer();
    for (std::uint32_t q = 0; q < nq; ++q) ops.push_back(SkeletonOp::cnot(q, (q + 1) % nq));
  }
  rotation_layer();
  return CircuitSkeleton(n, std::move(ops), "hea_circular");
}

}  // namespace cps
