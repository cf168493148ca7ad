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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cps {

inline constexpr int kNumCliffords = 24;

/// Index into the canonical table of single-qubit Clifford gates. Id 0 is the
/// identity; the remaining 23 are sorted by their conjugation action.
using GateId = std::uint8_t;

inline constexpr GateId kIdentityGate = 0;

/// A single-qubit Pauli with a sign. `xz` uses the same two-bit encoding as
/// PauliString: bit 0 = x, bit 1 = z, so 1 = X, 2 = Z, 3 = Y.
struct SignedPauli {
  std::uint8_t xz = 0;
  bool negative = false;

  char letter() const;
  std::string str() const;
  bool operator==(const SignedPauli&) const = default;
};

/// Conjugation action P -> C P C^dagger of one single-qubit Clifford.
struct CliffordRule {
  SignedPauli x_image;
  SignedPauli z_image;
  /// Image of Y = iXZ, derived from the other two.
  SignedPauli y_image;
  /// Shortest generating word over {H, S} in time order ("" is the identity,
  /// "HS" applies H first, then S).
  std::string word;

  /// Image of the single-qubit Pauli with encoding `xz` (0 maps to +I).
  SignedPauli image(std::uint8_t xz) const {
    switch (xz) {
      case 1:
        return x_image;
      case 2:
        return z_image;
      case 3:
        return y_image;
      default:
        return {};
    }
  }
};

/// Returns the image of Y under a rule whose X and Z images are given.
SignedPauli y_image_from(SignedPauli x_image, SignedPauli z_image);

/// Rule for applying `first` and then `second`.
CliffordRule compose_rules(const CliffordRule& first, const CliffordRule& second);

/// The 24 single-qubit Clifford conjugation rules in canonical order.
///
/// Generated breadth-first from words over {H, S}, deduplicated by action, then
/// sorted by (x image, z image) with Paulis ordered X < Y < Z and + before -.
/// The identity is pinned to id 0 and the rest keep their sorted order.
const std::array<CliffordRule, kNumCliffords>& clifford_table();

/// Looks up the gate with the given X and Z images. Returns nullopt when the
/// pair does not describe a Clifford (e.g. the images commute).
std::optional<GateId> find_clifford(SignedPauli x_image, SignedPauli z_image);

/// Id of the gate that undoes `gate`.
GateId inverse_gate(GateId gate);

/// Id of the gate equivalent to applying `first` and then `second`.
GateId compose_gates(GateId first, GateId second);

/// Common names: I, X, Y, Z, H, S, S_DAG, SQRT_X, SQRT_X_DAG, SQRT_Y, SQRT_Y_DAG.
/// Throws std::invalid_argument for an unknown name.
GateId gate_by_name(std::string_view name);

/// Name for a gate: a common name when it has one, otherwise "C<word>".
std::string gate_name(GateId gate);

}  // namespace cps
