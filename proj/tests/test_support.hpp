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

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cps/clifford.hpp"
#include "cps/pauli.hpp"
#include "cps/tableau.hpp"

namespace cps::testing {

using C = std::complex<double>;
using M2 = std::array<C, 4>;

inline M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline M2 dagger(const M2& a) { return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}; }

/// Pauli matrices written out by hand, independent of the library.
inline M2 pauli_matrix(char p) {
  switch (p) {
    case 'X':
      return {C(0), C(1), C(1), C(0)};
    case 'Y':
      return {C(0), C(0, -1), C(0, 1), C(0)};
    case 'Z':
      return {C(1), C(0), C(0), C(-1)};
    default:
      return {C(1), C(0), C(0), C(1)};
  }
}

inline double max_dist(const M2& a, const M2& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Unitary of an H/S word in time order, multiplied out from literal H and S.
inline M2 word_unitary(const std::string& word) {
  const double r = 1.0 / std::sqrt(2.0);
  const M2 h{C(r), C(r), C(r), C(-r)};
  const M2 s{C(1), C(0), C(0), C(0, 1)};
  M2 u{C(1), C(0), C(0), C(1)};
  for (char c : word) u = mul(c == 'H' ? h : s, u);
  return u;
}

/// U P U^dagger matched against +-X, +-Y, +-Z; nullopt when it is none of them.
inline std::optional<SignedPauli> conjugate(const M2& u, char p) {
  const M2 img = mul(mul(u, pauli_matrix(p)), dagger(u));
  for (char q : {'X', 'Y', 'Z'}) {
    const M2 m = pauli_matrix(q);
    M2 neg;
    for (int i = 0; i < 4; ++i) neg[i] = -m[i];
    const std::uint8_t xz = q == 'X' ? 1 : q == 'Z' ? 2 : 3;
    if (max_dist(img, m) < 1e-12) return SignedPauli{xz, false};
    if (max_dist(img, neg) < 1e-12) return SignedPauli{xz, true};
  }
  return std::nullopt;
}

/// Whether a equals phase * b for some unit-modulus phase.
inline bool equal_up_to_phase(const M2& a, const M2& b, double tol = 1e-12) {
  C phase(0);
  for (int i = 0; i < 4; ++i) {
    if (std::abs(b[i]) > 1e-9) {
      phase = a[i] / b[i];
      break;
    }
  }
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(a[i] - phase * b[i]) > tol) return false;
  }
  return true;
}

/// Random circuit of `depth` ops on n qubits: a uniformly random table gate on
/// a random qubit, or (n >= 2, probability 1/3) a CNOT on a random ordered pair.
inline CliffordCircuit random_circuit(std::size_t n, std::size_t depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gate(0, 23);
  std::uniform_int_distribution<std::uint32_t> qubit(0, static_cast<std::uint32_t>(n - 1));
  std::uniform_int_distribution<int> kind(0, 2);
  CliffordCircuit c;
  while (c.size() < depth) {
    if (n >= 2 && kind(rng) == 0) {
      const std::uint32_t a = qubit(rng);
      std::uint32_t b = qubit(rng);
      if (a == b) continue;
      c.push_back(CircuitOp::cnot(a, b));
    } else {
      c.push_back(CircuitOp::single(static_cast<GateId>(gate(rng)), qubit(rng)));
    }
  }
  return c;
}

/// Uniform random Pauli string with sign +1 or -1 (a real-phase observable).
inline PauliString random_pauli(std::size_t n, std::mt19937_64& rng) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> letter(0, 3);
  std::bernoulli_distribution negative(0.5);
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    const char c = kLetters[letter(rng)];
    if (c != 'I') p.set_pauli(q, c);
  }
  p.set_phase(negative(rng) ? 2 : 0);
  return p;
}

}  // namespace cps::testing
