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
#include <string_view>
#include <vector>

namespace cps {

/// Number of 64-bit words needed to hold one bit per qubit.
constexpr std::size_t words_for(std::size_t n_qubits) { return (n_qubits + 63) / 64; }

namespace bits {

/// Multiplies the Pauli row (x1, z1) in place by (x2, z2) on the right and
/// returns the exponent of i picked up by the product, modulo 4. Both rows use
/// the convention (1, 1) = Y, so a row with zero phase is Hermitian.
std::uint8_t mul_into(std::span<std::uint64_t> x1, std::span<std::uint64_t> z1,
                      std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2);

/// Parity of the symplectic inner product; true when the two rows anticommute.
bool anticommutes(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                  std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2);

inline bool get(std::span<const std::uint64_t> words, std::size_t q) {
  return (words[q >> 6] >> (q & 63)) & 1u;
}

inline void set(std::span<std::uint64_t> words, std::size_t q, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (q & 63);
  if (value) {
    words[q >> 6] |= mask;
  } else {
    words[q >> 6] &= ~mask;
  }
}

}  // namespace bits

/// A Pauli string i^phase * P_0 (x) P_1 (x) ... (x) P_{n-1}.
///
/// Each qubit carries an (x, z) bit pair: (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
/// Because Y is stored directly (not as XZ), the string is Hermitian exactly when
/// the phase exponent is even. Text form puts qubit 0 first, e.g. "-XIZ" is
/// -X_0 Z_2 and "iY" is i*Y_0.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);

  /// Parses an optional sign prefix (+, -, i, +i, -i) followed by I/X/Y/Z (or _)
  /// characters. Throws std::invalid_argument on malformed text.
  static PauliString parse(std::string_view text);

  /// Single non-identity factor `pauli` ('X', 'Y' or 'Z') on qubit q.
  static PauliString single(std::size_t n_qubits, std::size_t q, char pauli);

  /// Builds a string from a sparse list of (qubit, pauli) pairs.
  static PauliString from_sparse(std::size_t n_qubits,
                                 const std::vector<std::pair<std::size_t, char>>& factors);

  std::size_t n_qubits() const { return n_; }
  std::size_t num_words() const { return xs_.size(); }

  /// Exponent k of the leading factor i^k, in {0, 1, 2, 3}.
  std::uint8_t phase() const { return phase_; }
  void set_phase(std::uint8_t k) { phase_ = k & 3u; }
  bool is_hermitian() const { return (phase_ & 1u) == 0; }
  /// +1 or -1 for Hermitian strings.
  int sign() const { return phase_ == 2 ? -1 : 1; }

  bool x(std::size_t q) const { return bits::get(xs_, q); }
  bool z(std::size_t q) const { return bits::get(zs_, q); }
  char pauli_at(std::size_t q) const;
  void set_pauli(std::size_t q, char pauli);

  std::span<const std::uint64_t> xs() const { return xs_; }
  std::span<const std::uint64_t> zs() const { return zs_; }
  std::span<std::uint64_t> xs() { return xs_; }
  std::span<std::uint64_t> zs() { return zs_; }

  bool is_identity() const;
  /// True when every factor is I or Z.
  bool is_diagonal() const;
  std::size_t weight() const;
  /// Qubits carrying a non-identity factor, ascending.
  std::vector<std::size_t> support() const;

  bool commutes_with(const PauliString& other) const;

  /// this <- this * rhs, including the phase picked up by the product.
  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }

  /// Equality compares phase too; use same_operator() to ignore it.
  bool operator==(const PauliString& other) const = default;
  bool same_operator(const PauliString& other) const;

  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::uint8_t phase_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};

}  // namespace cps
