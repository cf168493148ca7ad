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

#include "cps/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace cps {

namespace bits {

std::uint8_t mul_into(std::span<std::uint64_t> x1, std::span<std::uint64_t> z1,
                      std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
  // Two-bit counter per qubit position tracking the i-exponent contributed by
  // each anticommuting factor pair; +1 for XY, YZ, ZX and -1 for the reverse.
  unsigned low = 0;
  unsigned high = 0;
  for (std::size_t w = 0; w < x1.size(); ++w) {
    const std::uint64_t ox = x1[w];
    const std::uint64_t oz = z1[w];
    const std::uint64_t nx = ox ^ x2[w];
    const std::uint64_t nz = oz ^ z2[w];
    const std::uint64_t x1z2 = ox & z2[w];
    const std::uint64_t anti = (x2[w] & oz) ^ x1z2;
    const std::uint64_t cnt1 = anti;
    const std::uint64_t cnt2 = (nx ^ nz ^ x1z2) & anti;
    x1[w] = nx;
    z1[w] = nz;
    low += static_cast<unsigned>(std::popcount(cnt1));
    high += static_cast<unsigned>(std::popcount(cnt2));
  }
  return static_cast<std::uint8_t>((low + 2 * high) & 3u);
}

bool anticommutes(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                  std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < x1.size(); ++w) {
    acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
  }
  return std::popcount(acc) & 1;
}

}  // namespace bits

PauliString::PauliString(std::size_t n_qubits)
    : n_(n_qubits), xs_(words_for(n_qubits), 0), zs_(words_for(n_qubits), 0) {}

PauliString PauliString::parse(std::string_view text) {
  std::uint8_t phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = (phase + 1) & 3u;
    ++pos;
  }
  PauliString out(text.size() - pos);
  out.phase_ = phase;
  for (std::size_t q = 0; pos + q < text.size(); ++q) {
    const char c = text[pos + q];
    if (c != 'I' && c != '_' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("invalid Pauli character '" + std::string(1, c) + "' in \"" +
                                  std::string(text) + "\"");
    }
    out.set_pauli(q, c);
  }
  return out;
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t q, char pauli) {
  if (q >= n_qubits) throw std::out_of_range("qubit index out of range");
  PauliString out(n_qubits);
  out.set_pauli(q, pauli);
  return out;
}

PauliString PauliString::from_sparse(std::size_t n_qubits,
                                     const std::vector<std::pair<std::size_t, char>>& factors) {
  PauliString out(n_qubits);
  for (const auto& [q, p] : factors) {
    if (q >= n_qubits) throw std::out_of_range("qubit index out of range");
    if (out.pauli_at(q) != 'I') throw std::invalid_argument("repeated qubit in sparse Pauli");
    out.set_pauli(q, p);
  }
  return out;
}

char PauliString::pauli_at(std::size_t q) const {
  static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
  return kNames[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

void PauliString::set_pauli(std::size_t q, char pauli) {
  if (q >= n_) throw std::out_of_range("qubit index out of range");
  bool xb = false;
  bool zb = false;
  switch (pauli) {
    case 'I':
    case '_':
      break;
    case 'X':
      xb = true;
      break;
    case 'Y':
      xb = zb = true;
      break;
    case 'Z':
      zb = true;
      break;
    default:
      throw std::invalid_argument("invalid Pauli character");
  }
  bits::set(xs_, q, xb);
  bits::set(zs_, q, zb);
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    if (xs_[w] | zs_[w]) return false;
  }
  return true;
}

bool PauliString::is_diagonal() const {
  for (auto w : xs_) {
    if (w) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) total += std::popcount(xs_[w] | zs_[w]);
  return total;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_; ++q) {
    if (x(q) || z(q)) out.push_back(q);
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_ != n_) throw std::invalid_argument("Pauli strings differ in qubit count");
  return !bits::anticommutes(xs_, zs_, other.xs_, other.zs_);
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("Pauli strings differ in qubit count");
  const std::uint8_t k = bits::mul_into(xs_, zs_, rhs.xs_, rhs.zs_);
  phase_ = static_cast<std::uint8_t>((phase_ + rhs.phase_ + k) & 3u);
  return *this;
}

bool PauliString::same_operator(const PauliString& other) const {
  return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase_];
  for (std::size_t q = 0; q < n_; ++q) out.push_back(pauli_at(q) == 'I' ? '_' : pauli_at(q));
  return out;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p.n_qubits();
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto w : p.xs()) mix(w);
  for (auto w : p.zs()) mix(w);
  mix(p.phase());
  return static_cast<std::size_t>(h);
}

}  // namespace cps
