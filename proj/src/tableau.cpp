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

#include "cps/tableau.hpp"

#include <stdexcept>

namespace cps {

namespace {

// Per-gate lookup of (new xz bits, sign flip) indexed by the old xz bits.
struct GateLut {
  std::uint8_t xz[4];
  std::uint8_t flip[4];
};

const std::array<GateLut, kNumCliffords>& gate_luts() {
  static const std::array<GateLut, kNumCliffords> luts = [] {
    std::array<GateLut, kNumCliffords> out{};
    const auto& table = clifford_table();
    for (int g = 0; g < kNumCliffords; ++g) {
      for (std::uint8_t p = 0; p < 4; ++p) {
        const SignedPauli img = table[g].image(p);
        out[g].xz[p] = img.xz;
        out[g].flip[p] = img.negative ? 1 : 0;
      }
    }
    return out;
  }();
  return luts;
}

}  // namespace

StabilizerTableau::StabilizerTableau(std::size_t n_qubits)
    : n_(n_qubits),
      w_(words_for(n_qubits)),
      xs_(2 * n_qubits * words_for(n_qubits), 0),
      zs_(2 * n_qubits * words_for(n_qubits), 0),
      signs_(2 * n_qubits, 0) {
  for (std::size_t i = 0; i < n_; ++i) {
    bits::set(std::span<std::uint64_t>(&xs_[i * w_], w_), i, true);
    bits::set(std::span<std::uint64_t>(&zs_[(n_ + i) * w_], w_), i, true);
  }
}

void StabilizerTableau::apply_single_qubit(GateId gate, std::size_t qubit) {
  if (qubit >= n_) throw std::out_of_range("qubit index out of range");
  if (gate >= kNumCliffords) throw std::out_of_range("Clifford gate id out of range");
  if (gate == kIdentityGate) return;
  const GateLut& lut = gate_luts()[gate];
  const std::size_t word = qubit >> 6;
  const unsigned shift = qubit & 63;
  const std::uint64_t mask = std::uint64_t{1} << shift;
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    std::uint64_t& xw = xs_[r * w_ + word];
    std::uint64_t& zw = zs_[r * w_ + word];
    const unsigned p = static_cast<unsigned>(((xw >> shift) & 1u) | (((zw >> shift) & 1u) << 1));
    const std::uint8_t np = lut.xz[p];
    xw = (xw & ~mask) | (static_cast<std::uint64_t>(np & 1u) << shift);
    zw = (zw & ~mask) | (static_cast<std::uint64_t>((np >> 1) & 1u) << shift);
    signs_[r] ^= lut.flip[p];
  }
}

void StabilizerTableau::apply_cnot(std::size_t control, std::size_t target) {
  if (control >= n_ || target >= n_) throw std::out_of_range("qubit index out of range");
  if (control == target) throw std::invalid_argument("CNOT control and target must differ");
  const std::size_t cw = control >> 6, tw = target >> 6;
  const unsigned cs = control & 63, ts = target & 63;
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    std::uint64_t* xr = &xs_[r * w_];
    std::uint64_t* zr = &zs_[r * w_];
    const unsigned xc = (xr[cw] >> cs) & 1u;
    const unsigned zc = (zr[cw] >> cs) & 1u;
    const unsigned xt = (xr[tw] >> ts) & 1u;
    const unsigned zt = (zr[tw] >> ts) & 1u;
    // X_c -> X_c X_t and Z_t -> Z_c Z_t with the Aaronson-Gottesman sign rule.
    signs_[r] ^= static_cast<std::uint8_t>(xc & zt & (xt ^ zc ^ 1u));
    xr[tw] ^= static_cast<std::uint64_t>(xc) << ts;
    zr[cw] ^= static_cast<std::uint64_t>(zt) << cs;
  }
}

void StabilizerTableau::apply(const CircuitOp& op) {
  if (op.kind == CircuitOp::Kind::kSingle) {
    apply_single_qubit(op.gate, op.q0);
  } else {
    apply_cnot(op.q0, op.q1);
  }
}

void StabilizerTableau::apply(std::span<const CircuitOp> circuit) {
  for (const auto& op : circuit) apply(op);
}

int StabilizerTableau::expectation(const PauliString& observable) const {
  if (observable.n_qubits() != n_) {
    throw std::invalid_argument("observable qubit count does not match the state");
  }
  if (!observable.is_hermitian()) {
    throw std::invalid_argument("observable must have a real phase (+1 or -1)");
  }
  const auto ox = observable.xs();
  const auto oz = observable.zs();
  for (std::size_t i = 0; i < n_; ++i) {
    if (bits::anticommutes(ox, oz, xrow(n_ + i), zrow(n_ + i))) return 0;
  }
  // The observable lies in the stabilizer group up to sign: it is the product of
  // the stabilizers whose paired destabilizers it anticommutes with.
  std::vector<std::uint64_t> acc_x(w_, 0), acc_z(w_, 0);
  unsigned phase = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!bits::anticommutes(ox, oz, xrow(i), zrow(i))) continue;
    const std::size_t r = n_ + i;
    phase += bits::mul_into(acc_x, acc_z, xrow(r), zrow(r));
    phase += 2u * signs_[r];
  }
  phase &= 3u;
  return phase == observable.phase() ? 1 : -1;
}

PauliString StabilizerTableau::row(std::size_t r) const {
  PauliString p(n_);
  for (std::size_t w = 0; w < w_; ++w) {
    p.xs()[w] = xs_[r * w_ + w];
    p.zs()[w] = zs_[r * w_ + w];
  }
  p.set_phase(signs_[r] ? 2 : 0);
  return p;
}

bool StabilizerTableau::is_valid() const {
  for (std::size_t a = 0; a < 2 * n_; ++a) {
    for (std::size_t b = a + 1; b < 2 * n_; ++b) {
      const bool anti = bits::anticommutes(xrow(a), zrow(a), xrow(b), zrow(b));
      const bool paired = a < n_ && b == a + n_;
      if (anti != paired) return false;
    }
  }
  // Gaussian elimination over GF(2) on the 2n x 2n matrix [x | z].
  const std::size_t cols = 2 * n_;
  std::vector<std::vector<std::uint8_t>> m(2 * n_, std::vector<std::uint8_t>(cols, 0));
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    for (std::size_t q = 0; q < n_; ++q) {
      m[r][q] = bits::get(xrow(r), q);
      m[r][n_ + q] = bits::get(zrow(r), q);
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot][c]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank == 2 * n_;
}

}  // namespace cps
