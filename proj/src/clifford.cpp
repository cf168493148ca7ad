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

#include "cps/clifford.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

#include "cps/pauli.hpp"

namespace cps {

namespace {

SignedPauli apply_rule(const CliffordRule& rule, SignedPauli p) {
  SignedPauli out = rule.image(p.xz);
  out.negative ^= p.negative;
  return out;
}

// Order X < Y < Z, + before -.
int sort_key(SignedPauli p) {
  static constexpr int kRank[4] = {-1, 0, 2, 1};
  return 2 * kRank[p.xz] + (p.negative ? 1 : 0);
}

CliffordRule make_rule(SignedPauli x_image, SignedPauli z_image, std::string word) {
  return CliffordRule{x_image, z_image, y_image_from(x_image, z_image), std::move(word)};
}

std::array<CliffordRule, kNumCliffords> build_table() {
  const CliffordRule identity = make_rule({1, false}, {2, false}, "");
  const CliffordRule hadamard = make_rule({2, false}, {1, false}, "H");
  const CliffordRule phase = make_rule({3, false}, {2, false}, "S");

  std::vector<CliffordRule> found{identity};
  std::deque<CliffordRule> frontier{identity};
  auto seen = [&found](const CliffordRule& r) {
    return std::any_of(found.begin(), found.end(), [&r](const CliffordRule& f) {
      return f.x_image == r.x_image && f.z_image == r.z_image;
    });
  };
  while (!frontier.empty()) {
    const CliffordRule cur = frontier.front();
    frontier.pop_front();
    for (const CliffordRule* gen : {&hadamard, &phase}) {
      CliffordRule next = compose_rules(cur, *gen);
      if (!seen(next)) {
        found.push_back(next);
        frontier.push_back(std::move(next));
      }
    }
  }
  if (found.size() != kNumCliffords) {
    throw std::logic_error("single-qubit Clifford enumeration did not produce 24 elements");
  }

  std::sort(found.begin() + 1, found.end(), [](const CliffordRule& a, const CliffordRule& b) {
    const int ax = sort_key(a.x_image), bx = sort_key(b.x_image);
    if (ax != bx) return ax < bx;
    return sort_key(a.z_image) < sort_key(b.z_image);
  });

  std::array<CliffordRule, kNumCliffords> table;
  std::copy(found.begin(), found.end(), table.begin());
  return table;
}

struct NamedGate {
  const char* name;
  SignedPauli x_image;
  SignedPauli z_image;
};

constexpr NamedGate kNamedGates[] = {
    {"I", {1, false}, {2, false}},          {"X", {1, false}, {2, true}},
    {"Y", {1, true}, {2, true}},            {"Z", {1, true}, {2, false}},
    {"H", {2, false}, {1, false}},          {"S", {3, false}, {2, false}},
    {"S_DAG", {3, true}, {2, false}},       {"SQRT_X", {1, false}, {3, true}},
    {"SQRT_X_DAG", {1, false}, {3, false}}, {"SQRT_Y", {2, true}, {1, false}},
    {"SQRT_Y_DAG", {2, false}, {1, true}},
};

}  // namespace

char SignedPauli::letter() const {
  static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
  return kNames[xz & 3u];
}

std::string SignedPauli::str() const {
  return std::string(negative ? "-" : "+") + letter();
}

SignedPauli y_image_from(SignedPauli x_image, SignedPauli z_image) {
  // C Y C^dagger = i (C X C^dagger)(C Z C^dagger).
  std::uint64_t x1 = x_image.xz & 1u;
  std::uint64_t z1 = (x_image.xz >> 1) & 1u;
  const std::uint64_t x2 = z_image.xz & 1u;
  const std::uint64_t z2 = (z_image.xz >> 1) & 1u;
  const std::uint8_t log_i = bits::mul_into(std::span<std::uint64_t>(&x1, 1),
                                            std::span<std::uint64_t>(&z1, 1),
                                            std::span<const std::uint64_t>(&x2, 1),
                                            std::span<const std::uint64_t>(&z2, 1));
  unsigned phase = 1u + log_i;
  if (x_image.negative != z_image.negative) phase += 2;
  phase &= 3u;
  if (phase & 1u) throw std::invalid_argument("X and Z images must anticommute");
  return SignedPauli{static_cast<std::uint8_t>(x1 | (z1 << 1)), phase == 2};
}

CliffordRule compose_rules(const CliffordRule& first, const CliffordRule& second) {
  return make_rule(apply_rule(second, first.x_image), apply_rule(second, first.z_image),
                   first.word + second.word);
}

const std::array<CliffordRule, kNumCliffords>& clifford_table() {
  static const std::array<CliffordRule, kNumCliffords> table = build_table();
  return table;
}

std::optional<GateId> find_clifford(SignedPauli x_image, SignedPauli z_image) {
  const auto& table = clifford_table();
  for (int g = 0; g < kNumCliffords; ++g) {
    if (table[g].x_image == x_image && table[g].z_image == z_image) {
      return static_cast<GateId>(g);
    }
  }
  return std::nullopt;
}

GateId inverse_gate(GateId gate) {
  for (int g = 0; g < kNumCliffords; ++g) {
    if (compose_gates(gate, static_cast<GateId>(g)) == kIdentityGate) {
      return static_cast<GateId>(g);
    }
  }
  throw std::logic_error("Clifford table is not a group");
}

GateId compose_gates(GateId first, GateId second) {
  const auto& table = clifford_table();
  const CliffordRule r = compose_rules(table.at(first), table.at(second));
  auto id = find_clifford(r.x_image, r.z_image);
  if (!id) throw std::logic_error("Clifford table is not closed under composition");
  return *id;
}

GateId gate_by_name(std::string_view name) {
  for (const auto& g : kNamedGates) {
    if (name == g.name) return *find_clifford(g.x_image, g.z_image);
  }
  throw std::invalid_argument("unknown Clifford gate name: " + std::string(name));
}

std::string gate_name(GateId gate) {
  const auto& rule = clifford_table().at(gate);
  for (const auto& g : kNamedGates) {
    if (g.x_image == rule.x_image && g.z_image == rule.z_image) return g.name;
  }
  return "C" + rule.word;
}

}  // namespace cps
