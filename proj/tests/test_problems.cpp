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

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <random>

#include "doctest.h"

#include "cps/ansatz.hpp"
#include "cps/errors.hpp"
#include "cps/exact.hpp"
#include "cps/hamiltonian.hpp"
#include "cps/instance.hpp"

namespace {

using Dense = Eigen::MatrixXcd;

Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Dense operator of a Pauli string, built by Kronecker products in the test.
// Qubit q is bit q of the basis index, so qubit 0 is the rightmost factor.
Dense dense_pauli(const cps::PauliString& p) {
  Dense out = Dense::Identity(1, 1);
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    Dense m(2, 2);
    switch (p.pauli_at(q)) {
      case 'X':
        m << 0, 1, 1, 0;
        break;
      case 'Y':
        m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
        break;
      case 'Z':
        m << 1, 0, 0, -1;
        break;
      default:
        m << 1, 0, 0, 1;
    }
    out = kron(m, out);
  }
  return out * static_cast<double>(p.sign());
}

double dense_ground(const cps::Hamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Dense m = Dense::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coeff * dense_pauli(t.pauli);
  Eigen::SelfAdjointEigenSolver<Dense> es(m);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("maxcut ground energy equals minus the brute-force max cut") {
  for (std::uint64_t seed : {1u, 7u, 42u}) {
    const auto g = cps::WeightedGraph::random_complete(6, seed);
    CHECK(g.edges.size() == 15);
    double best = 0.0;
    for (unsigned mask = 0; mask < 64; ++mask) {
      double cut = 0.0;
      for (const auto& e : g.edges) {
        if (((mask >> e.i) & 1u) != ((mask >> e.j) & 1u)) cut += e.weight;
      }
      best = std::max(best, cut);
    }
    const auto h = cps::maxcut_hamiltonian(g);
    CHECK(h.is_diagonal());
    CHECK(cps::exact_ground_energy(h) == doctest::Approx(-best).epsilon(1e-12));
    // Diagonal entry b is minus the cut of b.
    const auto diag = cps::diagonal_energies(h);
    for (unsigned mask = 0; mask < 64; mask += 5) {
      double cut = 0.0;
      for (const auto& e : g.edges) {
        if (((mask >> e.i) & 1u) != ((mask >> e.j) & 1u)) cut += e.weight;
      }
      CHECK(diag[mask] == doctest::Approx(-cut));
    }
  }
}

TEST_CASE("knapsack ground energy equals minus the best feasible value") {
  for (std::uint64_t seed : {3u, 11u}) {
    const auto k = cps::KnapsackInstance::random(5, seed);
    double best = 0.0;
    for (unsigned mask = 0; mask < 32; ++mask) {
      long long w = 0;
      double v = 0.0;
      for (unsigned i = 0; i < 5; ++i) {
        if ((mask >> i) & 1u) {
          w += k.weights[i];
          v += k.values[i];
        }
      }
      if (w <= k.capacity) best = std::max(best, v);
    }
    const auto h = cps::knapsack_hamiltonian(k);
    CHECK(h.n_qubits() == k.num_qubits());
    CHECK(cps::exact_ground_energy(h) == doctest::Approx(-best).epsilon(1e-9));
    const auto diag = cps::diagonal_energies(h);
    for (std::uint64_t b = 0; b < diag.size(); b += 7) {
      CHECK(diag[b] == doctest::Approx(k.classical_cost(b)).epsilon(1e-9));
    }
  }
}

TEST_CASE("chain Hamiltonians agree with a dense Kronecker build") {
  for (double j : {0.5, 1.0, 2.0}) {
    const auto tf = cps::tfim_hamiltonian(4, j);
    CHECK(tf.size() == 3 + 4);
    CHECK(cps::exact_ground_energy(tf) == doctest::Approx(dense_ground(tf)).epsilon(1e-10));
    const auto xxz = cps::xxz_hamiltonian(4, j);
    CHECK(xxz.size() == 9);
    CHECK(cps::exact_ground_energy(xxz) == doctest::Approx(dense_ground(xxz)).epsilon(1e-10));
  }
}

TEST_CASE("published ten-site chain ground energies") {
  struct Row {
    bool tfim;
    double j;
    double energy;
  };
  const Row rows[] = {{true, 0.5, -10.570}, {true, 1.0, -12.381}, {true, 2.0, -19.531},
                      {false, 0.5, -11.665}, {false, 1.0, -17.032}, {false, 2.0, -28.722}};
  for (const auto& r : rows) {
    const auto h = r.tfim ? cps::tfim_hamiltonian(10, r.j) : cps::xxz_hamiltonian(10, r.j);
    CHECK(std::abs(cps::exact_ground_energy(h) - r.energy) <= 1e-3);
  }
}

TEST_CASE("ma-QAOA slot counts are edges plus vertices") {
  const std::pair<std::size_t, std::size_t> rows[] = {{8, 36}, {12, 78}, {16, 136}, {20, 210}};
  for (const auto& [n, d] : rows) {
    const auto g = cps::WeightedGraph::random_complete(n, 5);
    CHECK(cps::build_maqaoa_skeleton(cps::maxcut_hamiltonian(g)).num_slots() == d);
  }
  CHECK(cps::build_hea_skeleton(10, 1).num_slots() == 40);
  CHECK(cps::build_hea_skeleton(4, 2).num_slots() == 24);
  CHECK_THROWS_AS(cps::build_maqaoa_skeleton(cps::tfim_hamiltonian(3, 1.0)), std::invalid_argument);
}

TEST_CASE("identity prefix on ma-QAOA prepares |+>^n") {
  const auto g = cps::WeightedGraph::random_complete(5, 9);
  const auto h = cps::maxcut_hamiltonian(g);
  const auto sk = cps::build_maqaoa_skeleton(h);
  const auto state = sk.simulate({});
  // <Z_i Z_j> = 0 on |+>^n, leaving the constant -W/2.
  CHECK(cps::hamiltonian_energy(state, h) == doctest::Approx(-g.total_weight() / 2));
  for (std::size_t q = 0; q < 5; ++q) CHECK(state.expectation(cps::PauliString::single(5, q, 'X')) == 1);
}

TEST_CASE("hamiltonian term merging and validation") {
  cps::Hamiltonian h(2);
  h.add_term(1.0, "XZ");
  h.add_term(0.5, "XZ");
  h.add_term(2.0, "-ZZ");
  CHECK(h.size() == 2);
  CHECK(h.terms()[0].coeff == 1.5);
  CHECK(h.terms()[1].coeff == -2.0);
  CHECK_THROWS_AS(h.add_term(1.0, "XXX"), std::invalid_argument);
  CHECK_THROWS_AS(h.add_term(1.0, "iXZ"), std::invalid_argument);
}

TEST_CASE("instance generation and JSON round trip") {
  const auto inst = cps::generate_instance("maxcut", 6, 0.0, 7);
  CHECK(inst.name() == "MaxCut_6");
  CHECK(inst.skeleton().num_slots() == 21);
  const auto back = cps::instance_from_json(cps::instance_to_json(inst));
  CHECK(back.ground_energy == inst.ground_energy);
  CHECK(back.graph->edges.size() == 15);
  const auto tf = cps::generate_instance("tfim", 10, 0.5, 0);
  CHECK(tf.name() == "Ising_0.5");
  CHECK(std::abs(tf.ground_energy + 10.570) <= 1e-3);
  CHECK_THROWS_AS(cps::generate_instance("maxcut", 1, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(cps::generate_instance("ising3d", 4, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(cps::generate_instance("tfim", 20, 1.0, 0), cps::ResourceError);
}
