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

#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"

#include "cps/environment.hpp"
#include "cps/hamiltonian.hpp"
#include "cps/mcts.hpp"

namespace {

struct Fixture {
  std::shared_ptr<const cps::Hamiltonian> h;
  std::shared_ptr<const cps::CircuitSkeleton> sk;
  cps::Environment env;

  explicit Fixture(std::size_t n = 4)
      : h(std::make_shared<const cps::Hamiltonian>(cps::maxcut_hamiltonian(cps::WeightedGraph::random_complete(n, 17)))),
        sk(std::make_shared<const cps::CircuitSkeleton>(cps::build_maqaoa_skeleton(*h))),
        env(sk, h) {}
};

cps::NetOutput uniform_output() {
  cps::NetOutput out;
  out.policy.fill(1.0f / cps::kNumActions);
  out.value = 0.0f;
  return out;
}

const cps::PolicyValueFn kUniform = [](std::span<const cps::GateId>) { return uniform_output(); };

// Priors favour action 0 and 5; value depends on the last gate.
const cps::PolicyValueFn kSkewed = [](std::span<const cps::GateId> prefix) {
  cps::NetOutput out;
  out.policy.fill(0.5f / 22);
  out.policy[0] = 0.3f;
  out.policy[5] = 0.2f;
  out.value = prefix.empty() ? 0.0f : static_cast<float>(prefix.back()) / 23.0f - 0.5f;
  return out;
};

cps::SearchConfig noiseless(int m) {
  cps::SearchConfig c;
  c.simulations = m;
  c.dirichlet_eps = 0.0;
  return c;
}

// N(s) = sum_a N(s,a) + 1 and Q N = W on every expanded node.
void check_bookkeeping(const cps::SearchNode& node) {
  if (!node.expanded) return;
  if (node.terminal) {
    CHECK(node.total_child_visits() == 0);
    return;
  }
  CHECK(node.visits == node.total_child_visits() + 1);
  for (int a = 0; a < cps::kNumActions; ++a) {
    const auto n = node.child_visits[static_cast<std::size_t>(a)];
    CHECK(node.q(a) * n == doctest::Approx(node.child_value_sum[static_cast<std::size_t>(a)]).epsilon(1e-12));
    if (node.children[static_cast<std::size_t>(a)]) {
      CHECK(node.children[static_cast<std::size_t>(a)]->visits == n);
      check_bookkeeping(*node.children[static_cast<std::size_t>(a)]);
    } else {
      CHECK(n == 0);
    }
  }
}

}  // namespace

TEST_CASE("PUCT score arithmetic") {
  // N(s) = 4: a (Q .5, P .5, N 1) scores 1.0; b (Q 0, P .6, N 0) scores 1.2.
  CHECK(cps::puct_score(0.5, 0.5, 4, 1, 1.0) == doctest::Approx(1.0));
  CHECK(cps::puct_score(0.0, 0.6, 4, 0, 1.0) == doctest::Approx(1.2));
  CHECK(cps::puct_score(0.2, 0.1, 9, 2, 1.5) == doctest::Approx(0.2 + 1.5 * 0.1 * 3.0 / 3.0));
}

TEST_CASE("single simulation on a fresh root is its expansion") {
  Fixture f;
  cps::SearchTree tree(f.env, cps::RewardNormalizer{}, f.env.num_slots());
  std::mt19937_64 rng(1);
  const auto visits = tree.run_search(kUniform, noiseless(1), rng);
  CHECK(tree.root().visits == 1);
  CHECK(tree.root().expanded);
  for (auto v : visits) CHECK(v == 0);
  CHECK(tree.node_count() == 1);
}

TEST_CASE("uniform stub spreads root visits evenly") {
  Fixture f;
  cps::SearchTree tree(f.env, cps::RewardNormalizer{}, f.env.num_slots());
  std::mt19937_64 rng(2);
  const auto visits = tree.run_search(kUniform, noiseless(240), rng);
  const double mean = static_cast<double>(tree.root().total_child_visits()) / cps::kNumActions;
  CHECK(tree.root().total_child_visits() == 239);
  for (auto v : visits) CHECK(std::abs(static_cast<double>(v) - mean) <= 1.0);
  check_bookkeeping(tree.root());
}

TEST_CASE("visit bookkeeping holds through searches and re-rooting") {
  Fixture f;
  cps::SearchTree tree(f.env, cps::RewardNormalizer::with_stats(2.0, 1.5), 4);
  std::mt19937_64 rng(3);
  auto cfg = noiseless(60);
  cfg.dirichlet_eps = 0.2;
  const auto v1 = tree.run_search(kSkewed, cfg, rng);
  CHECK(tree.root().total_child_visits() == 59);
  check_bookkeeping(tree.root());
  double prior_sum = 0.0;
  for (float p : tree.root().prior) prior_sum += p;
  CHECK(prior_sum == doctest::Approx(1.0).epsilon(1e-5));

  const auto a = cps::sample_action(v1, 0.0, rng);
  const bool reused = tree.root().children[a] && tree.root().children[a]->expanded;
  const auto carried = reused ? tree.root().children[a]->child_visits : cps::VisitCounts{};
  const auto before = tree.node_count();
  tree.reroot(a);
  CHECK(tree.root_prefix() == std::vector<cps::GateId>{a});
  CHECK(tree.root().child_visits == carried);
  CHECK(tree.node_count() <= before);
  const std::uint32_t start = tree.root().total_child_visits();
  tree.run_search(kSkewed, cfg, rng);
  // A reused root turns all m simulations into backups; a fresh one spends one on its expansion.
  CHECK(tree.root().total_child_visits() == start + (reused ? 60u : 59u));
  check_bookkeeping(tree.root());
}

TEST_CASE("terminal leaves use the normalized environment reward") {
  Fixture f;
  // Horizon 1: every child of the root is terminal.
  const auto norm = cps::RewardNormalizer::with_stats(3.0, 2.0);
  cps::SearchTree tree(f.env, norm, 1);
  std::mt19937_64 rng(4);
  tree.run_search(kUniform, noiseless(49), rng);
  for (int a = 0; a < cps::kNumActions; ++a) {
    const auto& child = tree.root().children[static_cast<std::size_t>(a)];
    if (!child) continue;
    CHECK(child->terminal);
    const double expected = norm.normalize(f.env.reward(std::vector<cps::GateId>{static_cast<cps::GateId>(a)}));
    CHECK(child->terminal_value == expected);
    CHECK(tree.root().q(a) == doctest::Approx(expected));
  }
  tree.reroot(0);
  CHECK(tree.root_is_terminal());
  CHECK_THROWS_AS(tree.run_search(kUniform, noiseless(5), rng), std::invalid_argument);
}

TEST_CASE("search is deterministic for a fixed seed") {
  auto run = [](std::uint64_t seed) {
    Fixture f;
    cps::SearchTree tree(f.env, cps::RewardNormalizer{}, 5);
    std::mt19937_64 rng(seed);
    cps::SearchConfig cfg;
    cfg.simulations = 80;
    std::vector<cps::VisitCounts> out;
    for (int step = 0; step < 3; ++step) {
      out.push_back(tree.run_search(kSkewed, cfg, rng));
      tree.reroot(cps::sample_action(out.back(), 1.0, rng));
    }
    return out;
  };
  CHECK(run(11) == run(11));
  CHECK(run(11) != run(12));
}

TEST_CASE("visit distribution and sampling") {
  cps::VisitCounts v{};
  v[0] = 10;
  for (double tau : {0.0, 0.5, 1.0, 2.0}) CHECK(cps::visit_distribution(v, tau)[0] == 1.0);
  v = {};
  v[0] = 8;
  v[1] = 2;
  auto d = cps::visit_distribution(v, 1.0);
  CHECK(d[0] == doctest::Approx(0.8));
  CHECK(d[1] == doctest::Approx(0.2));
  d = cps::visit_distribution(v, 0.5);
  CHECK(d[0] == doctest::Approx(64.0 / 68.0));
  CHECK(d[1] == doctest::Approx(4.0 / 68.0));
  CHECK_THROWS_AS(cps::visit_distribution(cps::VisitCounts{}, 1.0), std::logic_error);

  // Greedy: max count, lowest index on ties.
  cps::VisitCounts tie{};
  tie[3] = 7;
  tie[9] = 7;
  tie[1] = 2;
  std::mt19937_64 rng(0);
  CHECK(cps::sample_action(tie, 0.0, rng) == 3);

  // Empirical frequencies follow the tau = 1 distribution.
  int hits = 0;
  for (int i = 0; i < 20000; ++i) hits += cps::sample_action(v, 1.0, rng) == 0;
  CHECK(hits / 20000.0 == doctest::Approx(0.8).epsilon(0.02));
}

TEST_CASE("temperature schedule") {
  const cps::SearchConfig c;
  CHECK(cps::temperature_at(10, 100, c) == 1.0);
  CHECK(cps::temperature_at(24, 100, c) == 1.0);
  CHECK(cps::temperature_at(25, 100, c) == doctest::Approx(1.0));
  CHECK(cps::temperature_at(50, 100, c) == doctest::Approx(std::pow(0.75, 25.0 / 50.0)));
  CHECK(cps::temperature_at(50, 100, c) == doctest::Approx(0.866).epsilon(1e-3));
  CHECK(cps::temperature_at(75, 100, c) == 0.75);
  CHECK(cps::temperature_at(99, 100, c) == 0.75);
  // Short horizons reach the threshold before the decay would start.
  CHECK(cps::temperature_at(15, 21, c) == 1.0);
  CHECK(cps::temperature_at(16, 21, c) == 0.75);
  double prev = 2.0;
  for (std::size_t s = 0; s < 200; ++s) {
    const double t = cps::temperature_at(s, 200, c);
    CHECK(t <= prev);
    prev = t;
  }
}
