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

#include <algorithm>
#include <memory>

#include "doctest.h"

#include "cps/ga.hpp"
#include "cps/hamiltonian.hpp"

namespace {

struct Fixture {
  std::shared_ptr<const cps::Hamiltonian> h;
  std::shared_ptr<const cps::CircuitSkeleton> sk;
  explicit Fixture(std::size_t n = 4, std::uint64_t seed = 6)
      : h(std::make_shared<const cps::Hamiltonian>(cps::maxcut_hamiltonian(cps::WeightedGraph::random_complete(n, seed)))),
        sk(std::make_shared<const cps::CircuitSkeleton>(cps::build_maqaoa_skeleton(*h))) {}
};

}  // namespace

TEST_CASE("evaluation-matched GA stops at exactly the budget") {
  Fixture f;
  for (std::uint64_t budget : {1u, 37u, 100u, 101u, 850u}) {
    cps::Environment env(f.sk, f.h);
    const auto r = cps::ga_search(env, cps::GaConfig{}, cps::GaBudget::evaluations(budget), 3);
    CHECK(r.evaluations == budget);
    CHECK(env.counters().distinct == budget);
    CHECK(r.budget_exhausted);
    CHECK(r.best_reward == env.best_reward());
  }
}

TEST_CASE("zero budget scores only the identity genome") {
  Fixture f;
  cps::Environment env(f.sk, f.h);
  const auto r = cps::ga_search(env, cps::GaConfig{}, cps::GaBudget::evaluations(0), 3);
  CHECK(r.evaluations == 0);
  CHECK(env.counters().distinct == 0);
  CHECK(r.best_genome == std::vector<cps::GateId>(f.sk->num_slots(), cps::kIdentityGate));
  CHECK(r.best_reward == doctest::Approx(-f.h->identity_offset()));
  const auto g = cps::ga_search(env, cps::GaConfig{}, cps::GaBudget::generations(0), 3);
  CHECK(g.best_reward == r.best_reward);
}

TEST_CASE("generation-matched GA runs the requested generations") {
  Fixture f;
  cps::Environment env(f.sk, f.h);
  const auto r = cps::ga_search(env, cps::GaConfig{}, cps::GaBudget::generations(7), 3);
  REQUIRE(r.history.size() == 7);
  CHECK(r.history.front().generation == 0);
  CHECK(r.history.back().generation == 6);
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    CHECK(r.history[i].best_reward >= r.history[i - 1].best_reward);
    CHECK(r.history[i].evaluations >= r.history[i - 1].evaluations);
  }
  CHECK(r.evaluations == env.counters().distinct);
  CHECK(r.history.front().evaluations <= 100);
}

TEST_CASE("GA is deterministic and improves on the identity start") {
  Fixture f(5, 2);
  auto run = [&](std::uint64_t seed) {
    cps::Environment env(f.sk, f.h);
    return cps::ga_search(env, cps::GaConfig{}, cps::GaBudget::evaluations(2000), seed);
  };
  const auto a = run(9);
  const auto b = run(9);
  CHECK(a.best_genome == b.best_genome);
  CHECK(a.best_reward == b.best_reward);
  CHECK(a.history.size() == b.history.size());
  CHECK(a.best_reward > -f.h->identity_offset());
}

TEST_CASE("generation scoring is independent of the thread count") {
  Fixture f;
  cps::GaConfig one, four;
  four.threads = 4;
  cps::Environment e1(f.sk, f.h), e4(f.sk, f.h);
  const auto a = cps::ga_search(e1, one, cps::GaBudget::generations(5), 4);
  const auto b = cps::ga_search(e4, four, cps::GaBudget::generations(5), 4);
  CHECK(a.best_genome == b.best_genome);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("GA configuration validation") {
  Fixture f;
  cps::Environment env(f.sk, f.h);
  cps::GaConfig c;
  c.population = 1;
  CHECK_THROWS_AS(cps::ga_search(env, c, cps::GaBudget::evaluations(10), 0), std::invalid_argument);
  c = {};
  c.elites = 100;
  CHECK_THROWS_AS(cps::ga_search(env, c, cps::GaBudget::evaluations(10), 0), std::invalid_argument);
  c = {};
  c.crossover_rate = 1.5;
  CHECK_THROWS_AS(cps::ga_search(env, c, cps::GaBudget::evaluations(10), 0), std::invalid_argument);
}
