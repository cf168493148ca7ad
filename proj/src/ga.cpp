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

#include "cps/ga.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cps/parallel.hpp"

namespace cps {

void GaConfig::validate() const {
  if (population < 2) throw std::invalid_argument("GA population must be >= 2");
  if (elites < 0 || elites >= population) throw std::invalid_argument("GA elites must lie in [0, population)");
  if (tournament < 1) throw std::invalid_argument("GA tournament size must be >= 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw std::invalid_argument("GA crossover rate must lie in [0, 1]");
  if (mutation_rate > 1.0) throw std::invalid_argument("GA mutation rate must be <= 1");
  if (stall_generations < 1) throw std::invalid_argument("GA stall limit must be >= 1");
}

namespace {

using Genome = std::vector<GateId>;

struct Scored {
  Genome genes;
  double fitness = 0.0;
};

class Run {
 public:
  Run(Environment& env, const GaConfig& cfg, GaBudget budget, std::uint64_t seed)
      : env_(env), cfg_(cfg), budget_(budget), rng_(seed), d_(env.num_slots()) {
    mutation_ = cfg_.mutation_rate > 0.0 ? cfg_.mutation_rate : 1.0 / static_cast<double>(d_);
  }

  GaResult go() {
    GaResult out;
    if (budget_.limit == 0) {
      out.best_genome.assign(d_, kIdentityGate);
      out.best_reward = env_.reward_uncached(out.best_genome);
      out.budget_exhausted = true;
      return out;
    }
    std::vector<Scored> pop;
    for (auto& g : initial_population()) pop.push_back({std::move(g), 0.0});
    std::uint64_t generation = 0;
    int stall = 0;
    for (;;) {
      const std::uint64_t before = env_.counters().distinct;
      const bool complete = score(pop);
      const std::uint64_t after = env_.counters().distinct;
      if (!pop.empty()) {
        double sum = 0.0;
        for (const auto& s : pop) {
          sum += s.fitness;
          if (!has_best_ || s.fitness > out.best_reward) {
            has_best_ = true;
            out.best_reward = s.fitness;
            out.best_genome = s.genes;
          }
        }
        out.history.push_back({generation, out.best_reward, sum / static_cast<double>(pop.size()), after});
      }
      ++generation;
      if (!complete) {
        out.budget_exhausted = true;
        break;
      }
      if (budget_.mode == GaBudget::Mode::kGenerations) {
        if (generation >= budget_.limit) {
          out.budget_exhausted = true;
          break;
        }
      } else {
        if (after >= budget_.limit) {
          out.budget_exhausted = true;
          break;
        }
        stall = (after == before) ? stall + 1 : 0;
        if (stall >= cfg_.stall_generations) break;
      }
      pop = next_generation(pop);
    }
    out.evaluations = env_.counters().distinct;
    return out;
  }

 private:
  std::vector<Genome> initial_population() {
    std::uint64_t space = 1;
    bool small = true;
    for (std::size_t i = 0; i < d_ && small; ++i) {
      space *= kNumCliffords;
      small = space <= static_cast<std::uint64_t>(cfg_.population);
    }
    std::vector<Genome> out;
    if (small) {
      // The whole space fits: enumerate it, identity first.
      for (std::uint64_t code = 0; code < space; ++code) {
        Genome g(d_);
        std::uint64_t c = code;
        for (std::size_t i = 0; i < d_; ++i) {
          g[i] = static_cast<GateId>(c % kNumCliffords);
          c /= kNumCliffords;
        }
        out.push_back(std::move(g));
      }
      return out;
    }
    std::set<Genome> seen;
    out.emplace_back(d_, kIdentityGate);
    seen.insert(out.back());
    std::uniform_int_distribution<int> gate(0, kNumCliffords - 1);
    while (out.size() < static_cast<std::size_t>(cfg_.population)) {
      Genome g(d_);
      for (auto& x : g) x = static_cast<GateId>(gate(rng_));
      if (seen.insert(g).second) out.push_back(std::move(g));
    }
    return out;
  }

  /// Scores the population in order. Returns false, truncating `pop` to the
  /// scored genomes, when the evaluation budget runs out first.
  bool score(std::vector<Scored>& pop) {
    if (budget_.mode == GaBudget::Mode::kGenerations) {
      std::vector<double> fit(pop.size());
      parallel_for(pop.size(), cfg_.threads, [&](std::size_t i) { fit[i] = env_.reward(pop[i].genes, EvalSource::kBaseline); });
      for (std::size_t i = 0; i < pop.size(); ++i) pop[i].fitness = fit[i];
      return true;
    }
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (!env_.contains(pop[i].genes) && env_.counters().distinct >= budget_.limit) {
        pop.resize(i);
        return false;
      }
      pop[i].fitness = env_.reward(pop[i].genes, EvalSource::kBaseline);
    }
    return true;
  }

  const Scored& tournament(const std::vector<Scored>& pop) {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    std::size_t best = pick(rng_);
    for (int k = 1; k < cfg_.tournament; ++k) {
      const std::size_t c = pick(rng_);
      if (pop[c].fitness > pop[best].fitness || (pop[c].fitness == pop[best].fitness && c < best)) best = c;
    }
    return pop[best];
  }

  std::vector<Scored> next_generation(const std::vector<Scored>& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness > pop[b].fitness; });
    std::vector<Scored> next;
    const auto target = static_cast<std::size_t>(cfg_.population);
    for (std::size_t i = 0; i < std::min<std::size_t>(static_cast<std::size_t>(cfg_.elites), order.size()); ++i) {
      next.push_back(pop[order[i]]);
    }
    std::bernoulli_distribution cross(cfg_.crossover_rate);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution mutate(mutation_);
    std::uniform_int_distribution<int> other(1, kNumCliffords - 1);
    while (next.size() < target) {
      const Scored& a = tournament(pop);
      const Scored& b = tournament(pop);
      Genome child = a.genes;
      if (cross(rng_)) {
        for (std::size_t i = 0; i < d_; ++i) {
          if (coin(rng_)) child[i] = b.genes[i];
        }
      }
      for (auto& g : child) {
        // Shift by 1..23 so a mutated gene always changes.
        if (mutate(rng_)) g = static_cast<GateId>((g + other(rng_)) % kNumCliffords);
      }
      next.push_back({std::move(child), 0.0});
    }
    return next;
  }

  Environment& env_;
  const GaConfig& cfg_;
  GaBudget budget_;
  std::mt19937_64 rng_;
  std::size_t d_;
  double mutation_ = 0.0;
  bool has_best_ = false;
};

}  // namespace

GaResult ga_search(Environment& env, const GaConfig& config, GaBudget budget, std::uint64_t seed) {
  config.validate();
  if (env.num_slots() == 0) throw std::invalid_argument("GA needs at least one prefix slot");
  return Run(env, config, budget, seed).go();
}

}  // namespace cps
