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

#include "cps/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cps {

void SearchConfig::validate() const {
  if (simulations < 1) throw std::invalid_argument("search needs at least one simulation");
  if (!(c_puct >= 0.0)) throw std::invalid_argument("c_puct must be non-negative");
  if (!(dirichlet_eps >= 0.0 && dirichlet_eps <= 1.0)) {
    throw std::invalid_argument("Dirichlet mixing weight must lie in [0, 1]");
  }
  if (dirichlet_eps > 0.0 && !(dirichlet_alpha > 0.0)) {
    throw std::invalid_argument("Dirichlet concentration must be positive");
  }
  if (!(tau_init > 0.0) || !(tau_final > 0.0)) throw std::invalid_argument("temperatures must be positive");
  if (tau_decay_start < 0) throw std::invalid_argument("temperature decay start must be >= 0");
  if (!(tau_decay_horizon_fraction > 0.0 && tau_decay_horizon_fraction <= 1.0)) {
    throw std::invalid_argument("temperature decay fraction must lie in (0, 1]");
  }
}

double puct_score(double q, double prior, std::uint32_t parent_visits, std::uint32_t child_visits,
                  double c_puct) {
  return q + c_puct * prior * std::sqrt(static_cast<double>(parent_visits)) /
                 (1.0 + static_cast<double>(child_visits));
}

std::array<double, kNumActions> visit_distribution(const VisitCounts& visits, double tau) {
  std::array<double, kNumActions> out{};
  const auto best = std::max_element(visits.begin(), visits.end());
  if (*best == 0) throw std::logic_error("visit distribution requested before any search");
  if (tau <= 0.0) {
    out[static_cast<std::size_t>(best - visits.begin())] = 1.0;
    return out;
  }
  // Normalize by the largest count in log space so large counts and small tau
  // cannot overflow.
  const double log_max = std::log(static_cast<double>(*best));
  double total = 0.0;
  for (std::size_t a = 0; a < out.size(); ++a) {
    if (visits[a] == 0) continue;
    out[a] = std::exp((std::log(static_cast<double>(visits[a])) - log_max) / tau);
    total += out[a];
  }
  for (double& p : out) p /= total;
  return out;
}

GateId sample_action(const VisitCounts& visits, double tau, std::mt19937_64& rng) {
  const auto dist = visit_distribution(visits, tau);
  if (tau <= 0.0) {
    return static_cast<GateId>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  }
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t a = 0; a < dist.size(); ++a) {
    if (dist[a] <= 0.0) continue;
    last = a;
    acc += dist[a];
    if (u < acc) return static_cast<GateId>(a);
  }
  return static_cast<GateId>(last);
}

double temperature_at(std::size_t step, std::size_t horizon, const SearchConfig& config) {
  const auto start = static_cast<std::size_t>(config.tau_decay_start);
  const auto threshold =
      static_cast<std::size_t>(std::ceil(config.tau_decay_horizon_fraction * static_cast<double>(horizon)));
  if (step >= threshold) return config.tau_final;
  if (step < start) return config.tau_init;
  // start <= step < threshold
  const double span = static_cast<double>(threshold - start);
  const double rate = std::pow(config.tau_final / config.tau_init, 1.0 / span);
  return config.tau_init * std::pow(rate, static_cast<double>(step - start));
}

std::uint32_t SearchNode::total_child_visits() const {
  return std::accumulate(child_visits.begin(), child_visits.end(), std::uint32_t{0});
}

SearchTree::SearchTree(Environment& env, RewardNormalizer normalizer, std::size_t horizon,
                       EvalSource source)
    : env_(env),
      normalizer_(normalizer),
      horizon_(horizon),
      source_(source),
      root_(std::make_unique<SearchNode>()) {
  if (horizon_ > env_.num_slots()) throw std::invalid_argument("horizon exceeds the slot count");
}

double SearchTree::expand(SearchNode& node, const std::vector<GateId>& prefix, const PolicyValueFn& net) {
  node.expanded = true;
  if (prefix.size() >= horizon_) {
    node.terminal = true;
    node.terminal_value = normalizer_.normalize(env_.reward(prefix, source_));
    return node.terminal_value;
  }
  const NetOutput out = net(prefix);
  node.raw_prior = out.policy;
  node.prior = out.policy;
  return static_cast<double>(out.value);
}

void SearchTree::simulate(const PolicyValueFn& net, double c_puct) {
  std::vector<std::pair<SearchNode*, int>> path;
  std::vector<GateId> prefix = prefix_;
  SearchNode* node = root_.get();
  double value = 0.0;
  for (;;) {
    if (!node->expanded) {
      value = expand(*node, prefix, net);
      break;
    }
    if (node->terminal) {
      value = node->terminal_value;
      break;
    }
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < kNumActions; ++a) {
      const double s = puct_score(node->q(a), node->prior[static_cast<std::size_t>(a)], node->visits,
                                  node->child_visits[static_cast<std::size_t>(a)], c_puct);
      if (s > best_score) {
        best_score = s;
        best = a;
      }
    }
    path.emplace_back(node, best);
    prefix.push_back(static_cast<GateId>(best));
    auto& child = node->children[static_cast<std::size_t>(best)];
    if (!child) child = std::make_unique<SearchNode>();
    node = child.get();
  }
  ++node->visits;
  for (auto& [parent, a] : path) {
    ++parent->visits;
    ++parent->child_visits[static_cast<std::size_t>(a)];
    parent->child_value_sum[static_cast<std::size_t>(a)] += value;
  }
}

VisitCounts SearchTree::run_search(const PolicyValueFn& net, const SearchConfig& config, std::mt19937_64& rng) {
  config.validate();
  if (root_is_terminal()) throw std::invalid_argument("search from a terminal root");
  int remaining = config.simulations;
  if (!root_->expanded) {
    expand(*root_, prefix_, net);
    ++root_->visits;
    --remaining;
  }
  root_->prior = root_->raw_prior;
  if (config.dirichlet_eps > 0.0) {
    std::gamma_distribution<double> gamma(config.dirichlet_alpha, 1.0);
    std::array<double, kNumActions> noise{};
    double total = 0.0;
    for (double& x : noise) {
      x = gamma(rng);
      total += x;
    }
    for (std::size_t a = 0; a < noise.size(); ++a) {
      const double n = total > 0.0 ? noise[a] / total : 1.0 / kNumActions;
      root_->prior[a] = static_cast<float>((1.0 - config.dirichlet_eps) * root_->raw_prior[a] +
                                           config.dirichlet_eps * n);
    }
  }
  for (; remaining > 0; --remaining) simulate(net, config.c_puct);
  return root_->child_visits;
}

void SearchTree::reroot(GateId action) {
  if (action >= kNumActions) throw std::invalid_argument("invalid action");
  if (root_is_terminal()) throw std::invalid_argument("cannot advance past the horizon");
  std::unique_ptr<SearchNode> next = std::move(root_->children[action]);
  if (!next || !next->expanded) next = std::make_unique<SearchNode>();
  root_ = std::move(next);
  prefix_.push_back(action);
}

std::size_t SearchTree::node_count() const {
  std::size_t count = 0;
  std::vector<const SearchNode*> stack{root_.get()};
  while (!stack.empty()) {
    const SearchNode* n = stack.back();
    stack.pop_back();
    ++count;
    for (const auto& c : n->children) {
      if (c) stack.push_back(c.get());
    }
  }
  return count;
}

}  // namespace cps
