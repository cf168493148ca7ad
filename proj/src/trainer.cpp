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

#include "cps/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "cps/config_json.hpp"
#include "cps/errors.hpp"
#include "cps/parallel.hpp"

namespace cps {

using nlohmann::json;

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid training config: ") + what);
  };
  require(total_episodes >= 1, "total_episodes must be >= 1");
  require(episodes_per_round >= 1, "episodes_per_round must be >= 1");
  require(workers >= 1, "workers must be >= 1");
  require(warmup_simulations >= 1 && standard_simulations >= 1 && eval_simulations >= 1,
          "simulation counts must be >= 1");
  require(warmup_fraction >= 0.0 && warmup_fraction <= 1.0, "warmup_fraction must lie in [0, 1]");
  require(epochs >= 0, "epochs must be >= 0");
  require(batches_per_epoch >= 0, "batches_per_epoch must be >= 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(replay_capacity >= 1, "replay_capacity must be >= 1");
  require(best_game_ratio >= 0.0 && best_game_ratio <= 1.0, "best_game_ratio must lie in [0, 1]");
  require(replay_only_after <= mix_after, "replay_only_after must not exceed mix_after");
  require(value_coeff >= 0.0, "value_coeff must be >= 0");
  require(boost_fraction >= 0.0 && boost_fraction <= 1.0, "boost_fraction must lie in [0, 1]");
  require(boost_tau > 0.0, "boost_tau must be positive");
  require(eval_period >= 0, "eval_period must be >= 0");
  require(eval_dirichlet_eps >= 0.0 && eval_dirichlet_eps <= 1.0, "eval_dirichlet_eps must lie in [0, 1]");
  require(target_accuracy >= 0.0, "target_accuracy must be >= 0");
  require(checkpoint_period >= 0, "checkpoint_period must be >= 0");
  search.validate();
  net.validate();
}

std::size_t horizon_at(std::uint64_t episode, std::uint64_t total, std::size_t full_horizon, bool curriculum) {
  if (!curriculum) return full_horizon;
  if (4 * episode < total) return (full_horizon + 3) / 4;
  if (2 * episode < total) return (full_horizon + 1) / 2;
  return full_horizon;
}

std::vector<std::uint64_t> expansion_episodes(std::uint64_t total, bool curriculum) {
  if (!curriculum) return {};
  // Smallest e with 4e >= total, then with 2e >= total.
  return {(total + 3) / 4, (total + 1) / 2};
}

std::optional<std::size_t> boost_segment_start(std::uint64_t episode, std::uint64_t total,
                                               std::size_t full_horizon, bool curriculum,
                                               double boost_fraction) {
  if (!curriculum || boost_fraction <= 0.0) return std::nullopt;
  const auto window = static_cast<std::uint64_t>(std::ceil(boost_fraction * static_cast<double>(total)));
  for (std::uint64_t start : expansion_episodes(total, curriculum)) {
    if (episode >= start && episode - start < window) {
      const std::size_t before = horizon_at(start - 1, total, full_horizon, curriculum);
      const std::size_t after = horizon_at(start, total, full_horizon, curriculum);
      if (after > before) return before;
    }
  }
  return std::nullopt;
}

double episode_temperature(std::size_t step, std::size_t horizon, std::optional<std::size_t> boost_start,
                           const TrainConfig& config) {
  if (boost_start && step >= *boost_start) return config.boost_tau;
  return temperature_at(step, horizon, config.search);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

int resolve_thread_count(int requested) {
  int n = std::max(1, requested);
  if (const char* env = std::getenv("CPS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0) n = std::min(n, static_cast<int>(hw));
  return n;
}

// ---------------------------------------------------------------------------

ReplayBuffers::ReplayBuffers(std::size_t replay_capacity, std::size_t best_capacity)
    : replay_capacity_(replay_capacity), best_capacity_(best_capacity) {
  if (replay_capacity_ == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayBuffers::add_replay(TrainingSample sample) {
  replay_.push_back(std::move(sample));
  while (replay_.size() > replay_capacity_) replay_.pop_front();
}

bool ReplayBuffers::offer_best(double raw_reward, std::vector<TrainingSample> samples) {
  if (!(raw_reward > 0.0) || samples.empty() || best_capacity_ == 0) return false;
  const std::uint64_t order = next_order_++;
  best_samples_ += samples.size();
  best_.push_back({raw_reward, order, std::move(samples)});
  bool kept = true;
  while (best_samples_ > best_capacity_ && !best_.empty()) {
    auto worst = std::min_element(best_.begin(), best_.end(), [](const BestEpisode& a, const BestEpisode& b) {
      return a.reward < b.reward || (a.reward == b.reward && a.order < b.order);
    });
    if (worst->order == order) kept = false;
    best_samples_ -= worst->samples.size();
    best_.erase(worst);
  }
  return kept;
}

const TrainingSample& ReplayBuffers::best_at(std::size_t i) const {
  for (const auto& ep : best_) {
    if (i < ep.samples.size()) return ep.samples[i];
    i -= ep.samples.size();
  }
  throw std::out_of_range("best-game sample index out of range");
}

std::vector<double> ReplayBuffers::best_rewards() const {
  std::vector<double> out;
  out.reserve(best_.size());
  for (const auto& ep : best_) out.push_back(ep.reward);
  return out;
}

void ReplayBuffers::restore(std::deque<TrainingSample> replay, std::vector<BestEpisode> best,
                            std::uint64_t next_order) {
  replay_ = std::move(replay);
  best_ = std::move(best);
  best_samples_ = 0;
  for (const auto& ep : best_) best_samples_ += ep.samples.size();
  next_order_ = next_order;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kEvalStream = 0xe7a1ULL << 32;
constexpr std::uint64_t kTrainStream = 0x7a1bULL << 32;
constexpr std::size_t kGradChunk = 32;

std::int64_t derived_warmup_steps(const TrainConfig& c, std::size_t num_slots) {
  const double warm_episodes = c.warmup_fraction * static_cast<double>(c.total_episodes);
  const auto warm_rounds = static_cast<std::int64_t>(std::ceil(warm_episodes / c.episodes_per_round));
  const std::int64_t per_epoch =
      c.batches_per_epoch > 0
          ? c.batches_per_epoch
          : static_cast<std::int64_t>((static_cast<std::size_t>(c.episodes_per_round) * num_slots +
                                       static_cast<std::size_t>(c.batch_size) - 1) /
                                      static_cast<std::size_t>(c.batch_size));
  return warm_rounds * c.epochs * per_epoch;
}

OptimizerConfig resolved_optimizer(const TrainConfig& c, std::size_t num_slots) {
  OptimizerConfig opt = c.optimizer;
  opt.warmup_steps = c.lr_warmup_steps >= 0 ? c.lr_warmup_steps : derived_warmup_steps(c, num_slots);
  return opt;
}

}  // namespace

Trainer::Trainer(TrainConfig config, std::shared_ptr<const CircuitSkeleton> skeleton,
                 std::shared_ptr<const Hamiltonian> hamiltonian, double ground_energy)
    : config_(std::move(config)),
      env_(std::move(skeleton), std::move(hamiltonian)),
      ground_energy_(ground_energy),
      params_(NetParams<float>::init(config_.net, derive_seed(config_.seed, config_.net_seed_offset, 0))),
      optimizer_(config_.net, resolved_optimizer(config_, env_.num_slots())),
      buffers_(config_.replay_capacity, config_.best_capacity) {
  config_.validate();
  if (env_.num_slots() == 0) throw std::invalid_argument("skeleton has no prefix slots");
  if (!(std::abs(ground_energy_) > 1e-12)) throw std::invalid_argument("ground energy must be nonzero");
  ham_features_ = hamiltonian_features<float>(env_.hamiltonian(), config_.net);
  threads_ = resolve_thread_count(config_.workers);
}

bool Trainer::finished() const {
  if (episodes_ >= config_.total_episodes) return true;
  return config_.target_accuracy > 0.0 && env_.has_best() && best_accuracy() >= config_.target_accuracy;
}

double Trainer::accuracy_of(double reward) const { return -reward / ground_energy_; }

double Trainer::best_accuracy() const { return env_.has_best() ? accuracy_of(env_.best_reward()) : 0.0; }

BudgetReport Trainer::budget() const {
  const EvalCounters c = env_.counters();
  return {c.distinct, c.without_evaluation(), rounds_, episodes_};
}

EpisodeRecord Trainer::play_episode(const InferenceNet& net, std::uint64_t episode_index, std::uint64_t slot) {
  std::mt19937_64 rng(derive_seed(config_.seed, rounds_, slot));
  const std::size_t full = env_.num_slots();
  const std::size_t horizon = horizon_at(episode_index, config_.total_episodes, full, config_.curriculum);
  const auto boost = boost_segment_start(episode_index, config_.total_episodes, full, config_.curriculum,
                                         config_.boost_fraction);
  SearchConfig sc = config_.search;
  const bool warm = static_cast<double>(episode_index) <
                    config_.warmup_fraction * static_cast<double>(config_.total_episodes);
  sc.simulations = warm ? config_.warmup_simulations : config_.standard_simulations;

  const PolicyValueFn fn = [&net](std::span<const GateId> p) { return net.evaluate(p); };
  SearchTree tree(env_, normalizer_, horizon, EvalSource::kTraining);
  EpisodeRecord rec;
  for (std::size_t t = 0; t < horizon; ++t) {
    const VisitCounts visits = tree.run_search(fn, sc, rng);
    const auto pi = visit_distribution(visits, 1.0);
    std::array<float, kNumActions> target{};
    for (std::size_t a = 0; a < target.size(); ++a) target[a] = static_cast<float>(pi[a]);
    rec.policies.push_back(target);
    const GateId a = sample_action(visits, episode_temperature(t, horizon, boost, config_), rng);
    rec.prefix.push_back(a);
    tree.reroot(a);
  }
  rec.reward = env_.reward(rec.prefix, EvalSource::kTraining);
  return rec;
}

std::pair<LossValue, std::uint64_t> Trainer::train_round(std::size_t new_samples, bool& aborted) {
  aborted = false;
  if (episodes_ < config_.replay_only_after || buffers_.replay_size() == 0 || config_.epochs == 0) {
    return {{}, 0};
  }
  const std::size_t batch = static_cast<std::size_t>(config_.batch_size);
  const std::size_t per_epoch = config_.batches_per_epoch > 0
                                    ? static_cast<std::size_t>(config_.batches_per_epoch)
                                    : std::max<std::size_t>(1, (new_samples + batch - 1) / batch);
  const std::size_t steps = per_epoch * static_cast<std::size_t>(config_.epochs);
  const bool mix = episodes_ >= config_.mix_after && buffers_.best_size() > 0;

  std::mt19937_64 rng(derive_seed(config_.seed, rounds_, kTrainStream));
  const NetParams<float> params_backup = params_;
  const AdamW optimizer_backup = optimizer_;

  const std::size_t chunks = (batch + kGradChunk - 1) / kGradChunk;
  std::vector<NetParams<float>> chunk_grads(chunks, NetParams<float>::zeros(config_.net));
  std::vector<LossValue> chunk_loss(chunks);
  NetParams<float> grads = NetParams<float>::zeros(config_.net);
  LossValue sum{};
  try {
    for (std::size_t s = 0; s < steps; ++s) {
      std::vector<const TrainingSample*> picks(batch);
      std::bernoulli_distribution from_best(config_.best_game_ratio);
      std::uniform_int_distribution<std::size_t> replay_idx(0, buffers_.replay_size() - 1);
      for (auto& p : picks) {
        if (mix && from_best(rng)) {
          p = &buffers_.best_at(std::uniform_int_distribution<std::size_t>(0, buffers_.best_size() - 1)(rng));
        } else {
          p = &buffers_.replay_at(replay_idx(rng));
        }
      }
      // Fixed chunking keeps the summation order independent of the thread count.
      parallel_for(chunks, threads_, [&](std::size_t c) {
        const std::size_t lo = c * kGradChunk;
        const std::size_t hi = std::min(batch, lo + kGradChunk);
        chunk_grads[c].set_zero();
        chunk_loss[c] = loss_and_gradient<float>(
            params_, std::span<const TrainingSample* const>(picks.data() + lo, hi - lo), ham_features_,
            config_.value_coeff, &chunk_grads[c]);
      });
      grads.set_zero();
      LossValue step_loss{};
      std::vector<Mat<float>*> dst;
      grads.for_each([&](const std::string&, Mat<float>& m) { dst.push_back(&m); });
      for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * kGradChunk;
        const double w = static_cast<double>(std::min(batch, lo + kGradChunk) - lo) / static_cast<double>(batch);
        step_loss.total += w * chunk_loss[c].total;
        step_loss.policy += w * chunk_loss[c].policy;
        step_loss.value += w * chunk_loss[c].value;
        std::size_t i = 0;
        const auto wf = static_cast<float>(w);
        chunk_grads[c].for_each([&](const std::string&, const Mat<float>& m) { *dst[i++] += wf * m; });
      }
      if (!std::isfinite(step_loss.total)) throw TrainingError("non-finite training loss");
      optimizer_.step(params_, grads);
      sum.total += step_loss.total;
      sum.policy += step_loss.policy;
      sum.value += step_loss.value;
    }
  } catch (const TrainingError&) {
    params_ = params_backup;
    optimizer_ = optimizer_backup;
    aborted = true;
    return {{}, 0};
  }
  const double n = static_cast<double>(steps);
  return {{sum.total / n, sum.policy / n, sum.value / n}, steps};
}

RoundReport Trainer::run_round() {
  if (episodes_ >= config_.total_episodes) throw std::logic_error("training already finished");
  const std::uint64_t n_ep = std::min<std::uint64_t>(static_cast<std::uint64_t>(config_.episodes_per_round),
                                                     config_.total_episodes - episodes_);
  const InferenceNet net(params_, env_.hamiltonian());
  std::vector<EpisodeRecord> records(n_ep);
  parallel_for(n_ep, threads_, [&](std::size_t e) { records[e] = play_episode(net, episodes_ + e, e); });

  for (const auto& r : records) normalizer_.update(r.reward);
  std::size_t new_samples = 0;
  double reward_sum = 0.0;
  for (auto& r : records) {
    reward_sum += r.reward;
    const auto z = static_cast<float>(normalizer_.normalize(r.reward));
    std::vector<TrainingSample> samples;
    samples.reserve(r.prefix.size());
    for (std::size_t t = 0; t < r.prefix.size(); ++t) {
      TrainingSample s;
      s.prefix.assign(r.prefix.begin(), r.prefix.begin() + static_cast<std::ptrdiff_t>(t));
      s.policy_target = r.policies[t];
      s.value_target = z;
      samples.push_back(std::move(s));
    }
    new_samples += samples.size();
    for (const auto& s : samples) buffers_.add_replay(s);
    buffers_.offer_best(r.reward, std::move(samples));
  }
  episodes_ += n_ep;

  bool aborted = false;
  const auto [loss, steps] = train_round(new_samples, aborted);

  RoundReport rep;
  rep.round = rounds_ + 1;
  rep.episodes = episodes_;
  rep.mean_reward = reward_sum / static_cast<double>(n_ep);
  rep.optimizer_steps = steps;
  rep.loss_policy = steps ? loss.policy : std::numeric_limits<double>::quiet_NaN();
  rep.loss_value = steps ? loss.value : std::numeric_limits<double>::quiet_NaN();
  rep.aborted = aborted;
  if (config_.eval_period > 0 && rep.round % static_cast<std::uint64_t>(config_.eval_period) == 0) {
    const EvalResult ev = evaluate_policy();
    rep.eval_reward = ev.reward;
  }
  ++rounds_;
  rep.best_reward = env_.best_reward();
  rep.evaluations = env_.counters().distinct;
  rep.accuracy = best_accuracy();
  history_.push_back(rep);
  return rep;
}

EvalResult Trainer::evaluate_policy() {
  std::mt19937_64 rng(derive_seed(config_.seed, rounds_, kEvalStream));
  const InferenceNet net(params_, env_.hamiltonian());
  const PolicyValueFn fn = [&net](std::span<const GateId> p) { return net.evaluate(p); };
  SearchConfig sc = config_.search;
  sc.simulations = config_.eval_simulations;
  sc.dirichlet_alpha = config_.eval_dirichlet_alpha;
  sc.dirichlet_eps = config_.eval_dirichlet_eps;
  SearchTree tree(env_, normalizer_, env_.num_slots(), EvalSource::kEvaluation);
  EvalResult out;
  while (!tree.root_is_terminal()) {
    const VisitCounts visits = tree.run_search(fn, sc, rng);
    const GateId a = sample_action(visits, 0.0, rng);
    out.prefix.push_back(a);
    tree.reroot(a);
  }
  out.reward = env_.reward(out.prefix, EvalSource::kEvaluation);
  out.energy = -out.reward;
  out.accuracy = accuracy_of(out.reward);
  evals_.emplace_back(rounds_ + 1, out);
  return out;
}

std::vector<RoundReport> Trainer::run(const std::function<void(const RoundReport&)>& on_round) {
  std::vector<RoundReport> out;
  while (!finished()) {
    out.push_back(run_round());
    if (on_round) on_round(out.back());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checkpointing

namespace {

json sample_to_json(const TrainingSample& s) {
  return json{{"p", s.prefix}, {"pi", s.policy_target}, {"z", s.value_target}};
}

TrainingSample sample_from_json(const json& j) {
  TrainingSample s;
  s.prefix = j.at("p").get<std::vector<GateId>>();
  s.policy_target = j.at("pi").get<std::array<float, kNumActions>>();
  s.value_target = j.at("z").get<float>();
  return s;
}

json report_to_json(const RoundReport& r) {
  json j{{"round", r.round},
         {"episodes", r.episodes},
         {"best_R", r.best_reward},
         {"mean_R", r.mean_reward},
         {"steps", r.optimizer_steps},
         {"evals", r.evaluations},
         {"accuracy", r.accuracy},
         {"aborted", r.aborted}};
  j["loss_p"] = std::isfinite(r.loss_policy) ? json(r.loss_policy) : json(nullptr);
  j["loss_v"] = std::isfinite(r.loss_value) ? json(r.loss_value) : json(nullptr);
  if (r.eval_reward) j["eval_R"] = *r.eval_reward;
  return j;
}

RoundReport report_from_json(const json& j) {
  RoundReport r;
  r.round = j.at("round").get<std::uint64_t>();
  r.episodes = j.at("episodes").get<std::uint64_t>();
  r.best_reward = j.at("best_R").get<double>();
  r.mean_reward = j.at("mean_R").get<double>();
  r.optimizer_steps = j.at("steps").get<std::uint64_t>();
  r.evaluations = j.at("evals").get<std::uint64_t>();
  r.accuracy = j.at("accuracy").get<double>();
  r.aborted = j.at("aborted").get<bool>();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.loss_policy = j.at("loss_p").is_null() ? nan : j.at("loss_p").get<double>();
  r.loss_value = j.at("loss_v").is_null() ? nan : j.at("loss_v").get<double>();
  if (j.contains("eval_R")) r.eval_reward = j.at("eval_R").get<double>();
  return r;
}

}  // namespace

void Trainer::save(const std::string& path) const {
  json t;
  t["config"] = config_;
  t["rounds"] = rounds_;
  t["episodes"] = episodes_;
  t["normalizer"] = {{"count", normalizer_.count()},
                     {"mean", normalizer_.mean()},
                     {"m2", normalizer_.m2()},
                     {"eps", normalizer_.eps()}};
  const EvalCounters c = env_.counters();
  t["counters"] = {{"distinct", c.distinct}, {"from_evaluation", c.from_evaluation}, {"requests", c.requests}};
  json cache = json::array();
  for (const auto& [prefix, r] : env_.cache_entries()) cache.push_back(json{prefix, r});
  t["cache"] = std::move(cache);
  json replay = json::array();
  for (const auto& s : buffers_.replay()) replay.push_back(sample_to_json(s));
  t["replay"] = std::move(replay);
  json best = json::array();
  for (const auto& ep : buffers_.best()) {
    json samples = json::array();
    for (const auto& s : ep.samples) samples.push_back(sample_to_json(s));
    best.push_back({{"reward", ep.reward}, {"order", ep.order}, {"samples", std::move(samples)}});
  }
  t["best"] = std::move(best);
  t["best_next_order"] = buffers_.next_order();
  json hist = json::array();
  for (const auto& r : history_) hist.push_back(report_to_json(r));
  t["history"] = std::move(hist);
  json evals = json::array();
  for (const auto& [round, ev] : evals_) {
    evals.push_back({{"round", round}, {"prefix", ev.prefix}, {"reward", ev.reward}});
  }
  t["evals"] = std::move(evals);
  save_checkpoint(path, params_, &optimizer_, json{{"trainer", std::move(t)}}.dump());
}

void Trainer::load(const std::string& path) {
  LoadedCheckpoint ck = load_checkpoint(path);
  const json extra = json::parse(ck.extra_json);
  if (!extra.contains("trainer")) throw std::runtime_error("checkpoint has no trainer state: " + path);
  const json& t = extra.at("trainer");
  if (!(ck.params.config == config_.net)) throw std::runtime_error("checkpoint network config differs");
  if (!ck.has_moments) throw std::runtime_error("checkpoint lacks optimizer state");
  params_ = std::move(ck.params);
  optimizer_.first_moment() = std::move(ck.first_moment);
  optimizer_.second_moment() = std::move(ck.second_moment);
  optimizer_.set_steps_taken(ck.step);
  optimizer_.set_config(ck.optimizer);
  rounds_ = t.at("rounds").get<std::uint64_t>();
  episodes_ = t.at("episodes").get<std::uint64_t>();
  const json& nj = t.at("normalizer");
  normalizer_ = RewardNormalizer(nj.at("eps").get<double>());
  normalizer_.set_state(nj.at("count").get<std::uint64_t>(), nj.at("mean").get<double>(),
                        nj.at("m2").get<double>());
  EvalCounters c;
  c.distinct = t.at("counters").at("distinct").get<std::uint64_t>();
  c.from_evaluation = t.at("counters").at("from_evaluation").get<std::uint64_t>();
  c.requests = t.at("counters").at("requests").get<std::uint64_t>();
  std::vector<std::pair<std::vector<GateId>, double>> cache;
  for (const auto& e : t.at("cache")) cache.emplace_back(e.at(0).get<std::vector<GateId>>(), e.at(1).get<double>());
  env_.restore(cache, c);
  std::deque<TrainingSample> replay;
  for (const auto& s : t.at("replay")) replay.push_back(sample_from_json(s));
  std::vector<ReplayBuffers::BestEpisode> best;
  for (const auto& e : t.at("best")) {
    ReplayBuffers::BestEpisode ep;
    ep.reward = e.at("reward").get<double>();
    ep.order = e.at("order").get<std::uint64_t>();
    for (const auto& s : e.at("samples")) ep.samples.push_back(sample_from_json(s));
    best.push_back(std::move(ep));
  }
  buffers_.restore(std::move(replay), std::move(best), t.at("best_next_order").get<std::uint64_t>());
  history_.clear();
  for (const auto& r : t.at("history")) history_.push_back(report_from_json(r));
  evals_.clear();
  for (const auto& e : t.at("evals")) {
    EvalResult ev;
    ev.prefix = e.at("prefix").get<std::vector<GateId>>();
    ev.reward = e.at("reward").get<double>();
    ev.energy = -ev.reward;
    ev.accuracy = accuracy_of(ev.reward);
    evals_.emplace_back(e.at("round").get<std::uint64_t>(), ev);
  }
}

}  // namespace cps
