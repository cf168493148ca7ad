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

// Command-line front end. Exit codes: 0 success, 2 usage error, 3 runtime or
// training error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cps/bench.hpp"
#include "cps/config_json.hpp"
#include "cps/errors.hpp"
#include "cps/instance.hpp"
#include "cps/net.hpp"
#include "cps/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("bad seed '" + item + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw std::invalid_argument("--seeds needs at least one seed");
  return seeds;
}

cps::TrainConfig load_train_config(const std::string& path) {
  cps::TrainConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception&) {
    throw std::invalid_argument("config file is not valid JSON: " + path);
  }
  try {
    cfg = j.get<cps::TrainConfig>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

int cmd_gen_instance(const std::string& type, std::size_t n, double coupling, std::uint64_t seed,
                     const std::string& out) {
  const cps::Instance inst = cps::generate_instance(type, n, coupling, seed);
  cps::save_instance(out, inst);
  std::printf("%s: n_qubits=%zu n_params=%zu E_opt=%.10g -> %s\n", inst.name().c_str(),
              inst.hamiltonian().n_qubits(), inst.skeleton().num_slots(), inst.ground_energy, out.c_str());
  return 0;
}

int cmd_train(const std::string& instance_path, const std::string& config_path, const std::string& seeds_text,
              const std::string& out, bool resume, bool quiet) {
  const cps::Instance inst = cps::load_instance(instance_path);
  const cps::TrainConfig cfg = load_train_config(config_path);
  const auto seeds = parse_seeds(seeds_text);
  std::vector<cps::TrainOutcome> outcomes;
  int status = 0;
  for (std::uint64_t seed : seeds) {
    const std::string dir = (fs::path(out) / ("seed_" + std::to_string(seed))).string();
    try {
      outcomes.push_back(cps::run_training(inst, instance_path, cfg, seed, dir, resume, quiet ? nullptr : &std::cout));
      const auto& o = outcomes.back();
      std::printf("seed %llu: accuracy=%.6f evaluations=%llu rounds=%llu (%.1fs)\n",
                  static_cast<unsigned long long>(seed), o.accuracy,
                  static_cast<unsigned long long>(o.budget.evaluations),
                  static_cast<unsigned long long>(o.budget.rounds), o.wall_seconds);
    } catch (const cps::TrainingError& e) {
      // Keep the finished seeds; the failed run keeps its last checkpoint.
      std::fprintf(stderr, "seed %llu failed: %s\n", static_cast<unsigned long long>(seed), e.what());
      status = kExitRuntime;
    }
  }
  cps::write_train_summary(out, inst, outcomes);
  return status;
}

int cmd_compare(const std::vector<std::string>& runs, const std::string& mode_text, const std::string& out,
                int ga_threads) {
  cps::CompareMode mode;
  if (mode_text == "evals") {
    mode = cps::CompareMode::kEvaluations;
  } else if (mode_text == "rounds") {
    mode = cps::CompareMode::kRounds;
  } else {
    mode = cps::CompareMode::kBoth;
  }
  cps::GaConfig ga;
  ga.threads = ga_threads;
  const auto rows = cps::run_compare(runs, mode, out, ga, &std::cout);
  for (const auto& r : rows) {
    if (mode != cps::CompareMode::kRounds && !r.counters_match) {
      std::fprintf(stderr, "%s: GA evaluation count differs from the training budget\n", r.task.c_str());
    }
  }
  std::printf("wrote %s (%zu tasks)\n", out.c_str(), rows.size());
  return 0;
}

int cmd_eval(const std::string& checkpoint, const std::string& instance_path) {
  const cps::LoadedCheckpoint ck = cps::load_checkpoint(checkpoint);
  const json extra = json::parse(ck.extra_json);
  if (!extra.contains("trainer")) throw std::invalid_argument("checkpoint has no trainer state: " + checkpoint);
  const cps::TrainConfig cfg = extra.at("trainer").at("config").get<cps::TrainConfig>();
  const cps::Instance inst = cps::load_instance(instance_path);
  auto h = std::make_shared<const cps::Hamiltonian>(inst.hamiltonian());
  auto sk = std::make_shared<const cps::CircuitSkeleton>(inst.skeleton());
  cps::Trainer trainer(cfg, sk, h, inst.ground_energy);
  trainer.load(checkpoint);
  const cps::EvalResult ev = trainer.evaluate_policy();
  json out{{"instance", inst.name()},
           {"rounds", trainer.budget().rounds},
           {"greedy_prefix", ev.prefix},
           {"greedy_energy", ev.energy},
           {"greedy_accuracy", ev.accuracy},
           {"best_energy", -trainer.environment().best_reward()},
           {"best_accuracy", trainer.best_accuracy()},
           {"E_opt", inst.ground_energy}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-prefix search: instances, self-play training and GA baselines"};
  app.require_subcommand(1);

  std::string type, out, instance, config, seeds = "0", mode = "both", checkpoint;
  std::size_t n = 0;
  double coupling = 1.0;
  std::uint64_t seed = 0;
  bool resume = false, quiet = false;
  std::vector<std::string> runs;
  int ga_threads = 1;

  auto* gen = app.add_subcommand("gen-instance", "Generate a task file with its exact ground energy");
  gen->add_option("--type", type, "maxcut | knapsack | tfim | xxz")->required();
  gen->add_option("--n", n, "vertices, items or chain sites")->required();
  gen->add_option("--J", coupling, "chain coupling (tfim, xxz)");
  gen->add_option("--seed", seed, "instance seed (maxcut, knapsack)");
  gen->add_option("--out", out, "output JSON path")->required();

  auto* train = app.add_subcommand("train", "Self-play training, one run directory per seed");
  train->add_option("--instance", instance, "task file")->required()->check(CLI::ExistingFile);
  train->add_option("--config", config, "JSON training config (partial objects allowed)")->check(CLI::ExistingFile);
  train->add_option("--seeds", seeds, "comma-separated seeds");
  train->add_option("--out", out, "output directory")->required();
  train->add_flag("--resume", resume, "continue from checkpoints/latest.ckpt when present");
  train->add_flag("--quiet", quiet, "no per-round log");

  auto* compare = app.add_subcommand("compare", "Budget-matched GA comparison table");
  compare->add_option("--runs", runs, "training run directories or their parents")->required();
  compare->add_option("--mode", mode, "evals | rounds | both")
      ->check(CLI::IsMember({"evals", "rounds", "both"}));
  compare->add_option("--out", out, "output CSV path")->required();
  compare->add_option("--ga-threads", ga_threads, "threads for generation-matched GA scoring");

  auto* eval = app.add_subcommand("eval", "Greedy policy rollout from a checkpoint");
  eval->add_option("--checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
  eval->add_option("--instance", instance, "task file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen_instance(type, n, coupling, seed, out);
    if (*train) return cmd_train(instance, config, seeds, out, resume, quiet);
    if (*compare) return cmd_compare(runs, mode, out, ga_threads);
    if (*eval) return cmd_eval(checkpoint, instance);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const cps::ResourceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
