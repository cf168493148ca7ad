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

#include "cps/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "cps/config_json.hpp"

namespace cps {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string iso_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("missing file: " + path.string());
  try {
    return json::parse(is);
  } catch (const json::exception&) {
    throw std::invalid_argument("invalid JSON in " + path.string());
  }
}

std::string gate_list(const std::vector<GateId>& prefix) {
  std::string out;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(prefix[i]);
  }
  return out;
}

void write_rounds_csv(const fs::path& path, const std::vector<RoundReport>& history) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "round,episodes,best_R,mean_R,loss_p,loss_v,evals,accuracy\n";
  for (const auto& r : history) {
    os << r.round << ',' << r.episodes << ',' << num(r.best_reward) << ',' << num(r.mean_reward) << ','
       << num(r.loss_policy) << ',' << num(r.loss_value) << ',' << r.evaluations << ',' << num(r.accuracy)
       << '\n';
  }
}

void write_evals_csv(const fs::path& path, const Trainer& trainer) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "round,reward,energy,accuracy,prefix\n";
  for (const auto& [round, ev] : trainer.evaluations()) {
    os << round << ',' << num(ev.reward) << ',' << num(ev.energy) << ',' << num(ev.accuracy) << ','
       << gate_list(ev.prefix) << '\n';
  }
}

json best_prefix_json(const std::vector<GateId>& prefix, double reward, double ground_energy) {
  std::vector<std::string> names;
  for (GateId g : prefix) names.push_back(gate_name(g));
  return json{{"gates", prefix},
              {"gate_names", names},
              {"reward", reward},
              {"energy", -reward},
              {"E_opt", ground_energy},
              {"accuracy", -reward / ground_energy}};
}

}  // namespace

double geometric_mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    s += std::log(x);
  }
  return std::exp(s / static_cast<double>(xs.size()));
}

double arithmetic_mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = arithmetic_mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

TrainOutcome run_training(const Instance& instance, const std::string& instance_path, TrainConfig config,
                          std::uint64_t seed, const std::string& run_dir, bool resume, std::ostream* log) {
  config.seed = seed;
  const fs::path dir(run_dir);
  fs::create_directories(dir / "checkpoints");
  auto hamiltonian = std::make_shared<const Hamiltonian>(instance.hamiltonian());
  auto skeleton = std::make_shared<const CircuitSkeleton>(instance.skeleton());
  Trainer trainer(config, skeleton, hamiltonian, instance.ground_energy);

  const fs::path latest = dir / "checkpoints" / "latest.ckpt";
  if (resume && fs::exists(latest)) {
    trainer.load(latest.string());
    if (log) *log << "resumed " << run_dir << " at round " << trainer.budget().rounds << '\n';
  }
  write_json(dir / "config.json",
             json{{"command", "train"},
                  {"instance", fs::absolute(instance_path).string()},
                  {"instance_name", instance.name()},
                  {"seed", seed},
                  {"threads", trainer.worker_threads()},
                  {"started", iso_now()},
                  {"version", "0.1.0"},
                  {"train", config}});

  const auto start = std::chrono::steady_clock::now();
  bool monotone = true;
  double last_best = -std::numeric_limits<double>::infinity();
  for (const auto& r : trainer.history()) {
    monotone = monotone && r.best_reward >= last_best;
    last_best = r.best_reward;
  }
  trainer.run([&](const RoundReport& r) {
    monotone = monotone && r.best_reward >= last_best;
    last_best = r.best_reward;
    write_rounds_csv(dir / "rounds.csv", trainer.history());
    if (log) {
      *log << "round " << r.round << " episodes " << r.episodes << " best_R " << num(r.best_reward)
           << " mean_R " << num(r.mean_reward) << " evals " << r.evaluations << " acc " << num(r.accuracy)
           << '\n';
    }
    const bool periodic = config.checkpoint_period > 0 &&
                          r.round % static_cast<std::uint64_t>(config.checkpoint_period) == 0;
    if (periodic || trainer.finished()) {
      char name[40];
      std::snprintf(name, sizeof name, "round_%05llu.ckpt", static_cast<unsigned long long>(r.round));
      trainer.save((dir / "checkpoints" / name).string());
      fs::copy_file(dir / "checkpoints" / name, latest, fs::copy_options::overwrite_existing);
    }
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_rounds_csv(dir / "rounds.csv", trainer.history());
  write_evals_csv(dir / "evals.csv", trainer);
  Environment& env = trainer.environment();
  write_json(dir / "best_prefix.json",
             best_prefix_json(env.best_prefix(), env.best_reward(), instance.ground_energy));

  TrainOutcome out;
  out.seed = seed;
  out.run_dir = run_dir;
  out.accuracy = trainer.best_accuracy();
  out.best_energy = -env.best_reward();
  out.budget = trainer.budget();
  out.wall_seconds = secs;
  out.best_reward_monotone = monotone;
  write_json(dir / "budget.json", json{{"seed", seed},
                                       {"instance", fs::absolute(instance_path).string()},
                                       {"evaluations", out.budget.evaluations},
                                       {"evaluations_without_eval", out.budget.evaluations_without_eval},
                                       {"rounds", out.budget.rounds},
                                       {"episodes", out.budget.episodes},
                                       {"accuracy", out.accuracy},
                                       {"best_energy", out.best_energy},
                                       {"E_opt", instance.ground_energy}});
  return out;
}

void write_train_summary(const std::string& out_dir, const Instance& instance,
                         const std::vector<TrainOutcome>& outcomes) {
  fs::create_directories(out_dir);
  std::ofstream os(fs::path(out_dir) / "summary.csv");
  if (!os) throw std::runtime_error("cannot write summary.csv in " + out_dir);
  os << "task,seed,accuracy,best_energy,E_opt,evaluations,evaluations_without_eval,rounds,episodes\n";
  std::vector<double> acc;
  for (const auto& o : outcomes) {
    acc.push_back(o.accuracy);
    os << instance.name() << ',' << o.seed << ',' << num(o.accuracy) << ',' << num(o.best_energy) << ','
       << num(instance.ground_energy) << ',' << o.budget.evaluations << ',' << o.budget.evaluations_without_eval
       << ',' << o.budget.rounds << ',' << o.budget.episodes << '\n';
  }
  os << instance.name() << ",mean," << num(arithmetic_mean(acc)) << ",,,,,,\n";
  os << instance.name() << ",std," << num(sample_stddev(acc)) << ",,,,,,\n";
}

GaOutcome run_ga(const Instance& instance, const GaConfig& config, GaBudget budget, std::uint64_t seed,
                 const std::string& run_dir) {
  auto hamiltonian = std::make_shared<const Hamiltonian>(instance.hamiltonian());
  auto skeleton = std::make_shared<const CircuitSkeleton>(instance.skeleton());
  Environment env(skeleton, hamiltonian);
  GaOutcome out;
  out.seed = seed;
  out.budget = budget;
  out.result = ga_search(env, config, budget, seed);
  out.accuracy = -out.result.best_reward / instance.ground_energy;

  const fs::path dir(run_dir);
  fs::create_directories(dir);
  const char* mode = budget.mode == GaBudget::Mode::kEvaluations ? "evaluations" : "generations";
  write_json(dir / "config.json", json{{"command", "ga"},
                                       {"instance_name", instance.name()},
                                       {"seed", seed},
                                       {"budget_mode", mode},
                                       {"budget", budget.limit},
                                       {"population", config.population},
                                       {"elites", config.elites},
                                       {"tournament", config.tournament},
                                       {"crossover_rate", config.crossover_rate},
                                       {"mutation_rate", config.mutation_rate}});
  {
    std::ofstream os(dir / "generations.csv");
    os << "generation,best_R,mean_R,evals,accuracy\n";
    for (const auto& g : out.result.history) {
      os << g.generation << ',' << num(g.best_reward) << ',' << num(g.mean_reward) << ',' << g.evaluations << ','
         << num(-g.best_reward / instance.ground_energy) << '\n';
    }
  }
  write_json(dir / "best_prefix.json",
             best_prefix_json(out.result.best_genome, out.result.best_reward, instance.ground_energy));
  write_json(dir / "budget.json", json{{"seed", seed},
                                       {"budget_mode", mode},
                                       {"budget", budget.limit},
                                       {"evaluations", out.result.evaluations},
                                       {"generations", out.result.history.size()},
                                       {"accuracy", out.accuracy}});
  return out;
}

TrainRunRecord read_train_run(const std::string& run_dir) {
  const json b = read_json(fs::path(run_dir) / "budget.json");
  TrainRunRecord r;
  try {
    r.run_dir = run_dir;
    r.instance_path = b.at("instance").get<std::string>();
    r.seed = b.at("seed").get<std::uint64_t>();
    r.accuracy = b.at("accuracy").get<double>();
    r.evaluations = b.at("evaluations").get<std::uint64_t>();
    r.evaluations_without_eval = b.at("evaluations_without_eval").get<std::uint64_t>();
    r.rounds = b.at("rounds").get<std::uint64_t>();
    r.episodes = b.at("episodes").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument("budget counters missing in " + run_dir + ": " + e.what());
  }
  return r;
}

std::vector<std::string> find_train_runs(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (fs::exists(fs::path(p) / "budget.json")) {
      out.push_back(p);
      continue;
    }
    if (!fs::is_directory(p)) throw std::invalid_argument("not a run directory: " + p);
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(p)) {
      if (entry.is_directory() && fs::exists(entry.path() / "budget.json")) found.push_back(entry.path().string());
    }
    if (found.empty()) throw std::invalid_argument("no training runs (budget.json) under " + p);
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

const std::vector<std::string>& compare_columns() {
  static const std::vector<std::string> cols = {
      "task",           "n",                 "N_params",          "E_opt",          "crisp_mean",
      "crisp_std",      "crisp_best",        "ga_evals_mean",     "ga_evals_std",   "ga_evals_best",
      "ga_rounds_mean", "ga_rounds_std",     "ga_rounds_best",    "crisp_evals",    "ga_evals",
      "counters_match", "ratio_mean_evals",  "ratio_best_evals",  "ratio_mean_rounds", "ratio_best_rounds"};
  return cols;
}

std::vector<CompareRow> run_compare(const std::vector<std::string>& run_paths, CompareMode mode,
                                    const std::string& out_csv, const GaConfig& ga_config, std::ostream* log) {
  const auto runs = find_train_runs(run_paths);
  std::map<std::string, std::vector<TrainRunRecord>> by_instance;
  std::vector<std::string> order;
  for (const auto& dir : runs) {
    TrainRunRecord r = read_train_run(dir);
    if (!by_instance.count(r.instance_path)) order.push_back(r.instance_path);
    by_instance[r.instance_path].push_back(std::move(r));
  }
  const fs::path csv(out_csv);
  const fs::path ga_root = (csv.has_parent_path() ? csv.parent_path() : fs::path(".")) / "ga";
  const bool do_evals = mode != CompareMode::kRounds;
  const bool do_rounds = mode != CompareMode::kEvaluations;

  std::vector<CompareRow> rows;
  for (const auto& path : order) {
    const Instance inst = load_instance(path);
    CompareRow row;
    row.task = inst.name();
    row.n_qubits = inst.hamiltonian().n_qubits();
    row.n_params = inst.skeleton().num_slots();
    row.ground_energy = inst.ground_energy;
    for (const auto& r : by_instance[path]) {
      row.crisp_acc.push_back(r.accuracy);
      row.crisp_evaluations += r.evaluations;
      const std::string tag = row.task + "/seed_" + std::to_string(r.seed);
      if (do_evals) {
        const GaOutcome g = run_ga(inst, ga_config, GaBudget::evaluations(r.evaluations), r.seed,
                                   (ga_root / (tag + "_evals")).string());
        row.ga_evals_acc.push_back(g.accuracy);
        row.ga_evaluations += g.result.evaluations;
        row.counters_match = row.counters_match && g.result.evaluations == r.evaluations;
        if (log) *log << tag << " GA(evals=" << r.evaluations << ") accuracy " << num(g.accuracy) << '\n';
      }
      if (do_rounds) {
        const GaOutcome g = run_ga(inst, ga_config, GaBudget::generations(r.rounds), r.seed,
                                   (ga_root / (tag + "_rounds")).string());
        row.ga_rounds_acc.push_back(g.accuracy);
        if (log) *log << tag << " GA(generations=" << r.rounds << ") accuracy " << num(g.accuracy) << '\n';
      }
    }
    rows.push_back(std::move(row));
  }

  if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
  std::ofstream os(csv);
  if (!os) throw std::runtime_error("cannot write " + out_csv);
  const auto& cols = compare_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  auto best = [](const std::vector<double>& v) {
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(v.begin(), v.end());
  };
  auto ratio = [](double a, double b) { return b > 0.0 ? a / b : std::numeric_limits<double>::quiet_NaN(); };
  std::vector<double> r_me, r_be, r_mr, r_br;
  for (const auto& row : rows) {
    const double cm = arithmetic_mean(row.crisp_acc);
    const double cb = best(row.crisp_acc);
    const double em = arithmetic_mean(row.ga_evals_acc);
    const double eb = best(row.ga_evals_acc);
    const double rm = arithmetic_mean(row.ga_rounds_acc);
    const double rb = best(row.ga_rounds_acc);
    const double ratios[4] = {ratio(cm, em), ratio(cb, eb), ratio(cm, rm), ratio(cb, rb)};
    if (std::isfinite(ratios[0])) r_me.push_back(ratios[0]);
    if (std::isfinite(ratios[1])) r_be.push_back(ratios[1]);
    if (std::isfinite(ratios[2])) r_mr.push_back(ratios[2]);
    if (std::isfinite(ratios[3])) r_br.push_back(ratios[3]);
    os << row.task << ',' << row.n_qubits << ',' << row.n_params << ',' << num(row.ground_energy) << ','
       << num(cm) << ',' << num(sample_stddev(row.crisp_acc)) << ',' << num(cb) << ',' << num(em) << ','
       << num(sample_stddev(row.ga_evals_acc)) << ',' << num(eb) << ',' << num(rm) << ','
       << num(sample_stddev(row.ga_rounds_acc)) << ',' << num(rb) << ',' << row.crisp_evaluations << ','
       << (do_evals ? std::to_string(row.ga_evaluations) : std::string()) << ','
       << (do_evals ? (row.counters_match ? "1" : "0") : "") << ',' << num(ratios[0]) << ',' << num(ratios[1])
       << ',' << num(ratios[2]) << ',' << num(ratios[3]) << '\n';
  }
  const std::string blanks(15, ',');
  os << "GeoMean" << blanks << ',' << num(geometric_mean(r_me)) << ',' << num(geometric_mean(r_be)) << ','
     << num(geometric_mean(r_mr)) << ',' << num(geometric_mean(r_br)) << '\n';
  os << "ArithMean" << blanks << ',' << num(arithmetic_mean(r_me)) << ',' << num(arithmetic_mean(r_be)) << ','
     << num(arithmetic_mean(r_mr)) << ',' << num(arithmetic_mean(r_br)) << '\n';
  return rows;
}

}  // namespace cps
