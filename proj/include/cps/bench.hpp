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

#pragma once

// Run-directory orchestration shared by the command line and the Python module.
//
// A training run directory holds config.json, rounds.csv, evals.csv,
// best_prefix.json, budget.json and checkpoints/. A GA run directory holds
// config.json, generations.csv, best_prefix.json and budget.json.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cps/ga.hpp"
#include "cps/instance.hpp"
#include "cps/trainer.hpp"

namespace cps {

struct TrainOutcome {
  std::uint64_t seed = 0;
  std::string run_dir;
  double accuracy = 0.0;
  double best_energy = 0.0;
  BudgetReport budget;
  double wall_seconds = 0.0;
  bool best_reward_monotone = true;
};

/// Trains one seed into `run_dir`. With `resume`, continues from
/// checkpoints/latest.ckpt when present.
TrainOutcome run_training(const Instance& instance, const std::string& instance_path, TrainConfig config,
                          std::uint64_t seed, const std::string& run_dir, bool resume = false,
                          std::ostream* log = nullptr);

/// Writes summary.csv (one row per seed, then mean and std rows) into `out_dir`.
void write_train_summary(const std::string& out_dir, const Instance& instance,
                         const std::vector<TrainOutcome>& outcomes);

struct GaOutcome {
  std::uint64_t seed = 0;
  GaBudget budget;
  GaResult result;
  double accuracy = 0.0;
};

/// Runs the GA on a fresh environment for the instance and writes a run directory.
GaOutcome run_ga(const Instance& instance, const GaConfig& config, GaBudget budget, std::uint64_t seed,
                 const std::string& run_dir);

/// Recorded data of a finished training run, read back from its directory.
struct TrainRunRecord {
  std::string run_dir;
  std::string instance_path;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t evaluations_without_eval = 0;
  std::uint64_t rounds = 0;
  std::uint64_t episodes = 0;
};

/// Throws std::invalid_argument when budget.json is missing or incomplete.
TrainRunRecord read_train_run(const std::string& run_dir);
/// Expands each path into training run directories: a directory with
/// budget.json is a run, otherwise its immediate subdirectories are searched.
std::vector<std::string> find_train_runs(const std::vector<std::string>& paths);

enum class CompareMode { kEvaluations, kRounds, kBoth };

struct CompareRow {
  std::string task;
  std::size_t n_qubits = 0;
  std::size_t n_params = 0;
  double ground_energy = 0.0;
  std::vector<double> crisp_acc;
  std::vector<double> ga_evals_acc;
  std::vector<double> ga_rounds_acc;
  std::uint64_t crisp_evaluations = 0;  // summed over seeds
  std::uint64_t ga_evaluations = 0;     // evaluation-matched GA, summed over seeds
  bool counters_match = true;
};

/// Runs budget-matched GA baselines for every training run and writes the
/// comparison CSV to `out_csv` (GA run directories go next to it).
std::vector<CompareRow> run_compare(const std::vector<std::string>& run_paths, CompareMode mode,
                                    const std::string& out_csv, const GaConfig& ga_config = {},
                                    std::ostream* log = nullptr);

/// Fixed column order of the comparison CSV.
const std::vector<std::string>& compare_columns();

double geometric_mean(const std::vector<double>& xs);
double arithmetic_mean(const std::vector<double>& xs);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_stddev(const std::vector<double>& xs);

}  // namespace cps
