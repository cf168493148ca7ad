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

// Python bindings. Structured data (instances, configs, results) crosses the
// boundary as JSON text; the package wrapper turns it into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "json.hpp"

#include "cps/bench.hpp"
#include "cps/clifford.hpp"
#include "cps/config_json.hpp"
#include "cps/environment.hpp"
#include "cps/errors.hpp"
#include "cps/exact.hpp"
#include "cps/ga.hpp"
#include "cps/instance.hpp"
#include "cps/tableau.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

struct PyEnvironment {
  std::shared_ptr<const cps::Hamiltonian> h;
  std::shared_ptr<const cps::CircuitSkeleton> sk;
  std::unique_ptr<cps::Environment> env;

  explicit PyEnvironment(const cps::Instance& inst)
      : h(std::make_shared<const cps::Hamiltonian>(inst.hamiltonian())),
        sk(std::make_shared<const cps::CircuitSkeleton>(inst.skeleton())),
        env(std::make_unique<cps::Environment>(sk, h)) {}
};

cps::TrainConfig config_from_text(const std::string& text) {
  if (text.empty()) return {};
  auto cfg = json::parse(text).get<cps::TrainConfig>();
  cfg.validate();
  return cfg;
}

json outcome_json(const cps::TrainOutcome& o) {
  return {{"seed", o.seed},
          {"run_dir", o.run_dir},
          {"accuracy", o.accuracy},
          {"best_energy", o.best_energy},
          {"evaluations", o.budget.evaluations},
          {"evaluations_without_eval", o.budget.evaluations_without_eval},
          {"rounds", o.budget.rounds},
          {"episodes", o.budget.episodes},
          {"wall_seconds", o.wall_seconds},
          {"best_reward_monotone", o.best_reward_monotone}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clifford-prefix search engine: stabilizer rewards, self-play training, GA baselines.";

  py::register_exception<cps::ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<cps::TrainingError>(m, "TrainingError", PyExc_RuntimeError);

  m.def("gate_names", [] {
    std::vector<std::string> out;
    for (int g = 0; g < cps::kNumCliffords; ++g) out.push_back(cps::gate_name(static_cast<cps::GateId>(g)));
    return out;
  });
  m.def("clifford_images", [](int gate) {
        const auto& r = cps::clifford_table().at(static_cast<std::size_t>(gate));
        return std::make_pair(r.x_image.str(), r.z_image.str());
      },
      py::arg("gate"), "Signed images of X and Z under the gate.");

  m.def("pauli_expectation",
        [](std::size_t n, const std::vector<std::tuple<std::string, std::uint32_t, std::uint32_t>>& ops,
           const std::string& pauli) {
          cps::StabilizerTableau t(n);
          for (const auto& [name, a, b] : ops) {
            if (name == "CNOT" || name == "CX") {
              t.apply_cnot(a, b);
            } else {
              t.apply_single_qubit(cps::gate_by_name(name), a);
            }
          }
          return t.expectation(cps::PauliString::parse(pauli));
        },
        py::arg("n_qubits"), py::arg("ops"), py::arg("pauli"),
        "Expectation of a Pauli string after (gate, qubit, target) ops from |0...0>.");

  m.def("generate_instance_json",
        [](const std::string& type, std::size_t n, double coupling, std::uint64_t seed) {
          return cps::instance_to_json(cps::generate_instance(type, n, coupling, seed)).dump();
        },
        py::arg("type"), py::arg("n"), py::arg("J") = 1.0, py::arg("seed") = 0);
  m.def("instance_summary_json", [](const std::string& text) {
    const auto inst = cps::instance_from_json(json::parse(text));
    return json{{"name", inst.name()},
                {"n_qubits", inst.hamiltonian().n_qubits()},
                {"n_params", inst.skeleton().num_slots()},
                {"E_opt", inst.ground_energy}}
        .dump();
  });

  py::class_<PyEnvironment>(m, "Environment")
      .def(py::init([](const std::string& instance_json) {
             return std::make_unique<PyEnvironment>(cps::instance_from_json(json::parse(instance_json)));
           }),
           py::arg("instance_json"))
      .def_property_readonly("num_slots", [](const PyEnvironment& e) { return e.env->num_slots(); })
      .def("reward", [](PyEnvironment& e, const std::vector<cps::GateId>& prefix) { return e.env->reward(prefix); },
           py::arg("prefix"), "Raw reward -<H>; cached, counts distinct circuits.")
      .def("counters",
           [](const PyEnvironment& e) {
             const auto c = e.env->counters();
             return py::dict(py::arg("distinct") = c.distinct, py::arg("from_evaluation") = c.from_evaluation,
                             py::arg("requests") = c.requests);
           })
      .def_property_readonly("best_reward", [](const PyEnvironment& e) { return e.env->best_reward(); })
      .def_property_readonly("best_prefix", [](const PyEnvironment& e) { return e.env->best_prefix(); });

  m.def("normalize_reward",
        [](double mean, double stddev, double reward) {
          return cps::RewardNormalizer::with_stats(mean, stddev).normalize(reward);
        },
        py::arg("mean"), py::arg("stddev"), py::arg("reward"));

  m.def("default_config_json", [] { return json(cps::TrainConfig{}).dump(); });

  m.def("train_json",
        [](const std::string& instance_path, const std::string& config_json, std::uint64_t seed,
           const std::string& run_dir, bool resume) {
          const auto inst = cps::load_instance(instance_path);
          const auto cfg = config_from_text(config_json);
          py::gil_scoped_release release;
          return outcome_json(cps::run_training(inst, instance_path, cfg, seed, run_dir, resume)).dump();
        },
        py::arg("instance_path"), py::arg("config_json"), py::arg("seed"), py::arg("run_dir"),
        py::arg("resume") = false);

  m.def("ga_json",
        [](const std::string& instance_path, const std::string& mode, std::uint64_t budget, std::uint64_t seed,
           const std::string& run_dir, int population) {
          const auto inst = cps::load_instance(instance_path);
          cps::GaConfig cfg;
          cfg.population = population;
          const auto b = mode == "rounds" ? cps::GaBudget::generations(budget) : cps::GaBudget::evaluations(budget);
          py::gil_scoped_release release;
          const auto out = cps::run_ga(inst, cfg, b, seed, run_dir);
          return json{{"accuracy", out.accuracy},
                      {"best_reward", out.result.best_reward},
                      {"best_genome", out.result.best_genome},
                      {"evaluations", out.result.evaluations},
                      {"generations", out.result.history.size()}}
              .dump();
        },
        py::arg("instance_path"), py::arg("mode"), py::arg("budget"), py::arg("seed"), py::arg("run_dir"),
        py::arg("population") = 100);

  m.def("compare",
        [](const std::vector<std::string>& runs, const std::string& mode, const std::string& out_csv) {
          const auto cm = mode == "evals"    ? cps::CompareMode::kEvaluations
                          : mode == "rounds" ? cps::CompareMode::kRounds
                                             : cps::CompareMode::kBoth;
          std::vector<cps::CompareRow> rows;
          {
            py::gil_scoped_release release;
            rows = cps::run_compare(runs, cm, out_csv);
          }
          bool match = true;
          for (const auto& r : rows) match = match && r.counters_match;
          return py::make_tuple(rows.size(), match);
        },
        py::arg("runs"), py::arg("mode"), py::arg("out_csv"),
        "Writes the comparison CSV; returns (task count, evaluation counters match).");
}
