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

#include "cps/instance.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "cps/errors.hpp"
#include "cps/exact.hpp"

namespace cps {

using nlohmann::json;

namespace {

std::string coupling_label(double j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", j);
  return buf;
}

bool is_chain(const std::string& type) { return type == "tfim" || type == "xxz"; }

}  // namespace

std::string Instance::name() const {
  if (type == "maxcut") return "MaxCut_" + std::to_string(n);
  if (type == "knapsack") return "Knapsack_" + std::to_string(n);
  if (type == "tfim") return "Ising_" + coupling_label(coupling);
  if (type == "xxz") return "XXZ_" + coupling_label(coupling);
  return type + "_" + std::to_string(n);
}

Hamiltonian Instance::hamiltonian() const {
  Hamiltonian h;
  if (type == "maxcut") {
    if (!graph) throw std::invalid_argument("maxcut instance without a graph");
    h = maxcut_hamiltonian(*graph);
  } else if (type == "knapsack") {
    if (!knapsack) throw std::invalid_argument("knapsack instance without items");
    h = knapsack_hamiltonian(*knapsack);
  } else if (type == "tfim") {
    h = tfim_hamiltonian(n, coupling);
  } else if (type == "xxz") {
    h = xxz_hamiltonian(n, coupling);
  } else {
    throw std::invalid_argument("unknown instance type: " + type);
  }
  h.set_label(name());
  return h;
}

CircuitSkeleton Instance::skeleton() const {
  if (is_chain(type)) return build_hea_skeleton(n, reps);
  return build_maqaoa_skeleton(hamiltonian());
}

Instance generate_instance(const std::string& type, std::size_t n, double coupling, std::uint64_t seed) {
  Instance inst;
  inst.type = type;
  inst.n = n;
  inst.seed = seed;
  if (type == "maxcut") {
    if (n < 2) throw std::invalid_argument("maxcut needs at least 2 vertices");
    if (n > kMaxDiagonalQubits) throw ResourceError("maxcut size exceeds the exact solver limit");
    inst.graph = WeightedGraph::random_complete(n, seed);
  } else if (type == "knapsack") {
    if (n < 1) throw std::invalid_argument("knapsack needs at least 1 item");
    inst.knapsack = KnapsackInstance::random(n, seed);
    if (inst.knapsack->num_qubits() > kMaxDiagonalQubits) {
      throw ResourceError("knapsack encoding exceeds the exact solver limit");
    }
  } else if (is_chain(type)) {
    if (n < 2) throw std::invalid_argument("spin chains need at least 2 sites");
    if (n > kMaxDenseQubits) throw ResourceError("chain length exceeds the dense solver limit");
    inst.coupling = coupling;
  } else {
    throw std::invalid_argument("unsupported instance type: " + type + " (maxcut, knapsack, tfim, xxz)");
  }
  inst.ground_energy = exact_ground_energy(inst.hamiltonian());
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j{{"type", inst.type}, {"n", inst.n}, {"seed", inst.seed}, {"name", inst.name()}};
  if (inst.graph) {
    json edges = json::array();
    for (const auto& e : inst.graph->edges) edges.push_back(json{e.i, e.j, e.weight});
    j["edges"] = std::move(edges);
  }
  if (inst.knapsack) {
    j["items"] = {{"values", inst.knapsack->values},
                  {"weights", inst.knapsack->weights},
                  {"capacity", inst.knapsack->capacity},
                  {"penalty", inst.knapsack->effective_penalty()}};
  }
  if (is_chain(inst.type)) {
    j["J"] = inst.coupling;
    j["reps"] = inst.reps;
  }
  const Hamiltonian h = inst.hamiltonian();
  j["n_qubits"] = h.n_qubits();
  j["n_params"] = inst.skeleton().num_slots();
  j["computed_E_opt"] = inst.ground_energy;
  return j;
}

Instance instance_from_json(const json& j) {
  try {
    Instance inst;
    inst.type = j.at("type").get<std::string>();
    inst.n = j.at("n").get<std::size_t>();
    inst.seed = j.value("seed", std::uint64_t{0});
    if (inst.type == "maxcut") {
      WeightedGraph g;
      g.n_vertices = inst.n;
      for (const auto& e : j.at("edges")) {
        g.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
      }
      g.validate();
      inst.graph = std::move(g);
    } else if (inst.type == "knapsack") {
      const json& it = j.at("items");
      KnapsackInstance k;
      k.values = it.at("values").get<std::vector<double>>();
      k.weights = it.at("weights").get<std::vector<long long>>();
      k.capacity = it.at("capacity").get<long long>();
      k.penalty = it.value("penalty", 0.0);
      k.validate();
      if (k.values.size() != inst.n) throw std::invalid_argument("knapsack item count differs from n");
      inst.knapsack = std::move(k);
    } else if (is_chain(inst.type)) {
      inst.coupling = j.at("J").get<double>();
      inst.reps = j.value("reps", std::size_t{1});
    } else {
      throw std::invalid_argument("unsupported instance type: " + inst.type);
    }
    inst.ground_energy = j.contains("computed_E_opt") ? j.at("computed_E_opt").get<double>()
                                                      : exact_ground_energy(inst.hamiltonian());
    return inst;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance file: ") + e.what());
  }
}

void save_instance(const std::string& path, const Instance& inst) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write instance file: " + path);
  os << instance_to_json(inst).dump(2) << '\n';
}

Instance load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open instance file: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw std::invalid_argument("instance file is not valid JSON: " + path);
  }
  return instance_from_json(j);
}

}  // namespace cps
