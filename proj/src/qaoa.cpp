// Copyright 2026 The mpsqvm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpsqvm/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace mpsqvm {

namespace {

constexpr std::uint64_t kGraphStream = 0x6772617068ULL;  // "graph"
constexpr std::uint64_t kInitStream = 0x696e6974ULL;     // "init"

void check_qubits(std::size_t n, std::size_t max_qubits) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("even qubit count required (got " +
                                std::to_string(n) + ", need >= 4)");
  }
  if (n > max_qubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) +
                                " exceeds the limit " +
                                std::to_string(max_qubits));
  }
}

}  // namespace

void QaoaParams::validate() const {
  if (depth < 1) throw std::invalid_argument("QAOA depth must be >= 1");
  if (betas.size() != depth || gammas.size() != depth) {
    throw std::invalid_argument("QAOA params: expected " +
                                std::to_string(depth) +
                                " betas and gammas");
  }
  for (std::size_t l = 0; l < depth; ++l) {
    if (!std::isfinite(betas[l]) || !std::isfinite(gammas[l])) {
      throw std::invalid_argument("QAOA params must be finite");
    }
  }
}

std::vector<double> QaoaParams::to_vector() const {
  std::vector<double> x(betas);
  x.insert(x.end(), gammas.begin(), gammas.end());
  return x;
}

QaoaParams QaoaParams::from_vector(std::span<const double> x) {
  if (x.empty() || x.size() % 2 != 0) {
    throw std::invalid_argument(
        "QAOA parameter vector must have even, positive length");
  }
  QaoaParams p;
  p.depth = x.size() / 2;
  p.betas.assign(x.begin(), x.begin() + static_cast<long>(p.depth));
  p.gammas.assign(x.begin() + static_cast<long>(p.depth), x.end());
  return p;
}

std::vector<GateOp> build_qaoa_circuit(const RegularGraph& graph,
                                       const QaoaParams& params) {
  params.validate();
  if (graph.n_nodes == 0) throw std::invalid_argument("empty graph");
  auto edges = graph.edges;
  for (auto& e : edges) {
    if (e.u == e.v || e.u >= graph.n_nodes || e.v >= graph.n_nodes) {
      throw std::invalid_argument("QAOA graph has an invalid edge");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<GateOp> ops;
  ops.reserve(graph.n_nodes * (1 + params.depth) +
              edges.size() * params.depth);
  for (std::size_t v = 0; v < graph.n_nodes; ++v) {
    ops.push_back({{"H", std::nullopt}, v + 1, 0});
  }
  for (std::size_t l = 0; l < params.depth; ++l) {
    for (const auto& e : edges) {
      ops.push_back({{"Rzz", -params.gammas[l] * e.weight}, e.u + 1, e.v + 1});
    }
    for (std::size_t v = 0; v < graph.n_nodes; ++v) {
      ops.push_back({{"Rx", 2.0 * params.betas[l]}, v + 1, 0});
    }
  }
  return ops;
}

MpsState qaoa_state(const RegularGraph& graph, const QaoaParams& params,
                    const TruncationPolicy& policy) {
  const auto ops = build_qaoa_circuit(graph, params);
  auto state = MpsState::computational_zero(graph.n_nodes, policy);
  apply_circuit(state, ops);
  return state;
}

QaoaEvaluation qaoa_cost(const RegularGraph& graph, const QaoaParams& params,
                         const TruncationPolicy& policy) {
  const auto state = qaoa_state(graph, params, policy);
  QaoaEvaluation out;
  out.energy = -cost_expectation(state, graph.to_ising_cost());
  out.midpoint_entropy = state.n_qubits() >= 2 ? midpoint_entropy(state) : 0.0;
  return out;
}

std::uint64_t ensemble_graph_seed(std::uint64_t seed, std::size_t graph_id) {
  return derive_seed(derive_seed(seed, kGraphStream), graph_id);
}

QaoaParams ensemble_init_params(std::uint64_t seed, std::size_t graph_id,
                                std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("QAOA depth must be >= 1");
  std::mt19937_64 rng(
      derive_seed(derive_seed(derive_seed(seed, kInitStream), graph_id), depth));
  std::uniform_real_distribution<double> beta(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> gamma(0.0, 2.0 * std::numbers::pi);
  QaoaParams p;
  p.depth = depth;
  for (std::size_t l = 0; l < depth; ++l) p.betas.push_back(beta(rng));
  for (std::size_t l = 0; l < depth; ++l) p.gammas.push_back(gamma(rng));
  return p;
}

EnsembleResult run_ensemble(std::size_t n_qubits, std::size_t depth,
                            std::size_t chi, std::uint64_t seed,
                            const EnsembleOptions& options,
                            std::size_t max_qubits) {
  check_qubits(n_qubits, max_qubits);
  if (depth < 1) throw std::invalid_argument("QAOA depth must be >= 1");
  if (chi < 1) throw std::invalid_argument("chi must be >= 1");
  if (options.n_graphs < 1) throw std::invalid_argument("n_graphs must be >= 1");
  TruncationPolicy policy;
  policy.max_bond = chi;
  policy.cutoff = options.cutoff;
  policy.validate();

  EnsembleResult res;
  res.n_qubits = n_qubits;
  res.depth = depth;
  res.chi = chi;
  res.seed = seed;
  res.per_graph.resize(options.n_graphs);

  std::exception_ptr failure;
  const auto count = static_cast<long>(options.n_graphs);
#pragma omp parallel for schedule(dynamic, 1)
  for (long gi = 0; gi < count; ++gi) {
    try {
      const auto id = static_cast<std::size_t>(gi);
      GraphRun& run = res.per_graph[id];
      run.graph_id = id;
      run.graph_seed = ensemble_graph_seed(seed, id);
      const auto graph = random_regular_graph(n_qubits, 3, run.graph_seed);
      run.connected = graph.is_connected();
      const auto cost = graph.to_ising_cost();
      run.total_weight = cost.total_weight();
      run.init_params = ensemble_init_params(seed, id, depth).to_vector();

      auto objective = [&](std::span<const double> x) {
        const auto state = qaoa_state(graph, QaoaParams::from_vector(x), policy);
        run.midpoint_entropy_trace.push_back(midpoint_entropy(state));
        return -cost_expectation(state, cost);
      };
      OptimizerConfig cfg = options.optimizer;
      cfg.seed = run.graph_seed;
      const auto opt = minimize(objective, run.init_params, cfg);
      run.best_energy = opt.best_value;
      run.best_params = opt.best_params;
      run.eval_count = opt.eval_count;

      const auto best =
          qaoa_state(graph, QaoaParams::from_vector(run.best_params), policy);
      run.final_midpoint_entropy = midpoint_entropy(best);
      const auto stats = entropy_mean_stderr(best);
      run.final_avg_entropy = stats.mean;
      run.final_stddev_entropy = stats.standard_error;
    } catch (...) {
#pragma omp critical(run_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> energies;
  std::vector<double> mids;
  for (const auto& run : res.per_graph) {
    energies.push_back(run.best_energy);
    mids.push_back(run.final_midpoint_entropy);
    res.avg_entropy += run.final_avg_entropy;
    res.stddev_entropy += run.final_stddev_entropy;
    if (!run.connected) ++res.disconnected_graphs;
  }
  res.energy = summarize(energies);
  res.midpoint_entropy = summarize(mids);
  res.avg_entropy /= static_cast<double>(res.per_graph.size());
  res.stddev_entropy /= static_cast<double>(res.per_graph.size());
  return res;
}

std::vector<ScalingRecord> scaling_sweep(std::span<const std::size_t> n_list,
                                         std::span<const std::size_t> chi_list,
                                         std::uint64_t seed, std::size_t depth,
                                         const EnsembleOptions& options,
                                         std::size_t max_qubits) {
  if (n_list.empty() || chi_list.empty()) {
    throw std::invalid_argument("scaling_sweep: empty N or chi list");
  }
  for (auto n : n_list) check_qubits(n, max_qubits);
  std::vector<ScalingRecord> out;
  for (auto n : n_list) {
    std::vector<ScalingRecord> rows;
    double e_opt = std::numeric_limits<double>::infinity();
    for (auto chi : chi_list) {
      const auto ens = run_ensemble(n, depth, chi, seed, options, max_qubits);
      ScalingRecord r;
      r.n_qubits = n;
      r.chi = chi;
      r.s_over_n = ens.midpoint_entropy.mean / static_cast<double>(n);
      r.lnchi_over_n = std::log(static_cast<double>(chi)) / static_cast<double>(n);
      r.e_min = ens.energy.mean;
      e_opt = std::min(e_opt, r.e_min);
      rows.push_back(r);
    }
    for (auto& r : rows) {
      r.e_opt = e_opt;
      r.ratio = e_opt != 0.0 ? r.e_min / e_opt : 0.0;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace mpsqvm
