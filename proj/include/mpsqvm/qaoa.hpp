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

// QAOA for MaxCut on random 3-regular graphs.
//
// Sign convention: the optimizer MINIMIZES the energy E = -<H>, where
// H = 1/2 sum w_ij (I - Z_i Z_j) counts cut weight. Lower E is better, and
// -E is the expected cut weight. Ratios E_min / E_opt are therefore ratios
// of expected cut weights and lie in (0, 1].
//
// Circuit convention for depth p and parameters (beta_l, gamma_l):
//   H on every qubit, then for l = 1..p
//     problem layer: exp(-i gamma_l w_ij (I - Z_i Z_j) / 2) per edge, which
//                    equals Rzz(-gamma_l * w_ij) up to a global phase, edges in
//                    lexicographic (i, j) order;
//     mixer layer:   Rx(2 beta_l) = exp(-i beta_l X) on every qubit.
// Parameter vectors are laid out as (beta_1..beta_p, gamma_1..gamma_p).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpsqvm/entanglement.hpp"
#include "mpsqvm/gates.hpp"
#include "mpsqvm/graph.hpp"
#include "mpsqvm/optimizer.hpp"

namespace mpsqvm {

struct QaoaParams {
  std::size_t depth = 0;
  std::vector<double> betas;
  std::vector<double> gammas;

  /// Throws std::invalid_argument unless depth >= 1 and both vectors have
  /// `depth` entries.
  void validate() const;
  std::vector<double> to_vector() const;
  static QaoaParams from_vector(std::span<const double> x);
};

std::vector<GateOp> build_qaoa_circuit(const RegularGraph& graph,
                                       const QaoaParams& params);

struct QaoaEvaluation {
  double energy = 0.0;  // -(expected cut weight)
  double midpoint_entropy = 0.0;
};

/// Simulates the circuit from |0...0> under `policy` and evaluates it.
QaoaEvaluation qaoa_cost(const RegularGraph& graph, const QaoaParams& params,
                         const TruncationPolicy& policy);

/// Final state of the circuit, for callers that need more diagnostics.
MpsState qaoa_state(const RegularGraph& graph, const QaoaParams& params,
                    const TruncationPolicy& policy);

struct GraphRun {
  std::size_t graph_id = 0;
  std::uint64_t graph_seed = 0;
  bool connected = true;
  double total_weight = 0.0;
  std::vector<double> init_params;
  double best_energy = 0.0;
  std::vector<double> best_params;
  std::size_t eval_count = 0;
  /// Midpoint entropy of every state evaluated by the optimizer, in order.
  std::vector<double> midpoint_entropy_trace;
  /// Diagnostics of the state at best_params.
  double final_midpoint_entropy = 0.0;
  double final_avg_entropy = 0.0;
  double final_stddev_entropy = 0.0;  // standard error over bonds
};

struct EnsembleResult {
  std::size_t n_qubits = 0;
  std::size_t depth = 0;
  std::size_t chi = 0;
  std::uint64_t seed = 0;
  std::vector<GraphRun> per_graph;  // ordered by graph_id
  SampleStats energy;               // over per-graph best energies
  SampleStats midpoint_entropy;     // over per-graph final midpoint entropies
  double avg_entropy = 0.0;         // mean of final_avg_entropy
  double stddev_entropy = 0.0;      // mean of final_stddev_entropy
  std::size_t disconnected_graphs = 0;
};

struct EnsembleOptions {
  std::size_t n_graphs = 25;
  double cutoff = 0.0;
  OptimizerConfig optimizer;
};

/// Seed of graph `graph_id` in an ensemble; shared by every depth and chi so
/// sweeps compare identical instances.
std::uint64_t ensemble_graph_seed(std::uint64_t seed, std::size_t graph_id);

/// Initial parameters for (graph_id, depth): beta ~ U[0, pi), gamma ~
/// U[0, 2 pi), independent of chi.
QaoaParams ensemble_init_params(std::uint64_t seed, std::size_t graph_id,
                                std::size_t depth);

/// Optimizes QAOA on `n_graphs` random 3-regular graphs. Graphs run in
/// parallel when OpenMP threads are available; results are aggregated in
/// graph order and do not depend on the thread count.
///
/// Requires even n_qubits >= 4 and n_qubits <= max_qubits.
EnsembleResult run_ensemble(std::size_t n_qubits, std::size_t depth,
                            std::size_t chi, std::uint64_t seed,
                            const EnsembleOptions& options = {},
                            std::size_t max_qubits = 16);

struct ScalingRecord {
  std::size_t n_qubits = 0;
  std::size_t chi = 0;
  double s_over_n = 0.0;      // mean midpoint entropy / N
  double lnchi_over_n = 0.0;  // ln(chi) / N
  double e_min = 0.0;         // mean best energy at this chi
  double e_opt = 0.0;         // lowest e_min over the chi sweep at this N
  double ratio = 0.0;         // e_min / e_opt
};

/// E_opt is defined as the lowest ensemble-mean energy over the whole chi
/// sweep at each N (the best available approximation to the optimum).
inline constexpr const char* kEoptDefinition =
    "e_opt = lowest ensemble-mean best energy over the chi sweep at fixed N";

std::vector<ScalingRecord> scaling_sweep(std::span<const std::size_t> n_list,
                                         std::span<const std::size_t> chi_list,
                                         std::uint64_t seed,
                                         std::size_t depth = 1,
                                         const EnsembleOptions& options = {},
                                         std::size_t max_qubits = 16);

}  // namespace mpsqvm
