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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mpsqvm {

struct OptimizerConfig {
  /// Hard cap on objective evaluations (the init point counts as one).
  std::size_t max_evals = 1000;
  /// Initial trust-region radius.
  double initial_step = 0.5;
  /// Final trust-region radius; the run ends once the radius has shrunk to
  /// this value and no further progress is made.
  double stop_tol = 1e-4;
  /// Carried for callers that derive restart points; the minimizer itself
  /// is deterministic.
  std::uint64_t seed = 0;
};

struct OptimizeResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  std::size_t eval_count = 0;
  /// Trust-region radius at exit.
  double final_radius = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free local minimization by linear interpolation on a simplex
/// of n + 1 points with a shrinking trust region, i.e. the unconstrained
/// form of Powell's COBYLA: each iteration either improves the simplex
/// geometry or steps to the edge of the trust region along the negative
/// model gradient, replacing a vertex; the radius halves when neither makes
/// progress.
///
/// Returns the best point evaluated, so best_value <= objective(init).
/// Throws std::runtime_error if the objective returns a non-finite value,
/// std::invalid_argument on an empty init or bad config.
OptimizeResult minimize(const Objective& objective, std::span<const double> init,
                        const OptimizerConfig& config);

}  // namespace mpsqvm
