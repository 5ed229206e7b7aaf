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
#include <span>
#include <vector>

#include "mpsqvm/mps.hpp"

namespace mpsqvm {

// All entropies are von Neumann entropies in nats (natural logarithm),
// computed from Schmidt spectra; reduced density matrices are never formed.

/// Mean and standard error of the mean. The standard error uses the sample
/// standard deviation (n - 1 denominator) divided by sqrt(n); it is 0 when
/// n_samples == 1.
struct SampleStats {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t n_samples = 0;
};

SampleStats summarize(std::span<const double> values);

/// -sum p ln p over p = s^2, with 0 ln 0 := 0.
double spectrum_entropy(std::span<const double> singular_values);

double entropy_at_bond(const MpsState& state, std::size_t bond);

/// Entropy at bond N/2 (integer division). Requires N >= 2.
double midpoint_entropy(const MpsState& state);

/// Entropy for bonds 1..N-1, entry b-1 holding bond b.
std::vector<double> entropy_profile(const MpsState& state);

/// Mean and standard error of the entropy over a nonempty set of bonds.
SampleStats entropy_mean_stderr(const MpsState& state,
                                std::span<const std::size_t> bonds);
/// Same, over every bond 1..N-1.
SampleStats entropy_mean_stderr(const MpsState& state);

/// Average subsystem entropy of a Haar-random state on n_a + n_b qubits
/// (n_a <= n_b):
///   sum_{k = 2^n_b + 1}^{2^(n_a + n_b)} 1/k - (2^n_a - 1) / 2^(n_b + 1).
/// The harmonic tail is summed smallest term first.
double page_entropy(unsigned n_a, unsigned n_b);

/// Page value for the cut after `n_a` of `n` qubits (orders the halves).
double page_entropy_for_cut(unsigned n_a, unsigned n);

/// s_mid / page_entropy(N/2, N/2). N must be even and >= 2, s_mid >= 0.
double simulation_fidelity(double s_mid, std::size_t n_qubits);

struct FidelityRecord {
  std::size_t n_qubits = 0;
  std::size_t chi = 0;
  double f_sim = 0.0;
  /// Midpoint standard error propagated through the Page normalization.
  double f_stderr = 0.0;
};

struct PageExperimentResult {
  std::size_t n_qubits = 0;
  std::size_t chi = 0;
  std::size_t m_samples = 0;
  std::uint64_t seed = 0;
  std::vector<SampleStats> per_bond;  // bonds 1..N-1
  FidelityRecord fidelity;
  /// Mean over samples of the discarded weight of the MPS conversion.
  double mean_truncation_weight = 0.0;
};

/// Monte Carlo over `m_samples` Haar states. Sample m draws from a sampler
/// seeded with derive_seed(seed, m), is converted with from_statevector at
/// bond cap `chi` and profiled. Samples may run in parallel; aggregation is in
/// sample order, so results do not depend on the thread count.
///
/// Throws std::invalid_argument for odd N or m_samples < 1, and
/// std::length_error when N exceeds `max_qubits`.
PageExperimentResult page_experiment(
    std::size_t n_qubits, std::size_t chi, std::size_t m_samples,
    std::uint64_t seed, double cutoff = 0.0,
    std::size_t max_qubits = kDefaultStatevectorCap);

}  // namespace mpsqvm
