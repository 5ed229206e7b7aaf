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

#include "mpsqvm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>

#include "mpsqvm/gates.hpp"

namespace mpsqvm {

SampleStats summarize(std::span<const double> values) {
  SampleStats st;
  st.n_samples = values.size();
  if (values.empty()) return st;
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - st.mean) * (v - st.mean);
    const double n = static_cast<double>(values.size());
    st.standard_error = std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
  }
  return st;
}

double spectrum_entropy(std::span<const double> singular_values) {
  double s = 0.0;
  for (double v : singular_values) {
    const double p = v * v;
    if (p > 0.0) s -= p * std::log(p);
  }
  // p slightly above 1 from rounding gives -1e-16 for a pure cut.
  return std::max(s, 0.0);
}

double entropy_at_bond(const MpsState& state, std::size_t bond) {
  return spectrum_entropy(state.bond_spectrum(bond));
}

double midpoint_entropy(const MpsState& state) {
  if (state.n_qubits() < 2) {
    throw std::invalid_argument("midpoint_entropy: needs at least 2 qubits");
  }
  return entropy_at_bond(state, state.n_qubits() / 2);
}

std::vector<double> entropy_profile(const MpsState& state) {
  std::vector<double> out;
  for (const auto& s : state.all_bond_spectra()) {
    out.push_back(spectrum_entropy(s));
  }
  return out;
}

SampleStats entropy_mean_stderr(const MpsState& state,
                                std::span<const std::size_t> bonds) {
  if (bonds.empty()) {
    throw std::invalid_argument("entropy_mean_stderr: empty bond set");
  }
  const std::size_t n = state.n_qubits();
  for (auto b : bonds) {
    if (b < 1 || b >= n) {
      throw std::out_of_range("entropy_mean_stderr: bond " +
                              std::to_string(b) + " out of range");
    }
  }
  const auto profile = entropy_profile(state);
  std::vector<double> values;
  values.reserve(bonds.size());
  for (auto b : bonds) values.push_back(profile[b - 1]);
  return summarize(values);
}

SampleStats entropy_mean_stderr(const MpsState& state) {
  if (state.n_qubits() < 2) {
    throw std::invalid_argument("entropy_mean_stderr: needs at least 2 qubits");
  }
  const auto profile = entropy_profile(state);
  return summarize(profile);
}

double page_entropy(unsigned n_a, unsigned n_b) {
  if (n_a > n_b) {
    throw std::invalid_argument("page_entropy: requires n_a <= n_b");
  }
  if (n_a + n_b > 60) {
    throw std::invalid_argument("page_entropy: system too large");
  }
  const std::uint64_t lo = (std::uint64_t{1} << n_b) + 1;
  const std::uint64_t hi = std::uint64_t{1} << (n_a + n_b);
  double harmonic = 0.0;
  for (std::uint64_t k = hi; k >= lo; --k) {
    harmonic += 1.0 / static_cast<double>(k);
  }
  const double correction =
      static_cast<double>((std::uint64_t{1} << n_a) - 1) /
      static_cast<double>(std::uint64_t{1} << (n_b + 1));
  return harmonic - correction;
}

double page_entropy_for_cut(unsigned n_a, unsigned n) {
  if (n_a > n) throw std::invalid_argument("page_entropy_for_cut: n_a > n");
  const unsigned other = n - n_a;
  return n_a <= other ? page_entropy(n_a, other) : page_entropy(other, n_a);
}

double simulation_fidelity(double s_mid, std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument(
        "simulation_fidelity: even qubit count required");
  }
  if (!(s_mid >= 0.0)) {
    throw std::invalid_argument("simulation_fidelity: entropy must be >= 0");
  }
  const auto half = static_cast<unsigned>(n_qubits / 2);
  return s_mid / page_entropy(half, half);
}

PageExperimentResult page_experiment(std::size_t n_qubits, std::size_t chi,
                                     std::size_t m_samples, std::uint64_t seed,
                                     double cutoff, std::size_t max_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument("page_experiment: even qubit count required");
  }
  if (m_samples < 1) {
    throw std::invalid_argument("page_experiment: m_samples must be >= 1");
  }
  if (n_qubits > max_qubits) {
    throw std::length_error("page_experiment: " + std::to_string(n_qubits) +
                            " qubits exceeds the statevector cap of " +
                            std::to_string(max_qubits));
  }
  TruncationPolicy policy;
  policy.max_bond = chi;
  policy.cutoff = cutoff;
  policy.validate();

  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<std::vector<double>> profiles(m_samples);
  std::vector<double> truncation(m_samples, 0.0);
  std::exception_ptr failure;

  const auto m_total = static_cast<std::int64_t>(m_samples);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t m = 0; m < m_total; ++m) {
    try {
      HaarSampler sampler(derive_seed(seed, static_cast<std::uint64_t>(m)),
                          dim);
      const auto psi = sampler.sample();
      const auto state = MpsState::from_statevector(psi, policy);
      profiles[static_cast<std::size_t>(m)] = entropy_profile(state);
      truncation[static_cast<std::size_t>(m)] = state.truncation_weight();
    } catch (...) {
#pragma omp critical(page_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  PageExperimentResult out;
  out.n_qubits = n_qubits;
  out.chi = chi;
  out.m_samples = m_samples;
  out.seed = seed;
  std::vector<double> column(m_samples);
  for (std::size_t b = 0; b + 1 < n_qubits; ++b) {
    for (std::size_t m = 0; m < m_samples; ++m) column[m] = profiles[m][b];
    out.per_bond.push_back(summarize(column));
  }
  double tw = 0.0;
  for (double t : truncation) tw += t;
  out.mean_truncation_weight = tw / static_cast<double>(m_samples);

  const auto& mid = out.per_bond[n_qubits / 2 - 1];
  const auto half = static_cast<unsigned>(n_qubits / 2);
  const double page = page_entropy(half, half);
  out.fidelity.n_qubits = n_qubits;
  out.fidelity.chi = chi;
  out.fidelity.f_sim = simulation_fidelity(mid.mean, n_qubits);
  out.fidelity.f_stderr = mid.standard_error / page;
  return out;
}

}  // namespace mpsqvm
