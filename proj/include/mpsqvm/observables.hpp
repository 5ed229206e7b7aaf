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
#include <map>
#include <span>
#include <vector>

#include "mpsqvm/mps.hpp"

namespace mpsqvm {

enum class Pauli { X, Y, Z };

/// coefficient * (tensor product of the listed Paulis, identity elsewhere).
/// Keys are 1-based sites.
struct PauliTerm {
  double coefficient = 1.0;
  std::map<std::size_t, Pauli> factors;
};

struct IsingEdge {
  std::size_t i = 0;  // 1-based, i < j
  std::size_t j = 0;
  double weight = 1.0;
};

/// Weighted MaxCut Hamiltonian H = 1/2 sum_{(i,j)} w_ij (I - Z_i Z_j).
/// Its expectation is the expected weight of edges cut by a measurement.
class IsingCost {
 public:
  /// Throws std::invalid_argument on self-loops, duplicate edges, i > j
  /// (pairs are normalized to i < j first), non-positive weights, or sites
  /// outside 1..n_qubits.
  IsingCost(std::size_t n_qubits, std::vector<IsingEdge> edges);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<IsingEdge>& edges() const { return edges_; }
  double total_weight() const;

  /// Classical cut weight of the basis state with amplitude index `basis`
  /// (site 1 = most significant bit).
  double cut_weight(std::uint64_t basis) const;

 private:
  std::size_t n_qubits_;
  std::vector<IsingEdge> edges_;  // sorted lexicographically by (i, j)
};

/// <psi|P|psi> * coefficient by left-to-right transfer matrices over the
/// shortest site range the canonical form allows. Throws NumericError if the
/// imaginary residue exceeds 1e-10.
double expectation(const MpsState& state, const PauliTerm& term);

/// Sum of term expectations.
double expectation(const MpsState& state, std::span<const PauliTerm> terms);

/// <Z_a Z_b>, a != b.
double zz_expectation(const MpsState& state, std::size_t site_a,
                      std::size_t site_b);

/// 1/2 sum w_ij (1 - <Z_i Z_j>). Shares environments across edges with the
/// same left endpoint.
double cost_expectation(const MpsState& state, const IsingCost& cost);

}  // namespace mpsqvm
