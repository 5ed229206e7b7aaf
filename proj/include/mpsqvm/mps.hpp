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
#include <optional>
#include <span>
#include <vector>

#include "mpsqvm/tensor.hpp"

namespace mpsqvm {

/// Largest qubit count for which a dense statevector is materialized.
inline constexpr std::size_t kDefaultStatevectorCap = 20;

/// Gate matrices must satisfy |G G^H - I| <= this, entrywise.
inline constexpr double kUnitarityTolerance = 1e-10;

/// Largest entrywise deviation of m * m^H from the identity. m must be square.
double unitarity_error(const DenseTensor& m);

/// Open-boundary matrix product state of N qubits.
///
/// Conventions:
///  - Sites are numbered 1..N. Bond b (1..N-1) joins sites b and b+1.
///  - Site tensors have shape (left bond, 2, right bond); boundary bonds are 1.
///  - Site 1 is the most significant bit of a computational basis label, so
///    amplitude index x = sum_i s_i * 2^(N - i). On two qubits, X applied to
///    site 2 of |00> gives |01>, i.e. amplitude index 1.
///  - A two-qubit gate matrix on (site_a, site_b) acts on |s_a s_b> with s_a
///    the more significant bit of the 4-dim row/column index.
///
/// Whenever ortho_center() = c, sites 1..c-1 are left isometries and sites
/// c+1..N are right isometries. Every operation maintains this form.
class MpsState {
 public:
  /// |0...0> with all bonds of dimension 1 and center at site 1.
  static MpsState computational_zero(std::size_t n_qubits,
                                     TruncationPolicy policy);

  /// Left-to-right sweep of truncated SVDs. `amplitudes` must have length
  /// 2^N and unit norm (within 1e-8). Leaves the center at site N.
  static MpsState from_statevector(std::span<const complex_t> amplitudes,
                                   TruncationPolicy policy);

  /// Wraps caller-supplied site tensors. Shapes are validated; no canonical
  /// form is assumed (ortho_center() is empty).
  static MpsState from_sites(std::vector<DenseTensor> sites,
                             TruncationPolicy policy);

  /// Dense amplitudes in the bit order documented above. Throws
  /// std::length_error when N exceeds `max_qubits`.
  std::vector<complex_t> to_statevector(
      std::size_t max_qubits = kDefaultStatevectorCap) const;

  std::size_t n_qubits() const { return sites_.size(); }
  std::optional<std::size_t> ortho_center() const { return center_; }
  const TruncationPolicy& policy() const { return policy_; }
  const DenseTensor& site(std::size_t site) const;
  std::size_t bond_dim(std::size_t bond) const;
  std::vector<std::size_t> bond_dims() const;

  /// sqrt(<psi|psi>) by transfer-matrix contraction.
  double norm() const;

  /// Sum of discarded weights over every truncating split so far.
  double truncation_weight() const { return truncation_weight_; }

  /// Gauge move: after the call ortho_center() == site. Amplitudes unchanged.
  void orthogonalize(std::size_t site);

  /// Applies a 2x2 unitary. A unitary acting on the physical index keeps
  /// left and right isometries isometric, so the center does not move.
  void apply_one_qubit(std::size_t site, const DenseTensor& gate);

  /// Applies a 4x4 unitary on (site_a, site_b). Adjacent pairs are updated
  /// by contract / gate / truncated split. Distant pairs are routed with
  /// nearest-neighbour SWAPs (each split under the same policy), applied,
  /// and routed back.
  void apply_two_qubit(std::size_t site_a, std::size_t site_b,
                       const DenseTensor& gate);

  /// Schmidt coefficients across bond `bond`, non-increasing, numerical
  /// zeros dropped. Computed on a gauge-moved copy; *this is untouched.
  std::vector<double> bond_spectrum(std::size_t bond) const;

  /// Schmidt coefficients for bonds 1..N-1 from one sweep (entry b-1 is bond
  /// b).
  std::vector<std::vector<double>> all_bond_spectra() const;

 private:
  MpsState(std::vector<DenseTensor> sites, TruncationPolicy policy,
           std::optional<std::size_t> center);

  // 0-based helpers.
  void move_center_right(std::size_t i);
  void move_center_left(std::size_t i);
  void canonicalize_from_scratch();
  // Applies `gate` (4x4 row-major, nullptr means SWAP) to sites i, i+1 and
  // splits, leaving the center on i+1 when `center_right` and on i otherwise.
  void two_site_update(std::size_t i, const complex_t* gate, bool center_right);
  std::size_t checked_site(std::size_t site) const;

  std::vector<DenseTensor> sites_;
  TruncationPolicy policy_;
  std::optional<std::size_t> center_;  // 1-based
  double truncation_weight_ = 0.0;
};

/// One step of <bra|op|ket> transfer: env (left_bra x left_ket) is advanced
/// through a site pair, with an optional 2x2 operator between bra and ket on
/// the physical index. Returns (right_bra x right_ket).
DenseTensor transfer_step(const DenseTensor& env, const DenseTensor& bra_site,
                          const DenseTensor& ket_site,
                          const DenseTensor* op = nullptr);

}  // namespace mpsqvm
