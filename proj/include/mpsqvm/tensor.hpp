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
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpsqvm/kernels.hpp"

namespace mpsqvm {

/// Raised when a numerical routine cannot produce a trustworthy result
/// (failed decomposition, non-finite data, unexpected imaginary residue).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense multi-index complex array.
///
/// Entries are stored row-major: the LAST index varies fastest. For a tensor
/// of shape (d0, d1, ..., dr-1) the entry at (i0, ..., ir-1) lives at flat
/// offset ((i0 * d1 + i1) * d2 + i2) ... . Every module relies on this order,
/// in particular the MPS site tensors (left bond, physical, right bond) and
/// gate matrices (row = output basis state, column = input basis state).
///
/// Rank 0 is a scalar holding exactly one entry.
class DenseTensor {
 public:
  /// Rank-0 tensor holding 0.
  DenseTensor();

  /// Zero-filled tensor. Every dimension must be positive.
  explicit DenseTensor(std::vector<std::size_t> shape);

  DenseTensor(std::vector<std::size_t> shape, std::vector<complex_t> entries);

  static DenseTensor scalar(complex_t value);

  /// Row-major matrix from nested rows; all rows must have equal length.
  static DenseTensor matrix(
      std::initializer_list<std::initializer_list<complex_t>> rows);

  static DenseTensor identity(std::size_t dim);

  std::size_t rank() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }

  std::span<const complex_t> data() const { return data_; }
  std::span<complex_t> data() { return data_; }

  complex_t& operator()(std::initializer_list<std::size_t> index);
  const complex_t& operator()(std::initializer_list<std::size_t> index) const;

  std::size_t offset(std::span<const std::size_t> index) const;

  /// Same entries, new shape with identical entry count.
  DenseTensor reshaped(std::vector<std::size_t> shape) const&;
  DenseTensor reshaped(std::vector<std::size_t> shape) &&;

  /// Output axis d is input axis perm[d].
  DenseTensor permuted(std::span<const std::size_t> perm) const;
  DenseTensor permuted(std::initializer_list<std::size_t> perm) const {
    return permuted(std::span<const std::size_t>(perm.begin(), perm.size()));
  }

  /// Conjugate transpose; rank 2 only.
  DenseTensor adjoint() const;

  double norm() const;
  double squared_norm() const;
  DenseTensor& operator*=(complex_t factor);
  friend DenseTensor operator*(complex_t factor, DenseTensor t) {
    t *= factor;
    return t;
  }

  /// Largest absolute entrywise difference; shapes must match.
  double max_abs_diff(const DenseTensor& other) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<complex_t> data_;
};

/// Product of the entries of a shape; 1 for the empty (rank-0) shape.
std::size_t shape_volume(std::span<const std::size_t> shape);

/// Sum over the paired indices. The result carries a's free indices followed
/// by b's free indices, each group in original order.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const std::pair<std::size_t, std::size_t>> pairs);

inline DenseTensor contract(
    const DenseTensor& a, const DenseTensor& b,
    std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  return contract(a, b, std::span(pairs.begin(), pairs.size()));
}

/// Bond-dimension cap and discarded-weight threshold applied at every split.
struct TruncationPolicy {
  static constexpr std::size_t kUnbounded =
      std::numeric_limits<std::size_t>::max();

  /// Largest bond dimension (chi) kept by any split.
  std::size_t max_bond = kUnbounded;
  /// Largest admissible sum of discarded squared singular values, measured
  /// on the normalized spectrum. 0 truncates by max_bond only.
  double cutoff = 0.0;
  /// Rescale kept singular values so the split preserves the input norm.
  bool renormalize = true;

  /// Throws std::invalid_argument unless max_bond >= 1 and cutoff in [0, 1).
  void validate() const;

  static TruncationPolicy exact() { return {}; }
  static TruncationPolicy with_max_bond(std::size_t chi) {
    TruncationPolicy p;
    p.max_bond = chi;
    return p;
  }
};

/// Result of splitting a tensor as left * diag(s) * right.
struct SvdResult {
  /// Shape (row-group dims..., kept_rank); columns are orthonormal.
  DenseTensor left_factor;
  /// Non-increasing; rescaled when the policy renormalizes.
  std::vector<double> singular_values;
  /// Shape (kept_rank, column-group dims...); rows are orthonormal.
  DenseTensor right_factor;
  std::size_t kept_rank = 0;
  /// Squared discarded weight of the normalized spectrum, before rescaling.
  double discarded_weight = 0.0;
};

/// Singular values at or below this fraction of the largest are treated as
/// exact zeros and never kept (numerical rank).
inline constexpr double kNumericalZero = 1e-14;

/// Truncated SVD of `t` viewed as a matrix whose rows are the axes listed in
/// `row_axes` (in that order) and whose columns are the remaining axes in
/// their original order.
///
/// Kept rank = min(max_bond, smallest rank whose discarded normalized weight
/// is <= cutoff, numerical rank).
SvdResult truncated_svd(const DenseTensor& t,
                        std::span<const std::size_t> row_axes,
                        const TruncationPolicy& policy);

inline SvdResult truncated_svd(const DenseTensor& t,
                               std::initializer_list<std::size_t> row_axes,
                               const TruncationPolicy& policy) {
  return truncated_svd(t, std::span(row_axes.begin(), row_axes.size()),
                       policy);
}

/// Rank selection shared by every split. `s` is non-increasing. Returns the
/// kept rank and the discarded normalized weight.
std::pair<std::size_t, double> select_rank(std::span<const double> s,
                                           const TruncationPolicy& policy);

}  // namespace mpsqvm
