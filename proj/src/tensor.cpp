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

#include "mpsqvm/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"

namespace mpsqvm {

std::size_t shape_volume(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

namespace {

void check_shape(const std::vector<std::size_t>& shape) {
  for (auto d : shape) {
    if (d == 0) {
      throw std::invalid_argument("DenseTensor: every dimension must be >= 1");
    }
  }
}

}  // namespace

DenseTensor::DenseTensor() : data_(1, complex_t{0.0, 0.0}) {}

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)) {
  check_shape(shape_);
  data_.assign(shape_volume(shape_), complex_t{0.0, 0.0});
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape,
                         std::vector<complex_t> entries)
    : shape_(std::move(shape)), data_(std::move(entries)) {
  check_shape(shape_);
  if (data_.size() != shape_volume(shape_)) {
    throw std::invalid_argument(
        "DenseTensor: entry count " + std::to_string(data_.size()) +
        " does not match shape volume " +
        std::to_string(shape_volume(shape_)));
  }
}

DenseTensor DenseTensor::scalar(complex_t value) {
  return DenseTensor({}, {value});
}

DenseTensor DenseTensor::matrix(
    std::initializer_list<std::initializer_list<complex_t>> rows) {
  const std::size_t n_rows = rows.size();
  if (n_rows == 0) throw std::invalid_argument("matrix: no rows");
  const std::size_t n_cols = rows.begin()->size();
  std::vector<complex_t> entries;
  entries.reserve(n_rows * n_cols);
  for (const auto& row : rows) {
    if (row.size() != n_cols) {
      throw std::invalid_argument("matrix: ragged rows");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseTensor({n_rows, n_cols}, std::move(entries));
}

DenseTensor DenseTensor::identity(std::size_t dim) {
  DenseTensor t({dim, dim});
  for (std::size_t i = 0; i < dim; ++i) t.data_[i * dim + i] = 1.0;
  return t;
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw std::out_of_range("DenseTensor: index rank mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t d = 0; d < shape_.size(); ++d) {
    if (index[d] >= shape_[d]) {
      throw std::out_of_range("DenseTensor: index out of range");
    }
    flat = flat * shape_[d] + index[d];
  }
  return flat;
}

complex_t& DenseTensor::operator()(std::initializer_list<std::size_t> index) {
  return data_[offset(std::span(index.begin(), index.size()))];
}

const complex_t& DenseTensor::operator()(
    std::initializer_list<std::size_t> index) const {
  return data_[offset(std::span(index.begin(), index.size()))];
}

DenseTensor DenseTensor::reshaped(std::vector<std::size_t> shape) const& {
  return DenseTensor(std::move(shape), data_);
}

DenseTensor DenseTensor::reshaped(std::vector<std::size_t> shape) && {
  return DenseTensor(std::move(shape), std::move(data_));
}

DenseTensor DenseTensor::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != rank()) {
    throw std::invalid_argument("permuted: permutation rank mismatch");
  }
  std::vector<bool> seen(rank(), false);
  std::vector<std::size_t> out_shape(rank());
  for (std::size_t d = 0; d < rank(); ++d) {
    if (perm[d] >= rank() || seen[perm[d]]) {
      throw std::invalid_argument("permuted: not a permutation");
    }
    seen[perm[d]] = true;
    out_shape[d] = shape_[perm[d]];
  }
  DenseTensor out(std::move(out_shape));
  kernels::permute(shape_, perm, data_, out.data_);
  return out;
}

DenseTensor DenseTensor::adjoint() const {
  if (rank() != 2) throw std::invalid_argument("adjoint: rank-2 only");
  const std::size_t r = shape_[0];
  const std::size_t c = shape_[1];
  DenseTensor out({c, r});
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      out.data_[j * r + i] = std::conj(data_[i * c + j]);
    }
  }
  return out;
}

double DenseTensor::squared_norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return acc;
}

double DenseTensor::norm() const { return std::sqrt(squared_norm()); }

DenseTensor& DenseTensor::operator*=(complex_t factor) {
  for (auto& z : data_) z *= factor;
  return *this;
}

double DenseTensor::max_abs_diff(const DenseTensor& other) const {
  if (shape_ != other.shape_) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

DenseTensor contract(
    const DenseTensor& a, const DenseTensor& b,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<bool> a_used(a.rank(), false);
  std::vector<bool> b_used(b.rank(), false);
  for (const auto& [ia, ib] : pairs) {
    if (ia >= a.rank() || ib >= b.rank()) {
      throw std::out_of_range("contract: index out of range");
    }
    if (a_used[ia] || b_used[ib]) {
      throw std::invalid_argument("contract: index paired twice");
    }
    if (a.dim(ia) != b.dim(ib)) {
      throw std::invalid_argument(
          "contract: dimension mismatch (" + std::to_string(a.dim(ia)) +
          " vs " + std::to_string(b.dim(ib)) + ")");
    }
    a_used[ia] = b_used[ib] = true;
  }

  // a -> (free_a..., contracted...), b -> (contracted..., free_b...)
  std::vector<std::size_t> a_perm;
  std::vector<std::size_t> b_perm;
  std::vector<std::size_t> out_shape;
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t k = 1;
  for (std::size_t d = 0; d < a.rank(); ++d) {
    if (!a_used[d]) {
      a_perm.push_back(d);
      out_shape.push_back(a.dim(d));
      m *= a.dim(d);
    }
  }
  for (const auto& [ia, ib] : pairs) {
    a_perm.push_back(ia);
    b_perm.push_back(ib);
    k *= a.dim(ia);
  }
  for (std::size_t d = 0; d < b.rank(); ++d) {
    if (!b_used[d]) {
      b_perm.push_back(d);
      out_shape.push_back(b.dim(d));
      n *= b.dim(d);
    }
  }

  auto is_identity = [](const std::vector<std::size_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != i) return false;
    }
    return true;
  };
  const DenseTensor a_mat = is_identity(a_perm) ? a : a.permuted(a_perm);
  const DenseTensor b_mat = is_identity(b_perm) ? b : b.permuted(b_perm);

  DenseTensor out(out_shape);
  kernels::gemm(m, n, k, a_mat.data(), b_mat.data(), out.data());
  return out;
}

void TruncationPolicy::validate() const {
  if (max_bond < 1) {
    throw std::invalid_argument("TruncationPolicy: max_bond must be >= 1");
  }
  if (!(cutoff >= 0.0 && cutoff < 1.0)) {
    throw std::invalid_argument("TruncationPolicy: cutoff must lie in [0, 1)");
  }
}

std::pair<std::size_t, double> select_rank(std::span<const double> s,
                                           const TruncationPolicy& policy) {
  const std::size_t full = s.size();
  if (full == 0 || !(s[0] > 0.0)) return {0, 0.0};

  // Values at or below the numerical-zero threshold count as exact zeros:
  // never kept and not part of the discarded weight.
  std::size_t numerical_rank = 0;
  while (numerical_rank < full && s[numerical_rank] > kNumericalZero * s[0]) {
    ++numerical_rank;
  }

  // tail[i] = sum_{i <= j < numerical_rank} s_j^2, accumulated smallest first.
  std::vector<double> tail(numerical_rank + 1, 0.0);
  for (std::size_t i = numerical_rank; i-- > 0;) tail[i] = tail[i + 1] + s[i] * s[i];
  const double total = tail[0];

  std::size_t by_cutoff = numerical_rank;
  for (std::size_t r = 1; r <= numerical_rank; ++r) {
    if (tail[r] / total <= policy.cutoff) {
      by_cutoff = r;
      break;
    }
  }

  const std::size_t kept = std::max<std::size_t>(
      1, std::min({policy.max_bond, by_cutoff, numerical_rank}));
  return {kept, tail[kept] / total};
}

SvdResult truncated_svd(const DenseTensor& t,
                        std::span<const std::size_t> row_axes,
                        const TruncationPolicy& policy) {
  policy.validate();
  const std::size_t r = t.rank();
  if (row_axes.empty() || row_axes.size() >= r) {
    throw std::invalid_argument(
        "truncated_svd: both index groups must be nonempty");
  }
  std::vector<bool> is_row(r, false);
  for (auto axis : row_axes) {
    if (axis >= r || is_row[axis]) {
      throw std::invalid_argument("truncated_svd: invalid partition");
    }
    is_row[axis] = true;
  }
  std::vector<std::size_t> perm(row_axes.begin(), row_axes.end());
  std::vector<std::size_t> row_dims;
  std::vector<std::size_t> col_dims;
  for (auto axis : row_axes) row_dims.push_back(t.dim(axis));
  for (std::size_t d = 0; d < r; ++d) {
    if (!is_row[d]) {
      perm.push_back(d);
      col_dims.push_back(t.dim(d));
    }
  }
  if (t.squared_norm() == 0.0) {
    throw std::invalid_argument("truncated_svd: all-zero tensor");
  }

  const std::size_t rows = shape_volume(row_dims);
  const std::size_t cols = shape_volume(col_dims);
  const DenseTensor mat = t.permuted(perm);
  auto dec = detail::svd(rows, cols, mat.data(), policy);

  SvdResult out;
  out.kept_rank = dec.rank;
  out.discarded_weight = dec.discarded_weight;
  out.singular_values = std::move(dec.s);
  row_dims.push_back(dec.rank);
  col_dims.insert(col_dims.begin(), dec.rank);
  out.left_factor = DenseTensor(std::move(row_dims), std::move(dec.u));
  out.right_factor = DenseTensor(std::move(col_dims), std::move(dec.vh));
  return out;
}

}  // namespace mpsqvm
