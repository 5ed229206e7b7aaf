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

#include "mpsqvm/kernels.hpp"

#include <cassert>
#include <cstdint>

#include <omp.h>

namespace mpsqvm::kernels {

namespace {

// std::complex multiplication routes through __muldc3 for IEEE inf/nan
// handling; spelling it out keeps the inner loops vectorizable.
inline void fma_into(double& cr, double& ci, double ar, double ai, double br,
                     double bi) {
  cr += ar * br - ai * bi;
  ci += ar * bi + ai * br;
}

inline void gemm_row(std::size_t i, std::size_t n, std::size_t k,
                     const complex_t* a, const complex_t* b, complex_t* c) {
  auto* crow = reinterpret_cast<double*>(c + i * n);
  for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    const double ar = a[i * k + l].real();
    const double ai = a[i * k + l].imag();
    const auto* brow = reinterpret_cast<const double*>(b + l * n);
    for (std::size_t j = 0; j < n; ++j) {
      fma_into(crow[2 * j], crow[2 * j + 1], ar, ai, brow[2 * j],
               brow[2 * j + 1]);
    }
  }
}

inline void gemm_adj_row(std::size_t i, std::size_t m, std::size_t n,
                         std::size_t k, const complex_t* a, const complex_t* b,
                         complex_t* c) {
  auto* crow = reinterpret_cast<double*>(c + i * n);
  for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    // conj(A[l, i])
    const double ar = a[l * m + i].real();
    const double ai = -a[l * m + i].imag();
    const auto* brow = reinterpret_cast<const double*>(b + l * n);
    for (std::size_t j = 0; j < n; ++j) {
      fma_into(crow[2 * j], crow[2 * j + 1], ar, ai, brow[2 * j],
               brow[2 * j + 1]);
    }
  }
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t d = shape.size(); d-- > 1;) {
    strides[d - 1] = strides[d] * shape[d];
  }
  return strides;
}

std::size_t product(std::span<const std::size_t> shape) {
  std::size_t total = 1;
  for (auto d : shape) total *= d;
  return total;
}

}  // namespace

void gemm_reference(std::size_t m, std::size_t n, std::size_t k,
                    std::span<const complex_t> a, std::span<const complex_t> b,
                    std::span<complex_t> c) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        fma_into(re, im, a[i * k + l].real(), a[i * k + l].imag(),
                 b[l * n + j].real(), b[l * n + j].imag());
      }
      c[i * n + j] = complex_t(re, im);
    }
  }
}

void gemm(std::size_t m, std::size_t n, std::size_t k,
          std::span<const complex_t> a, std::span<const complex_t> b,
          std::span<complex_t> c) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  const bool parallel = m * n * k >= kParallelThreshold && m > 1;
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < rows; ++i) {
    gemm_row(static_cast<std::size_t>(i), n, k, a.data(), b.data(), c.data());
  }
}

void gemm_adjoint_left_reference(std::size_t m, std::size_t n, std::size_t k,
                                 std::span<const complex_t> a,
                                 std::span<const complex_t> b,
                                 std::span<complex_t> c) {
  assert(a.size() == k * m && b.size() == k * n && c.size() == m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        fma_into(re, im, a[l * m + i].real(), -a[l * m + i].imag(),
                 b[l * n + j].real(), b[l * n + j].imag());
      }
      c[i * n + j] = complex_t(re, im);
    }
  }
}

void gemm_adjoint_left(std::size_t m, std::size_t n, std::size_t k,
                       std::span<const complex_t> a,
                       std::span<const complex_t> b, std::span<complex_t> c) {
  assert(a.size() == k * m && b.size() == k * n && c.size() == m * n);
  const bool parallel = m * n * k >= kParallelThreshold && m > 1;
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < rows; ++i) {
    gemm_adj_row(static_cast<std::size_t>(i), m, n, k, a.data(), b.data(),
                 c.data());
  }
}

void permute_reference(std::span<const std::size_t> shape,
                       std::span<const std::size_t> perm,
                       std::span<const complex_t> in, std::span<complex_t> out) {
  const std::size_t rank = shape.size();
  const std::size_t total = product(shape);
  assert(perm.size() == rank && in.size() == total && out.size() == total);
  const auto in_strides = row_major_strides(shape);
  std::vector<std::size_t> out_shape(rank);
  for (std::size_t d = 0; d < rank; ++d) out_shape[d] = shape[perm[d]];

  std::vector<std::size_t> idx(rank, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t src = 0;
    for (std::size_t d = 0; d < rank; ++d) src += idx[d] * in_strides[perm[d]];
    out[flat] = in[src];
    for (std::size_t d = rank; d-- > 0;) {
      if (++idx[d] < out_shape[d]) break;
      idx[d] = 0;
    }
  }
}

void permute(std::span<const std::size_t> shape,
             std::span<const std::size_t> perm, std::span<const complex_t> in,
             std::span<complex_t> out) {
  const std::size_t rank = shape.size();
  const std::size_t total = product(shape);
  assert(perm.size() == rank && in.size() == total && out.size() == total);
  if (rank == 0) {
    out[0] = in[0];
    return;
  }
  const auto in_strides = row_major_strides(shape);
  std::vector<std::size_t> out_shape(rank);
  std::vector<std::size_t> src_stride(rank);
  for (std::size_t d = 0; d < rank; ++d) {
    out_shape[d] = shape[perm[d]];
    src_stride[d] = in_strides[perm[d]];
  }
  // Parallelize over the leading output axis; each chunk walks its own
  // multi-index, innermost output axis unrolled as a strided copy.
  const std::size_t inner = out_shape[rank - 1];
  const std::size_t inner_stride = src_stride[rank - 1];
  const std::size_t outer = total / inner;
  const bool parallel = total >= kParallelThreshold;
  const auto outer_i = static_cast<std::int64_t>(outer);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t o = 0; o < outer_i; ++o) {
    std::size_t rem = static_cast<std::size_t>(o);
    std::size_t src = 0;
    for (std::size_t d = rank - 1; d-- > 0;) {
      src += (rem % out_shape[d]) * src_stride[d];
      rem /= out_shape[d];
    }
    complex_t* dst = out.data() + static_cast<std::size_t>(o) * inner;
    const complex_t* s = in.data() + src;
    for (std::size_t j = 0; j < inner; ++j) dst[j] = s[j * inner_stride];
  }
}

}  // namespace mpsqvm::kernels
