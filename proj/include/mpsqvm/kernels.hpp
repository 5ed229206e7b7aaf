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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mpsqvm {

using complex_t = std::complex<double>;

namespace kernels {

// All matrices are dense and row-major.
//
// Two implementations of each kernel are kept side by side: a plain serial
// reference, used by the tests as ground truth, and the OpenMP version used by
// the library. Both accumulate every output element over the inner index in
// ascending order, so their results are bit-identical for any thread count.

/// C (m x n) = A (m x k) * B (k x n).
void gemm_reference(std::size_t m, std::size_t n, std::size_t k,
                    std::span<const complex_t> a, std::span<const complex_t> b,
                    std::span<complex_t> c);

void gemm(std::size_t m, std::size_t n, std::size_t k,
          std::span<const complex_t> a, std::span<const complex_t> b,
          std::span<complex_t> c);

/// C (m x n) = A^H * B where A is stored as (k x m) and B as (k x n).
void gemm_adjoint_left_reference(std::size_t m, std::size_t n, std::size_t k,
                                 std::span<const complex_t> a,
                                 std::span<const complex_t> b,
                                 std::span<complex_t> c);

void gemm_adjoint_left(std::size_t m, std::size_t n, std::size_t k,
                       std::span<const complex_t> a,
                       std::span<const complex_t> b, std::span<complex_t> c);

/// Generic axis permutation of a row-major array: out[j...] = in[perm^-1 ...],
/// i.e. axis `d` of the output is axis `perm[d]` of the input.
void permute_reference(std::span<const std::size_t> shape,
                       std::span<const std::size_t> perm,
                       std::span<const complex_t> in, std::span<complex_t> out);

void permute(std::span<const std::size_t> shape,
             std::span<const std::size_t> perm, std::span<const complex_t> in,
             std::span<complex_t> out);

/// Work (in complex multiply-adds) below which the OpenMP kernels stay serial.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

}  // namespace kernels
}  // namespace mpsqvm
