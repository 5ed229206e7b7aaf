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

// Matrix factorizations on row-major buffers. Internal to the library; the
// Eigen dependency stays behind this header.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpsqvm/tensor.hpp"

namespace mpsqvm::detail {

struct MatrixSvd {
  std::size_t rank = 0;
  std::vector<complex_t> u;   // rows x rank
  std::vector<double> s;      // rank, already renormalized if requested
  std::vector<complex_t> vh;  // rank x cols
  double discarded_weight = 0.0;
};

/// Truncated SVD of a row-major rows x cols matrix.
MatrixSvd svd(std::size_t rows, std::size_t cols, std::span<const complex_t> m,
              const TruncationPolicy& policy);

/// Singular values only (no truncation), non-increasing.
std::vector<double> singular_values(std::size_t rows, std::size_t cols,
                                    std::span<const complex_t> m);

/// Thin QR: m (rows x cols) = q (rows x k) * r (k x cols), k = min(rows, cols).
struct ThinQr {
  std::size_t k = 0;
  std::vector<complex_t> q;
  std::vector<complex_t> r;
};
ThinQr qr(std::size_t rows, std::size_t cols, std::span<const complex_t> m);

/// Thin LQ: m (rows x cols) = l (rows x k) * q (k x cols), q has orthonormal
/// rows.
struct ThinLq {
  std::size_t k = 0;
  std::vector<complex_t> l;
  std::vector<complex_t> q;
};
ThinLq lq(std::size_t rows, std::size_t cols, std::span<const complex_t> m);

}  // namespace mpsqvm::detail
