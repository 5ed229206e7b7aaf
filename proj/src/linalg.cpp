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

#include "linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace mpsqvm::detail {

namespace {

using RowMatrix =
    Eigen::Matrix<complex_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstRowMap = Eigen::Map<const RowMatrix>;

template <typename Derived>
void store(const Eigen::MatrixBase<Derived>& m, std::vector<complex_t>& out) {
  out.resize(static_cast<std::size_t>(m.rows() * m.cols()));
  Eigen::Map<RowMatrix>(out.data(), m.rows(), m.cols()) = m;
}

void check_finite(std::span<const complex_t> m) {
  for (const auto& z : m) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericError("matrix factorization: non-finite input entry");
    }
  }
}

// Full thin SVD. A row-major rows x cols buffer is the column-major
// cols x rows transpose, so LAPACK's factors of it come back as row-major
// U (rows x k) and Vh (k x cols) without any copying.
struct FullSvd {
  std::vector<double> s;
  std::vector<complex_t> u;
  std::vector<complex_t> vh;
};

FullSvd full_svd(std::size_t rows, std::size_t cols, std::span<const complex_t> m,
                 bool vectors) {
  const std::size_t k = std::min(rows, cols);
  FullSvd out;
  out.s.resize(k);
  std::vector<complex_t> a(m.begin(), m.end());
  const auto lr = static_cast<lapack_int>(rows);
  const auto lc = static_cast<lapack_int>(cols);
  lapack_int info = 0;
  if (vectors) {
    out.u.resize(rows * k);
    out.vh.resize(k * cols);
    info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', lc, lr, a.data(), lc, out.s.data(),
                          out.vh.data(), lc, out.u.data(), static_cast<lapack_int>(k));
  } else {
    info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', lc, lr, a.data(), lc, out.s.data(),
                          nullptr, 1, nullptr, 1);
  }
  if (info == 0) return out;
  if (info < 0) throw NumericError("zgesdd: bad argument");

  // Divide and conquer occasionally fails to converge; Eigen's BDCSVD is the
  // fallback.
  const ConstRowMap am(m.data(), static_cast<Eigen::Index>(rows),
                       static_cast<Eigen::Index>(cols));
  Eigen::BDCSVD<Eigen::MatrixXcd> dec(
      am, vectors ? Eigen::ComputeThinU | Eigen::ComputeThinV : 0);
  if (dec.info() != Eigen::Success) {
    throw NumericError("SVD did not converge");
  }
  const auto& sv = dec.singularValues();
  out.s.assign(sv.data(), sv.data() + sv.size());
  if (vectors) {
    store(dec.matrixU(), out.u);
    store(dec.matrixV().adjoint(), out.vh);
  }
  return out;
}

}  // namespace

MatrixSvd svd(std::size_t rows, std::size_t cols, std::span<const complex_t> m,
              const TruncationPolicy& policy) {
  check_finite(m);
  FullSvd dec = full_svd(rows, cols, m, true);
  const std::vector<double>& s = dec.s;
  auto [rank, discarded] = select_rank(s, policy);
  if (rank == 0) {
    throw NumericError("SVD of an all-zero matrix");
  }

  MatrixSvd out;
  out.rank = rank;
  out.discarded_weight = discarded;
  out.s.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(rank));
  if (policy.renormalize && rank < s.size()) {
    double total = 0.0;
    double kept = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      total += s[i] * s[i];
      if (i < rank) kept += s[i] * s[i];
    }
    const double scale = std::sqrt(total / kept);
    for (auto& v : out.s) v *= scale;
  }
  const std::size_t k = s.size();
  if (rank == k) {
    out.u = std::move(dec.u);
  } else {
    out.u.resize(rows * rank);
    for (std::size_t i = 0; i < rows; ++i) {
      std::copy_n(dec.u.begin() + static_cast<std::ptrdiff_t>(i * k), rank,
                  out.u.begin() + static_cast<std::ptrdiff_t>(i * rank));
    }
  }
  dec.vh.resize(rank * cols);
  out.vh = std::move(dec.vh);
  return out;
}

std::vector<double> singular_values(std::size_t rows, std::size_t cols,
                                    std::span<const complex_t> m) {
  check_finite(m);
  return full_svd(rows, cols, m, false).s;
}

ThinQr qr(std::size_t rows, std::size_t cols, std::span<const complex_t> m) {
  check_finite(m);
  const ConstRowMap a(m.data(), static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
  const auto k = static_cast<Eigen::Index>(std::min(rows, cols));
  Eigen::HouseholderQR<Eigen::MatrixXcd> dec(a);
  Eigen::MatrixXcd q =
      dec.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), k);
  Eigen::MatrixXcd r =
      dec.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  ThinQr out;
  out.k = static_cast<std::size_t>(k);
  store(q, out.q);
  store(r, out.r);
  return out;
}

ThinLq lq(std::size_t rows, std::size_t cols, std::span<const complex_t> m) {
  check_finite(m);
  const ConstRowMap a(m.data(), static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
  const auto k = static_cast<Eigen::Index>(std::min(rows, cols));
  // m^H = Q R  =>  m = R^H Q^H
  Eigen::HouseholderQR<Eigen::MatrixXcd> dec(a.adjoint());
  Eigen::MatrixXcd q =
      dec.householderQ() * Eigen::MatrixXcd::Identity(a.cols(), k);
  Eigen::MatrixXcd r =
      dec.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  ThinLq out;
  out.k = static_cast<std::size_t>(k);
  store(r.adjoint(), out.l);
  store(q.adjoint(), out.q);
  return out;
}

}  // namespace mpsqvm::detail
