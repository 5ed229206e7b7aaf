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

#include "mpsqvm/mps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "linalg.hpp"

namespace mpsqvm {

double unitarity_error(const DenseTensor& m) {
  if (m.rank() != 2 || m.dim(0) != m.dim(1)) {
    throw std::invalid_argument("gate matrix must be square");
  }
  const std::size_t n = m.dim(0);
  DenseTensor prod({n, n});
  // prod = m * m^H via (m^H)^H * m^H.
  const DenseTensor mh = m.adjoint();
  kernels::gemm_adjoint_left(n, n, n, mh.data(), mh.data(), prod.data());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const complex_t expect = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(prod.data()[i * n + j] - expect));
    }
  }
  return worst;
}

DenseTensor transfer_step(const DenseTensor& env, const DenseTensor& bra_site,
                          const DenseTensor& ket_site, const DenseTensor* op) {
  const std::size_t lb = bra_site.dim(0);
  const std::size_t rb = bra_site.dim(2);
  const std::size_t lk = ket_site.dim(0);
  const std::size_t rk = ket_site.dim(2);
  if (env.dim(0) != lb || env.dim(1) != lk) {
    throw std::invalid_argument("transfer_step: environment shape mismatch");
  }
  // t1[a, s, b'] = sum_a' env[a, a'] ket[a', s, b']
  DenseTensor t1({lb, 2, rk});
  kernels::gemm(lb, 2 * rk, lk, env.data(), ket_site.data(), t1.data());
  if (op != nullptr) {
    const auto o = op->data();
    auto t = t1.data();
    for (std::size_t a = 0; a < lb; ++a) {
      complex_t* row0 = t.data() + (a * 2) * rk;
      complex_t* row1 = row0 + rk;
      for (std::size_t b = 0; b < rk; ++b) {
        const complex_t v0 = row0[b];
        const complex_t v1 = row1[b];
        row0[b] = o[0] * v0 + o[1] * v1;
        row1[b] = o[2] * v0 + o[3] * v1;
      }
    }
  }
  DenseTensor out({rb, rk});
  kernels::gemm_adjoint_left(rb, rk, lb * 2, bra_site.data(), t1.data(),
                             out.data());
  return out;
}

MpsState::MpsState(std::vector<DenseTensor> sites, TruncationPolicy policy,
                   std::optional<std::size_t> center)
    : sites_(std::move(sites)), policy_(policy), center_(center) {}

MpsState MpsState::computational_zero(std::size_t n_qubits,
                                      TruncationPolicy policy) {
  policy.validate();
  if (n_qubits < 1) {
    throw std::invalid_argument("MpsState: n_qubits must be >= 1");
  }
  std::vector<DenseTensor> sites;
  sites.reserve(n_qubits);
  for (std::size_t i = 0; i < n_qubits; ++i) {
    DenseTensor t({1, 2, 1});
    t({0, 0, 0}) = 1.0;
    sites.push_back(std::move(t));
  }
  return MpsState(std::move(sites), policy, 1);
}

MpsState MpsState::from_sites(std::vector<DenseTensor> sites,
                              TruncationPolicy policy) {
  policy.validate();
  if (sites.empty()) {
    throw std::invalid_argument("MpsState: n_qubits must be >= 1");
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& t = sites[i];
    if (t.rank() != 3 || t.dim(1) != 2) {
      throw std::invalid_argument("MpsState: site tensors must be (l, 2, r)");
    }
    if (i == 0 && t.dim(0) != 1) {
      throw std::invalid_argument("MpsState: left boundary bond must be 1");
    }
    if (i + 1 == sites.size() && t.dim(2) != 1) {
      throw std::invalid_argument("MpsState: right boundary bond must be 1");
    }
    if (i > 0 && sites[i - 1].dim(2) != t.dim(0)) {
      throw std::invalid_argument("MpsState: adjacent bond dimensions differ");
    }
  }
  return MpsState(std::move(sites), policy, std::nullopt);
}

MpsState MpsState::from_statevector(std::span<const complex_t> amplitudes,
                                    TruncationPolicy policy) {
  policy.validate();
  const std::size_t len = amplitudes.size();
  if (len < 2 || (len & (len - 1)) != 0) {
    throw std::invalid_argument(
        "from_statevector: length must be a power of 2 (>= 2)");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  double sq = 0.0;
  for (const auto& z : amplitudes) sq += std::norm(z);
  if (std::abs(std::sqrt(sq) - 1.0) > 1e-8) {
    throw std::invalid_argument("from_statevector: input is not normalized");
  }

  std::vector<DenseTensor> sites;
  sites.reserve(n);
  double discarded = 0.0;
  std::vector<complex_t> rest(amplitudes.begin(), amplitudes.end());
  std::size_t left = 1;
  std::size_t rest_cols = len;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t rows = left * 2;
    rest_cols /= 2;
    auto dec = detail::svd(rows, rest_cols, rest, policy);
    discarded += dec.discarded_weight;
    sites.emplace_back(std::vector<std::size_t>{left, 2, dec.rank},
                       std::move(dec.u));
    // rest <- diag(s) * vh, a (rank x rest_cols) matrix.
    rest = std::move(dec.vh);
    for (std::size_t k = 0; k < dec.rank; ++k) {
      for (std::size_t j = 0; j < rest_cols; ++j) {
        rest[k * rest_cols + j] *= dec.s[k];
      }
    }
    left = dec.rank;
  }
  sites.emplace_back(std::vector<std::size_t>{left, 2, 1}, std::move(rest));
  MpsState state(std::move(sites), policy, n);
  state.truncation_weight_ = discarded;
  return state;
}

std::vector<complex_t> MpsState::to_statevector(std::size_t max_qubits) const {
  const std::size_t n = n_qubits();
  if (n > max_qubits) {
    throw std::length_error("to_statevector: " + std::to_string(n) +
                            " qubits exceeds the cap of " +
                            std::to_string(max_qubits));
  }
  // acc is (2^k x bond) after absorbing k sites.
  std::vector<complex_t> acc(1, complex_t{1.0, 0.0});
  std::size_t prefix = 1;
  std::size_t bond = 1;
  for (const auto& t : sites_) {
    const std::size_t right = t.dim(2);
    std::vector<complex_t> next(prefix * 2 * right);
    kernels::gemm(prefix, 2 * right, bond, acc, t.data(), next);
    acc = std::move(next);
    prefix *= 2;
    bond = right;
  }
  return acc;
}

std::size_t MpsState::checked_site(std::size_t site) const {
  if (site < 1 || site > n_qubits()) {
    throw std::out_of_range("site " + std::to_string(site) +
                            " out of range 1.." + std::to_string(n_qubits()));
  }
  return site - 1;
}

const DenseTensor& MpsState::site(std::size_t site) const {
  return sites_[checked_site(site)];
}

std::size_t MpsState::bond_dim(std::size_t bond) const {
  if (bond < 1 || bond >= n_qubits()) {
    throw std::out_of_range("bond " + std::to_string(bond) +
                            " out of range 1.." +
                            std::to_string(n_qubits() - 1));
  }
  return sites_[bond - 1].dim(2);
}

std::vector<std::size_t> MpsState::bond_dims() const {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i + 1 < sites_.size(); ++i) {
    dims.push_back(sites_[i].dim(2));
  }
  return dims;
}

double MpsState::norm() const {
  DenseTensor env = DenseTensor::identity(1);
  for (const auto& t : sites_) env = transfer_step(env, t, t);
  return std::sqrt(std::max(0.0, env.data()[0].real()));
}

void MpsState::move_center_right(std::size_t i) {
  auto& a = sites_[i];
  auto& b = sites_[i + 1];
  const std::size_t l = a.dim(0);
  const std::size_t r = a.dim(2);
  auto dec = detail::qr(l * 2, r, a.data());
  const std::size_t r2 = b.dim(2);
  std::vector<complex_t> merged(dec.k * 2 * r2);
  kernels::gemm(dec.k, 2 * r2, r, dec.r, b.data(), merged);
  a = DenseTensor({l, 2, dec.k}, std::move(dec.q));
  b = DenseTensor({dec.k, 2, r2}, std::move(merged));
}

void MpsState::move_center_left(std::size_t i) {
  auto& a = sites_[i - 1];
  auto& b = sites_[i];
  const std::size_t l = b.dim(0);
  const std::size_t r = b.dim(2);
  auto dec = detail::lq(l, 2 * r, b.data());
  const std::size_t l0 = a.dim(0);
  std::vector<complex_t> merged(l0 * 2 * dec.k);
  kernels::gemm(l0 * 2, dec.k, l, a.data(), dec.l, merged);
  a = DenseTensor({l0, 2, dec.k}, std::move(merged));
  b = DenseTensor({dec.k, 2, r}, std::move(dec.q));
}

void MpsState::canonicalize_from_scratch() {
  for (std::size_t i = 0; i + 1 < sites_.size(); ++i) move_center_right(i);
  center_ = n_qubits();
}

void MpsState::orthogonalize(std::size_t site) {
  const std::size_t target = checked_site(site);
  if (!center_) canonicalize_from_scratch();
  std::size_t c = *center_ - 1;
  while (c < target) move_center_right(c++);
  while (c > target) move_center_left(c--);
  center_ = site;
}

void MpsState::apply_one_qubit(std::size_t site, const DenseTensor& gate) {
  const std::size_t i = checked_site(site);
  if (gate.rank() != 2 || gate.dim(0) != 2 || gate.dim(1) != 2) {
    throw std::invalid_argument("apply_one_qubit: gate must be 2x2");
  }
  if (unitarity_error(gate) > kUnitarityTolerance) {
    throw std::invalid_argument("apply_one_qubit: gate is not unitary");
  }
  auto& t = sites_[i];
  const std::size_t l = t.dim(0);
  const std::size_t r = t.dim(2);
  const auto g = gate.data();
  auto d = t.data();
  for (std::size_t a = 0; a < l; ++a) {
    complex_t* row0 = d.data() + (a * 2) * r;
    complex_t* row1 = row0 + r;
    for (std::size_t b = 0; b < r; ++b) {
      const complex_t v0 = row0[b];
      const complex_t v1 = row1[b];
      row0[b] = g[0] * v0 + g[1] * v1;
      row1[b] = g[2] * v0 + g[3] * v1;
    }
  }
}

void MpsState::two_site_update(std::size_t i, const complex_t* gate,
                               bool center_right) {
  // Canonical form around the pair: center must sit on i or i+1.
  if (!center_ || (*center_ - 1 != i && *center_ - 1 != i + 1)) {
    orthogonalize(i + 1);
  }
  const auto& a = sites_[i];
  const auto& b = sites_[i + 1];
  const std::size_t l = a.dim(0);
  const std::size_t m = a.dim(2);
  const std::size_t r = b.dim(2);

  // theta[x, s1, s2, y] = sum_k a[x, s1, k] b[k, s2, y]
  std::vector<complex_t> theta(l * 4 * r);
  kernels::gemm(l * 2, 2 * r, m, a.data(), b.data(), theta);

  for (std::size_t x = 0; x < l; ++x) {
    complex_t* blk = theta.data() + x * 4 * r;
    for (std::size_t y = 0; y < r; ++y) {
      std::array<complex_t, 4> v{blk[y], blk[r + y], blk[2 * r + y],
                                 blk[3 * r + y]};
      if (gate == nullptr) {
        blk[r + y] = v[2];
        blk[2 * r + y] = v[1];
        continue;
      }
      for (std::size_t o = 0; o < 4; ++o) {
        const complex_t* g = gate + o * 4;
        blk[o * r + y] = g[0] * v[0] + g[1] * v[1] + g[2] * v[2] + g[3] * v[3];
      }
    }
  }

  auto dec = detail::svd(l * 2, 2 * r, theta, policy_);
  truncation_weight_ += dec.discarded_weight;
  const std::size_t k = dec.rank;
  if (center_right) {
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < 2 * r; ++q) dec.vh[p * 2 * r + q] *= dec.s[p];
    }
  } else {
    for (std::size_t p = 0; p < l * 2; ++p) {
      for (std::size_t q = 0; q < k; ++q) dec.u[p * k + q] *= dec.s[q];
    }
  }
  sites_[i] = DenseTensor({l, 2, k}, std::move(dec.u));
  sites_[i + 1] = DenseTensor({k, 2, r}, std::move(dec.vh));
  center_ = center_right ? i + 2 : i + 1;
}

void MpsState::apply_two_qubit(std::size_t site_a, std::size_t site_b,
                               const DenseTensor& gate) {
  std::size_t a = checked_site(site_a);
  std::size_t b = checked_site(site_b);
  if (a == b) {
    throw std::invalid_argument("apply_two_qubit: sites must differ");
  }
  if (gate.rank() != 2 || gate.dim(0) != 4 || gate.dim(1) != 4) {
    throw std::invalid_argument("apply_two_qubit: gate must be 4x4");
  }
  if (unitarity_error(gate) > kUnitarityTolerance) {
    throw std::invalid_argument("apply_two_qubit: gate is not unitary");
  }
  // Order the pair so that a < b, conjugating the gate by SWAP if needed.
  std::array<complex_t, 16> g{};
  const auto src = gate.data();
  if (a < b) {
    std::copy(src.begin(), src.end(), g.begin());
  } else {
    constexpr std::array<std::size_t, 4> swap_basis{0, 2, 1, 3};
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        g[r * 4 + c] = src[swap_basis[r] * 4 + swap_basis[c]];
      }
    }
    std::swap(a, b);
  }

  // Route qubit a rightward next to b, apply, and route back.
  for (std::size_t k = a; k + 1 < b; ++k) two_site_update(k, nullptr, true);
  two_site_update(b - 1, g.data(), b - 1 == a);
  for (std::size_t k = b - 1; k-- > a;) two_site_update(k, nullptr, false);
}

std::vector<double> MpsState::bond_spectrum(std::size_t bond) const {
  if (bond < 1 || bond >= n_qubits()) {
    throw std::out_of_range("bond " + std::to_string(bond) +
                            " out of range 1.." +
                            std::to_string(n_qubits() - 1));
  }
  MpsState tmp = *this;
  tmp.orthogonalize(bond);
  const auto& c = tmp.sites_[bond - 1];
  auto s = detail::singular_values(c.dim(0) * 2, c.dim(2), c.data());
  std::erase_if(s, [&](double v) { return !(v > kNumericalZero * s[0]); });
  return s;
}

std::vector<std::vector<double>> MpsState::all_bond_spectra() const {
  std::vector<std::vector<double>> out;
  if (n_qubits() < 2) return out;
  MpsState tmp = *this;
  tmp.orthogonalize(1);
  TruncationPolicy keep_all;
  keep_all.renormalize = false;
  for (std::size_t i = 0; i + 1 < tmp.sites_.size(); ++i) {
    auto& a = tmp.sites_[i];
    auto& b = tmp.sites_[i + 1];
    const std::size_t l = a.dim(0);
    const std::size_t m = a.dim(2);
    const std::size_t r = b.dim(2);
    auto dec = detail::svd(l * 2, m, a.data(), keep_all);
    out.push_back(dec.s);
    for (std::size_t p = 0; p < dec.rank; ++p) {
      for (std::size_t q = 0; q < m; ++q) dec.vh[p * m + q] *= dec.s[p];
    }
    std::vector<complex_t> merged(dec.rank * 2 * r);
    kernels::gemm(dec.rank, 2 * r, m, dec.vh, b.data(), merged);
    a = DenseTensor({l, 2, dec.rank}, std::move(dec.u));
    b = DenseTensor({dec.rank, 2, r}, std::move(merged));
  }
  return out;
}

}  // namespace mpsqvm
