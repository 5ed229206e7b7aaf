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

#include "mpsqvm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace mpsqvm {

namespace {

using namespace std::complex_literals;

const DenseTensor& pauli_matrix(Pauli p) {
  static const DenseTensor x = DenseTensor::matrix({{0.0, 1.0}, {1.0, 0.0}});
  static const DenseTensor y = DenseTensor::matrix({{0.0, -1i}, {1i, 0.0}});
  static const DenseTensor z = DenseTensor::matrix({{1.0, 0.0}, {0.0, -1.0}});
  switch (p) {
    case Pauli::X:
      return x;
    case Pauli::Y:
      return y;
    case Pauli::Z:
      break;
  }
  return z;
}

double real_checked(complex_t value, double scale) {
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, scale)) {
    throw NumericError("expectation: imaginary residue " +
                       std::to_string(value.imag()));
  }
  return value.real();
}

// Right environment step: env (right_bra x right_ket) -> (left_bra x
// left_ket) through one site.
DenseTensor right_step(const DenseTensor& env, const DenseTensor& site) {
  const std::size_t l = site.dim(0);
  const std::size_t r = site.dim(2);
  // x[(a', s), b] = sum_b' site[a', s, b'] env[b, b']
  const DenseTensor env_t = env.permuted({1, 0});
  DenseTensor x({l * 2, r});
  kernels::gemm(l * 2, r, r, site.data(), env_t.data(), x.data());
  // out[a, a'] = sum_{s, b} conj(site[a, s, b]) x[a', s, b]
  const DenseTensor site_h = site.reshaped({l, 2 * r}).adjoint();  // (2r x l)
  DenseTensor y({l, l});  // y[a', a]
  kernels::gemm(l, l, 2 * r, x.data(), site_h.data(), y.data());
  return y.permuted({1, 0});
}

complex_t close(const DenseTensor& left, const DenseTensor& right) {
  complex_t acc = 0.0;
  const auto a = left.data();
  const auto b = right.data();
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

}  // namespace

IsingCost::IsingCost(std::size_t n_qubits, std::vector<IsingEdge> edges)
    : n_qubits_(n_qubits), edges_(std::move(edges)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i == e.j) {
      throw std::invalid_argument("IsingCost: self-loop on site " +
                                  std::to_string(e.i));
    }
    if (e.i < 1 || e.j > n_qubits_) {
      throw std::invalid_argument("IsingCost: edge site out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("IsingCost: weights must be positive");
    }
    if (!seen.emplace(e.i, e.j).second) {
      throw std::invalid_argument("IsingCost: duplicate edge");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
}

double IsingCost::total_weight() const {
  double w = 0.0;
  for (const auto& e : edges_) w += e.weight;
  return w;
}

double IsingCost::cut_weight(std::uint64_t basis) const {
  auto bit = [&](std::size_t site) {
    return (basis >> (n_qubits_ - site)) & 1U;
  };
  double w = 0.0;
  for (const auto& e : edges_) {
    if (bit(e.i) != bit(e.j)) w += e.weight;
  }
  return w;
}

double expectation(const MpsState& state, const PauliTerm& term) {
  const std::size_t n = state.n_qubits();
  if (term.factors.empty()) {
    const double nn = state.norm();
    return term.coefficient * nn * nn;
  }
  const std::size_t first = term.factors.begin()->first;
  const std::size_t last = term.factors.rbegin()->first;
  if (first < 1 || last > n) {
    throw std::out_of_range("expectation: Pauli factor site out of range");
  }
  // Left of the center every site is a left isometry and right of it a right
  // isometry, so contraction can start and stop at identity environments.
  std::size_t lo = 1;
  std::size_t hi = n;
  if (const auto c = state.ortho_center()) {
    lo = std::min(first, *c);
    hi = std::max(last, *c);
  }
  DenseTensor env = DenseTensor::identity(state.site(lo).dim(0));
  for (std::size_t k = lo; k <= hi; ++k) {
    const auto it = term.factors.find(k);
    const DenseTensor* op =
        it == term.factors.end() ? nullptr : &pauli_matrix(it->second);
    env = transfer_step(env, state.site(k), state.site(k), op);
  }
  complex_t value = 0.0;
  const std::size_t d = env.dim(0);
  for (std::size_t a = 0; a < d; ++a) value += env.data()[a * d + a];
  return term.coefficient *
         real_checked(value, std::abs(term.coefficient));
}

double expectation(const MpsState& state, std::span<const PauliTerm> terms) {
  double total = 0.0;
  for (const auto& t : terms) total += expectation(state, t);
  return total;
}

double zz_expectation(const MpsState& state, std::size_t site_a,
                      std::size_t site_b) {
  if (site_a == site_b) {
    throw std::invalid_argument("zz_expectation: sites must differ");
  }
  PauliTerm term;
  term.factors[site_a] = Pauli::Z;
  term.factors[site_b] = Pauli::Z;
  return expectation(state, term);
}

double cost_expectation(const MpsState& state, const IsingCost& cost) {
  const std::size_t n = state.n_qubits();
  if (cost.n_qubits() != n) {
    throw std::invalid_argument("cost_expectation: cost has " +
                                std::to_string(cost.n_qubits()) +
                                " qubits, state has " + std::to_string(n));
  }
  if (cost.edges().empty()) return 0.0;
  const auto center = state.ortho_center();
  const DenseTensor& z = pauli_matrix(Pauli::Z);

  // left[k]: environment entering site k; right[k]: environment leaving k.
  std::vector<DenseTensor> left(n + 2);
  std::vector<DenseTensor> right(n + 2);
  left[1] = DenseTensor::identity(1);
  for (std::size_t k = 2; k <= n; ++k) {
    left[k] = center && k <= *center
                  ? DenseTensor::identity(state.site(k).dim(0))
                  : transfer_step(left[k - 1], state.site(k - 1),
                                  state.site(k - 1));
  }
  right[n] = DenseTensor::identity(1);
  for (std::size_t k = n - 1; k >= 1; --k) {
    right[k] = center && k >= *center
                   ? DenseTensor::identity(state.site(k).dim(2))
                   : right_step(right[k + 1], state.site(k + 1));
  }

  double total = 0.0;
  const auto& edges = cost.edges();
  std::size_t e = 0;
  while (e < edges.size()) {
    const std::size_t i = edges[e].i;
    std::size_t group_end = e;
    while (group_end < edges.size() && edges[group_end].i == i) ++group_end;
    const std::size_t j_max = edges[group_end - 1].j;

    DenseTensor env = transfer_step(left[i], state.site(i), state.site(i), &z);
    std::size_t next = e;
    for (std::size_t k = i + 1; k <= j_max; ++k) {
      if (next < group_end && edges[next].j == k) {
        const DenseTensor zz =
            transfer_step(env, state.site(k), state.site(k), &z);
        const double corr = real_checked(close(zz, right[k]), 1.0);
        total += 0.5 * edges[next].weight * (1.0 - corr);
        ++next;
      }
      if (k < j_max) {
        env = transfer_step(env, state.site(k), state.site(k));
      }
    }
    e = group_end;
  }
  return total;
}

}  // namespace mpsqvm
