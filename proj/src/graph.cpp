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

#include "mpsqvm/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace mpsqvm {

std::vector<std::size_t> RegularGraph::degrees() const {
  std::vector<std::size_t> deg(n_nodes, 0);
  for (const auto& e : edges) {
    ++deg.at(e.u);
    ++deg.at(e.v);
  }
  return deg;
}

bool RegularGraph::is_valid() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.u == e.v || e.u >= n_nodes || e.v >= n_nodes) return false;
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      return false;
    }
  }
  const auto deg = degrees();
  return std::all_of(deg.begin(), deg.end(),
                     [&](std::size_t d) { return d == degree; });
}

bool RegularGraph::is_connected() const {
  if (n_nodes == 0) return true;
  std::vector<std::size_t> parent(n_nodes);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  const std::size_t root = find(0);
  for (std::size_t v = 1; v < n_nodes; ++v) {
    if (find(v) != root) return false;
  }
  return true;
}

IsingCost RegularGraph::to_ising_cost() const {
  std::vector<IsingEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({e.u + 1, e.v + 1, e.weight});
  return IsingCost(n_nodes, std::move(out));
}

RegularGraph random_regular_graph(std::size_t n_nodes, std::size_t degree,
                                  std::uint64_t seed) {
  if ((n_nodes * degree) % 2 != 0) {
    throw std::invalid_argument(
        "random_regular_graph: n_nodes * degree must be even (odd degree "
        "sum)");
  }
  if (n_nodes <= degree) {
    throw std::invalid_argument(
        "random_regular_graph: n_nodes must exceed degree");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> stubs(n_nodes * degree);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / degree;

  // Acceptance probability is about exp(-(d^2 - 1) / 4); this cap is never
  // reached for the small degrees used here.
  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool ok = true;
    for (std::size_t k = 0; k < stubs.size() && ok; k += 2) {
      const std::size_t a = std::min(stubs[k], stubs[k + 1]);
      const std::size_t b = std::max(stubs[k], stubs[k + 1]);
      ok = a != b && seen.emplace(a, b).second;
    }
    if (!ok) continue;
    RegularGraph g;
    g.n_nodes = n_nodes;
    g.degree = degree;
    for (const auto& [a, b] : seen) g.edges.push_back({a, b, 1.0});
    return g;
  }
  throw std::runtime_error("random_regular_graph: rejection sampling failed");
}

}  // namespace mpsqvm
