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
#include <cstdint>
#include <vector>

#include "mpsqvm/observables.hpp"

namespace mpsqvm {

struct GraphEdge {
  std::size_t u = 0;  // 0-based vertex ids, u < v
  std::size_t v = 0;
  double weight = 1.0;
};

/// Simple d-regular graph on vertices 0..n_nodes-1. Vertex v maps to MPS
/// site v + 1.
struct RegularGraph {
  std::size_t n_nodes = 0;
  std::size_t degree = 0;
  std::vector<GraphEdge> edges;  // sorted by (u, v)

  bool is_connected() const;
  std::vector<std::size_t> degrees() const;
  /// Degree and simplicity audit: every vertex has `degree` neighbours, no
  /// loops, no multi-edges.
  bool is_valid() const;
  IsingCost to_ising_cost() const;
};

/// Pairing (configuration) model: shuffle n_nodes * degree stubs, pair them
/// consecutively, and reject the whole draw if it contains a loop or a
/// multi-edge. Deterministic per seed.
///
/// Throws std::invalid_argument if n_nodes * degree is odd or n_nodes <=
/// degree.
RegularGraph random_regular_graph(std::size_t n_nodes, std::size_t degree,
                                  std::uint64_t seed);

}  // namespace mpsqvm
