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
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpsqvm/mps.hpp"
#include "mpsqvm/tensor.hpp"

namespace mpsqvm {

/// Gate name not present in the catalog.
class UnknownGateError : public std::invalid_argument {
 public:
  explicit UnknownGateError(const std::string& name)
      : std::invalid_argument("unknown gate \"" + name + "\"") {}
};

/// A catalog gate by its exact ASCII name.
///
/// Catalog: H X Y Z S T Rx Ry Rz (one qubit) and CNOT CX CZ SWAP Rzz (two
/// qubits). Rx, Ry, Rz and Rzz take an angle in radians; the rest take none.
///
/// Rotation conventions (global phase matters only for amplitude checks):
///   Rx(t)  = exp(-i t X / 2)
///   Ry(t)  = exp(-i t Y / 2)
///   Rz(t)  = diag(e^{-it/2}, e^{it/2})
///   Rzz(t) = exp(-i t Z(x)Z / 2) = diag(e^{-it/2}, e^{it/2}, e^{it/2}, e^{-it/2})
/// CNOT/CX: the first listed qubit is the control.
struct GateSpec {
  std::string name;
  std::optional<double> angle;
};

/// 1 or 2; throws UnknownGateError.
std::size_t gate_arity(std::string_view name);

/// True for Rx, Ry, Rz, Rzz; throws UnknownGateError.
bool gate_takes_angle(std::string_view name);

/// Matrix in the row = output, column = input convention (2x2 or 4x4).
/// Throws UnknownGateError, or std::invalid_argument when the angle is
/// missing, superfluous, or non-finite.
DenseTensor gate_matrix(const GateSpec& spec);

/// A gate bound to sites (1-based). site_b is ignored for one-qubit gates.
struct GateOp {
  GateSpec spec;
  std::size_t site_a = 0;
  std::size_t site_b = 0;
};

void apply_gate(MpsState& state, const GateOp& op);
void apply_circuit(MpsState& state, std::span<const GateOp> circuit);

/// Deterministic 64-bit seed for sub-stream `stream` of `base` (SplitMix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Haar-random pure states of a fixed dimension.
///
/// Each draw is a vector of i.i.d. standard complex Gaussians (a Ginibre
/// column) divided by its norm; the resulting law is unitarily invariant,
/// hence Haar. Identical seeds reproduce identical streams on one platform.
class HaarSampler {
 public:
  HaarSampler(std::uint64_t seed, std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  std::vector<complex_t> sample();

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::size_t dimension_;
};

inline std::vector<complex_t> sample_haar_state(HaarSampler& sampler) {
  return sampler.sample();
}

}  // namespace mpsqvm
