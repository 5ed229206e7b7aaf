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

#include "mpsqvm/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace mpsqvm {

namespace {

struct CatalogEntry {
  std::string_view name;
  std::size_t arity;
  bool angle;
};

constexpr std::array<CatalogEntry, 14> kCatalog{{
    {"H", 1, false},    {"X", 1, false},   {"Y", 1, false},
    {"Z", 1, false},    {"S", 1, false},   {"T", 1, false},
    {"Rx", 1, true},    {"Ry", 1, true},   {"Rz", 1, true},
    {"CNOT", 2, false}, {"CX", 2, false},  {"CZ", 2, false},
    {"SWAP", 2, false}, {"Rzz", 2, true},
}};

const CatalogEntry& lookup(std::string_view name) {
  for (const auto& e : kCatalog) {
    if (e.name == name) return e;
  }
  throw UnknownGateError(std::string(name));
}

}  // namespace

std::size_t gate_arity(std::string_view name) { return lookup(name).arity; }

bool gate_takes_angle(std::string_view name) { return lookup(name).angle; }

DenseTensor gate_matrix(const GateSpec& spec) {
  const auto& entry = lookup(spec.name);
  if (entry.angle && !spec.angle) {
    throw std::invalid_argument("gate " + spec.name + " requires an angle");
  }
  if (!entry.angle && spec.angle) {
    throw std::invalid_argument("gate " + spec.name + " takes no angle");
  }
  using namespace std::complex_literals;
  const double t = spec.angle.value_or(0.0);
  if (!std::isfinite(t)) {
    throw std::invalid_argument("gate " + spec.name + ": non-finite angle");
  }
  const double r = std::numbers::sqrt2 / 2.0;
  const std::string_view n = spec.name;

  if (n == "H") return DenseTensor::matrix({{r, r}, {r, -r}});
  if (n == "X") return DenseTensor::matrix({{0.0, 1.0}, {1.0, 0.0}});
  if (n == "Y") return DenseTensor::matrix({{0.0, -1i}, {1i, 0.0}});
  if (n == "Z") return DenseTensor::matrix({{1.0, 0.0}, {0.0, -1.0}});
  if (n == "S") return DenseTensor::matrix({{1.0, 0.0}, {0.0, 1i}});
  if (n == "T") {
    return DenseTensor::matrix(
        {{1.0, 0.0}, {0.0, std::exp(1i * (std::numbers::pi / 4.0))}});
  }
  const double c = std::cos(t / 2.0);
  const double s = std::sin(t / 2.0);
  const complex_t em = std::exp(-1i * (t / 2.0));
  const complex_t ep = std::exp(1i * (t / 2.0));
  if (n == "Rx") return DenseTensor::matrix({{c, -1i * s}, {-1i * s, c}});
  if (n == "Ry") return DenseTensor::matrix({{c, -s}, {s, c}});
  if (n == "Rz") return DenseTensor::matrix({{em, 0.0}, {0.0, ep}});
  if (n == "CNOT" || n == "CX") {
    return DenseTensor::matrix({{1.0, 0.0, 0.0, 0.0},
                                {0.0, 1.0, 0.0, 0.0},
                                {0.0, 0.0, 0.0, 1.0},
                                {0.0, 0.0, 1.0, 0.0}});
  }
  if (n == "CZ") {
    return DenseTensor::matrix({{1.0, 0.0, 0.0, 0.0},
                                {0.0, 1.0, 0.0, 0.0},
                                {0.0, 0.0, 1.0, 0.0},
                                {0.0, 0.0, 0.0, -1.0}});
  }
  if (n == "SWAP") {
    return DenseTensor::matrix({{1.0, 0.0, 0.0, 0.0},
                                {0.0, 0.0, 1.0, 0.0},
                                {0.0, 1.0, 0.0, 0.0},
                                {0.0, 0.0, 0.0, 1.0}});
  }
  // Rzz
  return DenseTensor::matrix({{em, 0.0, 0.0, 0.0},
                              {0.0, ep, 0.0, 0.0},
                              {0.0, 0.0, ep, 0.0},
                              {0.0, 0.0, 0.0, em}});
}

void apply_gate(MpsState& state, const GateOp& op) {
  const DenseTensor m = gate_matrix(op.spec);
  if (m.dim(0) == 2) {
    state.apply_one_qubit(op.site_a, m);
  } else {
    state.apply_two_qubit(op.site_a, op.site_b, m);
  }
}

void apply_circuit(MpsState& state, std::span<const GateOp> circuit) {
  for (const auto& op : circuit) apply_gate(state, op);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HaarSampler::HaarSampler(std::uint64_t seed, std::size_t dimension)
    : rng_(seed), dimension_(dimension) {
  if (dimension < 2) {
    throw std::invalid_argument("HaarSampler: dimension must be >= 2");
  }
}

std::vector<complex_t> HaarSampler::sample() {
  std::vector<complex_t> v(dimension_);
  double sq = 0.0;
  for (auto& z : v) {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    z = complex_t(re, im);
    sq += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& z : v) z *= inv;
  return v;
}

}  // namespace mpsqvm
