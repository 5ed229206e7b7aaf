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

// Dense statevector reference used only by tests. It shares no code with the
// library: gate matrices, bit conventions and entropies are written out
// independently here. Site 1 is the most significant bit.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;
using Mat2 = std::array<cplx, 4>;   // row-major
using Mat4 = std::array<cplx, 16>;  // row-major, first site = high bit

Vec zero_state(std::size_t n);

void apply_1q(Vec& psi, std::size_t n, std::size_t site, const Mat2& g);
/// g acts on |s_a s_b>, s_a the high bit of the 4-dim index.
void apply_2q(Vec& psi, std::size_t n, std::size_t a, std::size_t b,
              const Mat4& g);

Mat2 gate1(const std::string& name, double angle = 0.0);
Mat4 gate2(const std::string& name, double angle = 0.0);

/// Haar-random 4x4 unitary (QR of a Ginibre matrix with phase fix).
Mat4 random_unitary4(std::mt19937_64& rng);
Mat2 random_unitary2(std::mt19937_64& rng);

/// Paulis by char 'X' 'Y' 'Z' keyed by 1-based site.
double pauli_expectation(const Vec& psi, std::size_t n,
                         const std::map<std::size_t, char>& factors);

double zz(const Vec& psi, std::size_t n, std::size_t a, std::size_t b);

struct Edge {
  std::size_t u, v;  // 0-based
  double w;
};

/// Expected cut weight from measurement probabilities.
double expected_cut(const Vec& psi, std::size_t n,
                    const std::vector<Edge>& edges);

/// Entropy (nats) of the first n_a qubits via an explicit reduced density
/// matrix and its eigenvalues.
double entropy_rdm(const Vec& psi, std::size_t n, std::size_t n_a);

/// Schmidt coefficients across the cut after n_a qubits (dense SVD).
std::vector<double> schmidt(const Vec& psi, std::size_t n, std::size_t n_a);

/// Entropy of the top-chi Schmidt values at the cut, renormalized.
double truncated_cut_entropy(const Vec& psi, std::size_t n, std::size_t n_a,
                             std::size_t chi);

/// Page value by direct long-double summation (largest term first).
double page_reference(unsigned n_a, unsigned n_b);

/// QAOA state: H^n, then per layer exp(-i gamma w (1 - Z Z) / 2) per edge as
/// a diagonal phase and exp(-i beta X) per qubit. Vertex v is site v + 1.
Vec qaoa_state(std::size_t n, const std::vector<Edge>& edges,
               const std::vector<double>& betas,
               const std::vector<double>& gammas);

/// -(expected cut) of the QAOA state.
double qaoa_energy(std::size_t n, const std::vector<Edge>& edges,
                   const std::vector<double>& betas,
                   const std::vector<double>& gammas);

/// A named gate on sites, mirroring the library's catalog names.
struct Op {
  std::string name;
  std::optional<double> angle;
  std::size_t a = 0;
  std::size_t b = 0;  // 0 for one-qubit gates
};

/// Random catalog circuit on n qubits (any pairs, adjacent or not).
std::vector<Op> random_circuit(std::size_t n, std::size_t n_gates,
                               std::mt19937_64& rng);

void apply(Vec& psi, std::size_t n, const Op& op);

double max_abs_diff(const Vec& a, const Vec& b);

/// Complex Gaussian vector, normalized.
Vec random_state(std::size_t n, std::mt19937_64& rng);

}  // namespace oracle
