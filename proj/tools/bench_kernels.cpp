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

// Serial reference kernels against their OpenMP counterparts, plus the
// two-site gate update that dominates circuit simulation.
//
//   OMP_NUM_THREADS=4 ./mpsqvm_bench --benchmark_filter=Gemm

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mpsqvm/gates.hpp"
#include "mpsqvm/kernels.hpp"
#include "mpsqvm/mps.hpp"

namespace {

using mpsqvm::complex_t;
namespace k = mpsqvm::kernels;

std::vector<complex_t> random_buffer(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<complex_t> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

template <bool kParallel>
void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_buffer(n * n, 1);
  const auto b = random_buffer(n * n, 2);
  std::vector<complex_t> c(n * n);
  for (auto _ : state) {
    if constexpr (kParallel) {
      k::gemm(n, n, n, a, b, c);
    } else {
      k::gemm_reference(n, n, n, a, b, c);
    }
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_Gemm<false>)->Name("GemmReference")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_Gemm<true>)->Name("GemmOpenMP")->RangeMultiplier(2)->Range(16, 256);

// Two-site tensor (chi, 2, 2, chi) -> (2, chi, chi, 2), the reshuffle done
// around every gate application.
template <bool kParallel>
void BM_Permute(benchmark::State& state) {
  const auto chi = static_cast<std::size_t>(state.range(0));
  const std::vector<std::size_t> shape = {chi, 2, 2, chi};
  const std::vector<std::size_t> perm = {1, 0, 3, 2};
  const auto in = random_buffer(chi * chi * 4, 3);
  std::vector<complex_t> out(in.size());
  for (auto _ : state) {
    if constexpr (kParallel) {
      k::permute(shape, perm, in, out);
    } else {
      k::permute_reference(shape, perm, in, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(in.size() * sizeof(complex_t)));
}
BENCHMARK(BM_Permute<false>)->Name("PermuteReference")->RangeMultiplier(2)->Range(8, 256);
BENCHMARK(BM_Permute<true>)->Name("PermuteOpenMP")->RangeMultiplier(2)->Range(8, 256);

// Rzz on the middle pair of a 12-qubit random MPS at bond dimension chi.
void BM_TwoSiteUpdate(benchmark::State& state) {
  const auto chi = static_cast<std::size_t>(state.range(0));
  mpsqvm::HaarSampler sampler(7, std::size_t{1} << 12);
  const auto psi = sampler.sample();
  const auto base =
      mpsqvm::MpsState::from_statevector(psi, mpsqvm::TruncationPolicy::with_max_bond(chi));
  const mpsqvm::GateOp op{{"Rzz", 0.3}, 6, 7};
  for (auto _ : state) {
    state.PauseTiming();
    auto s = base;
    state.ResumeTiming();
    mpsqvm::apply_gate(s, op);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_TwoSiteUpdate)->Name("TwoSiteUpdate")->RangeMultiplier(2)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();
