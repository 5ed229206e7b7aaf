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

// Acceptance gate. Prints one "PASS <id>" or "FAIL <id>" line per
// criterion, preceded by indented detail lines. Exit status is 0 only if
// every selected criterion passes.
//
//   mpsqvm_acceptance [--only id[,id...]] [--list]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpsqvm/entanglement.hpp"
#include "mpsqvm/gates.hpp"
#include "mpsqvm/observables.hpp"
#include "mpsqvm/qaoa.hpp"
#include "support/bridge.hpp"
#include "support/dense_oracle.hpp"

namespace {

using namespace mpsqvm;

// Pinned tolerances.
constexpr double kPageStderrFactor = 5.0;
constexpr double kPageFloor = 1e-3;
constexpr double kPageRuntimeSec = 60.0;
constexpr double kConvergenceStderr = 0.002;
constexpr double kExactFidelityTol = 0.01;
constexpr double kTrendSigmas = 2.0;
constexpr double kBandLow = 0.3;
constexpr double kBandHigh = 0.9;
constexpr double kBandOracleTol = 1e-9;
constexpr double kAmplitudeTol = 1e-10;
constexpr double kZzTol = 1e-10;
constexpr double kK4EnergyTol = 1e-6;
// The two paths agree to ~1e-14 per evaluation but their optimizer
// trajectories can split on near-ties, so each run must resolve the optimum
// well below kK4EnergyTol for the comparison to mean anything.
constexpr double kK4StopTol = 1e-7;
constexpr double kExactChiEnergyTol = 1e-8;
constexpr double kBinWidth = 0.01;
constexpr double kCollapseRegion = 0.1;
constexpr double kEntropySpread = 0.05;
constexpr double kRatioNearOne = 0.9;
constexpr double kRatioSpread = 0.1;
constexpr double kScalingRuntimeSec = 30.0 * 60.0;
constexpr double kInvariantTol = 1e-9;
constexpr double kNormTol = 1e-10;
constexpr int kMinInvariantCases = 1000;

constexpr std::uint64_t kSeed = 20260415;

void detail(const char* fmt, auto... args) {
  std::printf("  ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

bool page_curve() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = page_experiment(12, 64, 30, kSeed);
  const double dt = seconds_since(t0);
  bool ok = true;
  double worst = 0.0;
  for (std::size_t b = 1; b < 12; ++b) {
    const auto& s = r.per_bond[b - 1];
    const double page = page_entropy_for_cut(static_cast<unsigned>(b), 12);
    const double tol = std::max(kPageStderrFactor * s.standard_error, kPageFloor);
    const double err = std::abs(s.mean - page);
    worst = std::max(worst, err / tol);
    if (err > tol) {
      ok = false;
      detail("bond %zu: |%.6f - %.6f| = %.2e > %.2e", b, s.mean, page, err, tol);
    }
  }
  detail("worst |mean - page| / tol = %.3f over 11 bonds", worst);
  detail("runtime %.2f s (target < %.0f s)", dt, kPageRuntimeSec);
  return ok && dt < kPageRuntimeSec;
}

bool convergence() {
  const auto r = page_experiment(12, 64, 10, kSeed + 1);
  const double se = r.per_bond[5].standard_error;
  detail("midpoint stderr %.5f (limit %.3f), mean %.5f", se, kConvergenceStderr,
         r.per_bond[5].mean);
  return se <= kConvergenceStderr;
}

bool exact_fidelity() {
  bool ok = true;
  for (std::size_t n : {8, 10, 12}) {
    const std::size_t chi = std::size_t{1} << (n / 2);
    const auto r = page_experiment(n, chi, 10, kSeed + n);
    const bool pass = std::abs(r.fidelity.f_sim - 1.0) <= kExactFidelityTol;
    detail("N=%zu chi=%zu F=%.5f +- %.5f %s", n, chi, r.fidelity.f_sim, r.fidelity.f_stderr,
           pass ? "ok" : "out of 1 +- 0.01");
    ok = ok && pass;
  }
  return ok;
}

bool decreasing(const std::vector<FidelityRecord>& seq, const char* label) {
  bool ok = true;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const auto& a = seq[i];
    const auto& b = seq[i + 1];
    const double sigma = std::hypot(a.f_stderr, b.f_stderr);
    const double gap = a.f_sim - b.f_sim;
    const bool pass = gap > kTrendSigmas * sigma;
    detail("%s: F(N=%zu,chi=%zu)=%.4f -> F(N=%zu,chi=%zu)=%.4f, gap %.4f vs 2sigma %.4f %s",
           label, a.n_qubits, a.chi, a.f_sim, b.n_qubits, b.chi, b.f_sim, gap,
           kTrendSigmas * sigma, pass ? "ok" : "NOT beyond 2sigma");
    ok = ok && pass;
  }
  return ok;
}

bool truncation_trend() {
  constexpr std::size_t kSamples = 30;
  std::map<std::pair<std::size_t, std::size_t>, FidelityRecord> cache;
  auto fid = [&](std::size_t n, std::size_t chi) {
    auto key = std::make_pair(n, chi);
    if (!cache.count(key)) cache[key] = page_experiment(n, chi, kSamples, kSeed + 100 + n).fidelity;
    return cache[key];
  };

  std::vector<FidelityRecord> by_chi;
  for (std::size_t chi : {64, 32, 16, 8}) by_chi.push_back(fid(12, chi));
  const bool chi_trend = decreasing(by_chi, "chi trend");

  std::vector<FidelityRecord> by_n;
  for (std::size_t n : {8, 10, 12}) by_n.push_back(fid(n, 16));
  const bool n_trend = decreasing(by_n, "N trend");

  bool band = true;
  bool oracle_ok = true;
  for (std::size_t n : {8, 10, 12}) {
    const std::size_t chi = std::size_t{1} << (n / 2 - 1);
    const auto f = fid(n, chi);
    const bool in_band = f.f_sim >= kBandLow && f.f_sim <= kBandHigh;
    band = band && in_band;

    // Same Haar vectors, truncated directly in their Schmidt basis.
    std::vector<double> s;
    for (std::uint64_t m = 0; m < kSamples; ++m) {
      HaarSampler sampler(derive_seed(kSeed + 100 + n, m), std::size_t{1} << n);
      const auto v = sampler.sample();
      s.push_back(oracle::truncated_cut_entropy(oracle::Vec(v.begin(), v.end()), n, n / 2, chi));
    }
    const double f_oracle = summarize(s).mean / oracle::page_reference(n / 2, n / 2);
    const bool agree = std::abs(f_oracle - f.f_sim) <= kBandOracleTol;
    oracle_ok = oracle_ok && agree;
    detail("band: N=%zu chi=%zu F=%.4f +- %.4f %s [%.1f, %.1f]; oracle F=%.4f %s", n, chi,
           f.f_sim, f.f_stderr, in_band ? "in" : "OUTSIDE", kBandLow, kBandHigh, f_oracle,
           agree ? "agrees" : "DISAGREES");
  }
  detail("chi trend %s, N trend %s, band %s, oracle %s", chi_trend ? "ok" : "fail",
         n_trend ? "ok" : "fail", band ? "ok" : "fail", oracle_ok ? "ok" : "fail");
  return chi_trend && n_trend && band && oracle_ok;
}

bool oracle_equivalence() {
  std::mt19937_64 rng(kSeed + 2);
  double worst_amp = 0.0;
  double worst_zz = 0.0;
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 2 + static_cast<std::size_t>(c) % 9;
    const std::size_t gates = 1 + rng() % 40;
    const auto ops = oracle::random_circuit(n, gates, rng);
    const std::size_t chi = std::size_t{1} << ((n + 1) / 2);
    auto s = MpsState::computational_zero(n, TruncationPolicy::with_max_bond(chi));
    apply_circuit(s, bridge::to_circuit(ops));
    auto v = oracle::zero_state(n);
    for (const auto& op : ops) oracle::apply(v, n, op);
    const auto a = s.to_statevector();
    worst_amp = std::max(worst_amp, oracle::max_abs_diff(oracle::Vec(a.begin(), a.end()), v));
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        worst_zz = std::max(worst_zz, std::abs(zz_expectation(s, i, j) - oracle::zz(v, n, i, j)));
      }
    }
  }
  detail("200 circuits, N 2..10: max amplitude error %.2e, max ZZ error %.2e", worst_amp,
         worst_zz);
  return worst_amp <= kAmplitudeTol && worst_zz <= kZzTol;
}

bool k4_exact() {
  const auto g = random_regular_graph(4, 3, kSeed);
  const auto edges = bridge::to_edges(g);
  const auto policy = TruncationPolicy::with_max_bond(4);
  OptimizerConfig config;
  config.stop_tol = kK4StopTol;
  double worst = 0.0;
  double best_mps = 0.0;
  double best_dense = 0.0;
  for (std::size_t r = 0; r < 10; ++r) {
    const auto init = ensemble_init_params(kSeed, r, 2).to_vector();
    const auto mps = minimize(
        [&](std::span<const double> x) {
          return qaoa_cost(g, QaoaParams::from_vector(x), policy).energy;
        },
        init, config);
    const auto dense = minimize(
        [&](std::span<const double> x) {
          const auto p = QaoaParams::from_vector(x);
          return oracle::qaoa_energy(4, edges, p.betas, p.gammas);
        },
        init, config);
    worst = std::max(worst, std::abs(mps.best_value - dense.best_value));
    best_mps = std::min(best_mps, mps.best_value);
    best_dense = std::min(best_dense, dense.best_value);
  }
  detail("10 restarts: max |E_mps - E_dense| = %.2e; best %.8f vs %.8f", worst, best_mps,
         best_dense);
  return worst <= kK4EnergyTol;
}

bool bond_consistency() {
  bool ok = true;
  for (std::size_t p = 1; p <= 4; ++p) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto e32 = run_ensemble(10, p, 32, kSeed);
    const auto e64 = run_ensemble(10, p, 64, kSeed);
    const auto e4 = run_ensemble(10, p, 4, kSeed);
    const double diff = std::abs(e32.energy.mean - e64.energy.mean);
    const double gap = e4.energy.mean - e32.energy.mean;
    const double sigma = std::hypot(e4.energy.standard_error, e32.energy.standard_error);
    const bool same = diff <= kExactChiEnergyTol;
    const bool worse = gap > sigma;
    detail("p=%zu: E32=%.8f E64=%.8f |diff|=%.1e %s; E4=%.6f gap %.4f vs 1sigma %.4f %s (%.0f s)",
           p, e32.energy.mean, e64.energy.mean, diff, same ? "ok" : "MISMATCH", e4.energy.mean,
           gap, sigma, worse ? "ok" : "NOT worse", seconds_since(t0));
    ok = ok && same && worse;
  }
  return ok;
}

bool scaling_collapse() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::size_t> ns = {8, 10, 12};
  const std::vector<std::size_t> chis = {2, 4, 8, 16, 32};
  const auto recs = scaling_sweep(ns, chis, kSeed);
  const double dt = seconds_since(t0);
  for (const auto& r : recs) {
    detail("N=%zu chi=%zu lnchi/N=%.4f S/N=%.4f ratio=%.4f", r.n_qubits, r.chi, r.lnchi_over_n,
           r.s_over_n, r.ratio);
  }

  // Group by bin; a bin counts only if it holds more than one N.
  auto spreads = [&](auto keep, auto value, double limit, const char* label) {
    std::map<long, std::map<std::size_t, double>> bins;
    for (const auto& r : recs) {
      if (keep(r)) bins[std::lround(std::floor(r.lnchi_over_n / kBinWidth))][r.n_qubits] = value(r);
    }
    int compared = 0;
    bool ok = true;
    for (const auto& [bin, by_n] : bins) {
      if (by_n.size() < 2) continue;
      double lo = 1e300, hi = -1e300;
      for (const auto& [n, v] : by_n) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      ++compared;
      ok = ok && hi - lo <= limit;
      detail("%s bin [%.2f, %.2f): %zu N values, spread %.4f (limit %.2f)", label,
             bin * kBinWidth, (bin + 1) * kBinWidth, by_n.size(), hi - lo, limit);
    }
    detail("%s: %d bins with more than one N%s", label, compared,
           compared == 0 ? " (no comparison possible)" : "");
    return ok;
  };

  const bool entropy_ok = spreads(
      [](const ScalingRecord& r) { return r.lnchi_over_n <= kCollapseRegion; },
      [](const ScalingRecord& r) { return r.s_over_n; }, kEntropySpread, "S/N");
  const bool ratio_ok = spreads(
      [](const ScalingRecord& r) { return r.ratio >= kRatioNearOne; },
      [](const ScalingRecord& r) { return r.ratio; }, kRatioSpread, "ratio");

  // Not gating: S/N spread over every record in the region, ignoring bins.
  double lo = 1e300, hi = -1e300;
  for (const auto& r : recs) {
    if (r.lnchi_over_n > kCollapseRegion) continue;
    lo = std::min(lo, r.s_over_n);
    hi = std::max(hi, r.s_over_n);
  }
  detail("S/N spread over all records with lnchi/N <= 0.1: %.4f", hi - lo);
  detail("runtime %.0f s (target < %.0f s)", dt, kScalingRuntimeSec);
  return entropy_ok && ratio_ok && dt < kScalingRuntimeSec;
}

bool entropy_invariants() {
  std::mt19937_64 rng(kSeed + 3);
  int cases = 0;
  int violations = 0;
  auto check = [&](const MpsState& s, std::size_t chi) {
    const std::size_t n = s.n_qubits();
    if (std::abs(s.norm() - 1.0) > kNormTol) ++violations;
    const auto profile = entropy_profile(s);
    for (std::size_t b = 1; b < n; ++b) {
      const double e = profile[b - 1];
      auto moved = s;
      moved.orthogonalize(1 + rng() % n);
      const bool ok = e <= std::log(static_cast<double>(chi)) + kInvariantTol &&
                      e <= static_cast<double>(std::min(b, n - b)) * std::numbers::ln2 +
                               kInvariantTol &&
                      std::abs(entropy_at_bond(moved, b) - e) <= kInvariantTol &&
                      std::abs(moved.norm() - 1.0) <= kNormTol;
      if (!ok) ++violations;
      ++cases;
    }
  };
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t) % 9;
    const std::size_t chi = 1 + rng() % 8;
    auto s = MpsState::computational_zero(n, TruncationPolicy::with_max_bond(chi));
    apply_circuit(s, bridge::to_circuit(oracle::random_circuit(n, 30, rng)));
    check(s, chi);
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t) % 9;
    const std::size_t chi = 1 + rng() % 16;
    HaarSampler sampler(derive_seed(kSeed + 4, static_cast<std::uint64_t>(t)), std::size_t{1} << n);
    check(MpsState::from_statevector(sampler.sample(), TruncationPolicy::with_max_bond(chi)), chi);
  }
  detail("%d cases (minimum %d), %d violations", cases, kMinInvariantCases, violations);
  return cases >= kMinInvariantCases && violations == 0;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"page_curve", "Page curve, N=12 chi=64 M=30", page_curve},
      {"convergence", "midpoint stderr, N=12 chi=64 M=10", convergence},
      {"exact_fidelity", "fidelity 1 at chi=2^(N/2)", exact_fidelity},
      {"truncation_trend", "fidelity trends and band", truncation_trend},
      {"oracle_equivalence", "200 circuits vs dense statevector", oracle_equivalence},
      {"k4_exact", "K4 p=2 chi=4, MPS vs dense optimizer", k4_exact},
      {"bond_consistency", "N=10 p=1..4 chi 32/64/4", bond_consistency},
      {"scaling_collapse", "scaling collapse N 8..12 chi 2..32", scaling_collapse},
      {"entropy_invariants", "entropy invariants property suite", entropy_invariants},
  };

  CLI::App app{"mpsqvm acceptance criteria"};
  std::vector<std::string> only;
  bool list = false;
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_flag("--list", list, "List criterion ids");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : all) std::printf("%-20s %s\n", c.id, c.title);
    return 0;
  }
  const std::set<std::string> chosen(only.begin(), only.end());
  for (const auto& id : chosen) {
    bool known = false;
    for (const auto& c : all) known = known || id == c.id;
    if (!known) {
      std::fprintf(stderr, "unknown criterion '%s'\n", id.c_str());
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : all) {
    if (!chosen.empty() && !chosen.count(c.id)) continue;
    std::printf("%s: %s\n", c.id, c.title);
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      detail("exception: %s", e.what());
    }
    std::printf("%s %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, seconds_since(t0));
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
