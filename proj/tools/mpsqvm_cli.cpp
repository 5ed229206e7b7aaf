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

// mpsqvm experiment runner.
//
//   mpsqvm page-curve     --qubits N --bond-dim CHI --samples M
//   mpsqvm fidelity-sweep --qubits-list N... --bond-dims CHI... --samples M
//   mpsqvm qaoa           --qubits N --depth-max P --bond-dims CHI... --graphs G
//   mpsqvm scaling        --qubits-list N... --bond-dims CHI...
//
// Exit status: 0 success, 2 usage error, 1 runtime failure.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpsqvm/entanglement.hpp"
#include "mpsqvm/qaoa.hpp"
#include "report.hpp"

#ifndef MPSQVM_VERSION
#define MPSQVM_VERSION "unknown"
#endif

namespace mpsqvm::cli {
namespace {

constexpr std::size_t kPageCap = 14;
constexpr std::size_t kQaoaCap = 16;
// Hard limits that still apply with --unsafe.
constexpr std::size_t kPageUnsafeCap = kDefaultStatevectorCap;
constexpr std::size_t kQaoaUnsafeCap = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string format = "csv";
  int threads = 0;
  bool unsafe = false;
  double cutoff = 0.0;
  bool plot = false;
  bool timestamp = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master RNG seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output path, '-' for stdout")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--unsafe", c.unsafe, "Lift the default qubit caps");
  sub->add_option("--cutoff", c.cutoff, "Relative singular-value cutoff in [0, 1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_flag("--plot", c.plot, "Also write a matplotlib script next to --out");
  sub->add_flag("--timestamp", c.timestamp, "Record the wall-clock time in one metadata line");
}

void require_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw UsageError("even qubit count required (got " + std::to_string(n) + ")");
  }
}

void require_cap(std::size_t n, std::size_t cap, bool unsafe, std::size_t hard_cap,
                 const char* what) {
  if (n > hard_cap) {
    throw UsageError(std::string(what) + ": N = " + std::to_string(n) +
                     " exceeds the hard limit " + std::to_string(hard_cap));
  }
  if (n > cap && !unsafe) {
    throw UsageError(std::string(what) + ": N = " + std::to_string(n) +
                     " exceeds the default cap " + std::to_string(cap) +
                     "; pass --unsafe to override");
  }
}

void require_nonempty(const std::vector<std::size_t>& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  for (auto x : v) {
    if (x == 0) throw UsageError(std::string(flag) + " values must be positive");
  }
}

nlohmann::ordered_json common_config(const Common& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["cutoff"] = c.cutoff;
  j["threads"] = c.threads;
  j["unsafe"] = c.unsafe;
  j["format"] = c.format;
  j["version"] = MPSQVM_VERSION;
  return j;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(Report& report, const Common& c) {
  const Format format = c.format == "json" ? Format::kJson : Format::kCsv;
  if (c.timestamp) report.timestamp = utc_now();
  if (c.out == "-") {
    write_report(std::cout, report, format);
    std::cout.flush();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.out + " for writing");
    write_report(f, report, format);
    if (!f.flush()) throw std::runtime_error("write to " + c.out + " failed");
  }
  if (c.plot) {
    const std::string path = c.out + ".plot.py";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << plot_script(report, c.out, format);
    std::cerr << "plot script: " << path << '\n';
  }
}

void warn(Report& report, const std::string& msg) {
  std::cerr << "warning: " << msg << '\n';
  report.summary["warning"] = msg;
}

// --- page-curve ----------------------------------------------------------

struct PageArgs {
  std::size_t qubits = 0;
  std::size_t bond_dim = 0;
  std::size_t samples = 30;
};

void run_page_curve(const PageArgs& a, const Common& c) {
  require_even(a.qubits);
  require_cap(a.qubits, kPageCap, c.unsafe, kPageUnsafeCap, "page-curve");
  const std::size_t n = a.qubits;

  Report r;
  r.command = "page-curve";
  r.config["qubits"] = n;
  r.config["bond_dim"] = a.bond_dim;
  r.config["samples"] = a.samples;
  r.config.update(common_config(c));
  if (a.samples == 1) warn(r, "--samples 1: standard errors are reported as 0");

  const auto res = page_experiment(n, a.bond_dim, a.samples, c.seed, c.cutoff,
                                   c.unsafe ? kPageUnsafeCap : kPageCap);
  r.summary["N"] = n;
  r.summary["chi"] = a.bond_dim;
  r.summary["M"] = a.samples;
  r.summary["seed"] = c.seed;
  r.summary["fidelity"] = res.fidelity.f_sim;
  r.summary["fidelity_stderr"] = res.fidelity.f_stderr;
  r.summary["mean_truncation_weight"] = res.mean_truncation_weight;

  r.table.columns = {"bond_index", "n_a", "mean_entropy_nats", "stderr",
                     "page_entropy_nats", "abs_error"};
  for (std::size_t b = 1; b < n; ++b) {
    const auto& s = res.per_bond[b - 1];
    const double page = page_entropy_for_cut(static_cast<unsigned>(b), static_cast<unsigned>(n));
    r.table.add({static_cast<std::int64_t>(b), static_cast<std::int64_t>(b), s.mean,
                 s.standard_error, page, std::abs(s.mean - page)});
  }
  emit(r, c);
}

// --- fidelity-sweep ------------------------------------------------------

struct SweepArgs {
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> bond_dims;
  std::size_t samples = 30;
};

void run_fidelity_sweep(const SweepArgs& a, const Common& c) {
  require_nonempty(a.qubits, "--qubits-list");
  require_nonempty(a.bond_dims, "--bond-dims");
  for (auto n : a.qubits) {
    require_even(n);
    require_cap(n, kPageCap, c.unsafe, kPageUnsafeCap, "fidelity-sweep");
  }

  Report r;
  r.command = "fidelity-sweep";
  r.config["qubits_list"] = a.qubits;
  r.config["bond_dims"] = a.bond_dims;
  r.config["samples"] = a.samples;
  r.config.update(common_config(c));
  if (a.samples == 1) warn(r, "--samples 1: standard errors are reported as 0");
  r.summary["seed"] = c.seed;
  r.summary["normalized_entropy"] = "midpoint entropy / (N ln 2)";

  r.table.columns = {"N", "chi", "normalized_entropy", "fidelity", "fidelity_stderr"};
  for (auto n : a.qubits) {
    for (auto chi : a.bond_dims) {
      const auto res = page_experiment(n, chi, a.samples, c.seed, c.cutoff,
                                       c.unsafe ? kPageUnsafeCap : kPageCap);
      const double s_mid = res.per_bond[n / 2 - 1].mean;
      r.table.add({static_cast<std::int64_t>(n), static_cast<std::int64_t>(chi),
                   s_mid / (static_cast<double>(n) * std::numbers::ln2), res.fidelity.f_sim,
                   res.fidelity.f_stderr});
    }
  }
  emit(r, c);
}

// --- qaoa ----------------------------------------------------------------

struct QaoaArgs {
  std::size_t qubits = 0;
  std::size_t depth_max = 0;
  std::vector<std::size_t> bond_dims;
  std::size_t graphs = 25;
  std::size_t max_evals = 1000;
};

EnsembleOptions ensemble_options(std::size_t graphs, std::size_t max_evals, const Common& c) {
  EnsembleOptions o;
  o.n_graphs = graphs;
  o.cutoff = c.cutoff;
  o.optimizer.max_evals = max_evals;
  return o;
}

void add_optimizer_config(nlohmann::ordered_json& j, const EnsembleOptions& o) {
  j["optimizer"] = {{"max_evals", o.optimizer.max_evals},
                    {"initial_step", o.optimizer.initial_step},
                    {"stop_tol", o.optimizer.stop_tol}};
}

void run_qaoa(const QaoaArgs& a, const Common& c) {
  if (a.depth_max < 1) throw UsageError("--depth-max must be >= 1");
  require_nonempty(a.bond_dims, "--bond-dims");
  require_even(a.qubits);
  if (a.qubits < 4) throw UsageError("QAOA needs N >= 4 (3-regular graphs)");
  require_cap(a.qubits, kQaoaCap, c.unsafe, kQaoaUnsafeCap, "qaoa");

  const auto opts = ensemble_options(a.graphs, a.max_evals, c);
  Report r;
  r.command = "qaoa";
  r.config["qubits"] = a.qubits;
  r.config["depth_max"] = a.depth_max;
  r.config["bond_dims"] = a.bond_dims;
  r.config["graphs"] = a.graphs;
  add_optimizer_config(r.config, opts);
  r.config.update(common_config(c));
  r.summary["seed"] = c.seed;
  r.summary["energy"] = "-(expected cut weight); lower is better";
  r.summary["problem_gate"] = "Rzz(-gamma*w) per edge, Rx(2*beta) mixer";

  r.table.columns = {"N", "p", "chi", "mean_energy", "stderr_energy",
                     "mean_midpoint_entropy", "stderr_entropy", "avg_entropy",
                     "stddev_entropy"};
  std::size_t disconnected = 0;
  for (std::size_t p = 1; p <= a.depth_max; ++p) {
    for (auto chi : a.bond_dims) {
      const auto e = run_ensemble(a.qubits, p, chi, c.seed, opts,
                                  c.unsafe ? kQaoaUnsafeCap : kQaoaCap);
      disconnected = e.disconnected_graphs;
      r.table.add({static_cast<std::int64_t>(a.qubits), static_cast<std::int64_t>(p),
                   static_cast<std::int64_t>(chi), e.energy.mean, e.energy.standard_error,
                   e.midpoint_entropy.mean, e.midpoint_entropy.standard_error, e.avg_entropy,
                   e.stddev_entropy});
    }
  }
  // Graphs depend only on (seed, graph id), so the count is the same for
  // every row.
  r.summary["disconnected_graphs"] = disconnected;
  emit(r, c);
}

// --- scaling -------------------------------------------------------------

struct ScalingArgs {
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> bond_dims;
  std::size_t graphs = 25;
  std::size_t depth = 1;
  std::size_t max_evals = 1000;
};

void run_scaling(const ScalingArgs& a, const Common& c) {
  require_nonempty(a.qubits, "--qubits-list");
  require_nonempty(a.bond_dims, "--bond-dims");
  if (a.depth < 1) throw UsageError("--depth must be >= 1");
  for (auto n : a.qubits) {
    require_even(n);
    if (n < 4) throw UsageError("QAOA needs N >= 4 (3-regular graphs)");
    require_cap(n, kQaoaCap, c.unsafe, kQaoaUnsafeCap, "scaling");
  }
  for (auto chi : a.bond_dims) {
    if (chi < 2) throw UsageError("--bond-dims values must be >= 2 (ln chi > 0)");
  }

  const auto opts = ensemble_options(a.graphs, a.max_evals, c);
  Report r;
  r.command = "scaling";
  r.config["qubits_list"] = a.qubits;
  r.config["bond_dims"] = a.bond_dims;
  r.config["graphs"] = a.graphs;
  r.config["depth"] = a.depth;
  add_optimizer_config(r.config, opts);
  r.config.update(common_config(c));
  r.summary["seed"] = c.seed;
  r.summary["e_opt_definition"] = kEoptDefinition;

  const auto recs = scaling_sweep(a.qubits, a.bond_dims, c.seed, a.depth, opts,
                                  c.unsafe ? kQaoaUnsafeCap : kQaoaCap);
  r.table.columns = {"N", "chi", "s_over_n", "lnchi_over_n", "e_min", "e_opt", "ratio"};
  for (const auto& x : recs) {
    r.table.add({static_cast<std::int64_t>(x.n_qubits), static_cast<std::int64_t>(x.chi),
                 x.s_over_n, x.lnchi_over_n, x.e_min, x.e_opt, x.ratio});
  }
  emit(r, c);
}

int run(int argc, char** argv) {
  CLI::App app{"mpsqvm: MPS quantum circuit simulator experiments"};
  app.set_version_flag("--version", MPSQVM_VERSION);
  app.require_subcommand(1);

  Common common;
  PageArgs page;
  auto* pc = app.add_subcommand("page-curve", "Haar-random states: entropy at every bond");
  pc->add_option("--qubits", page.qubits, "Number of qubits N (even)")->required();
  pc->add_option("--bond-dim", page.bond_dim, "Bond dimension chi")
      ->required()
      ->check(CLI::PositiveNumber);
  pc->add_option("--samples", page.samples, "Haar samples M")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(pc, common);

  SweepArgs sweep;
  auto* fs = app.add_subcommand("fidelity-sweep", "Fidelity over a grid of N and chi");
  fs->add_option("--qubits-list", sweep.qubits, "Qubit counts")->required()->delimiter(',');
  fs->add_option("--bond-dims", sweep.bond_dims, "Bond dimensions")->required()->delimiter(',');
  fs->add_option("--samples", sweep.samples, "Haar samples M per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(fs, common);

  QaoaArgs qaoa;
  auto* qc = app.add_subcommand("qaoa", "QAOA MaxCut ensembles for p = 1..depth-max");
  qc->add_option("--qubits", qaoa.qubits, "Number of qubits N (even, >= 4)")->required();
  qc->add_option("--depth-max", qaoa.depth_max, "Largest QAOA depth p")->required();
  qc->add_option("--bond-dims", qaoa.bond_dims, "Bond dimensions")->required()->delimiter(',');
  qc->add_option("--graphs", qaoa.graphs, "Graphs per ensemble")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  qc->add_option("--max-evals", qaoa.max_evals, "Objective evaluations per graph")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(qc, common);

  ScalingArgs scaling;
  auto* sc = app.add_subcommand("scaling", "Collapse coordinates over N and chi");
  sc->add_option("--qubits-list", scaling.qubits, "Qubit counts")->required()->delimiter(',');
  sc->add_option("--bond-dims", scaling.bond_dims, "Bond dimensions")->required()->delimiter(',');
  sc->add_option("--graphs", scaling.graphs, "Graphs per ensemble")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sc->add_option("--depth", scaling.depth, "QAOA depth p")->capture_default_str();
  sc->add_option("--max-evals", scaling.max_evals, "Objective evaluations per graph")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(sc, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.plot && common.out == "-") throw UsageError("--plot needs --out PATH");
    if (common.threads > 0) omp_set_num_threads(common.threads);
    if (*pc) run_page_curve(page, common);
    if (*fs) run_fidelity_sweep(sweep, common);
    if (*qc) run_qaoa(qaoa, common);
    if (*sc) run_scaling(scaling, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace mpsqvm::cli

int main(int argc, char** argv) { return mpsqvm::cli::run(argc, argv); }
