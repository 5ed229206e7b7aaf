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

#include "mpsqvm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mpsqvm {

namespace {

// Simplex acceptability and step parameters, as in Powell's COBYLA.
constexpr double kAlpha = 0.25;  // min distance from opposite face, * rho
constexpr double kBeta = 2.1;    // max edge length, * rho
constexpr double kGamma = 0.5;   // geometry step length, * rho
constexpr double kDelta = 1.1;   // replacement edge threshold, * rho
// Radius expansion after a step whose actual decrease is at least this
// fraction of the linear prediction. Powell's method only ever shrinks rho;
// on curved QAOA valleys that stalls far from the optimum.
constexpr double kExpandRatio = 0.7;

class Run {
 public:
  Run(const Objective& f, const OptimizerConfig& cfg)
      : f_(f), cfg_(cfg) {}

  bool exhausted() const { return evals_ >= cfg_.max_evals; }

  double eval(const Eigen::VectorXd& x) {
    const double v = f_(std::span<const double>(x.data(), x.size()));
    ++evals_;
    if (!std::isfinite(v)) {
      throw std::runtime_error("minimize: objective returned a non-finite "
                               "value at evaluation " +
                               std::to_string(evals_));
    }
    if (evals_ == 1 || v < best_value_) {
      best_value_ = v;
      best_x_ = x;
    }
    return v;
  }

  std::size_t evals() const { return evals_; }
  const Eigen::VectorXd& best_x() const { return best_x_; }
  double best_value() const { return best_value_; }

 private:
  const Objective& f_;
  const OptimizerConfig& cfg_;
  std::size_t evals_ = 0;
  Eigen::VectorXd best_x_;
  double best_value_ = 0.0;
};

}  // namespace

OptimizeResult minimize(const Objective& objective,
                        std::span<const double> init,
                        const OptimizerConfig& config) {
  if (init.empty()) throw std::invalid_argument("minimize: empty init");
  if (config.max_evals < 1) {
    throw std::invalid_argument("minimize: max_evals must be >= 1");
  }
  if (!(config.initial_step > 0.0) || !(config.stop_tol > 0.0) ||
      config.stop_tol > config.initial_step) {
    throw std::invalid_argument(
        "minimize: need 0 < stop_tol <= initial_step");
  }
  const auto n = static_cast<Eigen::Index>(init.size());
  Run run(objective, config);
  double rho = config.initial_step;
  const double rho_end = config.stop_tol;

  // Vertex store: points and values. `pivot` is the best vertex.
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  pts.emplace_back(Eigen::Map<const Eigen::VectorXd>(init.data(), n));
  vals.push_back(run.eval(pts[0]));
  std::size_t pivot = 0;

  auto finish = [&] {
    OptimizeResult out;
    const auto& bx = run.best_x();
    out.best_params.assign(bx.data(), bx.data() + bx.size());
    out.best_value = run.best_value();
    out.eval_count = run.evals();
    out.final_radius = rho;
    return out;
  };

  for (Eigen::Index j = 0; j < n; ++j) {
    if (run.exhausted()) return finish();
    Eigen::VectorXd x = pts[pivot];
    x[j] += rho;
    pts.push_back(x);
    vals.push_back(run.eval(x));
    if (vals.back() < vals[pivot]) pivot = pts.size() - 1;
  }

  bool branch = false;  // skip the geometry test right after a geometry step
  Eigen::MatrixXd sim(n, n);
  Eigen::MatrixXd simi(n, n);
  std::vector<std::size_t> others;  // vertex index of each sim column

  while (true) {
    // Rebuild the simplex around the best vertex.
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (vals[k] < vals[pivot]) pivot = k;
    }
    others.clear();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k != pivot) others.push_back(k);
    }
    Eigen::VectorXd df(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto k = others[static_cast<std::size_t>(j)];
      sim.col(j) = pts[k] - pts[pivot];
      df[j] = vals[k] - vals[pivot];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sim);
    if (!lu.isInvertible()) break;  // degenerate simplex: nothing left to learn
    simi = lu.inverse();  // rows of simi are dual to the columns of sim
    // Linear model gradient: sim^T g = df.
    const Eigen::VectorXd g = simi.transpose() * df;

    // Acceptability of the simplex geometry.
    const double par_sig = kAlpha * rho;
    const double par_eta = kBeta * rho;
    Eigen::VectorXd vsig(n);
    Eigen::VectorXd veta(n);
    bool acceptable = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      vsig[j] = 1.0 / simi.row(j).norm();
      veta[j] = sim.col(j).norm();
      if (vsig[j] < par_sig || veta[j] > par_eta) acceptable = false;
    }

    if (!branch && !acceptable) {
      // Geometry step: replace the worst-placed vertex.
      Eigen::Index drop = -1;
      double worst = par_eta;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (veta[j] > worst) {
          drop = j;
          worst = veta[j];
        }
      }
      if (drop < 0) {
        worst = par_sig;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (vsig[j] < worst) {
            drop = j;
            worst = vsig[j];
          }
        }
      }
      Eigen::VectorXd dx = (kGamma * rho * vsig[drop]) * simi.row(drop).transpose();
      if (g.dot(dx) > 0.0) dx = -dx;
      if (run.exhausted()) break;
      const auto k = others[static_cast<std::size_t>(drop)];
      pts[k] = pts[pivot] + dx;
      vals[k] = run.eval(pts[k]);
      branch = true;
      continue;
    }

    // Trust-region step on the linear model.
    bool reduce = false;
    bool replaced_with_progress = false;
    const double gnorm = g.norm();
    if (gnorm == 0.0) {
      reduce = true;
    } else {
      if (run.exhausted()) break;
      const Eigen::VectorXd dx = (-rho / gnorm) * g;
      const Eigen::VectorXd x_new = pts[pivot] + dx;
      const double f_new = run.eval(x_new);
      const double predicted = rho * gnorm;
      const double actual = vals[pivot] - f_new;

      // Choose the vertex to replace; mandatory when the step improved f.
      double ratio = actual <= 0.0 ? 1.0 : 0.0;
      Eigen::Index drop = -1;
      Eigen::VectorXd sigbar(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double t = std::abs(simi.row(j).dot(dx));
        if (t > ratio) {
          drop = j;
          ratio = t;
        }
        sigbar[j] = t * vsig[j];
      }
      double edge_max = kDelta * rho;
      Eigen::Index far = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (sigbar[j] >= par_sig || sigbar[j] >= vsig[j]) {
          const double dist =
              actual > 0.0 ? (dx - sim.col(j)).norm() : veta[j];
          if (dist > edge_max) {
            far = j;
            edge_max = dist;
          }
        }
      }
      if (far >= 0) drop = far;
      if (drop >= 0) {
        const auto k = others[static_cast<std::size_t>(drop)];
        pts[k] = x_new;
        vals[k] = f_new;
        replaced_with_progress = actual > 0.0 && actual >= 0.1 * predicted;
        if (actual >= kExpandRatio * predicted && acceptable) {
          rho = std::min(2.0 * rho, config.initial_step);
        }
      }
      reduce = !replaced_with_progress;
    }
    branch = false;
    if (!reduce) continue;
    if (!acceptable) continue;  // fix the geometry before shrinking
    if (rho <= rho_end) break;
    rho *= 0.5;
    if (rho <= 1.5 * rho_end) rho = rho_end;
  }
  return finish();
}

}  // namespace mpsqvm
