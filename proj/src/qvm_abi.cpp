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

#include "mpsqvm/qvm_abi.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mpsqvm/entanglement.hpp"
#include "mpsqvm/gates.hpp"
#include "mpsqvm/mps.hpp"
#include "mpsqvm/observables.hpp"

namespace {

using mpsqvm::MpsState;

struct Session {
  std::optional<MpsState> state;
  std::string last_error;
};

Session& session() {
  static Session s;
  return s;
}

std::atomic<bool> g_busy{false};

class BadArgument : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class NotReady : public std::logic_error {
  using std::logic_error::logic_error;
};

std::size_t checked_site(int64_t site, const MpsState& st) {
  if (site < 1 || static_cast<uint64_t>(site) > st.n_qubits()) {
    throw BadArgument("site " + std::to_string(site) + " out of range 1.." +
                      std::to_string(st.n_qubits()));
  }
  return static_cast<std::size_t>(site);
}

std::string_view checked_name(const char* name) {
  if (name == nullptr) throw BadArgument("gate name is null");
  return name;
}

template <typename T>
T* checked_slot(T* p, const char* what) {
  if (p == nullptr) throw BadArgument(std::string(what) + " is null");
  return p;
}

MpsState& ready_state() {
  auto& s = session();
  if (!s.state) throw NotReady("session is not initialized");
  return *s.state;
}

// Runs `body` under the reentrancy guard and maps exceptions to status codes.
template <typename F>
int32_t guarded(F&& body) {
  bool expected = false;
  if (!g_busy.compare_exchange_strong(expected, true)) {
    return QVM_REENTRANCY;
  }
  int32_t status = QVM_OK;
  std::string message;
  try {
    body();
  } catch (const NotReady& e) {
    status = QVM_NOT_INITIALIZED;
    message = e.what();
  } catch (const mpsqvm::UnknownGateError& e) {
    status = QVM_UNKNOWN_GATE;
    message = e.what();
  } catch (const std::invalid_argument& e) {
    status = QVM_BAD_ARGUMENT;
    message = e.what();
  } catch (const std::out_of_range& e) {
    status = QVM_BAD_ARGUMENT;
    message = e.what();
  } catch (const std::exception& e) {
    status = QVM_INTERNAL_NUMERIC;
    message = e.what();
  } catch (...) {
    status = QVM_INTERNAL_NUMERIC;
    message = "unknown internal error";
  }
  try {
    session().last_error = std::move(message);
  } catch (...) {
  }
  g_busy.store(false);
  return status;
}

void apply_named(std::size_t a, std::size_t b, std::string_view name,
                 std::optional<double> angle) {
  mpsqvm::GateOp op;
  op.spec.name = std::string(name);
  op.spec.angle = angle;
  op.site_a = a;
  op.site_b = b;
  mpsqvm::apply_gate(ready_state(), op);
}

}  // namespace

extern "C" {

int32_t qvm_initialize(int64_t n_qubits, int64_t max_bond, double cutoff) {
  return guarded([&] {
    auto& s = session();
    if (s.state) {
      throw BadArgument("session already initialized; call qvm_finalize first");
    }
    if (n_qubits < 1) throw BadArgument("n_qubits must be >= 1");
    if (max_bond < 1) throw BadArgument("max_bond must be >= 1");
    if (!std::isfinite(cutoff) || cutoff < 0.0) {
      throw BadArgument("cutoff must be finite and >= 0");
    }
    mpsqvm::TruncationPolicy policy;
    policy.max_bond = static_cast<std::size_t>(max_bond);
    policy.cutoff = cutoff;
    s.state.emplace(MpsState::computational_zero(
        static_cast<std::size_t>(n_qubits), policy));
  });
}

int32_t qvm_finalize(void) {
  return guarded([] { session().state.reset(); });
}

int32_t qvm_apply_single_qubit_gate(int64_t bit_loc, const char* gate_name) {
  return guarded([&] {
    auto& st = ready_state();
    const auto name = checked_name(gate_name);
    const auto site = checked_site(bit_loc, st);
    if (mpsqvm::gate_arity(name) != 1) {
      throw mpsqvm::UnknownGateError(std::string(name));
    }
    if (mpsqvm::gate_takes_angle(name)) {
      throw BadArgument("gate \"" + std::string(name) +
                        "\" needs an angle; use "
                        "qvm_apply_single_qubit_rot_gate");
    }
    apply_named(site, 0, name, std::nullopt);
  });
}

int32_t qvm_apply_single_qubit_rot_gate(int64_t bit_loc, const char* gate_name,
                                        double theta) {
  return guarded([&] {
    auto& st = ready_state();
    const auto name = checked_name(gate_name);
    if (mpsqvm::gate_arity(name) != 1 || !mpsqvm::gate_takes_angle(name)) {
      throw mpsqvm::UnknownGateError(std::string(name));
    }
    const auto site = checked_site(bit_loc, st);
    if (!std::isfinite(theta)) throw BadArgument("theta must be finite");
    apply_named(site, 0, name, theta);
  });
}

int32_t qvm_apply_two_qubit_gate(int64_t site_a, int64_t site_b,
                                 const char* gate_name, double theta_or_nan) {
  return guarded([&] {
    auto& st = ready_state();
    const auto name = checked_name(gate_name);
    if (mpsqvm::gate_arity(name) != 2) {
      throw mpsqvm::UnknownGateError(std::string(name));
    }
    const auto a = checked_site(site_a, st);
    const auto b = checked_site(site_b, st);
    if (a == b) throw BadArgument("two-qubit gate needs distinct sites");
    std::optional<double> angle;
    if (mpsqvm::gate_takes_angle(name)) {
      if (!std::isfinite(theta_or_nan)) {
        throw BadArgument("gate \"" + std::string(name) +
                          "\" needs a finite theta");
      }
      angle = theta_or_nan;
    }
    apply_named(a, b, name, angle);
  });
}

int32_t qvm_expectation_zz(int64_t site_a, int64_t site_b, double* out) {
  return guarded([&] {
    auto& st = ready_state();
    checked_slot(out, "out");
    const auto a = checked_site(site_a, st);
    const auto b = checked_site(site_b, st);
    if (a == b) throw BadArgument("<Z_a Z_b> needs distinct sites");
    *out = mpsqvm::zz_expectation(st, a, b);
  });
}

int32_t qvm_midpoint_entropy(double* out) {
  return guarded([&] {
    auto& st = ready_state();
    checked_slot(out, "out");
    if (st.n_qubits() < 2) throw BadArgument("midpoint entropy needs N >= 2");
    *out = mpsqvm::midpoint_entropy(st);
  });
}

int32_t qvm_entropy_stats(double* out_mean, double* out_stderr) {
  return guarded([&] {
    auto& st = ready_state();
    checked_slot(out_mean, "out_mean");
    checked_slot(out_stderr, "out_stderr");
    double mean = 0.0;
    double err = 0.0;
    if (st.n_qubits() >= 2) {
      const auto stats = mpsqvm::entropy_mean_stderr(st);
      mean = stats.mean;
      err = stats.standard_error;
    }
    *out_mean = mean;
    *out_stderr = err;
  });
}

int32_t qvm_last_error(char* out, int64_t capacity) {
  bool expected = false;
  if (!g_busy.compare_exchange_strong(expected, true)) return QVM_REENTRANCY;
  int32_t status = QVM_OK;
  if (out == nullptr || capacity < 1) {
    status = QVM_BAD_ARGUMENT;
  } else {
    const auto& msg = session().last_error;
    const auto n = std::min<std::size_t>(msg.size(),
                                         static_cast<std::size_t>(capacity - 1));
    std::memcpy(out, msg.data(), n);
    out[n] = '\0';
  }
  g_busy.store(false);
  return status;
}

}  // extern "C"
