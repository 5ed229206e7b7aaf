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

#include <dlfcn.h>
#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "mpsqvm/entanglement.hpp"
#include "mpsqvm/gates.hpp"
#include "mpsqvm/observables.hpp"
#include "mpsqvm/qvm_abi.h"
#include "support/dense_oracle.hpp"

namespace {

const double kLn2 = std::numbers::ln2;

std::string last_error() {
  char buf[256];
  EXPECT_EQ(qvm_last_error(buf, sizeof buf), QVM_OK);
  return buf;
}

class Abi : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_EQ(qvm_finalize(), QVM_OK); }
  void TearDown() override { qvm_finalize(); }
};

TEST_F(Abi, Lifecycle) {
  EXPECT_EQ(qvm_initialize(8, 16, 0.0), QVM_OK);
  EXPECT_EQ(qvm_initialize(8, 16, 0.0), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_finalize(), QVM_OK);
  EXPECT_EQ(qvm_finalize(), QVM_OK);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_NOT_INITIALIZED);
  double out = 0.0;
  EXPECT_EQ(qvm_midpoint_entropy(&out), QVM_NOT_INITIALIZED);
  EXPECT_EQ(qvm_initialize(8, 16, 0.0), QVM_OK);
}

TEST_F(Abi, InitializeValidation) {
  EXPECT_EQ(qvm_initialize(0, 16, 0.0), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_initialize(4, 0, 0.0), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_initialize(4, 4, -0.1), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_initialize(4, 4, std::nan("")), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_initialize(4, 4, 1.0), QVM_BAD_ARGUMENT);
}

TEST_F(Abi, FinalizeWhenUninitialized) { EXPECT_EQ(qvm_finalize(), QVM_OK); }

TEST_F(Abi, SingleQubitGates) {
  ASSERT_EQ(qvm_initialize(2, 4, 0.0), QVM_OK);
  double zz = 0.0;
  ASSERT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_OK);
  // <Z_1> = <Z_1 Z_2> with site 2 in |0>.
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, 0.0, 1e-14);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "Rx"), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_single_qubit_gate(99, "H"), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_single_qubit_gate(0, "H"), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "CNOT"), QVM_UNKNOWN_GATE);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "Q"), QVM_UNKNOWN_GATE);
  EXPECT_NE(last_error().find("Q"), std::string::npos);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, nullptr), QVM_BAD_ARGUMENT);
}

TEST_F(Abi, EndpointSitesAreOneBased) {
  ASSERT_EQ(qvm_initialize(3, 4, 0.0), QVM_OK);
  ASSERT_EQ(qvm_apply_single_qubit_gate(3, "X"), QVM_OK);
  double zz = 0.0;
  ASSERT_EQ(qvm_expectation_zz(1, 3, &zz), QVM_OK);
  EXPECT_NEAR(zz, -1.0, 1e-14);
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, 1.0, 1e-14);
  ASSERT_EQ(qvm_apply_single_qubit_gate(1, "X"), QVM_OK);
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, -1.0, 1e-14);
  EXPECT_EQ(qvm_apply_single_qubit_gate(4, "X"), QVM_BAD_ARGUMENT);
}

TEST_F(Abi, RotationGates) {
  ASSERT_EQ(qvm_initialize(2, 4, 0.0), QVM_OK);
  double zz = 0.0;
  ASSERT_EQ(qvm_apply_single_qubit_rot_gate(1, "Rz", 0.0), QVM_OK);
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, 1.0, 1e-14);
  ASSERT_EQ(qvm_apply_single_qubit_rot_gate(1, "Rx", std::numbers::pi), QVM_OK);
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, -1.0, 1e-14);
  EXPECT_EQ(qvm_apply_single_qubit_rot_gate(1, "H", 0.5), QVM_UNKNOWN_GATE);
  EXPECT_EQ(qvm_apply_single_qubit_rot_gate(1, "Rzz", 0.5), QVM_UNKNOWN_GATE);
  EXPECT_EQ(qvm_apply_single_qubit_rot_gate(1, "Ry", std::nan("")), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_single_qubit_rot_gate(5, "Ry", 0.1), QVM_BAD_ARGUMENT);
}

TEST_F(Abi, TwoQubitGates) {
  ASSERT_EQ(qvm_initialize(2, 8, 0.0), QVM_OK);
  ASSERT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_OK);
  ASSERT_EQ(qvm_apply_two_qubit_gate(1, 2, "CNOT", std::nan("")), QVM_OK);
  double s = 0.0;
  ASSERT_EQ(qvm_midpoint_entropy(&s), QVM_OK);
  EXPECT_NEAR(s, kLn2, 1e-12);
  ASSERT_EQ(qvm_finalize(), QVM_OK);
  ASSERT_EQ(qvm_initialize(4, 8, 0.0), QVM_OK);
  EXPECT_EQ(qvm_apply_two_qubit_gate(1, 2, "Rzz", std::nan("")), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_two_qubit_gate(3, 3, "CZ", 0.0), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_two_qubit_gate(1, 5, "CZ", 0.0), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_apply_two_qubit_gate(1, 2, "H", 0.0), QVM_UNKNOWN_GATE);
  EXPECT_EQ(qvm_apply_two_qubit_gate(1, 2, "iSWAP", 0.0), QVM_UNKNOWN_GATE);
  EXPECT_EQ(qvm_apply_two_qubit_gate(1, 4, "Rzz", 0.3), QVM_OK);
  EXPECT_EQ(qvm_apply_two_qubit_gate(4, 1, "SWAP", 123.0), QVM_OK);
}

TEST_F(Abi, ExpectationZZ) {
  ASSERT_EQ(qvm_initialize(2, 4, 0.0), QVM_OK);
  double zz = 0.0;
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, 1.0, 1e-14);
  ASSERT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_OK);
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, 0.0, 1e-14);
  ASSERT_EQ(qvm_apply_two_qubit_gate(1, 2, "CX", 0.0), QVM_OK);
  ASSERT_EQ(qvm_expectation_zz(1, 2, &zz), QVM_OK);
  EXPECT_NEAR(zz, 1.0, 1e-14);
  EXPECT_EQ(qvm_expectation_zz(1, 1, &zz), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_expectation_zz(1, 2, nullptr), QVM_BAD_ARGUMENT);
}

TEST_F(Abi, MidpointEntropy) {
  ASSERT_EQ(qvm_initialize(6, 8, 0.0), QVM_OK);
  double s = -1.0;
  ASSERT_EQ(qvm_midpoint_entropy(&s), QVM_OK);
  EXPECT_NEAR(s, 0.0, 1e-14);
  EXPECT_EQ(qvm_midpoint_entropy(nullptr), QVM_BAD_ARGUMENT);
  ASSERT_EQ(qvm_finalize(), QVM_OK);
  ASSERT_EQ(qvm_initialize(1, 8, 0.0), QVM_OK);
  EXPECT_EQ(qvm_midpoint_entropy(&s), QVM_BAD_ARGUMENT);
  ASSERT_EQ(qvm_finalize(), QVM_OK);
  EXPECT_EQ(qvm_midpoint_entropy(&s), QVM_NOT_INITIALIZED);
}

TEST_F(Abi, EntropyStats) {
  double mean = -1, err = -1;
  ASSERT_EQ(qvm_initialize(4, 8, 0.0), QVM_OK);
  ASSERT_EQ(qvm_entropy_stats(&mean, &err), QVM_OK);
  EXPECT_NEAR(mean, 0.0, 1e-14);
  EXPECT_NEAR(err, 0.0, 1e-14);
  // GHZ-4.
  ASSERT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_OK);
  for (int i = 1; i < 4; ++i) ASSERT_EQ(qvm_apply_two_qubit_gate(i, i + 1, "CNOT", 0.0), QVM_OK);
  ASSERT_EQ(qvm_entropy_stats(&mean, &err), QVM_OK);
  EXPECT_NEAR(mean, kLn2, 1e-12);
  EXPECT_NEAR(err, 0.0, 1e-12);
  ASSERT_EQ(qvm_finalize(), QVM_OK);
  // Bell (x) |0>.
  ASSERT_EQ(qvm_initialize(3, 8, 0.0), QVM_OK);
  ASSERT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_OK);
  ASSERT_EQ(qvm_apply_two_qubit_gate(1, 2, "CNOT", 0.0), QVM_OK);
  ASSERT_EQ(qvm_entropy_stats(&mean, &err), QVM_OK);
  EXPECT_NEAR(mean, kLn2 / 2, 1e-12);
  EXPECT_NEAR(err, kLn2 / 2, 1e-12);
  EXPECT_EQ(qvm_entropy_stats(nullptr, &err), QVM_BAD_ARGUMENT);
}

TEST_F(Abi, LastError) {
  ASSERT_EQ(qvm_initialize(2, 4, 0.0), QVM_OK);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "Bogus"), QVM_UNKNOWN_GATE);
  EXPECT_NE(last_error().find("Bogus"), std::string::npos);
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "H"), QVM_OK);
  EXPECT_EQ(last_error(), "");
  EXPECT_EQ(qvm_apply_single_qubit_gate(1, "Bogus"), QVM_UNKNOWN_GATE);
  char one[1] = {'x'};
  EXPECT_EQ(qvm_last_error(one, 1), QVM_OK);
  EXPECT_EQ(one[0], '\0');
  char small[5];
  EXPECT_EQ(qvm_last_error(small, 5), QVM_OK);
  EXPECT_EQ(std::strlen(small), 4u);
  EXPECT_EQ(qvm_last_error(nullptr, 10), QVM_BAD_ARGUMENT);
  EXPECT_EQ(qvm_last_error(small, 0), QVM_BAD_ARGUMENT);
}

// Round trip: the same random gate sequence through the boundary and through
// the in-process library gives identical <Z_a Z_b> values.
TEST_F(Abi, RoundTripMatchesLibrary) {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t chi = 1 + trial % 9;
    ASSERT_EQ(qvm_initialize(static_cast<int64_t>(n), static_cast<int64_t>(chi), 0.0), QVM_OK);
    auto lib = mpsqvm::MpsState::computational_zero(n, mpsqvm::TruncationPolicy::with_max_bond(chi));
    for (const auto& op : oracle::random_circuit(n, 30, rng)) {
      int32_t st;
      if (op.b != 0) {
        st = qvm_apply_two_qubit_gate(static_cast<int64_t>(op.a), static_cast<int64_t>(op.b),
                                      op.name.c_str(), op.angle.value_or(std::nan("")));
      } else if (op.angle) {
        st = qvm_apply_single_qubit_rot_gate(static_cast<int64_t>(op.a), op.name.c_str(), *op.angle);
      } else {
        st = qvm_apply_single_qubit_gate(static_cast<int64_t>(op.a), op.name.c_str());
      }
      ASSERT_EQ(st, QVM_OK) << op.name;
      mpsqvm::apply_gate(lib, {{op.name, op.angle}, op.a, op.b});
    }
    for (std::size_t a = 1; a <= n; ++a) {
      for (std::size_t b = a + 1; b <= n; ++b) {
        double zz = 0.0;
        ASSERT_EQ(qvm_expectation_zz(static_cast<int64_t>(a), static_cast<int64_t>(b), &zz), QVM_OK);
        EXPECT_NEAR(zz, mpsqvm::zz_expectation(lib, a, b), 1e-12);
      }
    }
    double mean = 0, err = 0;
    ASSERT_EQ(qvm_entropy_stats(&mean, &err), QVM_OK);
    const auto st = mpsqvm::entropy_mean_stderr(lib);
    EXPECT_NEAR(mean, st.mean, 1e-12);
    EXPECT_NEAR(err, st.standard_error, 1e-12);
    ASSERT_EQ(qvm_finalize(), QVM_OK);
  }
}

// Concurrent entry from a second thread is refused with status 5 and never
// corrupts the session.
TEST_F(Abi, ConcurrentEntryIsRefused) {
  ASSERT_EQ(qvm_initialize(12, 64, 0.0), QVM_OK);
  std::atomic<bool> stop{false};
  std::atomic<int> refused{0};
  std::atomic<int> unexpected{0};
  std::thread worker([&] {
    while (!stop.load()) {
      double v;
      const int32_t st = qvm_midpoint_entropy(&v);
      if (st == QVM_REENTRANCY) {
        ++refused;
      } else if (st != QVM_OK) {
        ++unexpected;
      }
    }
  });
  int main_refused = 0;
  for (int round = 0; round < 400 && refused.load() + main_refused == 0; ++round) {
    for (int site = 1; site < 12; ++site) {
      int32_t st = qvm_apply_single_qubit_gate(site, "H");
      if (st == QVM_REENTRANCY) {
        ++main_refused;
        continue;
      }
      ASSERT_EQ(st, QVM_OK);
      st = qvm_apply_two_qubit_gate(site, site + 1, "CNOT", 0.0);
      if (st == QVM_REENTRANCY) ++main_refused;
    }
  }
  stop = true;
  worker.join();
  EXPECT_EQ(unexpected.load(), 0);
  EXPECT_GT(refused.load() + main_refused, 0);
  double s = 0.0;
  EXPECT_EQ(qvm_midpoint_entropy(&s), QVM_OK);
  EXPECT_TRUE(std::isfinite(s));
}

TEST(AbiLibrary, ExportsExactlyTheNineSymbols) {
  void* h = dlopen(MPSQVM_QVM_LIBRARY, RTLD_NOW | RTLD_LOCAL);
  ASSERT_NE(h, nullptr) << dlerror();
  for (const char* name :
       {"qvm_initialize", "qvm_finalize", "qvm_apply_single_qubit_gate",
        "qvm_apply_single_qubit_rot_gate", "qvm_apply_two_qubit_gate", "qvm_expectation_zz",
        "qvm_midpoint_entropy", "qvm_entropy_stats", "qvm_last_error"}) {
    EXPECT_NE(dlsym(h, name), nullptr) << name;
  }
  // Library internals stay hidden.
  EXPECT_EQ(dlsym(h, "_ZN6mpsqvm16midpoint_entropyERKNS_8MpsStateE"), nullptr);
  dlclose(h);
}

TEST(AbiLibrary, InterfaceDescriptionListsSignaturesAndCodes) {
  std::ifstream in(MPSQVM_QVM_INTERFACE);
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  for (const char* needle :
       {"qvm_initialize(int64_t n_qubits", "qvm_finalize(void)", "qvm_apply_single_qubit_gate(",
        "qvm_apply_single_qubit_rot_gate(", "qvm_apply_two_qubit_gate(", "qvm_expectation_zz(",
        "qvm_midpoint_entropy(", "qvm_entropy_stats(", "qvm_last_error(", "0  ok",
        "1  not-initialized", "2  bad-argument", "3  unknown-gate", "4  internal-numeric",
        "5  reentrancy"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
}

}  // namespace
