/* Copyright 2026 The mpsqvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libqvm. One global session per process; not thread-safe
 * (concurrent entry returns QVM_REENTRANCY). Sites are 1-based. All results
 * are copied into caller-owned slots. See qvm_abi.txt. */

#ifndef MPSQVM_QVM_ABI_H_
#define MPSQVM_QVM_ABI_H_

#include <stdint.h>

#if defined(_WIN32)
#define QVM_EXPORT __declspec(dllexport)
#else
#define QVM_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  QVM_OK = 0,
  QVM_NOT_INITIALIZED = 1,
  QVM_BAD_ARGUMENT = 2,
  QVM_UNKNOWN_GATE = 3,
  QVM_INTERNAL_NUMERIC = 4,
  QVM_REENTRANCY = 5
};

/* max_bond >= 1 caps every bond; cutoff >= 0 is the relative discarded
 * weight tolerance. */
QVM_EXPORT int32_t qvm_initialize(int64_t n_qubits, int64_t max_bond,
                                  double cutoff);
QVM_EXPORT int32_t qvm_finalize(void);

/* H X Y Z S T. */
QVM_EXPORT int32_t qvm_apply_single_qubit_gate(int64_t bit_loc,
                                               const char* gate_name);
/* Rx Ry Rz. */
QVM_EXPORT int32_t qvm_apply_single_qubit_rot_gate(int64_t bit_loc,
                                                   const char* gate_name,
                                                   double theta);
/* CNOT CX CZ SWAP (theta ignored) or Rzz (theta required, not NaN). */
QVM_EXPORT int32_t qvm_apply_two_qubit_gate(int64_t site_a, int64_t site_b,
                                            const char* gate_name,
                                            double theta_or_nan);

QVM_EXPORT int32_t qvm_expectation_zz(int64_t site_a, int64_t site_b,
                                      double* out);
QVM_EXPORT int32_t qvm_midpoint_entropy(double* out);
QVM_EXPORT int32_t qvm_entropy_stats(double* out_mean, double* out_stderr);
QVM_EXPORT int32_t qvm_last_error(char* out, int64_t capacity);

#ifdef __cplusplus
}
#endif

#endif /* MPSQVM_QVM_ABI_H_ */
