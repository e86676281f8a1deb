/*
 * Copyright 2026 The hw-tomo Authors
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

/*
 * C interface to the hw-tomo engine.
 *
 * Objects are opaque handles created by hwtomo_*_create / *_from_* calls and
 * released with the matching *_free. Every fallible call returns an
 * hwtomo_status; on failure a message for the calling thread is available
 * from hwtomo_last_error() until the next failing call on that thread.
 * Strings returned through char** are owned by the caller and released with
 * hwtomo_string_free.
 */

#ifndef HWTOMO_HWTOMO_H
#define HWTOMO_HWTOMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(HWTOMO_BUILDING_LIBRARY)
#define HWTOMO_API __attribute__((visibility("default")))
#else
#define HWTOMO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hwtomo_status {
  HWTOMO_OK = 0,
  HWTOMO_ERR_INVALID_ARGUMENT = 1,
  HWTOMO_ERR_DIMENSION_MISMATCH = 2,
  HWTOMO_ERR_NOT_PHYSICAL = 3,
  HWTOMO_ERR_OUT_OF_WINDOW = 4,
  HWTOMO_ERR_PARSE = 5,
  HWTOMO_ERR_INTERNAL = 6
} hwtomo_status;

typedef enum hwtomo_layout {
  HWTOMO_LAYOUT_PARALLEL = 0,
  HWTOMO_LAYOUT_SERIAL = 1
} hwtomo_layout;

typedef struct hwtomo_state hwtomo_state;
typedef struct hwtomo_coeffs hwtomo_coeffs;
typedef struct hwtomo_report hwtomo_report;
typedef struct hwtomo_plan hwtomo_plan;

typedef struct hwtomo_estimate_options {
  uint64_t shots;       /* 0 = exact expectation values */
  uint64_t seed;        /* master seed for sampled mode */
  int pin_trace;        /* nonzero: <Q_00> fixed to 1 */
  unsigned threads;     /* worker cap, 0 = hardware concurrency */
} hwtomo_estimate_options;

typedef struct hwtomo_metrics {
  double fidelity;      /* NaN when not available */
  double trace_distance;
  double frobenius_distance;
} hwtomo_metrics;

typedef struct hwtomo_resources {
  int spp1;
  int sppm;
  int sppminusd;
  int sorters;
} hwtomo_resources;

typedef struct hwtomo_verdict {
  double distance;
  double leakage;
  int passed;
} hwtomo_verdict;

HWTOMO_API const char* hwtomo_version(void);
HWTOMO_API const char* hwtomo_status_string(hwtomo_status status);
HWTOMO_API const char* hwtomo_last_error(void);
HWTOMO_API void hwtomo_string_free(char* s);

/* States. */
HWTOMO_API hwtomo_status hwtomo_state_from_json(const char* json_text,
                                                hwtomo_state** out);
HWTOMO_API hwtomo_status hwtomo_state_preset(int d, const char* preset,
                                             hwtomo_state** out);
HWTOMO_API hwtomo_status hwtomo_state_random(int d, int rank, uint64_t seed,
                                             hwtomo_state** out);
HWTOMO_API int hwtomo_state_dim(const hwtomo_state* state);
HWTOMO_API hwtomo_status hwtomo_state_entry(const hwtomo_state* state, int row,
                                            int col, double* re, double* im);
HWTOMO_API void hwtomo_state_free(hwtomo_state* state);

/* Heisenberg-Weyl observables; l = m = -1 dumps all d^2 of them. */
HWTOMO_API hwtomo_status hwtomo_observables_json(int d, int l, int m,
                                                 char** out_json);
HWTOMO_API hwtomo_status hwtomo_orthogonality_deviation(int d, double* out);

/* Ancilla <Z> for the DQC1 setting U = Z^l X^m with phase phi. */
HWTOMO_API hwtomo_status hwtomo_expectation_z(const hwtomo_state* state, int l,
                                              int m, double phi, double* out);

/* Coefficient tables. */
HWTOMO_API hwtomo_status hwtomo_estimate_coefficients(
    const hwtomo_state* state, const hwtomo_estimate_options* options,
    hwtomo_coeffs** out);
HWTOMO_API hwtomo_status hwtomo_coeffs_from_json(const char* json_text,
                                                 hwtomo_coeffs** out);
HWTOMO_API hwtomo_status hwtomo_coeffs_to_json(const hwtomo_coeffs* coeffs,
                                               char** out_json);
HWTOMO_API hwtomo_status hwtomo_coeffs_to_csv(const hwtomo_coeffs* coeffs,
                                              char** out_csv);
HWTOMO_API int hwtomo_coeffs_dim(const hwtomo_coeffs* coeffs);
HWTOMO_API hwtomo_status hwtomo_coeffs_value(const hwtomo_coeffs* coeffs,
                                             int l, int m, double* out);
HWTOMO_API void hwtomo_coeffs_free(hwtomo_coeffs* coeffs);

/* Linear inversion plus optional physicality projection. `truth` may be
 * NULL; metrics are then unavailable. */
HWTOMO_API hwtomo_status hwtomo_reconstruct(const hwtomo_coeffs* coeffs,
                                            const hwtomo_state* truth,
                                            int project, hwtomo_report** out);
HWTOMO_API hwtomo_status hwtomo_report_to_json(const hwtomo_report* report,
                                               char** out_json);
HWTOMO_API hwtomo_status hwtomo_report_metrics(const hwtomo_report* report,
                                               hwtomo_metrics* out);
HWTOMO_API void hwtomo_report_free(hwtomo_report* report);

/* Optical compilation and verification. */
HWTOMO_API hwtomo_status hwtomo_compile(int d, int l, int m,
                                        hwtomo_layout layout,
                                        hwtomo_plan** out);
HWTOMO_API hwtomo_status hwtomo_plan_to_json(const hwtomo_plan* plan,
                                             char** out_json);
HWTOMO_API hwtomo_status hwtomo_plan_resources(const hwtomo_plan* plan,
                                               hwtomo_resources* out);
HWTOMO_API void hwtomo_plan_free(hwtomo_plan* plan);

HWTOMO_API hwtomo_status hwtomo_verify_optics(int d, int l, int m,
                                              hwtomo_layout layout,
                                              hwtomo_verdict* out,
                                              char** out_json);

/* Mach-Zehnder simulation; compiled != 0 uses the compiled optical arm. */
HWTOMO_API hwtomo_status hwtomo_simulate_mzi(const hwtomo_state* state, int l,
                                             int m, double phi, int compiled,
                                             double* out);

#ifdef __cplusplus
}
#endif

#endif /* HWTOMO_HWTOMO_H */
