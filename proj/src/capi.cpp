// Copyright 2026 The hw-tomo Authors
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

#include "hwtomo/hwtomo.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "hwtomo/dqc1.hpp"
#include "hwtomo/error.hpp"
#include "hwtomo/hw_basis.hpp"
#include "hwtomo/json_io.hpp"
#include "hwtomo/optics.hpp"
#include "hwtomo/tomography.hpp"

struct hwtomo_state {
  hwtomo::DensityMatrix rho;
};

struct hwtomo_coeffs {
  hwtomo::CoefficientTable table;
};

struct hwtomo_report {
  hwtomo::ReconstructionReport report;
};

struct hwtomo_plan {
  hwtomo::optics::OpticalPlan plan;
};

namespace {

thread_local std::string last_error;

hwtomo_status status_of(hwtomo::ErrorKind kind) {
  using hwtomo::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument: return HWTOMO_ERR_INVALID_ARGUMENT;
    case ErrorKind::dimension_mismatch: return HWTOMO_ERR_DIMENSION_MISMATCH;
    case ErrorKind::not_physical: return HWTOMO_ERR_NOT_PHYSICAL;
    case ErrorKind::out_of_window: return HWTOMO_ERR_OUT_OF_WINDOW;
    case ErrorKind::parse: return HWTOMO_ERR_PARSE;
    case ErrorKind::internal: return HWTOMO_ERR_INTERNAL;
  }
  return HWTOMO_ERR_INTERNAL;
}

// Runs fn, converting every exception into a status code.
template <typename Fn>
hwtomo_status guarded(Fn&& fn) {
  try {
    fn();
    return HWTOMO_OK;
  } catch (const hwtomo::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HWTOMO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HWTOMO_ERR_INTERNAL;
  }
}

hwtomo_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return HWTOMO_ERR_INVALID_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hwtomo::optics::Layout to_layout(hwtomo_layout layout) {
  switch (layout) {
    case HWTOMO_LAYOUT_PARALLEL: return hwtomo::optics::Layout::parallel;
    case HWTOMO_LAYOUT_SERIAL: return hwtomo::optics::Layout::serial;
  }
  hwtomo::fail(hwtomo::ErrorKind::invalid_argument, "unknown layout");
}

}  // namespace

extern "C" {

const char* hwtomo_version(void) { return "1.0.0"; }

const char* hwtomo_status_string(hwtomo_status status) {
  switch (status) {
    case HWTOMO_OK: return "ok";
    case HWTOMO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HWTOMO_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case HWTOMO_ERR_NOT_PHYSICAL: return "not a physical state";
    case HWTOMO_ERR_OUT_OF_WINDOW: return "OAM value outside window";
    case HWTOMO_ERR_PARSE: return "parse error";
    case HWTOMO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hwtomo_last_error(void) { return last_error.c_str(); }

void hwtomo_string_free(char* s) { std::free(s); }

hwtomo_status hwtomo_state_from_json(const char* json_text,
                                     hwtomo_state** out) {
  if (json_text == nullptr) return null_argument("json_text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new hwtomo_state{
        hwtomo::io::state_from_json(hwtomo::io::parse_text(json_text))};
  });
}

hwtomo_status hwtomo_state_preset(int d, const char* preset,
                                  hwtomo_state** out) {
  if (preset == nullptr) return null_argument("preset");
  if (out == nullptr) return null_argument("out");
  return guarded(
      [&] { *out = new hwtomo_state{hwtomo::io::preset_state(d, preset)}; });
}

hwtomo_status hwtomo_state_random(int d, int rank, uint64_t seed,
                                  hwtomo_state** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new hwtomo_state{hwtomo::random_density_matrix(d, rank, seed)};
  });
}

int hwtomo_state_dim(const hwtomo_state* state) {
  return state == nullptr ? 0 : state->rho.dim();
}

hwtomo_status hwtomo_state_entry(const hwtomo_state* state, int row, int col,
                                 double* re, double* im) {
  if (state == nullptr) return null_argument("state");
  if (re == nullptr || im == nullptr) return null_argument("re/im");
  const int d = state->rho.dim();
  if (row < 0 || row >= d || col < 0 || col >= d) {
    last_error = "matrix index out of range";
    return HWTOMO_ERR_INVALID_ARGUMENT;
  }
  const hwtomo::Complex z = state->rho.matrix()(row, col);
  *re = z.real();
  *im = z.imag();
  return HWTOMO_OK;
}

void hwtomo_state_free(hwtomo_state* state) { delete state; }

hwtomo_status hwtomo_observables_json(int d, int l, int m, char** out_json) {
  if (out_json == nullptr) return null_argument("out_json");
  return guarded([&] {
    if ((l < 0) != (m < 0)) {
      hwtomo::fail(hwtomo::ErrorKind::invalid_argument,
                   "give both l and m, or neither");
    }
    *out_json = duplicate(hwtomo::io::observables_to_json(d, l, m).dump(2));
  });
}

hwtomo_status hwtomo_orthogonality_deviation(int d, double* out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = hwtomo::verify_orthogonality(d); });
}

hwtomo_status hwtomo_expectation_z(const hwtomo_state* state, int l, int m,
                                   double phi, double* out) {
  if (state == nullptr) return null_argument("state");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const hwtomo::Dqc1Setting setting(
        hwtomo::weyl_operator(state->rho.dim(), l, m), phi);
    *out = hwtomo::expectation_z(state->rho, setting);
  });
}

hwtomo_status hwtomo_estimate_coefficients(
    const hwtomo_state* state, const hwtomo_estimate_options* options,
    hwtomo_coeffs** out) {
  if (state == nullptr) return null_argument("state");
  if (options == nullptr) return null_argument("options");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    hwtomo::EstimationOptions opts;
    opts.shots = options->shots;
    opts.master_seed = options->seed;
    opts.pin_trace = options->pin_trace != 0;
    opts.threads = options->threads;
    const hwtomo::MeasurementPlan plan = hwtomo::build_plan(state->rho.dim());
    *out = new hwtomo_coeffs{
        hwtomo::estimate_coefficients(state->rho, plan, opts)};
  });
}

hwtomo_status hwtomo_coeffs_from_json(const char* json_text,
                                      hwtomo_coeffs** out) {
  if (json_text == nullptr) return null_argument("json_text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new hwtomo_coeffs{
        hwtomo::io::coefficients_from_json(hwtomo::io::parse_text(json_text))};
  });
}

hwtomo_status hwtomo_coeffs_to_json(const hwtomo_coeffs* coeffs,
                                    char** out_json) {
  if (coeffs == nullptr) return null_argument("coeffs");
  if (out_json == nullptr) return null_argument("out_json");
  return guarded([&] {
    *out_json =
        duplicate(hwtomo::io::coefficients_to_json(coeffs->table).dump(2));
  });
}

hwtomo_status hwtomo_coeffs_to_csv(const hwtomo_coeffs* coeffs,
                                   char** out_csv) {
  if (coeffs == nullptr) return null_argument("coeffs");
  if (out_csv == nullptr) return null_argument("out_csv");
  return guarded([&] {
    *out_csv = duplicate(hwtomo::io::coefficients_to_csv(coeffs->table));
  });
}

int hwtomo_coeffs_dim(const hwtomo_coeffs* coeffs) {
  return coeffs == nullptr ? 0 : coeffs->table.d;
}

hwtomo_status hwtomo_coeffs_value(const hwtomo_coeffs* coeffs, int l, int m,
                                  double* out) {
  if (coeffs == nullptr) return null_argument("coeffs");
  if (out == nullptr) return null_argument("out");
  const int d = coeffs->table.d;
  if (l < 0 || l >= d || m < 0 || m >= d) {
    last_error = "(l, m) out of range";
    return HWTOMO_ERR_INVALID_ARGUMENT;
  }
  *out = coeffs->table.value(l, m);
  return HWTOMO_OK;
}

void hwtomo_coeffs_free(hwtomo_coeffs* coeffs) { delete coeffs; }

hwtomo_status hwtomo_reconstruct(const hwtomo_coeffs* coeffs,
                                 const hwtomo_state* truth, int project,
                                 hwtomo_report** out) {
  if (coeffs == nullptr) return null_argument("coeffs");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new hwtomo_report{hwtomo::reconstruct_report(
        coeffs->table, truth == nullptr ? nullptr : &truth->rho,
        project != 0)};
  });
}

hwtomo_status hwtomo_report_to_json(const hwtomo_report* report,
                                    char** out_json) {
  if (report == nullptr) return null_argument("report");
  if (out_json == nullptr) return null_argument("out_json");
  return guarded([&] {
    *out_json = duplicate(hwtomo::io::report_to_json(report->report).dump(2));
  });
}

hwtomo_status hwtomo_report_metrics(const hwtomo_report* report,
                                    hwtomo_metrics* out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  const auto& r = report->report;
  if (!r.frobenius_distance) {
    last_error = "report has no reference state";
    return HWTOMO_ERR_INVALID_ARGUMENT;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out->fidelity = r.fidelity.value_or(nan);
  out->trace_distance = r.trace_distance.value_or(nan);
  out->frobenius_distance = *r.frobenius_distance;
  return HWTOMO_OK;
}

void hwtomo_report_free(hwtomo_report* report) { delete report; }

hwtomo_status hwtomo_compile(int d, int l, int m, hwtomo_layout layout,
                             hwtomo_plan** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new hwtomo_plan{
        hwtomo::optics::compile_zlxm(d, l, m, to_layout(layout))};
  });
}

hwtomo_status hwtomo_plan_to_json(const hwtomo_plan* plan, char** out_json) {
  if (plan == nullptr) return null_argument("plan");
  if (out_json == nullptr) return null_argument("out_json");
  return guarded([&] {
    *out_json = duplicate(hwtomo::io::plan_to_json(plan->plan).dump(2));
  });
}

hwtomo_status hwtomo_plan_resources(const hwtomo_plan* plan,
                                    hwtomo_resources* out) {
  if (plan == nullptr) return null_argument("plan");
  if (out == nullptr) return null_argument("out");
  const auto& r = plan->plan.resources;
  *out = {r.spp_one, r.spp_m, r.spp_minus_d, r.sorters};
  return HWTOMO_OK;
}

void hwtomo_plan_free(hwtomo_plan* plan) { delete plan; }

hwtomo_status hwtomo_verify_optics(int d, int l, int m, hwtomo_layout layout,
                                   hwtomo_verdict* out, char** out_json) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const hwtomo::optics::GateVerdict v =
        hwtomo::optics::verify_gate_equivalence(d, l, m, to_layout(layout));
    *out = {v.distance, v.leakage, v.passed ? 1 : 0};
    if (out_json != nullptr) {
      *out_json = duplicate(hwtomo::io::verdict_to_json(v).dump());
    }
  });
}

hwtomo_status hwtomo_simulate_mzi(const hwtomo_state* state, int l, int m,
                                  double phi, int compiled, double* out) {
  if (state == nullptr) return null_argument("state");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = hwtomo::optics::simulate_mzi(
        state->rho, l, m, phi,
        compiled != 0 ? hwtomo::optics::ArmGate::compiled
                      : hwtomo::optics::ArmGate::abstract);
  });
}

}  // extern "C"
