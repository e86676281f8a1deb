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

#include "hwtomo/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hwtomo/error.hpp"
#include "hwtomo/hw_basis.hpp"

namespace hwtomo::io {

namespace {

[[noreturn]] void field_error(const std::string& where,
                              const std::string& what) {
  fail(ErrorKind::parse, "field '" + where + "': " + what);
}

const json& require_field(const json& j, const char* key,
                          const std::string& where = "") {
  if (!j.is_object()) {
    field_error(where.empty() ? "<root>" : where, "expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    field_error(where.empty() ? key : where + "." + key, "missing");
  }
  return *it;
}

long long integer_field(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number_integer()) {
    field_error(key, "expected an integer");
  }
  return v.get<long long>();
}

std::uint64_t unsigned_field(const json& j, const char* key,
                             std::uint64_t fallback) {
  auto it = j.find(key);
  if (it == j.end()) {
    return fallback;
  }
  if (!it->is_number_integer() ||
      (it->is_number_integer() && !it->is_number_unsigned() &&
       it->get<long long>() < 0)) {
    field_error(key, "expected a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

int parse_index_suffix(std::string_view preset, std::string_view prefix,
                       int d) {
  const std::string_view digits = preset.substr(prefix.size());
  int j = -1;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), j);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || j < 0 ||
      j >= d) {
    fail(ErrorKind::invalid_argument,
         "preset '" + std::string(preset) + "': index must be in [0, " +
             std::to_string(d) + ")");
  }
  return j;
}

json setting_to_json(const SettingRecord& rec) {
  json s = {{"l", rec.l},
            {"m", rec.m},
            {"phi_lm", rec.phase},
            {"z_mean", rec.z_mean},
            {"q_lm", rec.q_value}};
  if (rec.shots) {
    s["n_zero"] = rec.shots->n_zero;
    s["n_one"] = rec.shots->n_one;
    s["n_total"] = rec.shots->n_total;
  } else {
    s["n_zero"] = nullptr;
    s["n_one"] = nullptr;
    s["n_total"] = nullptr;
  }
  return s;
}

json finite_or_null(double x) {
  return std::isfinite(x) ? json(x) : json(nullptr);
}

}  // namespace

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::parse, "malformed JSON at line " + std::to_string(line) +
                               ", column " + std::to_string(column) + ": " +
                               e.what());
  }
}

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    field_error(where, "expected [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    field_error(where, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    field_error(where + "[0]", "expected a non-empty row");
  }
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      field_error(row_where,
                  "expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j[r][c],
                                  row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

DensityMatrix preset_state(int d, std::string_view preset) {
  if (d < 2) {
    fail(ErrorKind::invalid_argument, "preset states need d >= 2");
  }
  if (preset == "maximally_mixed") {
    return DensityMatrix::maximally_mixed(d);
  }
  if (preset.starts_with("basis:")) {
    return DensityMatrix::basis_state(d, parse_index_suffix(preset, "basis:", d));
  }
  if (preset.starts_with("fourier:")) {
    const int j = parse_index_suffix(preset, "fourier:", d);
    ComplexVector amps(d);
    for (int k = 0; k < d; ++k) {
      const int reduced = (j * k) % d;
      amps[k] = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                           2.0 * std::numbers::pi * reduced / d);
    }
    return DensityMatrix::from_pure(PureState::from_amplitudes(amps));
  }
  fail(ErrorKind::invalid_argument,
       "unknown preset '" + std::string(preset) +
           "' (expected maximally_mixed, basis:<j> or fourier:<j>)");
}

DensityMatrix state_from_json(const json& j) {
  const long long d = integer_field(j, "d");
  if (d < 2 || d > 64) {
    field_error("d", "must be in [2, 64]");
  }
  const json& kind = require_field(j, "kind");
  if (!kind.is_string()) {
    field_error("kind", "expected a string");
  }
  const std::string k = kind.get<std::string>();
  if (k == "pure") {
    const json& amps = require_field(j, "amplitudes");
    if (!amps.is_array() || amps.size() != static_cast<std::size_t>(d)) {
      field_error("amplitudes", "expected " + std::to_string(d) + " entries");
    }
    ComplexVector a(d);
    for (long long i = 0; i < d; ++i) {
      a[i] = complex_from_json(amps[i],
                               "amplitudes[" + std::to_string(i) + "]");
    }
    return DensityMatrix::from_pure(PureState::from_amplitudes(std::move(a)));
  }
  if (k == "mixed") {
    ComplexMatrix m = matrix_from_json(require_field(j, "matrix"), "matrix");
    if (m.rows() != d || m.cols() != d) {
      field_error("matrix", "expected a " + std::to_string(d) + "x" +
                                std::to_string(d) + " matrix");
    }
    return DensityMatrix::from_matrix(std::move(m));
  }
  if (k == "preset") {
    const json& p = require_field(j, "preset");
    if (!p.is_string()) {
      field_error("preset", "expected a string");
    }
    return preset_state(static_cast<int>(d), p.get<std::string>());
  }
  field_error("kind", "expected \"pure\", \"mixed\" or \"preset\"");
}

json coefficients_to_json(const CoefficientTable& table) {
  json values = json::array();
  for (int l = 0; l < table.d; ++l) {
    json row = json::array();
    for (int m = 0; m < table.d; ++m) {
      row.push_back(table.value(l, m));
    }
    values.push_back(std::move(row));
  }
  json settings = json::array();
  for (const SettingRecord& rec : table.records) {
    settings.push_back(setting_to_json(rec));
  }
  return {{"schema", "hw-tomo/coefficients"},
          {"version", kSchemaVersion},
          {"d", table.d},
          {"mode", table.mode == EstimationMode::exact ? "exact" : "sampled"},
          {"shots", table.shots},
          {"seed", table.seed},
          {"trace_pinned", table.trace_pinned},
          {"values", std::move(values)},
          {"settings", std::move(settings)}};
}

CoefficientTable coefficients_from_json(const json& j) {
  const long long d = integer_field(j, "d");
  if (d < 2 || d > 64) {
    field_error("d", "must be in [2, 64]");
  }
  EstimationMode mode = EstimationMode::exact;
  if (auto it = j.find("mode"); it != j.end()) {
    if (*it == "sampled") {
      mode = EstimationMode::sampled;
    } else if (*it != "exact") {
      field_error("mode", "expected \"exact\" or \"sampled\"");
    }
  }
  const json& values = require_field(j, "values");
  if (!values.is_array() || values.size() != static_cast<std::size_t>(d)) {
    field_error("values", "expected " + std::to_string(d) + " rows");
  }
  std::vector<double> flat;
  flat.reserve(d * d);
  for (long long l = 0; l < d; ++l) {
    const std::string where = "values[" + std::to_string(l) + "]";
    if (!values[l].is_array() ||
        values[l].size() != static_cast<std::size_t>(d)) {
      field_error(where, "expected " + std::to_string(d) + " entries");
    }
    for (long long m = 0; m < d; ++m) {
      if (!values[l][m].is_number()) {
        field_error(where + "[" + std::to_string(m) + "]",
                    "expected a number");
      }
      flat.push_back(values[l][m].get<double>());
    }
  }
  CoefficientTable table = make_coefficient_table(
      static_cast<int>(d), std::move(flat), mode, unsigned_field(j, "shots", 0),
      unsigned_field(j, "seed", 0));
  if (auto it = j.find("trace_pinned"); it != j.end() && it->is_boolean()) {
    table.trace_pinned = it->get<bool>();
  }
  // Keep shot counts if the table came from a sampled run.
  if (auto it = j.find("settings"); it != j.end() && it->is_array() &&
                                    it->size() == table.records.size()) {
    for (std::size_t i = 0; i < table.records.size(); ++i) {
      const json& s = (*it)[i];
      if (s.is_object() && s.contains("z_mean") && s["z_mean"].is_number()) {
        table.records[i].z_mean = s["z_mean"].get<double>();
      }
      if (s.is_object() && s.contains("n_total") &&
          s["n_total"].is_number_unsigned() && s.contains("n_zero") &&
          s["n_zero"].is_number_unsigned() && s.contains("n_one") &&
          s["n_one"].is_number_unsigned()) {
        ShotResult r;
        r.n_zero = s["n_zero"].get<std::uint64_t>();
        r.n_one = s["n_one"].get<std::uint64_t>();
        r.n_total = s["n_total"].get<std::uint64_t>();
        if (r.n_zero + r.n_one != r.n_total || r.n_total == 0) {
          field_error("settings[" + std::to_string(i) + "]",
                      "n_zero + n_one must equal n_total > 0");
        }
        r.z_estimate = (static_cast<double>(r.n_zero) -
                        static_cast<double>(r.n_one)) /
                       static_cast<double>(r.n_total);
        table.records[i].shots = r;
      }
    }
  }
  return table;
}

std::string coefficients_to_csv(const CoefficientTable& table) {
  std::string out = "l,m,phi_lm,z_mean,q_lm\n";
  char buf[128];
  for (const SettingRecord& rec : table.records) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", rec.l, rec.m,
                  rec.phase, rec.z_mean, rec.q_value);
    out += buf;
  }
  return out;
}

json report_to_json(const ReconstructionReport& report) {
  json metrics = nullptr;
  if (report.frobenius_distance) {
    metrics = {{"fidelity", report.fidelity ? json(*report.fidelity)
                                            : json(nullptr)},
               {"trace_distance", *report.trace_distance},
               {"frobenius_distance", *report.frobenius_distance}};
  }
  return {{"schema", "hw-tomo/report"},
          {"version", kSchemaVersion},
          {"d", report.coefficients.d},
          {"rho_raw", to_json(report.rho_raw)},
          {"rho_physical", report.rho_physical
                               ? to_json(report.rho_physical->matrix())
                               : json(nullptr)},
          {"metrics", std::move(metrics)},
          {"shots_per_setting", report.shots_per_setting},
          {"total_shots", report.total_shots},
          {"coefficients", coefficients_to_json(report.coefficients)}};
}

json plan_to_json(const optics::OpticalPlan& plan) {
  json elements = json::array();
  for (const optics::OpticalElement& e : plan.elements) {
    json el = {{"kind", optics::kind_name(e.kind)}};
    switch (e.kind) {
      case optics::ElementKind::spp:
        el["k"] = e.order;
        break;
      case optics::ElementKind::dove_pair:
        el["l"] = e.order;
        el["alpha"] = std::numbers::pi * e.order / plan.d;
        break;
      case optics::ElementKind::phase_shift:
        el["phi"] = e.phase;
        break;
      default:
        break;
    }
    el["modes"] = e.modes;
    elements.push_back(std::move(el));
  }
  return {{"schema", "hw-tomo/plan"},
          {"version", kSchemaVersion},
          {"d", plan.d},
          {"target", {plan.l, plan.m}},
          {"layout", optics::layout_name(plan.layout)},
          {"elements", std::move(elements)},
          {"resources",
           {{"spp1", plan.resources.spp_one},
            {"sppm", plan.resources.spp_m},
            {"sppminusd", plan.resources.spp_minus_d},
            {"sorters", plan.resources.sorters}}}};
}

json verdict_to_json(const optics::GateVerdict& v) {
  json out = {{"l", v.l},
              {"m", v.m},
              {"layout", optics::layout_name(v.layout)},
              {"distance", finite_or_null(v.distance)},
              {"leakage", finite_or_null(v.leakage)},
              {"isometry_defect", finite_or_null(v.isometry_defect)},
              {"pass", v.passed}};
  if (!v.failure.empty()) {
    out["failure"] = v.failure;
  }
  return out;
}

json observables_to_json(int d, int l, int m) {
  const auto table = observable_table(d);
  json list = json::array();
  auto emit = [&](int ll, int mm) {
    const HWObservable& q = table->observable(ll, mm);
    list.push_back({{"l", ll},
                    {"m", mm},
                    {"phi_lm", q.phase},
                    {"matrix", to_json(q.matrix)}});
  };
  if (l < 0 && m < 0) {
    for (int ll = 0; ll < d; ++ll) {
      for (int mm = 0; mm < d; ++mm) {
        emit(ll, mm);
      }
    }
  } else {
    emit(l, m);
  }
  return {{"schema", "hw-tomo/observables"},
          {"version", kSchemaVersion},
          {"d", d},
          {"observables", std::move(list)}};
}

}  // namespace hwtomo::io
