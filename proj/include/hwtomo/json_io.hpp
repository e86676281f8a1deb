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

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hwtomo/optics.hpp"
#include "hwtomo/qmath.hpp"
#include "hwtomo/tomography.hpp"

// File formats. Complex numbers are [re, im] pairs, matrices are arrays of
// rows of pairs. Every emitted document carries "schema" and "version";
// the JSON Schemas live in schemas/ at the repository root.

namespace hwtomo::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parses text, reporting syntax errors as "line L, column C: ...".
json parse_text(std::string_view text);

json to_json(const Complex& z);
json to_json(const ComplexMatrix& m);

/// `where` names the field in diagnostics, e.g. "matrix".
Complex complex_from_json(const json& j, const std::string& where);
ComplexMatrix matrix_from_json(const json& j, const std::string& where);

/// "maximally_mixed", "basis:<j>" or "fourier:<j>".
DensityMatrix preset_state(int d, std::string_view preset);

/// State file: {"d", "kind": "pure"|"mixed"|"preset", "amplitudes" |
/// "matrix" | "preset"}. Physicality violations raise not_physical.
DensityMatrix state_from_json(const json& j);

json coefficients_to_json(const CoefficientTable& table);
CoefficientTable coefficients_from_json(const json& j);

/// Columns l, m, phi_lm, z_mean, q_lm at 17 significant digits.
std::string coefficients_to_csv(const CoefficientTable& table);

json report_to_json(const ReconstructionReport& report);

json plan_to_json(const optics::OpticalPlan& plan);
json verdict_to_json(const optics::GateVerdict& verdict);

/// One observable, or all d² when l and m are negative.
json observables_to_json(int d, int l, int m);

}  // namespace hwtomo::io
