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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hwtomo/dqc1.hpp"
#include "hwtomo/qmath.hpp"

namespace hwtomo {

struct MeasurementSetting {
  int l = 0;
  int m = 0;
  double phase = 0.0;     // φ_lm
  ComplexMatrix unitary;  // Z^l X^m
};

/// The d² settings in canonical order (l outer, m inner).
struct MeasurementPlan {
  int d = 0;
  std::vector<MeasurementSetting> settings;
};

MeasurementPlan build_plan(int d);

enum class EstimationMode { exact, sampled };

/// Per-setting outcome. `shots` is present only in sampled mode and only for
/// settings that were actually measured (a pinned (0,0) is not).
struct SettingRecord {
  int l = 0;
  int m = 0;
  double phase = 0.0;
  double z_mean = 0.0;
  double q_value = 0.0;
  std::optional<ShotResult> shots;
};

/// Estimates of ⟨Q_lm⟩, values[l·d + m].
struct CoefficientTable {
  int d = 0;
  EstimationMode mode = EstimationMode::exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool trace_pinned = true;
  std::vector<double> values;
  std::vector<SettingRecord> records;

  double value(int l, int m) const { return values.at(l * d + m); }
};

struct EstimationOptions {
  std::uint64_t shots = 0;  // 0 selects exact mode
  std::uint64_t master_seed = 0;
  bool pin_trace = true;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// ⟨Q_lm⟩ = √2·⟨Z⟩ per setting. With pin_trace the (0,0) entry is set to 1
/// without measuring. Sampled settings use derive_seed(master, l, m), and
/// results are written by index, so the table is independent of `threads`.
CoefficientTable estimate_coefficients(const DensityMatrix& rho,
                                       const MeasurementPlan& plan,
                                       const EstimationOptions& options);

/// Builds a table from externally supplied values (row-major, d² entries),
/// checking |value| ≤ √2 + 1e-9. Records carry φ_lm and z_mean = q/√2.
CoefficientTable make_coefficient_table(int d, std::vector<double> values,
                                        EstimationMode mode,
                                        std::uint64_t shots,
                                        std::uint64_t seed);

/// Linear inversion ρ = (1/d) Σ values[l][m] Q_lm.
ComplexMatrix reconstruct(const CoefficientTable& coeffs);

/// Euclidean projection of a real vector onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

/// Closest unit-trace PSD matrix in Frobenius norm. Input must be Hermitian
/// within 1e-8.
DensityMatrix project_physical(const ComplexMatrix& rho_raw);

struct ReconstructionReport {
  ComplexMatrix rho_raw;
  std::optional<DensityMatrix> rho_physical;  // absent if projection is off
  CoefficientTable coefficients;
  // Ground-truth comparison, present only when a reference state is given.
  // Without projection, fidelity is left unset.
  std::optional<double> fidelity;
  std::optional<double> trace_distance;
  std::optional<double> frobenius_distance;
  std::uint64_t shots_per_setting = 0;
  std::uint64_t total_shots = 0;
};

ReconstructionReport reconstruct_report(CoefficientTable coeffs,
                                        const DensityMatrix* truth,
                                        bool project = true);

/// build_plan → estimate_coefficients → reconstruct → project → metrics.
ReconstructionReport run_tomography(const DensityMatrix& rho_true,
                                    const EstimationOptions& options,
                                    bool project = true);

}  // namespace hwtomo
