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

#include "hwtomo/tomography.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "hwtomo/error.hpp"
#include "hwtomo/hw_basis.hpp"
#include "hwtomo/rng.hpp"

namespace hwtomo {

namespace {

constexpr double kCoefficientBound = std::numbers::sqrt2 + 1e-9;
constexpr double kProjectionHermitianTol = 1e-8;

// Runs body(i) for i in [0, n) on up to `threads` workers. The first
// exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) {
              first_error = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace

MeasurementPlan build_plan(int d) {
  if (d < 2) {
    fail(ErrorKind::invalid_argument,
         "tomography needs d >= 2 (got " + std::to_string(d) + ")");
  }
  const auto table = observable_table(d);
  MeasurementPlan plan;
  plan.d = d;
  plan.settings.reserve(d * d);
  for (int l = 0; l < d; ++l) {
    for (int m = 0; m < d; ++m) {
      plan.settings.push_back({l, m, phase_angle(d, l, m), table->weyl(l, m)});
    }
  }
  return plan;
}

CoefficientTable estimate_coefficients(const DensityMatrix& rho,
                                       const MeasurementPlan& plan,
                                       const EstimationOptions& options) {
  const int d = plan.d;
  if (rho.dim() != d) {
    fail(ErrorKind::dimension_mismatch,
         "state dimension " + std::to_string(rho.dim()) +
             " does not match plan dimension " + std::to_string(d));
  }
  if (plan.settings.size() != static_cast<std::size_t>(d * d)) {
    fail(ErrorKind::invalid_argument, "measurement plan must hold d^2 settings");
  }

  CoefficientTable table;
  table.d = d;
  table.mode = options.shots == 0 ? EstimationMode::exact
                                  : EstimationMode::sampled;
  table.shots = options.shots;
  table.seed = options.master_seed;
  table.trace_pinned = options.pin_trace;
  table.values.assign(d * d, 0.0);
  table.records.resize(d * d);

  parallel_for(plan.settings.size(), options.threads, [&](std::size_t i) {
    const MeasurementSetting& s = plan.settings[i];
    SettingRecord& rec = table.records[i];
    rec.l = s.l;
    rec.m = s.m;
    rec.phase = s.phase;

    if (options.pin_trace && s.l == 0 && s.m == 0) {
      rec.q_value = 1.0;
      rec.z_mean = 1.0 / std::numbers::sqrt2;
    } else {
      const Dqc1Setting setting(s.unitary, s.phase);
      const double z = expectation_z(rho, setting);
      if (table.mode == EstimationMode::exact) {
        rec.z_mean = z;
      } else {
        const ShotResult shots = sample_ancilla(
            z, options.shots,
            derive_seed(options.master_seed, static_cast<std::uint32_t>(s.l),
                        static_cast<std::uint32_t>(s.m)));
        rec.z_mean = shots.z_estimate;
        rec.shots = shots;
      }
      rec.q_value = std::numbers::sqrt2 * rec.z_mean;
    }
    table.values[s.l * d + s.m] = rec.q_value;
  });
  return table;
}

CoefficientTable make_coefficient_table(int d, std::vector<double> values,
                                        EstimationMode mode,
                                        std::uint64_t shots,
                                        std::uint64_t seed) {
  if (d < 2) {
    fail(ErrorKind::invalid_argument, "coefficient table needs d >= 2");
  }
  if (values.size() != static_cast<std::size_t>(d * d)) {
    fail(ErrorKind::dimension_mismatch,
         "coefficient table needs d^2 = " + std::to_string(d * d) +
             " values (got " + std::to_string(values.size()) + ")");
  }
  CoefficientTable table;
  table.d = d;
  table.mode = mode;
  table.shots = shots;
  table.seed = seed;
  table.records.reserve(values.size());
  for (int l = 0; l < d; ++l) {
    for (int m = 0; m < d; ++m) {
      const double v = values[l * d + m];
      if (!std::isfinite(v) || std::abs(v) > kCoefficientBound) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "coefficient (" << l << ", " << m << ") = " << v
            << " violates |<Q_lm>| <= sqrt(2)";
        fail(ErrorKind::invalid_argument, msg.str());
      }
      SettingRecord rec;
      rec.l = l;
      rec.m = m;
      rec.phase = phase_angle(d, l, m);
      rec.q_value = v;
      rec.z_mean = v / std::numbers::sqrt2;
      table.records.push_back(rec);
    }
  }
  table.trace_pinned = values[0] == 1.0;
  table.values = std::move(values);
  return table;
}

ComplexMatrix reconstruct(const CoefficientTable& coeffs) {
  const int d = coeffs.d;
  if (coeffs.values.size() != static_cast<std::size_t>(d * d)) {
    fail(ErrorKind::dimension_mismatch, "coefficient table has wrong size");
  }
  const auto table = observable_table(d);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (int l = 0; l < d; ++l) {
    for (int m = 0; m < d; ++m) {
      rho += coeffs.values[l * d + m] * table->observable(l, m).matrix;
    }
  }
  return rho / static_cast<double>(d);
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) {
    fail(ErrorKind::invalid_argument, "simplex projection of empty vector");
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] − (Σ_{i<k} sorted[i] − 1)/k > 0.
  double prefix = 0.0;
  double theta = 0.0;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    prefix += sorted[k - 1];
    const double candidate = (prefix - 1.0) / static_cast<double>(k);
    if (sorted[k - 1] - candidate > 0.0) {
      theta = candidate;
    }
  }
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [theta](double x) { return std::max(x - theta, 0.0); });
  return out;
}

DensityMatrix project_physical(const ComplexMatrix& rho_raw) {
  require_finite(rho_raw, "project_physical input");
  if (const double h = hermiticity_defect(rho_raw);
      h > kProjectionHermitianTol) {
    std::ostringstream msg;
    msg << "project_physical: input is not Hermitian (max |m - m^dagger| = "
        << h << ")";
    fail(ErrorKind::invalid_argument, msg.str());
  }
  const HermitianEigen eig = hermitian_eigen(rho_raw);
  const std::vector<double> lambda = project_to_simplex(
      std::span<const double>(eig.values.data(), eig.values.size()));
  RealVector weights(static_cast<Eigen::Index>(lambda.size()));
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    weights[static_cast<Eigen::Index>(i)] = lambda[i];
  }
  ComplexMatrix rho = eig.vectors * weights.cast<Complex>().asDiagonal() *
                      eig.vectors.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix::from_matrix(std::move(rho));
}

ReconstructionReport reconstruct_report(CoefficientTable coeffs,
                                        const DensityMatrix* truth,
                                        bool project) {
  ReconstructionReport report;
  report.rho_raw = reconstruct(coeffs);
  if (project) {
    report.rho_physical = project_physical(report.rho_raw);
  }
  if (coeffs.mode == EstimationMode::sampled) {
    report.shots_per_setting = coeffs.shots;
    for (const SettingRecord& rec : coeffs.records) {
      if (rec.shots) {
        report.total_shots += rec.shots->n_total;
      }
    }
  }
  if (truth != nullptr) {
    if (truth->dim() != coeffs.d) {
      fail(ErrorKind::dimension_mismatch,
           "reference state dimension does not match coefficient table");
    }
    if (report.rho_physical) {
      const StateMetrics mt = metrics(*report.rho_physical, *truth);
      report.fidelity = mt.fidelity;
      report.trace_distance = mt.trace_distance;
      report.frobenius_distance = mt.frobenius_distance;
    } else {
      report.trace_distance = trace_distance(report.rho_raw, truth->matrix());
      report.frobenius_distance =
          frobenius_distance(report.rho_raw, truth->matrix());
    }
  }
  report.coefficients = std::move(coeffs);
  return report;
}

ReconstructionReport run_tomography(const DensityMatrix& rho_true,
                                    const EstimationOptions& options,
                                    bool project) {
  const MeasurementPlan plan = build_plan(rho_true.dim());
  return reconstruct_report(estimate_coefficients(rho_true, plan, options),
                            &rho_true, project);
}

}  // namespace hwtomo
