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

#include <numbers>
#include <set>
#include <utility>

#include "gtest/gtest.h"
#include "hwtomo/error.hpp"
#include "hwtomo/hw_basis.hpp"
#include "oracles.hpp"

using namespace hwtomo;

namespace {

constexpr double kPi = std::numbers::pi;

CoefficientTable exact_table(const DensityMatrix& rho) {
  return estimate_coefficients(rho, build_plan(rho.dim()), {});
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST(BuildPlan, qubit) {
  const MeasurementPlan plan = build_plan(2);
  ASSERT_EQ(plan.settings.size(), 4u);
  const double expected_phase[] = {kPi / 4, kPi / 4, kPi / 4, -kPi / 4};
  for (int i = 0; i < 4; ++i) {
    const MeasurementSetting& s = plan.settings[i];
    EXPECT_EQ(s.l, i / 2);
    EXPECT_EQ(s.m, i % 2);
    EXPECT_DOUBLE_EQ(s.phase, expected_phase[i]);
    EXPECT_LE(max_abs(s.unitary - oracle::weyl(2, s.l, s.m)), 1e-15);
  }
  EXPECT_EQ(plan.settings[0].unitary, ComplexMatrix::Identity(2, 2));
}

TEST(BuildPlan, enumeration_is_row_major_and_distinct) {
  const MeasurementPlan plan = build_plan(5);
  ASSERT_EQ(plan.settings.size(), 25u);
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < plan.settings.size(); ++i) {
    const MeasurementSetting& s = plan.settings[i];
    EXPECT_EQ(s.l * 5 + s.m, static_cast<int>(i));
    EXPECT_DOUBLE_EQ(s.phase, phase_angle(5, s.l, s.m));
    seen.emplace(s.l, s.m);
  }
  EXPECT_EQ(seen.size(), 25u);
  EXPECT_THROW(build_plan(1), Error);
}

TEST(EstimateCoefficients, maximally_mixed) {
  for (int d = 2; d <= 8; ++d) {
    const CoefficientTable t = exact_table(DensityMatrix::maximally_mixed(d));
    EXPECT_EQ(t.value(0, 0), 1.0);
    for (int i = 1; i < d * d; ++i) EXPECT_NEAR(t.values[i], 0.0, 1e-12);
  }
}

TEST(EstimateCoefficients, qubit_ground_state) {
  const CoefficientTable t = exact_table(DensityMatrix::basis_state(2, 0));
  EXPECT_NEAR(t.value(1, 0), 1.0, 1e-12);
  EXPECT_NEAR(t.value(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(t.value(1, 1), 0.0, 1e-12);
}

TEST(EstimateCoefficients, root_two_z_equals_direct_trace) {
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const DensityMatrix rho = random_density_matrix(d, 1 + seed % d, seed);
      EstimationOptions opts;
      opts.pin_trace = false;
      const CoefficientTable t =
          estimate_coefficients(rho, build_plan(d), opts);
      for (int l = 0; l < d; ++l) {
        for (int m = 0; m < d; ++m) {
          const double direct =
              oracle::trace_product(rho.matrix(), oracle::hw_observable(d, l, m))
                  .real();
          EXPECT_NEAR(t.value(l, m), direct, 1e-12);
        }
      }
      for (const SettingRecord& r : t.records) {
        EXPECT_NEAR(r.q_value, std::numbers::sqrt2 * r.z_mean, 1e-15);
        EXPECT_FALSE(r.shots.has_value());
      }
    }
  }
}

TEST(EstimateCoefficients, pinned_and_unpinned_agree_in_exact_mode) {
  const DensityMatrix rho = random_density_matrix(4, 4, 9);
  EstimationOptions unpinned;
  unpinned.pin_trace = false;
  const CoefficientTable a = exact_table(rho);
  const CoefficientTable b = estimate_coefficients(rho, build_plan(4), unpinned);
  EXPECT_TRUE(a.trace_pinned);
  EXPECT_FALSE(b.trace_pinned);
  EXPECT_EQ(a.value(0, 0), 1.0);
  EXPECT_NEAR(b.value(0, 0), 1.0, 1e-15);
}

TEST(EstimateCoefficients, sampled_values_near_exact) {
  const DensityMatrix rho = random_density_matrix(3, 3, 2024);
  const CoefficientTable exact = exact_table(rho);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EstimationOptions opts;
    opts.shots = 100'000;
    opts.master_seed = seed;
    const CoefficientTable t = estimate_coefficients(rho, build_plan(3), opts);
    EXPECT_EQ(t.mode, EstimationMode::sampled);
    EXPECT_EQ(t.value(0, 0), 1.0);
    for (int i = 0; i < 9; ++i) {
      EXPECT_LE(std::abs(t.values[i] - exact.values[i]), 0.02)
          << "seed " << seed << " index " << i;
      EXPECT_LE(std::abs(t.values[i]), std::numbers::sqrt2 + 1e-9);
    }
  }
}

TEST(EstimateCoefficients, sampled_errors_are_unbiased) {
  constexpr int kSeeds = 400;
  const DensityMatrix rho = random_density_matrix(3, 2, 55);
  const CoefficientTable exact = exact_table(rho);
  std::vector<double> sum(9, 0.0), sum_sq(9, 0.0);
  for (int seed = 0; seed < kSeeds; ++seed) {
    EstimationOptions opts;
    opts.shots = 2000;
    opts.master_seed = 1000 + seed;
    opts.pin_trace = false;
    const CoefficientTable t = estimate_coefficients(rho, build_plan(3), opts);
    for (int i = 0; i < 9; ++i) {
      const double err = t.values[i] - exact.values[i];
      sum[i] += err;
      sum_sq[i] += err * err;
    }
  }
  for (int i = 0; i < 9; ++i) {
    const double mean = sum[i] / kSeeds;
    const double var = (sum_sq[i] - kSeeds * mean * mean) / (kSeeds - 1);
    const double standard_error = std::sqrt(var / kSeeds);
    EXPECT_LE(std::abs(mean), 3 * standard_error) << "setting " << i;
  }
}

TEST(EstimateCoefficients, independent_of_thread_count) {
  const DensityMatrix rho = random_density_matrix(5, 3, 8);
  EstimationOptions opts;
  opts.shots = 3000;
  opts.master_seed = 99;
  opts.threads = 1;
  const CoefficientTable serial = estimate_coefficients(rho, build_plan(5), opts);
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    opts.threads = threads;
    const CoefficientTable t = estimate_coefficients(rho, build_plan(5), opts);
    EXPECT_EQ(t.values, serial.values) << threads << " threads";
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      EXPECT_EQ(t.records[i].shots, serial.records[i].shots);
    }
  }
}

TEST(EstimateCoefficients, plan_must_match_state) {
  EXPECT_THROW(estimate_coefficients(DensityMatrix::maximally_mixed(3),
                                     build_plan(4), {}),
               Error);
}

TEST(MakeCoefficientTable, rejects_impossible_values) {
  std::vector<double> values(4, 0.0);
  values[0] = 1.0;
  values[3] = 1.5;
  EXPECT_THROW(make_coefficient_table(2, values, EstimationMode::exact, 0, 0),
               Error);
  EXPECT_THROW(make_coefficient_table(2, std::vector<double>(5, 0.0),
                                      EstimationMode::exact, 0, 0),
               Error);
}

TEST(Reconstruct, identity_table) {
  for (int d = 2; d <= 6; ++d) {
    std::vector<double> values(d * d, 0.0);
    values[0] = 1.0;
    const CoefficientTable t =
        make_coefficient_table(d, values, EstimationMode::exact, 0, 0);
    EXPECT_LE(max_abs(reconstruct(t) -
                      ComplexMatrix::Identity(d, d) / static_cast<double>(d)),
              1e-14);
  }
}

TEST(Reconstruct, qubit_layout) {
  // Table (Q_00, Q_01, Q_10, Q_11) = (1, x, z, y).
  const double x = 0.3, z = -0.5, y = 0.4;
  const CoefficientTable t = make_coefficient_table(
      2, {1.0, x, z, y}, EstimationMode::exact, 0, 0);
  const Complex i(0, 1);
  ComplexMatrix expected(2, 2);
  expected << 1.0 + z, x - i * y, x + i * y, 1.0 - z;
  EXPECT_LE(max_abs(reconstruct(t) - 0.5 * expected), 1e-14);
}

TEST(Reconstruct, roundtrip_all_dimensions) {
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const DensityMatrix rho = random_density_matrix(d, 1 + seed % d, seed);
      const ComplexMatrix raw = reconstruct(exact_table(rho));
      EXPECT_LE(frobenius_distance(raw, rho.matrix()), 1e-10);
      EXPECT_LE(hermiticity_defect(raw), 1e-12);
    }
  }
}

TEST(Reconstruct, trace_equals_identity_coefficient) {
  EstimationOptions opts;
  opts.shots = 500;
  opts.master_seed = 4;
  opts.pin_trace = false;
  const CoefficientTable t = estimate_coefficients(
      random_density_matrix(4, 4, 3), build_plan(4), opts);
  const Complex tr = reconstruct(t).trace();
  EXPECT_NEAR(tr.real(), t.value(0, 0), 1e-14);
  EXPECT_NEAR(tr.imag(), 0.0, 1e-14);
}

TEST(ProjectToSimplex, matches_bisection_oracle) {
  const std::vector<std::vector<double>> cases = {
      {1.2, -0.2}, {0.5, 0.5}, {3.0, 1.0, -2.0}, {-1.0, -1.0, -1.0, -1.0},
      {0.1, 0.2, 0.3, 0.4}, {10.0, 0.0, 0.0}, {0.6, 0.6, 0.6}};
  for (const auto& v : cases) {
    const std::vector<double> got = project_to_simplex(v);
    const std::vector<double> want = oracle::simplex_by_bisection(v);
    ASSERT_EQ(got.size(), want.size());
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-12);
      EXPECT_GE(got[i], 0.0);
      total += got[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ProjectPhysical, fixed_points_and_hand_case) {
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix mixed =
        ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    EXPECT_LE(max_abs(project_physical(mixed).matrix() - mixed), 1e-12);
  }
  EXPECT_LE(max_abs(project_physical(diag2(1.2, -0.2)).matrix() -
                    diag2(1.0, 0.0)),
            1e-12);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_density_matrix(4, 1 + seed % 4, seed);
    EXPECT_LE(max_abs(project_physical(rho.matrix()).matrix() - rho.matrix()),
              1e-10);
  }
}

TEST(ProjectPhysical, idempotent_and_contractive) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    EstimationOptions opts;
    opts.shots = 50;  // few shots: raw estimates are often non-physical
    opts.master_seed = seed;
    const ComplexMatrix raw = reconstruct(estimate_coefficients(
        random_density_matrix(d, 1, seed + 100), build_plan(d), opts));
    const DensityMatrix once = project_physical(raw);
    const DensityMatrix twice = project_physical(once.matrix());
    EXPECT_LE(max_abs(once.matrix() - twice.matrix()), 1e-12);
    for (std::uint64_t ref = 0; ref < 100; ++ref) {
      const DensityMatrix sigma =
          random_density_matrix(d, 1 + ref % d, 7000 + ref);
      EXPECT_LE(frobenius_distance(once.matrix(), sigma.matrix()),
                frobenius_distance(raw, sigma.matrix()) + 1e-9);
    }
  }
}

TEST(ProjectPhysical, rejects_non_hermitian) {
  ComplexMatrix m = diag2(0.5, 0.5);
  m(0, 1) = 0.1;
  EXPECT_THROW(project_physical(m), Error);
}

TEST(RunTomography, exact_mode_fidelity) {
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DensityMatrix rho = random_density_matrix(d, 1 + seed % d, seed);
      const ReconstructionReport r = run_tomography(rho, {});
      ASSERT_TRUE(r.fidelity.has_value());
      EXPECT_GE(*r.fidelity, 1.0 - 1e-9);
      EXPECT_LE(*r.frobenius_distance, 1e-9);
      EXPECT_EQ(r.total_shots, 0u);
    }
  }
}

TEST(RunTomography, sampled_fidelity_and_scaling) {
  const DensityMatrix rho = random_density_matrix(3, 3, 31);
  std::vector<double> fid, err_n, err_4n;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EstimationOptions opts;
    opts.shots = 100'000;
    opts.master_seed = seed;
    opts.threads = 0;
    const ReconstructionReport a = run_tomography(rho, opts);
    fid.push_back(*a.fidelity);
    err_n.push_back(*a.frobenius_distance);
    EXPECT_EQ(a.shots_per_setting, 100'000u);
    EXPECT_EQ(a.total_shots, 8u * 100'000u);  // (0,0) is pinned
    opts.shots = 400'000;
    err_4n.push_back(*run_tomography(rho, opts).frobenius_distance);
  }
  EXPECT_GE(oracle::median(fid), 0.99);
  const double ratio = oracle::median(err_n) / oracle::median(err_4n);
  EXPECT_GE(ratio, 1.6);
  EXPECT_LE(ratio, 2.6);
}

TEST(ReconstructReport, without_truth_or_projection) {
  const CoefficientTable t = exact_table(random_density_matrix(3, 2, 5));
  const ReconstructionReport r = reconstruct_report(t, nullptr, false);
  EXPECT_FALSE(r.rho_physical.has_value());
  EXPECT_FALSE(r.fidelity.has_value());
  EXPECT_FALSE(r.frobenius_distance.has_value());
  const DensityMatrix truth = random_density_matrix(3, 2, 5);
  const ReconstructionReport with_truth = reconstruct_report(t, &truth, false);
  EXPECT_FALSE(with_truth.fidelity.has_value());
  ASSERT_TRUE(with_truth.frobenius_distance.has_value());
  EXPECT_LE(*with_truth.frobenius_distance, 1e-10);
}
