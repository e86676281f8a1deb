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

#include "hwtomo/hw_basis.hpp"

#include <numbers>
#include <set>
#include <thread>

#include "gtest/gtest.h"
#include "hwtomo/error.hpp"
#include "oracles.hpp"

using namespace hwtomo;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(PauliX, qubit_case) {
  EXPECT_EQ(pauli_x(2), mat2(0, 1, 1, 0));
}

TEST(PauliX, wraps_around) {
  ComplexVector ket2 = ComplexVector::Zero(3);
  ket2[2] = 1.0;
  ComplexVector ket0 = ComplexVector::Zero(3);
  ket0[0] = 1.0;
  EXPECT_EQ(ComplexVector(pauli_x(3) * ket2), ket0);
}

TEST(PauliX, order_d) {
  const ComplexMatrix x = pauli_x(5);
  ComplexMatrix p = ComplexMatrix::Identity(5, 5);
  for (int i = 0; i < 5; ++i) p = oracle::matmul(p, x);
  EXPECT_LE(max_abs(p - ComplexMatrix::Identity(5, 5)), 1e-12);
}

TEST(PauliZ, qubit_and_qutrit) {
  EXPECT_LE(max_abs(pauli_z(2) - mat2(1, 0, 0, -1)), 1e-15);
  const ComplexMatrix z3 = pauli_z(3);
  EXPECT_LE(std::abs(z3(0, 0) - 1.0), 1e-15);
  EXPECT_LE(std::abs(z3(1, 1) - std::polar(1.0, 2 * kPi / 3)), 1e-15);
  EXPECT_LE(std::abs(z3(2, 2) - std::polar(1.0, 4 * kPi / 3)), 1e-15);
}

TEST(PauliZ, commutation_with_x) {
  for (int d = 2; d <= 8; ++d) {
    const ComplexMatrix x = pauli_x(d);
    const ComplexMatrix z = pauli_z(d);
    const Complex omega = std::polar(1.0, 2 * kPi / d);
    EXPECT_LE(max_abs(oracle::matmul(z, x) - omega * oracle::matmul(x, z)),
              1e-12)
        << "d = " << d;
  }
}

TEST(PauliZ, rejects_trivial_dimension) {
  EXPECT_THROW(pauli_z(1), Error);
  EXPECT_THROW(pauli_x(1), Error);
  EXPECT_THROW(pauli_x(0), Error);
}

TEST(PhaseAngle, arithmetic) {
  EXPECT_DOUBLE_EQ(phase_angle(6, 0, 0), kPi / 4);
  EXPECT_DOUBLE_EQ(phase_angle(4, 1, 2), -kPi / 4);
  EXPECT_DOUBLE_EQ(phase_angle(3, 2, 2), kPi / 4 - 4 * kPi / 3);
  EXPECT_THROW(phase_angle(3, 3, 0), Error);
  EXPECT_THROW(phase_angle(3, 0, -1), Error);
}

TEST(HWObservable, zero_index_is_identity) {
  for (int d = 2; d <= 8; ++d) {
    EXPECT_LE(max_abs(hw_observable(d, 0, 0).matrix -
                      ComplexMatrix::Identity(d, d)),
              1e-15);
  }
}

TEST(HWObservable, qubit_case_is_pauli_basis) {
  const Complex i(0, 1);
  EXPECT_LE(max_abs(hw_observable(2, 0, 1).matrix - mat2(0, 1, 1, 0)), 1e-12);
  EXPECT_LE(max_abs(hw_observable(2, 1, 0).matrix - mat2(1, 0, 0, -1)), 1e-12);
  EXPECT_LE(max_abs(hw_observable(2, 1, 1).matrix - mat2(0, -i, i, 0)), 1e-12);
}

TEST(HWObservable, matches_phase_form_for_all_indices) {
  for (int d = 2; d <= 8; ++d) {
    for (int l = 0; l < d; ++l) {
      for (int m = 0; m < d; ++m) {
        const HWObservable& q = hw_observable(d, l, m);
        EXPECT_EQ(q.d, d);
        EXPECT_DOUBLE_EQ(q.phase, phase_angle(d, l, m));
        EXPECT_LE(max_abs(q.matrix - oracle::hw_observable(d, l, m)), 1e-12)
            << "d=" << d << " l=" << l << " m=" << m;
        EXPECT_LE(max_abs(weyl_operator(d, l, m) - oracle::weyl(d, l, m)),
                  1e-12);
      }
    }
  }
}

TEST(HWObservable, hermitian_and_trace_structure) {
  for (int d = 2; d <= 8; ++d) {
    for (int l = 0; l < d; ++l) {
      for (int m = 0; m < d; ++m) {
        const ComplexMatrix& q = hw_observable(d, l, m).matrix;
        EXPECT_LE(hermiticity_defect(q), 1e-12);
        const double expected_trace = (l == 0 && m == 0) ? d : 0.0;
        EXPECT_LE(std::abs(q.trace() - expected_trace), 1e-10);
        EXPECT_NEAR(oracle::trace_product(q, q).real(), d, 1e-9);
      }
    }
  }
}

TEST(HWObservable, rejects_out_of_range) {
  EXPECT_THROW(hw_observable(3, 3, 0), Error);
  EXPECT_THROW(hw_observable(3, 0, 3), Error);
  EXPECT_THROW(hw_observable(1, 0, 0), Error);
}

TEST(Orthogonality, small_dimensions) {
  EXPECT_LE(verify_orthogonality(2), 1e-10);
  EXPECT_LE(verify_orthogonality(5), 1e-10);
}

TEST(Orthogonality, gram_matrix_is_scaled_identity) {
  for (int d = 2; d <= 8; ++d) {
    const Eigen::MatrixXd gram = gram_matrix(d);
    const Eigen::MatrixXd target =
        d * Eigen::MatrixXd::Identity(d * d, d * d);
    EXPECT_LE((gram - target).cwiseAbs().maxCoeff(), 1e-9) << "d = " << d;
    // Independent check of the same quantity through the oracle matrices.
    double worst = 0.0;
    for (int a = 0; a < d * d; ++a) {
      for (int b = 0; b < d * d; ++b) {
        const Complex t =
            oracle::trace_product(oracle::hw_observable(d, a / d, a % d),
                                  oracle::hw_observable(d, b / d, b % d));
        worst = std::max(worst, std::abs(t - (a == b ? double(d) : 0.0)));
      }
    }
    EXPECT_LE(worst, 1e-9);
  }
}

TEST(ObservableCache, concurrent_first_access_is_idempotent) {
  constexpr int kThreads = 8;
  std::vector<const ObservableTable*> seen(kThreads, nullptr);
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < kThreads; ++t) {
      threads.emplace_back([&, t] { seen[t] = observable_table(11).get(); });
    }
  }
  const std::set<const ObservableTable*> distinct(seen.begin(), seen.end());
  EXPECT_EQ(distinct.size(), 1u);
  EXPECT_EQ(observable_table(11)->dim(), 11);
}
