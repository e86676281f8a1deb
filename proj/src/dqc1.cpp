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

#include "hwtomo/dqc1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hwtomo/error.hpp"
#include "hwtomo/rng.hpp"

namespace hwtomo {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kProbabilitySlack = 1e-10;

void require_compatible(const DensityMatrix& rho, const Dqc1Setting& setting) {
  if (rho.dim() != setting.dim()) {
    fail(ErrorKind::dimension_mismatch,
         "DQC1: state dimension " + std::to_string(rho.dim()) +
             " does not match unitary dimension " +
             std::to_string(setting.dim()));
  }
}

}  // namespace

Dqc1Setting::Dqc1Setting(ComplexMatrix unitary, double phase)
    : unitary_(std::move(unitary)), phase_(phase) {
  require_finite(unitary_, "DQC1 unitary");
  if (!std::isfinite(phase_)) {
    fail(ErrorKind::invalid_argument, "DQC1 phase must be finite");
  }
  if (const double defect = unitarity_defect(unitary_); defect > kUnitaryTol) {
    std::ostringstream msg;
    msg << "DQC1 unitary is not unitary (max |U^dagger U - I| = " << defect
        << ")";
    fail(ErrorKind::invalid_argument, msg.str());
  }
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::numbers::sqrt2;
}

ComplexMatrix phase_gate(double phi) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  p(1, 1) = std::polar(1.0, phi);
  return p;
}

ComplexMatrix controlled(const ComplexMatrix& u) {
  const Eigen::Index d = u.rows();
  ComplexMatrix c = ComplexMatrix::Zero(2 * d, 2 * d);
  c.topLeftCorner(d, d).setIdentity();
  c.bottomRightCorner(d, d) = u;
  return c;
}

ComplexMatrix evolve_exact(const DensityMatrix& rho,
                           const Dqc1Setting& setting) {
  require_compatible(rho, setting);
  const int d = rho.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  ComplexMatrix ancilla_in = ComplexMatrix::Zero(2, 2);
  ancilla_in(0, 0) = 1.0;
  ComplexMatrix state = tensor_product(ancilla_in, rho.matrix());

  const ComplexMatrix h = tensor_product(hadamard(), id);
  const std::array<ComplexMatrix, 4> gates = {
      h,
      tensor_product(phase_gate(setting.phase()), id),
      controlled(setting.unitary()),
      h,
  };
  for (const ComplexMatrix& g : gates) {
    state = g * state * g.adjoint();
  }
  return state;
}

ComplexMatrix reduced_ancilla(const DensityMatrix& rho,
                              const Dqc1Setting& setting) {
  const std::array<int, 2> dims = {2, rho.dim()};
  return partial_trace(evolve_exact(rho, setting), dims, 0);
}

double expectation_z(const DensityMatrix& rho, const Dqc1Setting& setting) {
  require_compatible(rho, setting);
  const Complex t = (setting.unitary() * rho.matrix()).trace();
  return (std::polar(1.0, setting.phase()) * t).real();
}

ShotResult sample_ancilla(double expectation, std::uint64_t shots,
                          std::uint64_t seed) {
  if (shots == 0) {
    fail(ErrorKind::invalid_argument, "shot count must be positive");
  }
  double p_zero = 0.5 * (1.0 + expectation);
  if (!(p_zero >= -kProbabilitySlack && p_zero <= 1.0 + kProbabilitySlack)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ancilla outcome probability " << p_zero << " outside [0, 1]";
    fail(ErrorKind::internal, msg.str());
  }
  p_zero = std::clamp(p_zero, 0.0, 1.0);

  Rng rng(seed);
  ShotResult out;
  out.n_total = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    if (rng.uniform() < p_zero) {
      ++out.n_zero;
    }
  }
  out.n_one = shots - out.n_zero;
  out.z_estimate = (static_cast<double>(out.n_zero) -
                    static_cast<double>(out.n_one)) /
                   static_cast<double>(shots);
  return out;
}

ShotResult sample_shots(const DensityMatrix& rho, const Dqc1Setting& setting,
                        std::uint64_t shots, std::uint64_t seed) {
  return sample_ancilla(expectation_z(rho, setting), shots, seed);
}

}  // namespace hwtomo
