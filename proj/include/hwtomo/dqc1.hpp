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

#include "hwtomo/qmath.hpp"

// One-clean-qubit trace estimation. The circuit acts on ancilla ⊗ qudit
// (ancilla first):
//
//   |0⟩⟨0| ⊗ ρ  →  H  →  P_φ = diag(1, e^{iφ})  →  C(U)  →  H  →  measure Z
//
// where C(U) applies U to the qudit when the ancilla is |1⟩. The qudit is
// only ever traced out.

namespace hwtomo {

/// Controlled unitary U and the phase φ of the ancilla phase gate.
class Dqc1Setting {
 public:
  /// Validates ‖U†U − I‖_max ≤ 1e-10.
  Dqc1Setting(ComplexMatrix unitary, double phase);

  int dim() const { return static_cast<int>(unitary_.rows()); }
  const ComplexMatrix& unitary() const { return unitary_; }
  double phase() const { return phase_; }

 private:
  ComplexMatrix unitary_;
  double phase_;
};

struct ShotResult {
  std::uint64_t n_zero = 0;
  std::uint64_t n_one = 0;
  std::uint64_t n_total = 0;
  double z_estimate = 0.0;

  bool operator==(const ShotResult&) const = default;
};

ComplexMatrix hadamard();
ComplexMatrix phase_gate(double phi);
/// Block-diag(I_d, U) on ancilla ⊗ qudit.
ComplexMatrix controlled(const ComplexMatrix& u);

/// Full 2d×2d output state of the circuit.
ComplexMatrix evolve_exact(const DensityMatrix& rho, const Dqc1Setting& setting);

/// 2×2 ancilla state after tracing out the qudit.
ComplexMatrix reduced_ancilla(const DensityMatrix& rho,
                              const Dqc1Setting& setting);

/// ⟨Z⟩ = Re(e^{iφ} tr(Uρ)).
double expectation_z(const DensityMatrix& rho, const Dqc1Setting& setting);

/// `shots` Bernoulli draws with P(0) = (1 + ⟨Z⟩)/2.
ShotResult sample_shots(const DensityMatrix& rho, const Dqc1Setting& setting,
                        std::uint64_t shots, std::uint64_t seed);

/// Sampling core shared with the tomography driver. Throws
/// ErrorKind::internal when (1 + z)/2 lies outside [−1e-10, 1 + 1e-10].
ShotResult sample_ancilla(double expectation, std::uint64_t shots,
                          std::uint64_t seed);

}  // namespace hwtomo
