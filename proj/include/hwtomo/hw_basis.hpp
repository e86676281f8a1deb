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

#include <memory>
#include <vector>

#include "hwtomo/qmath.hpp"

namespace hwtomo {

/// Cyclic shift |j⟩ ↦ |j ⊕ 1⟩ on d levels. Requires d ≥ 2.
ComplexMatrix pauli_x(int d);

/// Clock diag(1, ω, …, ω^{d−1}), ω = e^{2πi/d}. Requires d ≥ 2.
ComplexMatrix pauli_z(int d);

/// φ_lm = π/4 − π·l·m/d, not reduced mod 2π.
double phase_angle(int d, int l, int m);

/// Hermitian Heisenberg-Weyl observable
///
///   Q_lm = (1+i)/2 · e^{−iπlm/d} · Z^l X^m + h.c.
///        = (1/√2) (e^{iφ_lm} Z^l X^m + h.c.).
///
/// The half power ω^{−lm/2} is taken as e^{−iπlm/d}; this is the only
/// reading under which both forms above agree for odd l·m.
struct HWObservable {
  int d = 0;
  int l = 0;
  int m = 0;
  double phase = 0.0;
  ComplexMatrix matrix;
};

/// All d² observables and Weyl operators Z^l X^m for one dimension, indexed
/// row-major by (l, m). Immutable once built.
class ObservableTable {
 public:
  explicit ObservableTable(int d);

  int dim() const { return d_; }
  const HWObservable& observable(int l, int m) const;
  const ComplexMatrix& weyl(int l, int m) const;

 private:
  int d_;
  std::vector<ComplexMatrix> weyl_;
  std::vector<HWObservable> observables_;
};

/// Shared table for dimension d, built on first use. Safe under concurrent
/// first access; entries are never evicted.
std::shared_ptr<const ObservableTable> observable_table(int d);

/// Z_d^l X_d^m from the cached table.
const ComplexMatrix& weyl_operator(int d, int l, int m);

const HWObservable& hw_observable(int d, int l, int m);

/// max over all (l,m,l′,m′) of |tr(Q_lm Q_l′m′) − d·δ_ll′·δ_mm′|.
double verify_orthogonality(int d);

/// d²×d² Gram matrix tr(Q_lm Q_l′m′), row index l·d + m.
Eigen::MatrixXd gram_matrix(int d);

}  // namespace hwtomo
