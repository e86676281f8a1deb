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

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

namespace hwtomo {

using Complex = std::complex<double>;

// Row-major throughout. Composite spaces are ordered with the first tensor
// factor as the slow index (ancilla first).
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

double hermiticity_defect(const ComplexMatrix& m);

/// ‖U†U − I‖_max; +inf for non-square input.
double unitarity_defect(const ComplexMatrix& u);

/// Throws ErrorKind::invalid_argument on NaN/Inf entries or empty shape.
void require_finite(const ComplexMatrix& m, const char* what);

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `m`.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // columns are eigenvectors
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// A normalized pure state. Amplitudes must satisfy Σ|aᵢ|² = 1 within 1e-12.
class PureState {
 public:
  static PureState from_amplitudes(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  explicit PureState(ComplexVector a) : amplitudes_(std::move(a)) {}
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite d×d matrix. Construction
/// validates all three invariants at 1e-10 and never repairs the input.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int d);
  static DensityMatrix basis_state(int d, int j);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// Kronecker product; `a` indexes the slow (outer) factor.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced matrix of subsystem `keep` of a square matrix on the composite
/// space with factor dimensions `dims` (first factor slowest).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            int keep);

struct StateMetrics {
  double fidelity = 0.0;
  double trace_distance = 0.0;
  double frobenius_distance = 0.0;
};

/// Uhlmann fidelity (tr√(√a b √a))², trace distance ½‖a−b‖₁ and Frobenius
/// distance. Fidelity is evaluated as the squared nuclear norm of √a·√b,
/// which keeps rank-deficient inputs accurate to rounding.
StateMetrics metrics(const DensityMatrix& a, const DensityMatrix& b);

/// ½ Σ|λᵢ(a − b)| for Hermitian a, b of equal shape.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// G·G† / tr(G·G†) with G a d×rank matrix of standard complex Gaussians
/// drawn from the seeded library generator (see rng.hpp).
DensityMatrix random_density_matrix(int d, int rank, std::uint64_t seed);

/// Haar-like random unitary from the QR factorization of a complex Gaussian
/// matrix with the phases of R's diagonal absorbed.
ComplexMatrix random_unitary(int d, std::uint64_t seed);

}  // namespace hwtomo
