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

#include "hwtomo/qmath.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "hwtomo/error.hpp"
#include "hwtomo/rng.hpp"

namespace hwtomo {

namespace {

// Eigenvalues at or below this are rounding noise of the eigensolver for
// unit-trace inputs; their square roots would otherwise inject ~1e-8 errors.
double sqrt_cutoff(int d) {
  return 64.0 * std::numeric_limits<double>::epsilon() * d;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEigen eig = hermitian_eigen(m);
  const double cutoff = sqrt_cutoff(static_cast<int>(m.rows()));
  RealVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    roots[i] = eig.values[i] > cutoff ? std::sqrt(eig.values[i]) : 0.0;
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() *
         eig.vectors.adjoint();
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return max_abs(m - m.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const ComplexMatrix gram = u.adjoint() * u;
  return max_abs(gram - ComplexMatrix::Identity(u.rows(), u.cols()));
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.cols() == 0) {
    fail(ErrorKind::invalid_argument, std::string(what) + ": empty matrix");
  }
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      fail(ErrorKind::invalid_argument,
           std::string(what) + ": non-finite entry");
    }
  }
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::internal, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PureState PureState::from_amplitudes(ComplexVector amplitudes) {
  if (amplitudes.size() < 1) {
    fail(ErrorKind::invalid_argument, "pure state: no amplitudes");
  }
  for (const Complex& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      fail(ErrorKind::invalid_argument, "pure state: non-finite amplitude");
    }
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pure state: normalization violated (sum |a|^2 = " << norm2 << ")";
    fail(ErrorKind::not_physical, msg.str());
  }
  return PureState(std::move(amplitudes));
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  require_finite(m, "density matrix");
  if (m.rows() != m.cols()) {
    fail(ErrorKind::dimension_mismatch, "density matrix: not square");
  }
  std::ostringstream msg;
  msg.precision(17);
  if (const double h = hermiticity_defect(m); h > kHermitianTol) {
    msg << "density matrix: not Hermitian (max |m - m^dagger| = " << h << ")";
    fail(ErrorKind::not_physical, msg.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    msg << "density matrix: trace != 1 (trace = " << tr.real() << ")";
    fail(ErrorKind::not_physical, msg.str());
  }
  const double lowest = hermitian_eigen(m).values.minCoeff();
  if (lowest < -kPsdTol) {
    msg << "density matrix: not positive semidefinite (min eigenvalue = "
        << lowest << ")";
    fail(ErrorKind::not_physical, msg.str());
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  if (d < 1) {
    fail(ErrorKind::invalid_argument, "dimension must be positive");
  }
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(int d, int j) {
  if (d < 1 || j < 0 || j >= d) {
    fail(ErrorKind::invalid_argument, "basis state index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(j, j) = 1.0;
  return DensityMatrix(std::move(m));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_finite(a, "tensor_product lhs");
  require_finite(b, "tensor_product rhs");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            int keep) {
  if (dims.empty() || keep < 0 || keep >= static_cast<int>(dims.size())) {
    fail(ErrorKind::invalid_argument, "partial_trace: bad subsystem index");
  }
  long total = 1;
  for (int dim : dims) {
    if (dim < 1) {
      fail(ErrorKind::invalid_argument, "partial_trace: non-positive factor");
    }
    total *= dim;
  }
  if (m.rows() != m.cols() || m.rows() != total) {
    fail(ErrorKind::dimension_mismatch,
         "partial_trace: factor dimensions do not match matrix shape");
  }
  const long before = std::accumulate(dims.begin(), dims.begin() + keep, 1L,
                                      std::multiplies<>());
  const long kept = dims[keep];
  const long after = std::accumulate(dims.begin() + keep + 1, dims.end(), 1L,
                                     std::multiplies<>());

  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (long a = 0; a < before; ++a) {
    for (long b = 0; b < after; ++b) {
      for (long r = 0; r < kept; ++r) {
        for (long c = 0; c < kept; ++c) {
          out(r, c) += m((a * kept + r) * after + b, (a * kept + c) * after + b);
        }
      }
    }
  }
  return out;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::dimension_mismatch, "trace_distance: shape mismatch");
  }
  return 0.5 * hermitian_eigen(a - b).values.cwiseAbs().sum();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::dimension_mismatch, "frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

StateMetrics metrics(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    fail(ErrorKind::dimension_mismatch, "metrics: dimension mismatch");
  }
  const ComplexMatrix product = psd_sqrt(a.matrix()) * psd_sqrt(b.matrix());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(product);
  const double nuclear = svd.singularValues().sum();

  StateMetrics out;
  out.fidelity = nuclear * nuclear;
  out.trace_distance = trace_distance(a.matrix(), b.matrix());
  out.frobenius_distance = frobenius_distance(a.matrix(), b.matrix());
  return out;
}

DensityMatrix random_density_matrix(int d, int rank, std::uint64_t seed) {
  if (d < 1 || rank < 1 || rank > d) {
    fail(ErrorKind::invalid_argument,
         "random_density_matrix: need 1 <= rank <= d");
  }
  Rng rng(seed);
  ComplexMatrix g(d, rank);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermitian symmetry; the product is Hermitian only to rounding.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix::from_matrix(std::move(rho));
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) {
    fail(ErrorKind::invalid_argument, "random_unitary: d must be positive");
  }
  Rng rng(seed);
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) {
      q.col(j) *= r(j, j) / mag;
    }
  }
  return q;
}

}  // namespace hwtomo
