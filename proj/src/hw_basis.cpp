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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "hwtomo/error.hpp"

namespace hwtomo {

namespace {

void require_dim(int d) {
  if (d < 2) {
    fail(ErrorKind::invalid_argument,
         "dimension must be at least 2 (got " + std::to_string(d) + ")");
  }
}

void require_index(int d, int l, int m) {
  require_dim(d);
  if (l < 0 || l >= d || m < 0 || m >= d) {
    fail(ErrorKind::invalid_argument,
         "(l, m) = (" + std::to_string(l) + ", " + std::to_string(m) +
             ") outside [0, " + std::to_string(d) + ")");
  }
}

// tr(AB) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace

ComplexMatrix pauli_x(int d) {
  require_dim(d);
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
  }
  return x;
}

ComplexMatrix pauli_z(int d) {
  require_dim(d);
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  return z;
}

double phase_angle(int d, int l, int m) {
  require_index(d, l, m);
  return std::numbers::pi / 4.0 -
         std::numbers::pi * static_cast<double>(l * m) / d;
}

ObservableTable::ObservableTable(int d) : d_(d) {
  require_dim(d);
  const ComplexMatrix x = pauli_x(d);
  const ComplexMatrix z = pauli_z(d);

  std::vector<ComplexMatrix> z_pow(d), x_pow(d);
  z_pow[0] = x_pow[0] = ComplexMatrix::Identity(d, d);
  for (int k = 1; k < d; ++k) {
    z_pow[k] = z_pow[k - 1] * z;
    x_pow[k] = x_pow[k - 1] * x;
  }

  const Complex half_one_plus_i(0.5, 0.5);
  weyl_.reserve(d * d);
  observables_.reserve(d * d);
  for (int l = 0; l < d; ++l) {
    for (int m = 0; m < d; ++m) {
      ComplexMatrix u = z_pow[l] * x_pow[m];
      const Complex half_power =
          std::polar(1.0, -std::numbers::pi * static_cast<double>(l * m) / d);
      const ComplexMatrix a = half_one_plus_i * half_power * u;
      HWObservable obs;
      obs.d = d;
      obs.l = l;
      obs.m = m;
      obs.phase = phase_angle(d, l, m);
      obs.matrix = a + a.adjoint();
      weyl_.push_back(std::move(u));
      observables_.push_back(std::move(obs));
    }
  }
}

const HWObservable& ObservableTable::observable(int l, int m) const {
  require_index(d_, l, m);
  return observables_[l * d_ + m];
}

const ComplexMatrix& ObservableTable::weyl(int l, int m) const {
  require_index(d_, l, m);
  return weyl_[l * d_ + m];
}

std::shared_ptr<const ObservableTable> observable_table(int d) {
  require_dim(d);
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const ObservableTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) {
    it = cache.emplace(d, std::make_shared<const ObservableTable>(d)).first;
  }
  return it->second;
}

const ComplexMatrix& weyl_operator(int d, int l, int m) {
  return observable_table(d)->weyl(l, m);
}

const HWObservable& hw_observable(int d, int l, int m) {
  return observable_table(d)->observable(l, m);
}

Eigen::MatrixXd gram_matrix(int d) {
  const auto table = observable_table(d);
  const int n = d * d;
  Eigen::MatrixXd gram(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Complex t =
          trace_of_product(table->observable(a / d, a % d).matrix,
                           table->observable(b / d, b % d).matrix);
      gram(a, b) = t.real();
    }
  }
  return gram;
}

double verify_orthogonality(int d) {
  const auto table = observable_table(d);
  const int n = d * d;
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Complex t =
          trace_of_product(table->observable(a / d, a % d).matrix,
                           table->observable(b / d, b % d).matrix);
      const double expected = a == b ? static_cast<double>(d) : 0.0;
      worst = std::max(worst, std::abs(t - expected));
    }
  }
  return worst;
}

}  // namespace hwtomo
