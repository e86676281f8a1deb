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

#include "hwtomo/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hwtomo/error.hpp"
#include "hwtomo/hw_basis.hpp"

namespace hwtomo::optics {

namespace {

void require_dim(int d) {
  if (d < 2) {
    fail(ErrorKind::invalid_argument,
         "optics: dimension must be at least 2 (got " + std::to_string(d) +
             ")");
  }
}

std::vector<int> all_modes(int d) {
  std::vector<int> modes(d);
  std::iota(modes.begin(), modes.end(), 0);
  return modes;
}

int positive_mod(int a, int d) { return ((a % d) + d) % d; }

void check_modes(const OpticalElement& e, int n_modes) {
  for (int p : e.modes) {
    if (p < 0 || p >= n_modes) {
      fail(ErrorKind::invalid_argument,
           std::string(kind_name(e.kind)) + " placed on mode " +
               std::to_string(p) + " outside [0, " + std::to_string(n_modes) +
               ")");
    }
  }
}

Complex dove_phase(int d, int l, int oam) {
  // e^{2iαk} with α = πl/d. Reduce l·k mod d first so the angle stays in
  // [0, 2π) and periodic values are bit-identical.
  const int reduced = positive_mod(l * oam, d);
  return std::polar(1.0, 2.0 * std::numbers::pi * reduced / d);
}

}  // namespace

std::string_view kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::spp: return "SPP";
    case ElementKind::dove_pair: return "DovePair";
    case ElementKind::sorter: return "Sorter";
    case ElementKind::sorter_inverse: return "SorterInverse";
    case ElementKind::beamsplitter: return "Beamsplitter";
    case ElementKind::phase_shift: return "PhaseShift";
  }
  return "?";
}

std::optional<ElementKind> parse_kind(std::string_view name) {
  for (ElementKind k :
       {ElementKind::spp, ElementKind::dove_pair, ElementKind::sorter,
        ElementKind::sorter_inverse, ElementKind::beamsplitter,
        ElementKind::phase_shift}) {
    if (kind_name(k) == name) {
      return k;
    }
  }
  return std::nullopt;
}

std::string_view layout_name(Layout layout) {
  return layout == Layout::serial ? "serial" : "parallel";
}

std::optional<Layout> parse_layout(std::string_view name) {
  if (name == "serial") return Layout::serial;
  if (name == "parallel") return Layout::parallel;
  return std::nullopt;
}

OpticalElement OpticalElement::spp(int k, std::vector<int> modes) {
  if (k == 0) {
    fail(ErrorKind::invalid_argument, "SPP order must be non-zero");
  }
  return {ElementKind::spp, k, 0.0, std::move(modes)};
}

OpticalElement OpticalElement::dove_pair(int l, std::vector<int> modes) {
  return {ElementKind::dove_pair, l, 0.0, std::move(modes)};
}

OpticalElement OpticalElement::sorter(int d) {
  return {ElementKind::sorter, 0, 0.0, all_modes(d)};
}

OpticalElement OpticalElement::sorter_inverse(int d) {
  return {ElementKind::sorter_inverse, 0, 0.0, all_modes(d)};
}

OpticalElement OpticalElement::beamsplitter(int mode_a, int mode_b) {
  return {ElementKind::beamsplitter, 0, 0.0, {mode_a, mode_b}};
}

OpticalElement OpticalElement::phase_shift(double phi, int mode) {
  return {ElementKind::phase_shift, 0, phi, {mode}};
}

ResourceTally tally(const std::vector<OpticalElement>& elements, int d,
                    Layout layout) {
  ResourceTally out;
  for (const OpticalElement& e : elements) {
    switch (e.kind) {
      case ElementKind::spp:
        if (e.order == -d) {
          out.spp_minus_d += static_cast<int>(e.modes.size());
        } else if (e.order > 0) {
          (layout == Layout::serial ? out.spp_one : out.spp_m) +=
              static_cast<int>(e.modes.size());
        }
        break;
      case ElementKind::sorter:
      case ElementKind::sorter_inverse:
        ++out.sorters;
        break;
      default:
        break;
    }
  }
  return out;
}

ResourceTally expected_resources(int m, Layout layout) {
  if (m == 0) {
    return {};
  }
  if (layout == Layout::serial) {
    return {m, 0, m, 2 * m};
  }
  return {0, 1, m, 2};
}

OpticalPlan compile_xm(int d, int m, Layout layout) {
  require_dim(d);
  if (m < 1 || m >= d) {
    fail(ErrorKind::invalid_argument,
         "X^m needs 1 <= m < d (got m = " + std::to_string(m) + ")");
  }
  OpticalPlan plan;
  plan.d = d;
  plan.m = m;
  plan.layout = layout;
  if (layout == Layout::parallel) {
    std::vector<int> low_modes(m);
    std::iota(low_modes.begin(), low_modes.end(), 0);
    plan.elements = {
        OpticalElement::spp(m, {0}),
        OpticalElement::sorter(d),
        OpticalElement::spp(-d, std::move(low_modes)),
        OpticalElement::sorter_inverse(d),
    };
  } else {
    for (int rep = 0; rep < m; ++rep) {
      plan.elements.push_back(OpticalElement::spp(1, {0}));
      plan.elements.push_back(OpticalElement::sorter(d));
      plan.elements.push_back(OpticalElement::spp(-d, {0}));
      plan.elements.push_back(OpticalElement::sorter_inverse(d));
    }
  }
  plan.resources = tally(plan.elements, d, layout);
  return plan;
}

OpticalPlan compile_zlxm(int d, int l, int m, Layout layout) {
  require_dim(d);
  if (l < 0 || l >= d || m < 0 || m >= d) {
    fail(ErrorKind::invalid_argument,
         "(l, m) = (" + std::to_string(l) + ", " + std::to_string(m) +
             ") outside [0, " + std::to_string(d) + ")");
  }
  OpticalPlan plan;
  if (m > 0) {
    plan = compile_xm(d, m, layout);
  }
  plan.d = d;
  plan.l = l;
  plan.m = m;
  plan.layout = layout;
  if (l > 0) {
    plan.elements.push_back(OpticalElement::dove_pair(l, {0}));
  }
  plan.resources = tally(plan.elements, d, layout);
  return plan;
}

OamModeState OamModeState::basis(int window, int n_modes, int oam, int mode) {
  if (oam < 0 || oam >= window || mode < 0 || mode >= n_modes) {
    fail(ErrorKind::invalid_argument, "basis state outside OAM/mode range");
  }
  OamModeState s{window, n_modes, ComplexVector::Zero(window * n_modes)};
  s.amplitudes[oam * n_modes + mode] = 1.0;
  return s;
}

ComplexMatrix spp_unitary(int k, int window) {
  if (window < 1) {
    fail(ErrorKind::invalid_argument, "OAM window must be non-empty");
  }
  ComplexMatrix u = ComplexMatrix::Zero(window, window);
  for (int j = 0; j < window; ++j) {
    if (j + k >= 0 && j + k < window) {
      u(j + k, j) = 1.0;
    }
  }
  return u;
}

ComplexMatrix dove_pair_unitary(int d, int l, int window) {
  require_dim(d);
  if (l < 1 || l >= d) {
    fail(ErrorKind::invalid_argument,
         "Dove pair needs 1 <= l < d (got l = " + std::to_string(l) + ")");
  }
  ComplexMatrix u = ComplexMatrix::Zero(window, window);
  for (int k = 0; k < window; ++k) {
    u(k, k) = dove_phase(d, l, k);
  }
  return u;
}

ComplexMatrix sorter_unitary(int d, int window) {
  require_dim(d);
  const int n = window * d;
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < window; ++j) {
    for (int p = 0; p < d; ++p) {
      u(j * d + (j + p) % d, j * d + p) = 1.0;
    }
  }
  return u;
}

ComplexMatrix element_matrix(const OpticalElement& e, int d, int window,
                             int n_modes) {
  check_modes(e, n_modes);
  const int n = window * n_modes;
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  auto on = [&](int p) {
    return std::find(e.modes.begin(), e.modes.end(), p) != e.modes.end();
  };
  switch (e.kind) {
    case ElementKind::spp:
      for (int p = 0; p < n_modes; ++p) {
        if (!on(p)) continue;
        for (int j = 0; j < window; ++j) {
          u(j * n_modes + p, j * n_modes + p) = 0.0;
        }
        for (int j = 0; j < window; ++j) {
          const int t = j + e.order;
          if (t >= 0 && t < window) {
            u(t * n_modes + p, j * n_modes + p) = 1.0;
          }
        }
      }
      break;
    case ElementKind::dove_pair:
      require_dim(d);
      for (int p = 0; p < n_modes; ++p) {
        if (!on(p)) continue;
        for (int j = 0; j < window; ++j) {
          u(j * n_modes + p, j * n_modes + p) = dove_phase(d, e.order, j);
        }
      }
      break;
    case ElementKind::sorter:
    case ElementKind::sorter_inverse:
      if (n_modes != d) {
        fail(ErrorKind::invalid_argument, "sorter needs exactly d modes");
      }
      u = sorter_unitary(d, window);
      if (e.kind == ElementKind::sorter_inverse) {
        u = u.adjoint().eval();
      }
      break;
    case ElementKind::beamsplitter: {
      if (e.modes.size() != 2 || e.modes[0] == e.modes[1]) {
        fail(ErrorKind::invalid_argument, "beamsplitter needs two modes");
      }
      const int a = e.modes[0], b = e.modes[1];
      const double s = 1.0 / std::numbers::sqrt2;
      for (int j = 0; j < window; ++j) {
        const int ia = j * n_modes + a, ib = j * n_modes + b;
        u(ia, ia) = s;
        u(ia, ib) = s;
        u(ib, ia) = s;
        u(ib, ib) = -s;
      }
      break;
    }
    case ElementKind::phase_shift:
      for (int p = 0; p < n_modes; ++p) {
        if (!on(p)) continue;
        for (int j = 0; j < window; ++j) {
          u(j * n_modes + p, j * n_modes + p) = std::polar(1.0, e.phase);
        }
      }
      break;
  }
  return u;
}

void apply_element(const OpticalElement& e, int d, OamModeState& state) {
  const int window = state.window;
  const int n_modes = state.n_modes;
  check_modes(e, n_modes);
  ComplexVector& amp = state.amplitudes;
  auto idx = [n_modes](int oam, int mode) { return oam * n_modes + mode; };

  switch (e.kind) {
    case ElementKind::spp:
      for (int p : e.modes) {
        ComplexVector column = ComplexVector::Zero(window);
        for (int j = 0; j < window; ++j) {
          const Complex a = amp[idx(j, p)];
          if (a == Complex(0.0, 0.0)) continue;
          const int t = j + e.order;
          if (t < 0 || t >= window) {
            fail(ErrorKind::out_of_window,
                 "SPP(" + std::to_string(e.order) + ") on mode " +
                     std::to_string(p) + " moves OAM " + std::to_string(j) +
                     " outside window [0, " + std::to_string(window) + ")");
          }
          column[t] = a;
        }
        for (int j = 0; j < window; ++j) {
          amp[idx(j, p)] = column[j];
        }
      }
      break;
    case ElementKind::dove_pair:
      require_dim(d);
      for (int p : e.modes) {
        for (int j = 0; j < window; ++j) {
          amp[idx(j, p)] *= dove_phase(d, e.order, j);
        }
      }
      break;
    case ElementKind::sorter:
    case ElementKind::sorter_inverse: {
      if (n_modes != d) {
        fail(ErrorKind::invalid_argument, "sorter needs exactly d modes");
      }
      ComplexVector next = ComplexVector::Zero(amp.size());
      const int sign = e.kind == ElementKind::sorter ? 1 : -1;
      for (int j = 0; j < window; ++j) {
        for (int p = 0; p < d; ++p) {
          next[idx(j, positive_mod(p + sign * j, d))] = amp[idx(j, p)];
        }
      }
      amp = std::move(next);
      break;
    }
    case ElementKind::beamsplitter: {
      if (e.modes.size() != 2 || e.modes[0] == e.modes[1]) {
        fail(ErrorKind::invalid_argument, "beamsplitter needs two modes");
      }
      const double s = 1.0 / std::numbers::sqrt2;
      for (int j = 0; j < window; ++j) {
        const Complex x = amp[idx(j, e.modes[0])];
        const Complex y = amp[idx(j, e.modes[1])];
        amp[idx(j, e.modes[0])] = s * (x + y);
        amp[idx(j, e.modes[1])] = s * (x - y);
      }
      break;
    }
    case ElementKind::phase_shift:
      for (int p : e.modes) {
        for (int j = 0; j < window; ++j) {
          amp[idx(j, p)] *= std::polar(1.0, e.phase);
        }
      }
      break;
  }
}

OamModeState simulate_plan(const OpticalPlan& plan, OamModeState input) {
  require_dim(plan.d);
  if (input.n_modes != plan.d) {
    fail(ErrorKind::invalid_argument,
         "plan simulation needs d spatial modes");
  }
  if (input.amplitudes.size() != input.window * input.n_modes) {
    fail(ErrorKind::dimension_mismatch, "OAM/mode state has wrong size");
  }
  if (std::abs(input.amplitudes.squaredNorm() - 1.0) > kNormTol) {
    fail(ErrorKind::not_physical, "OAM/mode state is not normalized");
  }
  for (const OpticalElement& e : plan.elements) {
    apply_element(e, plan.d, input);
  }
  return input;
}

GateVerdict verify_plan(const OpticalPlan& plan, int window) {
  const int d = plan.d;
  GateVerdict v;
  v.d = d;
  v.l = plan.l;
  v.m = plan.m;
  v.layout = plan.layout;
  v.restriction = ComplexMatrix::Zero(d, d);

  try {
    for (int i = 0; i < d; ++i) {
      const OamModeState out =
          simulate_plan(plan, OamModeState::basis(window, d, i, 0));
      double kept = 0.0;
      for (int j = 0; j < d; ++j) {
        v.restriction(j, i) = out.amplitude(j, 0);
        kept += std::norm(out.amplitude(j, 0));
      }
      v.leakage = std::max(v.leakage, 1.0 - kept);
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::out_of_window) throw;
    v.distance = std::numeric_limits<double>::infinity();
    v.failure = err.what();
    return v;
  }

  v.distance = max_abs(v.restriction - weyl_operator(d, plan.l, plan.m));
  v.isometry_defect = unitarity_defect(v.restriction);
  if (v.leakage > kGateTolerance || v.isometry_defect > kGateTolerance) {
    v.failure = "leakage out of the logical subspace";
  } else if (v.distance > kGateTolerance) {
    v.failure = "compiled operator differs from Z^l X^m";
  }
  v.passed = v.failure.empty();
  return v;
}

GateVerdict verify_gate_equivalence(int d, int l, int m, Layout layout) {
  return verify_plan(compile_zlxm(d, l, m, layout), default_window(d));
}

double simulate_mzi(const DensityMatrix& rho, int l, int m, double phi,
                    ArmGate gate) {
  const int d = rho.dim();
  require_dim(d);
  ComplexMatrix arm;
  if (gate == ArmGate::abstract) {
    arm = weyl_operator(d, l, m);
  } else {
    const GateVerdict v = verify_gate_equivalence(d, l, m);
    if (!v.passed) {
      fail(ErrorKind::internal, "compiled arm gate failed verification: " +
                                    v.failure);
    }
    arm = v.restriction;
  }

  // OAM ⊗ path, two paths; arm 1 carries the phase and the gate.
  constexpr int kPaths = 2;
  const int n = d * kPaths;
  const ComplexMatrix bs =
      element_matrix(OpticalElement::beamsplitter(0, 1), d, d, kPaths);
  const ComplexMatrix ps =
      element_matrix(OpticalElement::phase_shift(phi, 1), d, d, kPaths);
  ComplexMatrix arm_gate = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < d; ++j) {
    arm_gate(j * kPaths, j * kPaths) = 1.0;
    for (int k = 0; k < d; ++k) {
      arm_gate(j * kPaths + 1, k * kPaths + 1) = arm(j, k);
    }
  }

  // Photon enters in path 0.
  ComplexMatrix state = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      state(j * kPaths, k * kPaths) = rho.matrix()(j, k);
    }
  }
  for (const ComplexMatrix* g :
       std::initializer_list<const ComplexMatrix*>{&bs, &ps, &arm_gate, &bs}) {
    state = (*g) * state * g->adjoint();
  }

  double z = 0.0;
  for (int j = 0; j < d; ++j) {
    z += state(j * kPaths, j * kPaths).real() -
         state(j * kPaths + 1, j * kPaths + 1).real();
  }
  return z;
}

}  // namespace hwtomo::optics
