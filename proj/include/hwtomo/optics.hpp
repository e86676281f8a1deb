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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwtomo/qmath.hpp"

// Photonic realization of the measurement settings.
//
// The qudit is carried by orbital angular momentum (OAM) values in a finite
// window [0, W) and the photon occupies one of `n_modes` spatial modes.
// Composite index = oam · n_modes + mode (OAM first). Logical qudit levels
// are the OAM values [0, d); the window is [0, 2d) by default, enough for
// the largest intermediate value d − 1 + m of an X^m gate.

namespace hwtomo::optics {

enum class ElementKind {
  spp,             // spiral phase plate, OAM j → j + k
  dove_pair,       // two Dove prisms at relative angle πl/d: Z^l
  sorter,          // |j⟩|p⟩ → |j⟩|(j + p) mod d⟩
  sorter_inverse,
  beamsplitter,    // Hadamard on two modes
  phase_shift,     // e^{iφ} on a mode
};

std::string_view kind_name(ElementKind kind);
std::optional<ElementKind> parse_kind(std::string_view name);

struct OpticalElement {
  ElementKind kind = ElementKind::spp;
  int order = 0;      // k for SPP, l for a Dove pair
  double phase = 0.0; // PhaseShift only
  // Spatial modes the element acts on. Sorters act on all d modes and list
  // them explicitly.
  std::vector<int> modes;

  static OpticalElement spp(int k, std::vector<int> modes);
  static OpticalElement dove_pair(int l, std::vector<int> modes);
  static OpticalElement sorter(int d);
  static OpticalElement sorter_inverse(int d);
  static OpticalElement beamsplitter(int mode_a, int mode_b);
  static OpticalElement phase_shift(double phi, int mode);
};

enum class Layout { serial, parallel };

std::string_view layout_name(Layout layout);
std::optional<Layout> parse_layout(std::string_view name);

/// Columns of the resource table: SPP(1), SPP(m), SPP(−d) and sorters
/// (S_d and S_d⁻¹ together). SPP(−d) counts one per mode it is placed on.
struct ResourceTally {
  int spp_one = 0;
  int spp_m = 0;
  int spp_minus_d = 0;
  int sorters = 0;

  bool operator==(const ResourceTally&) const = default;
};

struct OpticalPlan {
  int d = 0;
  int l = 0;
  int m = 0;
  Layout layout = Layout::parallel;
  std::vector<OpticalElement> elements;
  ResourceTally resources;
};

/// Tally recomputed from an element list. Positive SPP orders count as
/// SPP(1) in the serial layout and as SPP(m) in the parallel one.
ResourceTally tally(const std::vector<OpticalElement>& elements, int d,
                    Layout layout);

/// Reference resource counts for X^m.
ResourceTally expected_resources(int m, Layout layout);

OpticalPlan compile_xm(int d, int m, Layout layout);

/// X^m part (if m > 0) followed by DovePair(l) (if l > 0).
OpticalPlan compile_zlxm(int d, int l, int m, Layout layout = Layout::parallel);

/// Pure state over OAM window ⊗ spatial modes.
struct OamModeState {
  int window = 0;
  int n_modes = 0;
  ComplexVector amplitudes;

  static OamModeState basis(int window, int n_modes, int oam, int mode);
  Complex amplitude(int oam, int mode) const {
    return amplitudes[oam * n_modes + mode];
  }
};

/// Shift operator on the window; a sub-permutation that is unitary where
/// both j and j + k are representable.
ComplexMatrix spp_unitary(int k, int window);

/// diag(e^{2πi·l·k/d}) for every OAM value k in the window.
ComplexMatrix dove_pair_unitary(int d, int l, int window);

/// Permutation on window ⊗ d modes.
ComplexMatrix sorter_unitary(int d, int window);

/// Full-space matrix of one element (window ⊗ n_modes). SPPs give the
/// sub-permutation; use apply_element for edge checking.
ComplexMatrix element_matrix(const OpticalElement& e, int d, int window,
                             int n_modes);

/// Applies one element in place. An SPP that would move a populated
/// amplitude outside the window throws ErrorKind::out_of_window.
void apply_element(const OpticalElement& e, int d, OamModeState& state);

OamModeState simulate_plan(const OpticalPlan& plan, OamModeState input);

inline int default_window(int d) { return 2 * d; }

struct GateVerdict {
  int d = 0;
  int l = 0;
  int m = 0;
  Layout layout = Layout::parallel;
  double distance = 0.0;  // ‖R − Z^l X^m‖_max on the logical subspace
  double leakage = 0.0;   // max over columns of 1 − ‖R e_i‖²
  double isometry_defect = 0.0;  // ‖R†R − I‖_max
  bool passed = false;
  std::string failure;  // empty when passed
  ComplexMatrix restriction;
};

inline constexpr double kGateTolerance = 1e-10;

/// Runs every logical input |i⟩|0⟩ through the plan and compares the block
/// landing on OAM [0, d), mode 0 against Z^l X^m. Leakage, out-of-window
/// shifts and distance above 1e-10 are reported in the verdict.
GateVerdict verify_plan(const OpticalPlan& plan, int window);

GateVerdict verify_gate_equivalence(int d, int l, int m,
                                    Layout layout = Layout::parallel);

enum class ArmGate {
  abstract,  // Z^l X^m from hw_basis
  compiled,  // restriction of the compiled optical plan
};

/// Mach-Zehnder on path ⊗ OAM(d): beamsplitter, phase φ on arm 1, Z^l X^m
/// on arm 1, beamsplitter. Returns the path-qubit ⟨Z⟩ = P(arm 0) − P(arm 1).
double simulate_mzi(const DensityMatrix& rho, int l, int m, double phi,
                    ArmGate gate = ArmGate::abstract);

}  // namespace hwtomo::optics
