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

// Acceptance driver: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: acceptance <path-to-hw-tomo>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "hwtomo/dqc1.hpp"
#include "hwtomo/hw_basis.hpp"
#include "hwtomo/optics.hpp"
#include "hwtomo/qmath.hpp"
#include "hwtomo/tomography.hpp"
#include "oracles.hpp"

namespace {

using namespace hwtomo;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Outcome orthogonality() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d : {2, 3, 4, 5, 7, 8}) {
    worst = std::max(worst, verify_orthogonality(d));
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-9 && elapsed <= 10.0,
          fmt("max deviation %.3g, %.2f s", worst, elapsed)};
}

Outcome qubit_degeneration() {
  const Complex i(0, 1);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  const ComplexMatrix expected[] = {ComplexMatrix::Identity(2, 2), x, z, y};
  double basis_err = 0.0;
  for (int k = 0; k < 4; ++k) {
    basis_err = std::max(
        basis_err, max_abs(hw_observable(2, k / 2, k % 2).matrix - expected[k]));
  }
  double stokes_err = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = random_density_matrix(2, 1 + seed % 2, seed);
    const ComplexMatrix& r = rho.matrix();
    const double rx = oracle::trace_product(r, x).real();
    const double ry = oracle::trace_product(r, y).real();
    const double rz = oracle::trace_product(r, z).real();
    const ComplexMatrix stokes =
        0.5 * (ComplexMatrix::Identity(2, 2) + rx * x + ry * y + rz * z);
    const ComplexMatrix raw =
        reconstruct(estimate_coefficients(rho, build_plan(2), {}));
    stokes_err = std::max(stokes_err, max_abs(raw - stokes));
  }
  return {basis_err <= 1e-12 && stokes_err <= 1e-10,
          fmt("basis %.3g, Stokes %.3g", basis_err, stokes_err)};
}

Outcome central_identity() {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const MeasurementPlan plan = build_plan(d);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho =
          random_density_matrix(d, 1 + seed % d, 1000 * d + seed);
      for (const MeasurementSetting& s : plan.settings) {
        const double via_ancilla =
            std::numbers::sqrt2 *
            expectation_z(rho, Dqc1Setting(s.unitary, s.phase));
        const double direct =
            oracle::trace_product(rho.matrix(),
                                  oracle::hw_observable(d, s.l, s.m))
                .real();
        worst = std::max(worst, std::abs(via_ancilla - direct));
      }
    }
  }
  return {worst <= 1e-12, fmt("max deviation %.3g", worst)};
}

Outcome appendix_consistency() {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho =
          random_density_matrix(d, 1 + seed % d, 5000 + 100 * d + seed);
      const ComplexMatrix u = random_unitary(d, 9000 + 100 * d + seed);
      const double phi = -std::numbers::pi + 0.0628 * static_cast<double>(seed);
      const Dqc1Setting s(u, phi);
      const ComplexMatrix closed =
          oracle::dqc1_ancilla_closed_form(rho.matrix(), u, phi);
      const ComplexMatrix reduced = reduced_ancilla(rho, s);
      const ComplexMatrix full = evolve_exact(rho, s);
      double z_full = 0.0;
      for (int k = 0; k < d; ++k) {
        z_full += full(k, k).real() - full(d + k, d + k).real();
      }
      const double z_closed = (closed(0, 0) - closed(1, 1)).real();
      const double z_reduced = (reduced(0, 0) - reduced(1, 1)).real();
      worst = std::max({worst, std::abs(z_closed - z_reduced),
                        std::abs(z_closed - z_full),
                        std::abs(z_reduced - z_full)});
    }
  }
  return {worst <= 1e-12, fmt("max disagreement %.3g", worst)};
}

Outcome roundtrip() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const MeasurementPlan plan = build_plan(d);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const DensityMatrix rho =
          random_density_matrix(d, 1 + seed % d, 20000 + 1000 * d + seed);
      const ComplexMatrix raw =
          reconstruct(estimate_coefficients(rho, plan, {}));
      worst = std::max(worst, frobenius_distance(raw, rho.matrix()));
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-9 && elapsed <= 60.0,
          fmt("max Frobenius error %.3g, %.2f s", worst, elapsed)};
}

Outcome statistics() {
  const DensityMatrix rho = random_density_matrix(3, 3, 31);
  std::vector<double> fidelity, err_n, err_4n;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EstimationOptions opts;
    opts.shots = 100'000;
    opts.master_seed = seed;
    opts.threads = 0;
    const ReconstructionReport a = run_tomography(rho, opts);
    fidelity.push_back(*a.fidelity);
    err_n.push_back(*a.frobenius_distance);
    opts.shots = 400'000;
    err_4n.push_back(*run_tomography(rho, opts).frobenius_distance);
  }
  const double median_fidelity = oracle::median(fidelity);
  const double ratio = oracle::median(err_n) / oracle::median(err_4n);
  return {median_fidelity >= 0.99 && ratio >= 1.6 && ratio <= 2.6,
          fmt("median fidelity %.5f, error ratio %.3f", median_fidelity,
              ratio)};
}

Outcome gate_equivalence() {
  double worst_distance = 0.0, worst_leakage = 0.0;
  int failures = 0, checked = 0;
  for (int d = 2; d <= 8; ++d) {
    for (int l = 0; l < d; ++l) {
      for (int m = 0; m < d; ++m) {
        for (auto layout : {optics::Layout::parallel, optics::Layout::serial}) {
          const optics::GateVerdict v =
              optics::verify_gate_equivalence(d, l, m, layout);
          ++checked;
          failures += v.passed ? 0 : 1;
          worst_distance = std::max(worst_distance, v.distance);
          worst_leakage = std::max(worst_leakage, v.leakage);
        }
      }
    }
  }
  return {failures == 0 && worst_distance <= 1e-10 && worst_leakage <= 1e-10,
          fmt("%d plans, %d failed, max distance %.3g, max leakage %.3g",
              checked, failures, worst_distance, worst_leakage)};
}

Outcome resource_counts() {
  int mismatches = 0, checked = 0;
  for (int d = 2; d <= 8; ++d) {
    for (int m = 1; m < d; ++m) {
      const auto serial = optics::compile_xm(d, m, optics::Layout::serial);
      const auto parallel = optics::compile_xm(d, m, optics::Layout::parallel);
      const optics::ResourceTally want_serial{m, 0, m, 2 * m};
      const optics::ResourceTally want_parallel{0, 1, m, 2};
      const bool ok =
          serial.resources == want_serial &&
          parallel.resources == want_parallel &&
          optics::tally(serial.elements, d, optics::Layout::serial) ==
              want_serial &&
          optics::tally(parallel.elements, d, optics::Layout::parallel) ==
              want_parallel &&
          serial.resources.sorters - parallel.resources.sorters == 2 * m - 2;
      ++checked;
      mismatches += ok ? 0 : 1;
    }
  }
  return {mismatches == 0,
          fmt("%d (d, m) pairs, %d mismatches", checked, mismatches)};
}

Outcome interferometer() {
  double worst = 0.0;
  for (int d = 2; d <= 4; ++d) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const DensityMatrix rho =
          random_density_matrix(d, 1 + seed % d, 40000 + 100 * d + seed);
      for (int l = 0; l < d; ++l) {
        for (int m = 0; m < d; ++m) {
          const double phi = phase_angle(d, l, m);
          const double z =
              expectation_z(rho, Dqc1Setting(weyl_operator(d, l, m), phi));
          for (auto gate : {optics::ArmGate::abstract,
                            optics::ArmGate::compiled}) {
            worst = std::max(
                worst, std::abs(optics::simulate_mzi(rho, l, m, phi, gate) - z));
          }
        }
      }
    }
  }
  return {worst <= 1e-12, fmt("max deviation %.3g", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no hw-tomo path given"};
  const fs::path dir = fs::temp_directory_path() /
                       ("hwtomo-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string q = "'" + cli + "'";
  struct Case {
    std::string name, args;
  };
  const std::vector<Case> cases = {
      {"fourier", "--state preset:fourier:1 --d 3 --shots 20000 --seed 7"},
      {"basis", "--state preset:basis:2 --d 5 --shots 5000 --seed 123 "
                "--no-pin-trace"},
      {"mixed", "--state preset:maximally_mixed --d 4 --shots 3000 --seed 9 "
                "--no-project"},
  };
  int identical = 0;
  std::string detail;
  for (const Case& c : cases) {
    const fs::path first = dir / (c.name + ".json");
    const fs::path again = dir / (c.name + "-replay.json");
    const int rc1 = run(q + " simulate " + c.args + " --out '" +
                        first.string() + "' 2>/dev/null");
    const int rc2 = run(q + " replay --report '" + first.string() +
                        "' --out '" + again.string() + "' 2>/dev/null");
    const std::string a = slurp(first), b = slurp(again);
    if (rc1 == 0 && rc2 == 0 && !a.empty() && a == b) {
      ++identical;
    } else {
      detail += " " + c.name + " differs";
    }
  }
  fs::remove_all(dir);
  return {identical == static_cast<int>(cases.size()),
          fmt("%d/%zu replays byte-identical", identical, cases.size()) +
              detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks =
      {
          {"HW basis orthogonality", orthogonality},
          {"qubit degeneration to Pauli/Stokes", qubit_degeneration},
          {"<Q_lm> = sqrt2 <Z> identity", central_identity},
          {"three-way ancilla <Z> agreement", appendix_consistency},
          {"exact tomography roundtrip", roundtrip},
          {"sampled fidelity and shot scaling", statistics},
          {"optical gate equivalence", gate_equivalence},
          {"resource counts", resource_counts},
          {"interferometer equals DQC1", interferometer},
          {"replay determinism", [&] { return determinism(cli); }},
      };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu: %s  %s (%s)\n", i + 1,
                o.pass ? "PASS" : "FAIL", checks[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", checks.size() - failed,
              checks.size());
  return failed == 0 ? 0 : 1;
}
