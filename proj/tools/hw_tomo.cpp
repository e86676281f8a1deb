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

// hw-tomo command line. Talks to the engine exclusively through the C API.
//
// Every subcommand first resolves its flags into a JSON config object; the
// config is executed and embedded verbatim in the output document, so
// `hw-tomo replay --report <file>` can re-run any report bit for bit.
//
// Exit codes: 0 success, 1 validation failure, 2 internal invariant breach.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "hwtomo/hwtomo.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void validation_failure(const std::string& message) {
  throw Failure{kExitValidation, message};
}

void check(hwtomo_status status, const char* context) {
  if (status == HWTOMO_OK) {
    return;
  }
  const int code =
      status == HWTOMO_ERR_INTERNAL ? kExitInternal : kExitValidation;
  throw Failure{code, std::string(context) + ": " +
                          hwtomo_status_string(status) + ": " +
                          hwtomo_last_error()};
}

// RAII wrappers around the opaque handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using State = Handle<hwtomo_state, hwtomo_state_free>;
using Coeffs = Handle<hwtomo_coeffs, hwtomo_coeffs_free>;
using Report = Handle<hwtomo_report, hwtomo_report_free>;
using Plan = Handle<hwtomo_plan, hwtomo_plan_free>;

std::string take_string(char* s) {
  std::string out(s == nullptr ? "" : s);
  hwtomo_string_free(s);
  return out;
}

json parse_library_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Failure{kExitInternal, std::string("library emitted bad JSON: ") +
                                     e.what()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    validation_failure("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    validation_failure("'" + path + "' line " + std::to_string(line) +
                       ", column " + std::to_string(column) +
                       ": malformed JSON (" + e.what() + ")");
  }
}

// Writes to a sibling temp file, then renames over the target.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      validation_failure("cannot write '" + tmp.string() + "'");
    }
    out << content;
    if (!out.flush()) {
      validation_failure("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    validation_failure("cannot rename into '" + path + "': " + ec.message());
  }
}

unsigned thread_cap() {
  const char* env = std::getenv("HW_TOMO_THREADS");
  if (env == nullptr || *env == '\0') {
    return 0;
  }
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) {
    validation_failure("HW_TOMO_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(v);
}

hwtomo_layout layout_from(const std::string& name) {
  if (name == "parallel") return HWTOMO_LAYOUT_PARALLEL;
  if (name == "serial") return HWTOMO_LAYOUT_SERIAL;
  validation_failure("unknown layout '" + name + "'");
}

template <typename T>
T config_get(const json& config, const char* key) {
  auto it = config.find(key);
  if (it == config.end()) {
    validation_failure(std::string("config field '") + key + "' missing");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    validation_failure(std::string("config field '") + key +
                       "' has the wrong type");
  }
}

std::string finish(json doc, const json& config) {
  doc["config"] = config;
  return doc.dump(2) + "\n";
}

// --- subcommands, each mapping a resolved config to an output document ---

struct Outputs {
  std::string main;
  std::optional<std::string> coeffs_json;
  std::optional<std::string> coeffs_csv;
};

Outputs run_observables(const json& config) {
  const int d = config_get<int>(config, "d");
  const int l = config.value("l", -1);
  const int m = config.value("m", -1);
  char* text = nullptr;
  check(hwtomo_observables_json(d, l, m, &text), "observables");
  return {finish(parse_library_json(take_string(text)), config), {}, {}};
}

Outputs run_simulate(const json& config) {
  State state;
  check(hwtomo_state_from_json(config_get<json>(config, "state").dump().c_str(),
                               state.out()),
        "state");

  hwtomo_estimate_options opts{};
  opts.shots = config_get<std::uint64_t>(config, "shots");
  opts.seed = config_get<std::uint64_t>(config, "seed");
  opts.pin_trace = config_get<bool>(config, "pin_trace") ? 1 : 0;
  opts.threads = thread_cap();

  Coeffs coeffs;
  check(hwtomo_estimate_coefficients(state.get(), &opts, coeffs.out()),
        "estimate");
  Report report;
  check(hwtomo_reconstruct(coeffs.get(), state.get(),
                           config_get<bool>(config, "project") ? 1 : 0,
                           report.out()),
        "reconstruct");

  char* report_text = nullptr;
  check(hwtomo_report_to_json(report.get(), &report_text), "report");
  char* coeffs_text = nullptr;
  check(hwtomo_coeffs_to_json(coeffs.get(), &coeffs_text), "coefficients");
  char* csv_text = nullptr;
  check(hwtomo_coeffs_to_csv(coeffs.get(), &csv_text), "coefficients");

  Outputs out;
  out.main = finish(parse_library_json(take_string(report_text)), config);
  out.coeffs_json =
      finish(parse_library_json(take_string(coeffs_text)), config);
  out.coeffs_csv = take_string(csv_text);
  return out;
}

Outputs run_reconstruct(const json& config) {
  Coeffs coeffs;
  check(hwtomo_coeffs_from_json(
            config_get<json>(config, "coeffs").dump().c_str(), coeffs.out()),
        "coefficients");
  State truth;
  const json truth_cfg = config.value("truth", json(nullptr));
  if (!truth_cfg.is_null()) {
    check(hwtomo_state_from_json(truth_cfg.dump().c_str(), truth.out()),
          "reference state");
  }
  Report report;
  check(hwtomo_reconstruct(coeffs.get(), truth.get(),
                           config_get<bool>(config, "project") ? 1 : 0,
                           report.out()),
        "reconstruct");
  char* report_text = nullptr;
  check(hwtomo_report_to_json(report.get(), &report_text), "report");
  char* csv_text = nullptr;
  check(hwtomo_coeffs_to_csv(coeffs.get(), &csv_text), "coefficients");
  Outputs out;
  out.main = finish(parse_library_json(take_string(report_text)), config);
  out.coeffs_csv = take_string(csv_text);
  return out;
}

Outputs run_compile(const json& config) {
  Plan plan;
  check(hwtomo_compile(config_get<int>(config, "d"), config_get<int>(config, "l"),
                       config_get<int>(config, "m"),
                       layout_from(config_get<std::string>(config, "layout")),
                       plan.out()),
        "compile");
  char* text = nullptr;
  check(hwtomo_plan_to_json(plan.get(), &text), "plan");
  return {finish(parse_library_json(take_string(text)), config), {}, {}};
}

struct VerifyResult {
  Outputs outputs;
  bool all_pass = true;
};

VerifyResult run_verify(const json& config) {
  const int d = config_get<int>(config, "d");
  const bool all = config_get<bool>(config, "all");
  const std::string layout = config_get<std::string>(config, "layout");
  std::vector<std::string> layouts;
  if (layout == "both") {
    layouts = {"parallel", "serial"};
  } else {
    layout_from(layout);
    layouts = {layout};
  }

  json verdicts = json::array();
  bool all_pass = true;
  auto verify_one = [&](int l, int m, const std::string& lay) {
    hwtomo_verdict v{};
    char* text = nullptr;
    check(hwtomo_verify_optics(d, l, m, layout_from(lay), &v, &text),
          "verify-optics");
    verdicts.push_back(parse_library_json(take_string(text)));
    all_pass = all_pass && v.passed != 0;
  };
  for (const std::string& lay : layouts) {
    if (all) {
      for (int l = 0; l < d; ++l) {
        for (int m = 0; m < d; ++m) {
          verify_one(l, m, lay);
        }
      }
    } else {
      verify_one(config_get<int>(config, "l"), config_get<int>(config, "m"),
                 lay);
    }
  }
  json doc = {{"schema", "hw-tomo/verdict"},
              {"version", 1},
              {"d", d},
              {"tolerance", 1e-10},
              {"verdicts", std::move(verdicts)},
              {"all_pass", all_pass}};
  return {{finish(std::move(doc), config), {}, {}}, all_pass};
}

struct Dispatch {
  Outputs outputs;
  int exit_code = kExitOk;
};

Dispatch dispatch(const json& config) {
  const std::string sub = config_get<std::string>(config, "subcommand");
  if (sub == "observables") return {run_observables(config)};
  if (sub == "simulate") return {run_simulate(config)};
  if (sub == "reconstruct") return {run_reconstruct(config)};
  if (sub == "compile") return {run_compile(config)};
  if (sub == "verify-optics") {
    VerifyResult r = run_verify(config);
    return {std::move(r.outputs), r.all_pass ? kExitOk : kExitValidation};
  }
  validation_failure("unknown subcommand '" + sub + "' in config");
}

json state_config(const std::string& source, std::optional<int> d) {
  if (source.rfind("preset:", 0) == 0) {
    if (!d) {
      validation_failure("--d is required with a preset state");
    }
    return {{"d", *d}, {"kind", "preset"}, {"preset", source.substr(7)}};
  }
  json state = read_json_file(source);
  if (d && state.is_object() && state.value("d", *d) != *d) {
    validation_failure("--d disagrees with the state file");
  }
  return state;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  std::cerr << "hw-tomo: no --seed given, using generated seed " << seed
            << "\n";
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hw-tomo: qudit tomography from ancilla statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hwtomo_version()));

  std::string out_path = "-";
  std::optional<int> d_opt;
  int l = -1, m = -1;

  auto* observables = app.add_subcommand("observables", "dump Q_lm matrices");
  observables->add_option("--d", d_opt, "qudit dimension")->required();
  observables->add_option("--l", l, "row index l");
  observables->add_option("--m", m, "column index m");
  observables->add_option("--out", out_path, "output JSON (- for stdout)");

  std::string state_source;
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed;
  bool no_pin = false, no_project = false;
  std::string coeffs_out, csv_out;
  auto* simulate =
      app.add_subcommand("simulate", "simulate ancilla statistics and reconstruct");
  simulate->add_option("--state", state_source,
                       "state JSON file or preset:<name>")
      ->required();
  simulate->add_option("--d", d_opt, "dimension (required for presets)");
  simulate->add_option("--shots", shots, "shots per setting, 0 = exact")
      ->required();
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_flag("--no-pin-trace", no_pin,
                     "measure the (0,0) setting instead of fixing <Q_00> = 1");
  simulate->add_flag("--no-project", no_project,
                     "skip the physicality projection");
  simulate->add_option("--coeffs-out", coeffs_out, "coefficient table JSON");
  simulate->add_option("--csv-out", csv_out, "coefficient table CSV");
  simulate->add_option("--out", out_path, "report JSON (- for stdout)");

  std::string coeffs_path, truth_path;
  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "reconstruct from a coefficient table");
  reconstruct_cmd->add_option("--coeffs", coeffs_path, "coefficient table JSON")
      ->required();
  reconstruct_cmd->add_option("--truth", truth_path,
                              "reference state for metrics");
  reconstruct_cmd->add_flag("--no-project", no_project,
                            "skip the physicality projection");
  reconstruct_cmd->add_option("--csv-out", csv_out, "coefficient table CSV");
  reconstruct_cmd->add_option("--out", out_path, "report JSON (- for stdout)");

  std::string layout = "parallel";
  auto* compile = app.add_subcommand("compile", "compile Z^l X^m into optics");
  compile->add_option("--d", d_opt, "qudit dimension")->required();
  compile->add_option("--l", l, "Z power")->required();
  compile->add_option("--m", m, "X power")->required();
  compile->add_option("--layout", layout, "serial | parallel")
      ->check(CLI::IsMember({"serial", "parallel"}));
  compile->add_option("--out", out_path, "plan JSON (- for stdout)");

  bool verify_all = false;
  auto* verify = app.add_subcommand("verify-optics",
                                    "check compiled plans against Z^l X^m");
  verify->add_option("--d", d_opt, "qudit dimension")->required();
  verify->add_flag("--all", verify_all, "every (l, m)");
  verify->add_option("--l", l, "Z power");
  verify->add_option("--m", m, "X power");
  verify->add_option("--layout", layout, "serial | parallel | both")
      ->check(CLI::IsMember({"serial", "parallel", "both"}));
  verify->add_option("--out", out_path, "verdict JSON (- for stdout)");

  std::string replay_path;
  auto* replay = app.add_subcommand(
      "replay", "re-run the config embedded in an output document");
  replay->add_option("--report", replay_path, "document to replay")->required();
  replay->add_option("--out", out_path, "output path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    json config;
    if (observables->parsed()) {
      if ((l < 0) != (m < 0)) {
        validation_failure("give both --l and --m, or neither");
      }
      config = {{"subcommand", "observables"}, {"d", *d_opt}};
      if (l >= 0) {
        config["l"] = l;
        config["m"] = m;
      }
    } else if (simulate->parsed()) {
      config = {{"subcommand", "simulate"},
                {"state_source", state_source},
                {"state", state_config(state_source, d_opt)},
                {"shots", shots},
                {"seed", seed ? *seed : (shots > 0 ? fresh_seed() : 0)},
                {"pin_trace", !no_pin},
                {"project", !no_project}};
    } else if (reconstruct_cmd->parsed()) {
      config = {{"subcommand", "reconstruct"},
                {"coeffs_source", coeffs_path},
                {"coeffs", read_json_file(coeffs_path)},
                {"truth", truth_path.empty() ? json(nullptr)
                                             : read_json_file(truth_path)},
                {"project", !no_project}};
    } else if (compile->parsed()) {
      config = {{"subcommand", "compile"}, {"d", *d_opt}, {"l", l},
                {"m", m}, {"layout", layout}};
    } else if (verify->parsed()) {
      if (!verify_all && (l < 0 || m < 0)) {
        validation_failure("verify-optics needs --all or both --l and --m");
      }
      config = {{"subcommand", "verify-optics"}, {"d", *d_opt},
                {"all", verify_all}, {"layout", layout}};
      if (!verify_all) {
        config["l"] = l;
        config["m"] = m;
      }
    } else if (replay->parsed()) {
      const json doc = read_json_file(replay_path);
      if (!doc.is_object() || !doc.contains("config")) {
        validation_failure("'" + replay_path + "' has no embedded config");
      }
      config = doc["config"];
    }

    Dispatch result = dispatch(config);
    write_output(out_path, result.outputs.main);
    if (!coeffs_out.empty() && result.outputs.coeffs_json) {
      write_output(coeffs_out, *result.outputs.coeffs_json);
    }
    if (!csv_out.empty() && result.outputs.coeffs_csv) {
      write_output(csv_out, *result.outputs.coeffs_csv);
    }
    return result.exit_code;
  } catch (const Failure& f) {
    std::cerr << "hw-tomo: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "hw-tomo: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
