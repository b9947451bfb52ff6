// Copyright 2026 The qsl Authors
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

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsl/io.hpp"
#include "qsl/run.hpp"
#include "qsl/verify.hpp"
#include "qsl/version.hpp"

namespace {

/// Exit codes: 0 success, 1 internal/check failure, 2 config error,
/// 3 numeric failure during evaluation.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    std::printf("%s\n", qsl::error_json(e).dump(2).c_str());
    return qsl::exit_code_for(e);
  }
}

void print_run_summary(const qsl::RunResult& r) {
  const auto& cfg = r.cfg;
  std::printf("scenario %s (model %s, dim %d, tau %g, dt %g)\n",
              cfg.name.c_str(), qsl::model_kind_name(cfg.model), cfg.dim,
              cfg.tau, cfg.dt);
  std::printf("f_tau:");
  for (const auto& s : r.fidelities) {
    std::printf(" %s %.6g", qsl::fidelity_kind_name(s.kind), s.values.back());
  }
  std::printf("\nbounds:\n");
  for (const auto& e : r.bounds.entries) {
    if (e.skipped) {
      std::printf("  %-22s skipped: %s\n", qsl::bound_kind_name(e.kind),
                  e.skip_reason.c_str());
    } else {
      std::printf("  %-22s b_tau %.6g  tau_qsl %.6g  %s\n",
                  qsl::bound_kind_name(e.kind), e.b_tau, e.tau_qsl,
                  e.valid ? "valid" : "INVALID");
    }
  }
  std::printf("unified: bures %s, super %s\n",
              r.bounds.unified_bures
                  ? qsl::format_full(*r.bounds.unified_bures).c_str()
                  : "n/a",
              r.bounds.unified_super
                  ? qsl::format_full(*r.bounds.unified_super).c_str()
                  : "n/a");
  for (const auto& note : r.report["notes"]) {
    std::printf("note: %s\n", note.get<std::string>().c_str());
  }
  if (!r.series_csv.empty()) {
    std::printf("wrote %s\nwrote %s\n", r.series_csv.string().c_str(),
                r.report_json.string().c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limit bounds from Lindblad trajectories"};
  app.set_version_flag("--version", std::string(qsl::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  bool serial = false;
  double dt_override = 0.0;
  double hbar_override = 0.0;

  auto* run_cmd = app.add_subcommand("run", "Evaluate one scenario config");
  run_cmd->add_option("config", config_path, "Scenario .toml or .json file")
      ->required();
  run_cmd->add_option("--out-dir", out_dir,
                      "Directory for the series CSV and report JSON "
                      "(\"-\" disables writing)");
  auto* dt_opt =
      run_cmd->add_option("--dt", dt_override, "Override the grid step");
  auto* hbar_opt =
      run_cmd->add_option("--hbar", hbar_override, "Override hbar");
  run_cmd->add_flag("--serial", serial, "Disable parallel evaluation");

  std::uint64_t seed = 12345;
  bool full = false;
  bool as_json = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the randomized property checks");
  verify_cmd->add_option("--seed", seed, "Base seed for the checks");
  verify_cmd->add_flag("--full", full, "Raise the sample counts");
  verify_cmd->add_flag("--json", as_json, "Print results as JSON");
  verify_cmd->add_flag("--serial", serial, "Disable parallel evaluation");

  std::string sweep_key;
  std::vector<double> sweep_values;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Re-run a scenario over one varying key");
  sweep_cmd->add_option("config", config_path, "Scenario .toml or .json file")
      ->required();
  sweep_cmd->add_option("--key", sweep_key,
                        "Config key to vary (e.g. tau, dt, params.gamma)")
      ->required();
  sweep_cmd
      ->add_option("--values", sweep_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out-dir", out_dir,
                        "Directory for the sweep CSV/JSON "
                        "(\"-\" disables writing)");
  sweep_cmd->add_flag("--serial", serial, "Disable parallel evaluation");

  CLI11_PARSE(app, argc, argv);
  const qsl::Exec exec = serial ? qsl::Exec::Serial : qsl::Exec::Parallel;

  if (run_cmd->parsed()) {
    return guarded([&] {
      const std::filesystem::path path(config_path);
      qsl::Json doc = qsl::load_config_document(path);
      if (*dt_opt) qsl::set_config_value(doc, "dt", dt_override);
      if (*hbar_opt) qsl::set_config_value(doc, "hbar", hbar_override);
      const qsl::ScenarioConfig cfg = qsl::config_from_document(
          doc, path.parent_path(), path.stem().string());
      qsl::RunOptions opts;
      opts.exec = exec;
      if (out_dir != "-") opts.out_dir = out_dir;
      print_run_summary(qsl::run_scenario(cfg, opts));
      return 0;
    });
  }

  if (verify_cmd->parsed()) {
    return guarded([&] {
      qsl::VerifyOptions opts;
      opts.seed = seed;
      opts.full = full;
      opts.exec = exec;
      const auto results = qsl::run_checks(opts);
      if (as_json) {
        qsl::Json out = qsl::Json::array();
        for (const auto& r : results) {
          qsl::Json j;
          j["name"] = r.name;
          j["pass"] = r.pass;
          j["samples"] = r.samples;
          j["worst"] = r.worst;
          j["detail"] = r.detail;
          out.push_back(j);
        }
        std::printf("%s\n", out.dump(2).c_str());
      } else {
        std::size_t passed = 0;
        for (const auto& r : results) {
          passed += r.pass ? 1 : 0;
          std::printf("%s %-28s %s\n", r.pass ? "ok  " : "FAIL",
                      r.name.c_str(), r.detail.c_str());
        }
        std::printf("%zu/%zu checks passed (seed %llu%s)\n", passed,
                    results.size(), static_cast<unsigned long long>(seed),
                    full ? ", full" : "");
      }
      return qsl::all_passed(results) ? 0 : 1;
    });
  }

  return guarded([&] {
    const std::filesystem::path path(config_path);
    const qsl::Json doc = qsl::load_config_document(path);
    qsl::RunOptions opts;
    opts.exec = exec;
    if (out_dir != "-") opts.out_dir = out_dir;
    const qsl::Json sweep = qsl::run_sweep(doc, path.parent_path(),
                                           path.stem().string(), sweep_key,
                                           sweep_values, opts);
    for (const auto& point : sweep["points"]) {
      std::printf("%s = %-12g", sweep_key.c_str(),
                  point["value"].get<double>());
      const auto& unified_b = point["unified_bures"];
      const auto& unified_s = point["unified_super"];
      std::printf(" unified_bures %-12s unified_super %s\n",
                  unified_b.is_null()
                      ? "n/a"
                      : qsl::format_full(unified_b.get<double>()).c_str(),
                  unified_s.is_null()
                      ? "n/a"
                      : qsl::format_full(unified_s.get<double>()).c_str());
    }
    if (out_dir != "-") {
      std::printf("wrote %s and %s in %s\n", "*_sweep.csv", "*_sweep.json",
                  out_dir.c_str());
    }
    return 0;
  });
}
