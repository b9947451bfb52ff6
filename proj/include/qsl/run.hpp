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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qsl/dfunc.hpp"
#include "qsl/scenario.hpp"

namespace qsl {

struct RunOptions {
  /// When set, <name>_series.csv and <name>_report.json are written here
  /// (the directory is created). Empty runs in memory only.
  std::filesystem::path out_dir;
  Exec exec = Exec::Parallel;
};

struct RunResult {
  ScenarioConfig cfg;
  Trajectory trajectory;
  std::vector<FidelitySeries> fidelities;
  BoundReport bounds;
  std::vector<IndependenceReport> independence;
  /// The full report document (also written as JSON when out_dir is set).
  Json report;
  std::filesystem::path series_csv;
  std::filesystem::path report_json;
};

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Sets a scalar config key ("tau", "dt", "params.gamma", ...) on a
/// config document. One dot level at most; UnknownName if the path shape
/// is wrong (final validation happens in config_from_document).
void set_config_value(Json& doc, const std::string& dotted_key, double value);

/// Re-runs the scenario once per value of the swept key and collects the
/// per-run summaries (f_tau per fidelity, tau_qsl per bound, unified
/// bounds). Writes <name>_sweep.csv/.json when out_dir is set.
Json run_sweep(const Json& base_doc, const std::filesystem::path& base_dir,
               const std::string& default_name, const std::string& key,
               const std::vector<double>& values, const RunOptions& opts = {});

/// run / verify report errors through these: config errors exit 2,
/// numeric errors 3, anything else 1.
int exit_code_for(const std::exception& e);

/// {"error": {"type", "message", "measured"?}} for machine consumption.
Json error_json(const std::exception& e);

}  // namespace qsl
