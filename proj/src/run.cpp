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

#include "qsl/run.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qsl/io.hpp"
#include "qsl/states.hpp"
#include "qsl/version.hpp"

namespace qsl {

namespace {

constexpr double kChainStepTarget = 1e-4;

double chain_fd_step(double grid_dt) {
  const auto stride = std::max<long long>(1, std::llround(kChainStepTarget / grid_dt));
  return static_cast<double>(stride) * grid_dt;
}

Json scenario_json(const ScenarioConfig& cfg, const Scenario& sc) {
  Json j;
  j["name"] = cfg.name;
  j["model"] = model_kind_name(cfg.model);
  j["dim"] = cfg.dim;
  j["tau"] = cfg.tau;
  j["dt"] = cfg.dt;
  j["hbar"] = cfg.hbar;
  j["seed"] = cfg.seed;
  j["quadrature"] =
      cfg.quadrature == Quadrature::Trapezoid ? "trapezoid" : "simpson";
  j["energy_shift"] =
      cfg.energy_shift == ShiftPolicy::PerInstant ? "per_instant" : "global_min";
  Json params = Json::object();
  for (const auto& [k, v] : cfg.params) params[k] = v;
  j["params"] = params;
  if (cfg.model == ModelKind::CustomMatrices) {
    if (!cfg.hamiltonian_file.empty()) {
      j["hamiltonian_file"] = cfg.hamiltonian_file.string();
    }
    Json files = Json::array();
    for (const auto& f : cfg.jump_files) files.push_back(f.string());
    j["jump_files"] = files;
    j["jump_rates"] = cfg.jump_rates;
  }
  j["hamiltonian_only"] = sc.hamiltonian_only;
  j["initial_purity"] = purity(sc.rho0);
  return j;
}

Json trajectory_json(const Trajectory& traj) {
  Json j;
  j["steps"] = traj.size() - 1;
  j["dt_effective"] = traj.dt;
  const ComplexMatrix& last = traj.final_state().mat();
  j["final_trace_deviation"] = std::abs(last.trace() - Complex(1.0, 0.0));
  j["final_min_eigenvalue"] = hermitian_eig(last).eigenvalues.minCoeff();
  j["initial_purity"] = purity(traj.initial());
  j["final_purity"] = purity(traj.final_state());
  return j;
}

Json entry_json(const BoundEntry& e) {
  Json j;
  j["kind"] = bound_kind_name(e.kind);
  j["fidelity"] = fidelity_kind_name(bound_kind_fidelity(e.kind));
  j["skipped"] = e.skipped;
  if (e.skipped) {
    j["skip_reason"] = e.skip_reason;
    return j;
  }
  j["b_tau"] = e.b_tau;
  j["f_tau"] = e.f_tau;
  j["tau_qsl"] = e.tau_qsl;
  j["valid"] = e.valid;
  return j;
}

std::string render_series_csv(
    const Trajectory& traj,
    const std::vector<const FidelitySeries*>& fids,
    const std::vector<std::pair<BoundKind, std::vector<double>>>& integrands) {
  std::ostringstream out;
  out << "t";
  for (const auto* s : fids) out << ",f_" << fidelity_kind_name(s->kind);
  for (const auto& [kind, series] : integrands) {
    out << ",b_" << bound_kind_name(kind);
  }
  out << "\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_full(traj.times[i]);
    for (const auto* s : fids) out << "," << format_full(s->values[i]);
    for (const auto& [kind, series] : integrands) {
      out << "," << format_full(series[i]);
    }
    out << "\n";
  }
  return out.str();
}

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
  if (dynamic_cast<const IoError*>(&e)) return "io_error";
  if (dynamic_cast<const UnknownName*>(&e)) return "unknown_name";
  if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
  if (dynamic_cast<const DimMismatch*>(&e)) return "dim_mismatch";
  if (dynamic_cast<const NotFinite*>(&e)) return "not_finite";
  if (dynamic_cast<const NotHermitian*>(&e)) return "not_hermitian";
  if (dynamic_cast<const NotPSD*>(&e)) return "not_psd";
  if (dynamic_cast<const TraceDeviation*>(&e)) return "trace_deviation";
  if (dynamic_cast<const NotNormalized*>(&e)) return "not_normalized";
  if (dynamic_cast<const BadRank*>(&e)) return "bad_rank";
  if (dynamic_cast<const StepMismatch*>(&e)) return "step_mismatch";
  if (dynamic_cast<const DriftExceeded*>(&e)) return "drift_exceeded";
  if (dynamic_cast<const PurityDegenerate*>(&e)) return "purity_degenerate";
  if (dynamic_cast<const MixedInitialState*>(&e)) return "mixed_initial_state";
  if (dynamic_cast<const ZeroEnergy*>(&e)) return "zero_energy";
  if (dynamic_cast<const ZeroDenominator*>(&e)) return "zero_denominator";
  if (dynamic_cast<const TooFewSamples*>(&e)) return "too_few_samples";
  if (dynamic_cast<const DomainExit*>(&e)) return "domain_exit";
  if (dynamic_cast<const NotAdmissible*>(&e)) return "not_admissible";
  if (dynamic_cast<const NumericError*>(&e)) return "numeric_error";
  if (dynamic_cast<const Error*>(&e)) return "error";
  return "internal_error";
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  Scenario sc = build_scenario(cfg);
  BoundOptions bopts;
  bopts.hbar = cfg.hbar;
  bopts.quadrature = cfg.quadrature;
  bopts.shift = cfg.energy_shift;
  bopts.exec = opts.exec;

  Trajectory traj = evolve(sc.spec, sc.rho0, cfg.tau, cfg.dt, cfg.hbar);

  std::map<FidelityKind, FidelitySeries> series_cache;
  auto get_series = [&](FidelityKind kind) -> const FidelitySeries& {
    auto it = series_cache.find(kind);
    if (it == series_cache.end()) {
      it = series_cache.emplace(kind, fidelity_series(kind, traj, opts.exec))
               .first;
    }
    return it->second;
  };

  std::vector<const FidelitySeries*> ordered_series;
  for (FidelityKind kind : cfg.fidelities) {
    ordered_series.push_back(&get_series(kind));
  }

  ReportContext ctx;
  ctx.hamiltonian = sc.hamiltonian;
  ctx.hamiltonian_only = sc.hamiltonian_only;
  ctx.opts = bopts;
  BoundReport bounds = build_report(traj, cfg.bounds, ctx);

  std::vector<std::pair<BoundKind, std::vector<double>>> integrands;
  for (const BoundEntry& e : bounds.entries) {
    if (e.skipped) continue;
    integrands.emplace_back(
        e.kind, bound_integrand_series(
                    traj, e.kind,
                    sc.hamiltonian ? &*sc.hamiltonian : nullptr, bopts));
  }

  std::vector<DFunctional> d_set;
  for (const auto& name : cfg.d_functionals) d_set.push_back(builtin_d(name));

  // One independence check per fidelity family, on the family's sharpest
  // non-skipped bound.
  std::vector<IndependenceReport> independence;
  Json independence_json = Json::array();
  if (!d_set.empty()) {
    for (FidelityKind family : all_fidelity_kinds()) {
      const BoundEntry* best = nullptr;
      for (const BoundEntry& e : bounds.entries) {
        if (e.skipped || bound_kind_fidelity(e.kind) != family) continue;
        if (best == nullptr || e.tau_qsl > best->tau_qsl) best = &e;
      }
      if (best == nullptr) continue;
      Json fam;
      fam["family"] = fidelity_kind_name(family);
      fam["bound_kind"] = bound_kind_name(best->kind);
      try {
        IndependenceReport rep = verify_independence(d_set, traj, best->kind, ctx);
        fam["d_free_tau_qsl"] = rep.d_free;
        fam["max_rel_spread"] = rep.max_rel_spread;
        Json per_d = Json::array();
        const double floor = std::max(std::abs(rep.d_free), 1e-30);
        for (const auto& entry : rep.per_d) {
          Json pj;
          pj["name"] = entry.name;
          pj["tau_qsl"] = entry.tau_qsl;
          pj["rel_deviation"] = std::abs(entry.tau_qsl - rep.d_free) / floor;
          per_d.push_back(pj);
        }
        fam["per_d"] = per_d;
        independence.push_back(std::move(rep));
      } catch (const Error& e) {
        fam["error"] = e.what();
      }

      Json chain = Json::array();
      const double fd_step = chain_fd_step(traj.dt);
      for (const DFunctional& d : d_set) {
        Json cj;
        cj["name"] = d.name;
        try {
          const ChainIdentityResult r =
              verify_chain_identity(d, get_series(family), fd_step);
          cj["max_residual"] = r.max_residual;
          cj["evaluated"] = r.evaluated;
          cj["excluded"] = r.excluded;
          cj["fd_step"] = r.fd_step;
        } catch (const Error& e) {
          cj["error"] = e.what();
        }
        chain.push_back(cj);
      }
      fam["chain_identity"] = chain;
      independence_json.push_back(fam);
    }
  }

  std::vector<std::string> notes;
  if (1.0 - purity(sc.rho0) < kPurityEps) {
    notes.push_back(
        "initial state is pure: the super-fidelity correction factor is 1 "
        "on the whole grid");
  }
  if (auto it = series_cache.find(FidelityKind::Alternative);
      it != series_cache.end()) {
    std::size_t over = 0;
    double max_excess = 0.0;
    for (double v : it->second.values) {
      if (v > 1.0 + 1e-12) {
        ++over;
        max_excess = std::max(max_excess, v - 1.0);
      }
    }
    if (over > 0) {
      notes.push_back("alternative fidelity exceeded 1 at " +
                      std::to_string(over) + " grid points (max excess " +
                      format_full(max_excess) + "); reported, not clamped");
    }
  }
  for (const BoundEntry& e : bounds.entries) {
    if (e.skipped) {
      notes.push_back(std::string("bound ") + bound_kind_name(e.kind) +
                      " skipped: " + e.skip_reason);
    }
  }

  Json report;
  report["schema_version"] = kReportSchemaVersion;
  report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  report["scenario"] = scenario_json(cfg, sc);
  report["trajectory"] = trajectory_json(traj);
  Json fj = Json::array();
  for (const auto* s : ordered_series) {
    Json one;
    one["kind"] = fidelity_kind_name(s->kind);
    one["f_tau"] = s->values.back();
    fj.push_back(one);
  }
  report["fidelities"] = fj;
  Json bj;
  bj["tau"] = bounds.tau;
  Json entries = Json::array();
  for (const BoundEntry& e : bounds.entries) entries.push_back(entry_json(e));
  bj["entries"] = entries;
  Json unified;
  unified["bures"] =
      bounds.unified_bures ? Json(*bounds.unified_bures) : Json(nullptr);
  unified["super"] =
      bounds.unified_super ? Json(*bounds.unified_super) : Json(nullptr);
  bj["unified"] = unified;
  report["bounds"] = bj;
  report["d_independence"] = independence_json;
  report["notes"] = notes;

  RunResult result{cfg,
                   std::move(traj),
                   {},
                   std::move(bounds),
                   std::move(independence),
                   std::move(report),
                   {},
                   {}};
  for (FidelityKind kind : cfg.fidelities) {
    result.fidelities.push_back(series_cache.at(kind));
  }

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    result.series_csv = opts.out_dir / (cfg.name + "_series.csv");
    result.report_json = opts.out_dir / (cfg.name + "_report.json");
    std::vector<const FidelitySeries*> csv_series;
    for (const auto& s : result.fidelities) csv_series.push_back(&s);
    write_text_atomic(result.series_csv,
                      render_series_csv(result.trajectory, csv_series, integrands));
    write_text_atomic(result.report_json, result.report.dump(2) + "\n");
  }
  return result;
}

void set_config_value(Json& doc, const std::string& dotted_key, double value) {
  const auto dot = dotted_key.find('.');
  if (dotted_key.empty() || dot == 0 || dot == dotted_key.size() - 1 ||
      (dot != std::string::npos &&
       dotted_key.find('.', dot + 1) != std::string::npos)) {
    throw UnknownName("config key path '" + dotted_key + "' not supported");
  }
  if (dot == std::string::npos) {
    doc[dotted_key] = value;
  } else {
    doc[dotted_key.substr(0, dot)][dotted_key.substr(dot + 1)] = value;
  }
}

Json run_sweep(const Json& base_doc, const std::filesystem::path& base_dir,
               const std::string& default_name, const std::string& key,
               const std::vector<double>& values, const RunOptions& opts) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");

  Json sweep;
  sweep["schema_version"] = kReportSchemaVersion;
  sweep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  sweep["key"] = key;
  Json points = Json::array();

  std::vector<FidelityKind> fid_columns;
  std::vector<BoundKind> bound_columns;
  std::string name = default_name;
  std::ostringstream csv;

  for (std::size_t i = 0; i < values.size(); ++i) {
    Json doc = base_doc;
    set_config_value(doc, key, values[i]);
    ScenarioConfig cfg = config_from_document(doc, base_dir, default_name);
    RunOptions point_opts;
    point_opts.exec = opts.exec;
    RunResult r = run_scenario(cfg, point_opts);

    if (i == 0) {
      fid_columns = cfg.fidelities;
      bound_columns = cfg.bounds;
      name = cfg.name;
      csv << "value";
      for (FidelityKind k : fid_columns) csv << ",f_" << fidelity_kind_name(k);
      for (BoundKind k : bound_columns) {
        csv << ",tau_qsl_" << bound_kind_name(k);
      }
      csv << ",unified_bures,unified_super\n";
    }

    Json point;
    point["value"] = values[i];
    Json fids;
    csv << format_full(values[i]);
    for (std::size_t s = 0; s < fid_columns.size(); ++s) {
      const double f_tau = r.fidelities[s].values.back();
      fids[fidelity_kind_name(fid_columns[s])] = f_tau;
      csv << "," << format_full(f_tau);
    }
    point["f_tau"] = fids;
    Json taus;
    for (BoundKind k : bound_columns) {
      const BoundEntry* e = r.bounds.find(k);
      if (e == nullptr || e->skipped) {
        taus[bound_kind_name(k)] = nullptr;
        csv << ",";
      } else {
        taus[bound_kind_name(k)] = e->tau_qsl;
        csv << "," << format_full(e->tau_qsl);
      }
    }
    point["tau_qsl"] = taus;
    point["unified_bures"] = r.bounds.unified_bures
                                 ? Json(*r.bounds.unified_bures)
                                 : Json(nullptr);
    point["unified_super"] = r.bounds.unified_super
                                 ? Json(*r.bounds.unified_super)
                                 : Json(nullptr);
    csv << "," << (r.bounds.unified_bures ? format_full(*r.bounds.unified_bures) : "");
    csv << "," << (r.bounds.unified_super ? format_full(*r.bounds.unified_super) : "");
    csv << "\n";
    points.push_back(point);
  }
  sweep["points"] = points;

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    write_text_atomic(opts.out_dir / (name + "_sweep.csv"), csv.str());
    write_text_atomic(opts.out_dir / (name + "_sweep.json"),
                      sweep.dump(2) + "\n");
  }
  return sweep;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericError*>(&e)) return 3;
  return 1;
}

Json error_json(const std::exception& e) {
  Json err;
  err["type"] = error_type(e);
  err["message"] = e.what();
  if (const auto* num = dynamic_cast<const NumericError*>(&e);
      num != nullptr && std::isfinite(num->measured())) {
    err["measured"] = num->measured();
  }
  if (const auto* drift = dynamic_cast<const DriftExceeded*>(&e)) {
    err["step"] = drift->step();
  }
  if (const auto* deg = dynamic_cast<const PurityDegenerate*>(&e)) {
    err["grid_index"] = deg->grid_index();
  }
  Json out;
  out["error"] = err;
  return out;
}

}  // namespace qsl
