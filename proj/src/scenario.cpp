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

#include "qsl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qsl/dfunc.hpp"
#include "qsl/io.hpp"
#include "qsl/states.hpp"

namespace qsl {

namespace {

[[noreturn]] void fail_key(const std::string& key, const std::string& what) {
  throw ValidationError("key '" + key + "': " + what);
}

double as_number(const Json& v, const std::string& key) {
  if (!v.is_number()) fail_key(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail_key(key, "must be finite");
  return x;
}

std::int64_t as_integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) fail_key(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const Json& v, const std::string& key) {
  if (!v.is_string()) fail_key(key, "expected a string");
  return v.get<std::string>();
}

Complex as_complex(const Json& v, const std::string& key) {
  if (v.is_number()) {
    const double re = v.get<double>();
    if (!std::isfinite(re)) fail_key(key, "must be finite");
    return Complex(re, 0.0);
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const double re = v[0].get<double>();
    const double im = v[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) fail_key(key, "must be finite");
    return Complex(re, im);
  }
  fail_key(key, "expected a number or a [re, im] pair");
}

std::vector<std::string> as_string_list(const Json& v, const std::string& key) {
  if (!v.is_array()) fail_key(key, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) out.push_back(as_string(item, key));
  return out;
}

void check_keys(const Json& obj, const std::string& scope,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw UnknownName("unknown key '" + it.key() + "' in " + scope);
    }
  }
}

ComplexVector parse_amplitudes(const Json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) {
    fail_key(key, "expected a non-empty array of amplitudes");
  }
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = as_complex(v[i], key);
  }
  return out;
}

InitialStateSpec parse_initial_state(const Json& sec) {
  InitialStateSpec spec;
  const std::string kind = as_string(sec.value("kind", Json()),
                                     "initial_state.kind");
  if (kind == "pure") {
    spec.kind = InitialStateSpec::Kind::Pure;
    check_keys(sec, "[initial_state]", {"kind", "vector"});
    if (!sec.contains("vector")) fail_key("initial_state.vector", "required");
    spec.amplitudes = parse_amplitudes(sec["vector"], "initial_state.vector");
  } else if (kind == "mixture") {
    spec.kind = InitialStateSpec::Kind::Mixture;
    check_keys(sec, "[initial_state]", {"kind", "spectrum", "basis"});
    if (!sec.contains("spectrum")) fail_key("initial_state.spectrum", "required");
    const Json& sp = sec["spectrum"];
    if (!sp.is_array() || sp.empty()) {
      fail_key("initial_state.spectrum", "expected a non-empty array");
    }
    for (const auto& p : sp) {
      const double x = as_number(p, "initial_state.spectrum");
      if (x < 0.0) fail_key("initial_state.spectrum", "entries must be >= 0");
      spec.spectrum.push_back(x);
    }
    if (sec.contains("basis") && !sec["basis"].is_string()) {
      const Json& basis = sec["basis"];
      if (!basis.is_array()) {
        fail_key("initial_state.basis",
                 "expected \"computational\" or an array of vectors");
      }
      for (const auto& vec : basis) {
        spec.basis.push_back(parse_amplitudes(vec, "initial_state.basis"));
      }
    } else if (sec.contains("basis") &&
               sec["basis"].get<std::string>() != "computational") {
      fail_key("initial_state.basis",
               "expected \"computational\" or an array of vectors");
    }
  } else if (kind == "file") {
    spec.kind = InitialStateSpec::Kind::File;
    check_keys(sec, "[initial_state]", {"kind", "path"});
    if (!sec.contains("path")) fail_key("initial_state.path", "required");
    spec.path = as_string(sec["path"], "initial_state.path");
  } else {
    throw UnknownName("unknown initial_state kind '" + kind + "'");
  }
  return spec;
}

ComplexMatrix read_square_csv(const std::filesystem::path& path,
                              const std::string& key) {
  if (!std::filesystem::exists(path)) {
    throw IoError("key '" + key + "': file not found: " + path.string());
  }
  ComplexMatrix m = read_matrix_csv(path);
  if (m.rows() != m.cols()) {
    throw ValidationError("key '" + key + "': matrix in " + path.string() +
                          " is not square");
  }
  return m;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix lowering() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

PureState normalized_pure(const ComplexVector& amps, const std::string& key) {
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw ValidationError("key '" + key + "': vector norm " +
                          format_full(norm) + " is not 1 within 1e-6");
  }
  return PureState::validated(amps / norm);
}

DensityMatrix build_initial_state(const ScenarioConfig& cfg) {
  const auto& spec = cfg.initial_state;
  const Eigen::Index d = cfg.dim;
  switch (spec.kind) {
    case InitialStateSpec::Kind::ModelDefault: {
      ComplexVector v = ComplexVector::Zero(d);
      switch (cfg.model) {
        case ModelKind::Dephasing:
          v(0) = v(1) = 1.0 / std::sqrt(2.0);
          break;
        case ModelKind::AmplitudeDamping:
          v(1) = 1.0;
          break;
        case ModelKind::Depolarizing:
        case ModelKind::RabiDrive:
          v(0) = 1.0;
          break;
        case ModelKind::CustomMatrices:
          throw ValidationError(
              "model custom_matrices requires an explicit [initial_state]");
      }
      return density_from_pure(PureState::validated(v));
    }
    case InitialStateSpec::Kind::Pure: {
      if (spec.amplitudes.size() != d) {
        throw ValidationError("initial_state.vector has " +
                              std::to_string(spec.amplitudes.size()) +
                              " amplitudes, expected " + std::to_string(d));
      }
      return density_from_pure(
          normalized_pure(spec.amplitudes, "initial_state.vector"));
    }
    case InitialStateSpec::Kind::Mixture: {
      double sum = 0.0;
      for (double p : spec.spectrum) sum += p;
      if (std::abs(sum - 1.0) > 1e-6) {
        throw ValidationError("initial_state.spectrum sums to " +
                              format_full(sum) + ", expected 1 within 1e-6");
      }
      std::vector<ComplexVector> basis = spec.basis;
      if (basis.empty()) {
        if (static_cast<Eigen::Index>(spec.spectrum.size()) != d) {
          throw ValidationError(
              "initial_state.spectrum over the computational basis needs "
              "exactly dim entries");
        }
        for (Eigen::Index i = 0; i < d; ++i) {
          ComplexVector e = ComplexVector::Zero(d);
          e(i) = 1.0;
          basis.push_back(e);
        }
      }
      if (basis.size() != spec.spectrum.size()) {
        throw ValidationError(
            "initial_state.basis and initial_state.spectrum lengths differ");
      }
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != d) {
          throw ValidationError("initial_state.basis vectors must have dim " +
                                std::to_string(d) + " entries");
        }
        for (std::size_t j = 0; j <= i; ++j) {
          const Complex overlap = basis[j].dot(basis[i]);
          const double expect = (i == j) ? 1.0 : 0.0;
          if (std::abs(overlap - expect) > 1e-8) {
            throw ValidationError(
                "initial_state.basis vectors are not orthonormal within 1e-8");
          }
        }
      }
      ComplexMatrix rho = ComplexMatrix::Zero(d, d);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        rho += spec.spectrum[i] / sum * (basis[i] * basis[i].adjoint());
      }
      return DensityMatrix::validated(rho);
    }
    case InitialStateSpec::Kind::File: {
      const auto path = cfg.base_dir / spec.path;
      ComplexMatrix m = read_square_csv(path, "initial_state.path");
      if (m.rows() != d) {
        throw ValidationError("initial_state file " + path.string() +
                              " has dim " + std::to_string(m.rows()) +
                              ", expected " + std::to_string(d));
      }
      return DensityMatrix::validated(m);
    }
  }
  throw ValidationError("unreachable initial_state kind");
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Dephasing: return "dephasing";
    case ModelKind::AmplitudeDamping: return "amplitude_damping";
    case ModelKind::Depolarizing: return "depolarizing";
    case ModelKind::RabiDrive: return "rabi_drive";
    case ModelKind::CustomMatrices: return "custom_matrices";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "dephasing") return ModelKind::Dephasing;
  if (name == "amplitude_damping") return ModelKind::AmplitudeDamping;
  if (name == "depolarizing") return ModelKind::Depolarizing;
  if (name == "rabi_drive") return ModelKind::RabiDrive;
  if (name == "custom_matrices") return ModelKind::CustomMatrices;
  throw UnknownName("unknown model '" + name + "'");
}

Json load_config_document(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  const std::string text = read_text(path);
  if (ext == ".toml") return parse_toml_lite(text);
  if (ext == ".json") {
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
  }
  throw ConfigError("unsupported config extension '" + ext +
                    "' (expected .toml or .json)");
}

ScenarioConfig config_from_document(const Json& doc,
                                    const std::filesystem::path& base_dir,
                                    const std::string& default_name) {
  if (!doc.is_object()) throw ValidationError("config root must be a table");
  check_keys(doc, "config",
             {"name", "model", "dim", "tau", "dt", "hbar", "seed",
              "fidelities", "bounds", "d_functionals", "quadrature",
              "energy_shift", "params", "initial_state", "hamiltonian_file",
              "jump_files", "jump_rates"});

  ScenarioConfig cfg;
  cfg.base_dir = base_dir;
  if (!doc.contains("model")) fail_key("model", "required");
  cfg.model = parse_model_kind(as_string(doc["model"], "model"));

  cfg.name = doc.contains("name") ? as_string(doc["name"], "name")
                                  : default_name;
  if (cfg.name.empty() ||
      cfg.name.find_first_not_of(
          "abcdefghijklmnopqrstuvwxyz"
          "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") != std::string::npos) {
    fail_key("name", "must be non-empty and use only [A-Za-z0-9_.-]");
  }

  const bool custom = cfg.model == ModelKind::CustomMatrices;
  for (const char* key : {"hamiltonian_file", "jump_files", "jump_rates"}) {
    if (!custom && doc.contains(key)) {
      fail_key(key, "only valid for model custom_matrices");
    }
  }
  if (doc.contains("params") && custom) {
    fail_key("params", "not valid for model custom_matrices");
  }

  // Named models are qubit models; custom dimensions come from the files.
  if (doc.contains("dim")) {
    const std::int64_t d = as_integer(doc["dim"], "dim");
    if (d < 2) fail_key("dim", "must be >= 2");
    if (!custom && d != 2) {
      fail_key("dim", std::string("model ") + model_kind_name(cfg.model) +
                          " is a qubit model (dim = 2)");
    }
    cfg.dim = static_cast<int>(d);
  }

  if (!custom) {
    const Json params = doc.value("params", Json::object());
    if (!params.is_object()) fail_key("params", "expected a table");
    const bool needs_omega = cfg.model == ModelKind::RabiDrive;
    const std::string required = needs_omega ? "omega" : "gamma";
    check_keys(params, "[params]", {required});
    if (!params.contains(required)) fail_key("params." + required, "required");
    for (auto it = params.begin(); it != params.end(); ++it) {
      const double x = as_number(it.value(), "params." + it.key());
      if (x < 0.0) fail_key("params." + it.key(), "must be >= 0");
      cfg.params[it.key()] = x;
    }
  }

  if (!doc.contains("tau")) fail_key("tau", "required");
  if (!doc.contains("dt")) fail_key("dt", "required");
  cfg.tau = as_number(doc["tau"], "tau");
  cfg.dt = as_number(doc["dt"], "dt");
  if (cfg.tau <= 0.0) fail_key("tau", "must be > 0");
  if (cfg.dt <= 0.0) fail_key("dt", "must be > 0");
  if (doc.contains("hbar")) {
    cfg.hbar = as_number(doc["hbar"], "hbar");
    if (cfg.hbar <= 0.0) fail_key("hbar", "must be > 0");
  }
  if (doc.contains("seed")) {
    const std::int64_t s = as_integer(doc["seed"], "seed");
    if (s < 0) fail_key("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  try {
    step_count(cfg.tau, cfg.dt);
  } catch (const StepMismatch&) {
    throw ValidationError("tau must be an integer multiple of dt (tau=" +
                          format_full(cfg.tau) + ", dt=" + format_full(cfg.dt) +
                          ")");
  }

  if (doc.contains("fidelities")) {
    for (const auto& s : as_string_list(doc["fidelities"], "fidelities")) {
      const FidelityKind k = parse_fidelity_kind(s);
      if (std::find(cfg.fidelities.begin(), cfg.fidelities.end(), k) ==
          cfg.fidelities.end()) {
        cfg.fidelities.push_back(k);
      }
    }
    if (cfg.fidelities.empty()) fail_key("fidelities", "must not be empty");
  } else {
    cfg.fidelities = all_fidelity_kinds();
  }

  if (doc.contains("d_functionals")) {
    for (const auto& s :
         as_string_list(doc["d_functionals"], "d_functionals")) {
      builtin_d(s);  // Throws UnknownName for anything unrecognized.
      if (std::find(cfg.d_functionals.begin(), cfg.d_functionals.end(), s) ==
          cfg.d_functionals.end()) {
        cfg.d_functionals.push_back(s);
      }
    }
  } else {
    cfg.d_functionals = builtin_d_names();
  }

  if (doc.contains("quadrature")) {
    const std::string q = as_string(doc["quadrature"], "quadrature");
    if (q == "trapezoid") {
      cfg.quadrature = Quadrature::Trapezoid;
    } else if (q == "simpson") {
      cfg.quadrature = Quadrature::Simpson;
    } else {
      throw UnknownName("unknown quadrature '" + q + "'");
    }
  }
  if (doc.contains("energy_shift")) {
    const std::string s = as_string(doc["energy_shift"], "energy_shift");
    if (s == "per_instant") {
      cfg.energy_shift = ShiftPolicy::PerInstant;
    } else if (s == "global_min") {
      cfg.energy_shift = ShiftPolicy::GlobalMin;
    } else {
      throw UnknownName("unknown energy_shift '" + s + "'");
    }
  }

  bool hamiltonian_only = cfg.model == ModelKind::RabiDrive;
  if (custom) {
    if (doc.contains("hamiltonian_file")) {
      cfg.hamiltonian_file =
          as_string(doc["hamiltonian_file"], "hamiltonian_file");
    }
    if (doc.contains("jump_files")) {
      for (const auto& s : as_string_list(doc["jump_files"], "jump_files")) {
        cfg.jump_files.emplace_back(s);
      }
    }
    if (doc.contains("jump_rates")) {
      const Json& rates = doc["jump_rates"];
      if (!rates.is_array()) fail_key("jump_rates", "expected an array");
      for (const auto& r : rates) {
        const double x = as_number(r, "jump_rates");
        if (x < 0.0) fail_key("jump_rates", "must be >= 0");
        cfg.jump_rates.push_back(x);
      }
    }
    if (cfg.jump_files.size() != cfg.jump_rates.size()) {
      fail_key("jump_rates", "length must match jump_files");
    }
    if (cfg.hamiltonian_file.empty() && cfg.jump_files.empty()) {
      throw ValidationError(
          "model custom_matrices needs hamiltonian_file and/or jump_files");
    }

    // Referenced files must exist and agree on the dimension at parse time.
    Eigen::Index d = -1;
    auto scan = [&](const std::filesystem::path& rel, const std::string& key) {
      const ComplexMatrix m = read_square_csv(base_dir / rel, key);
      if (d >= 0 && m.rows() != d) {
        throw ValidationError("key '" + key + "': matrix in " + rel.string() +
                              " has dim " + std::to_string(m.rows()) +
                              ", expected " + std::to_string(d));
      }
      d = m.rows();
    };
    if (!cfg.hamiltonian_file.empty()) {
      scan(cfg.hamiltonian_file, "hamiltonian_file");
    }
    for (const auto& f : cfg.jump_files) scan(f, "jump_files");
    if (doc.contains("dim") && cfg.dim != d) {
      fail_key("dim", "does not match the matrix files (dim " +
                          std::to_string(d) + ")");
    }
    cfg.dim = static_cast<int>(d);

    bool any_positive = false;
    for (double r : cfg.jump_rates) any_positive = any_positive || r > 0.0;
    hamiltonian_only = !any_positive && !cfg.hamiltonian_file.empty();
  }

  if (doc.contains("bounds")) {
    for (const auto& s : as_string_list(doc["bounds"], "bounds")) {
      const BoundKind k = parse_bound_kind(s);
      if (std::find(cfg.bounds.begin(), cfg.bounds.end(), k) ==
          cfg.bounds.end()) {
        cfg.bounds.push_back(k);
      }
    }
    if (cfg.bounds.empty()) fail_key("bounds", "must not be empty");
  } else {
    for (BoundKind k : all_bound_kinds()) {
      if (k == BoundKind::BuresMLHamiltonian && !hamiltonian_only) continue;
      cfg.bounds.push_back(k);
    }
  }

  if (doc.contains("initial_state")) {
    const Json& sec = doc["initial_state"];
    if (!sec.is_object()) fail_key("initial_state", "expected a table");
    cfg.initial_state = parse_initial_state(sec);
  }
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  const Json doc = load_config_document(path);
  return config_from_document(doc, path.parent_path(), path.stem().string());
}

Scenario build_scenario(const ScenarioConfig& cfg) {
  LindbladSpec spec;
  spec.dim = cfg.dim;
  std::optional<HamiltonianSpec> hamiltonian;

  auto constant_hamiltonian = [&](ComplexMatrix h) {
    HamiltonianSpec hs;
    hs.dim = static_cast<Eigen::Index>(h.rows());
    hs.at = [m = std::move(h)](double) { return m; };
    return hs;
  };

  switch (cfg.model) {
    case ModelKind::Dephasing:
      spec.jumps.push_back({pauli_z(), cfg.params.at("gamma")});
      break;
    case ModelKind::AmplitudeDamping:
      spec.jumps.push_back({lowering(), cfg.params.at("gamma")});
      break;
    case ModelKind::Depolarizing: {
      const double rate = cfg.params.at("gamma") / 4.0;
      spec.jumps.push_back({pauli_x(), rate});
      spec.jumps.push_back({pauli_y(), rate});
      spec.jumps.push_back({pauli_z(), rate});
      break;
    }
    case ModelKind::RabiDrive: {
      ComplexMatrix h = 0.5 * cfg.params.at("omega") * pauli_x();
      hamiltonian = constant_hamiltonian(std::move(h));
      break;
    }
    case ModelKind::CustomMatrices: {
      if (!cfg.hamiltonian_file.empty()) {
        ComplexMatrix h = read_square_csv(cfg.base_dir / cfg.hamiltonian_file,
                                          "hamiltonian_file");
        const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
        if (dev > 1e-10) throw NotHermitian("hamiltonian_file matrix", dev);
        hamiltonian = constant_hamiltonian(std::move(h));
      }
      for (std::size_t i = 0; i < cfg.jump_files.size(); ++i) {
        spec.jumps.push_back(
            {read_square_csv(cfg.base_dir / cfg.jump_files[i], "jump_files"),
             cfg.jump_rates[i]});
      }
      break;
    }
  }
  if (hamiltonian) spec.hamiltonian = hamiltonian;

  bool any_positive = false;
  for (const auto& j : spec.jumps) {
    any_positive = any_positive || j.rate > 0.0;
  }
  const bool hamiltonian_only = hamiltonian.has_value() && !any_positive;

  return Scenario{cfg, std::move(spec), std::move(hamiltonian),
                  hamiltonian_only, build_initial_state(cfg)};
}

}  // namespace qsl
