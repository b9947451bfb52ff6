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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/toml_lite.hpp"

namespace qsl {

enum class ModelKind {
  Dephasing,
  AmplitudeDamping,
  Depolarizing,
  RabiDrive,
  CustomMatrices
};

const char* model_kind_name(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

struct InitialStateSpec {
  enum class Kind { ModelDefault, Pure, Mixture, File };
  Kind kind = Kind::ModelDefault;
  ComplexVector amplitudes;
  std::vector<double> spectrum;
  /// Empty means the computational basis.
  std::vector<ComplexVector> basis;
  std::filesystem::path path;
};

/// Parsed and validated scenario description. Unknown keys are rejected;
/// every default that was filled is part of the documented contract.
struct ScenarioConfig {
  std::string name;
  ModelKind model = ModelKind::Dephasing;
  int dim = 2;
  std::map<std::string, double> params;
  InitialStateSpec initial_state;
  double tau = 1.0;
  double dt = 1e-3;
  std::vector<FidelityKind> fidelities;
  std::vector<BoundKind> bounds;
  std::vector<std::string> d_functionals;
  double hbar = 1.0;
  std::uint64_t seed = 0;
  Quadrature quadrature = Quadrature::Trapezoid;
  ShiftPolicy energy_shift = ShiftPolicy::PerInstant;

  /// custom_matrices only.
  std::filesystem::path hamiltonian_file;
  std::vector<std::filesystem::path> jump_files;
  std::vector<double> jump_rates;

  /// Directory the config was loaded from; file references resolve
  /// against it.
  std::filesystem::path base_dir;
};

/// Loads a .toml or .json config file into a JSON document.
Json load_config_document(const std::filesystem::path& path);

/// Validates a config document. ParseError/ValidationError carry the
/// offending key. default_name fills the name field when absent.
ScenarioConfig config_from_document(const Json& doc,
                                    const std::filesystem::path& base_dir,
                                    const std::string& default_name);

ScenarioConfig parse_config(const std::filesystem::path& path);

/// A scenario ready to run: generator, initial state, and the
/// Hamiltonian when one exists.
struct Scenario {
  ScenarioConfig cfg;
  LindbladSpec spec;
  std::optional<HamiltonianSpec> hamiltonian;
  bool hamiltonian_only = false;
  DensityMatrix rho0;
};

Scenario build_scenario(const ScenarioConfig& cfg);

}  // namespace qsl
