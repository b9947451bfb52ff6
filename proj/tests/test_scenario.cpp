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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "qsl/io.hpp"
#include "qsl/run.hpp"
#include "qsl/scenario.hpp"

using namespace qsl;
using Catch::Matchers::WithinAbs;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;

  TempDir() {
    std::mt19937_64 rng(std::random_device{}());
    std::ostringstream os;
    os << "qsl_test_" << std::hex << rng();
    path = fs::temp_directory_path() / os.str();
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
};

const char* kDephasingToml = R"(# pure dephasing of the plus state
name = "deph"
model = "dephasing"
tau = 1.0
dt = 1e-3

[params]
gamma = 1.0
)";

}  // namespace

TEST_CASE("toml subset parses sections, scalars, and arrays", "[scenario]") {
  const Json doc = parse_toml_lite(R"(
# comment
name = "demo"   # trailing comment
count = 3
rate = 2.5
flag = true
tags = ["a", "b"]
nested = [[1.0, 2.0], [3.0, -4.0]]

[params]
gamma = 0.5
)");
  REQUIRE(doc.at("name").get<std::string>() == "demo");
  REQUIRE(doc.at("count").get<int>() == 3);
  REQUIRE(doc.at("rate").get<double>() == 2.5);
  REQUIRE(doc.at("flag").get<bool>() == true);
  REQUIRE(doc.at("tags").size() == 2);
  REQUIRE(doc.at("nested").at(1).at(1).get<double>() == -4.0);
  REQUIRE(doc.at("params").at("gamma").get<double>() == 0.5);
}

TEST_CASE("toml subset rejects duplicates and malformed lines", "[scenario]") {
  REQUIRE_THROWS_AS(parse_toml_lite("a = 1\na = 2\n"), ParseError);
  try {
    parse_toml_lite("a = 1\nnot a key value\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("dephasing config fills documented defaults", "[scenario]") {
  TempDir dir;
  const ScenarioConfig cfg = parse_config(dir.file("deph.toml", kDephasingToml));
  REQUIRE(cfg.name == "deph");
  REQUIRE(cfg.model == ModelKind::Dephasing);
  REQUIRE(cfg.dim == 2);
  REQUIRE(cfg.params.at("gamma") == 1.0);
  REQUIRE(cfg.tau == 1.0);
  REQUIRE(cfg.dt == 1e-3);
  REQUIRE(cfg.hbar == 1.0);
  REQUIRE(cfg.fidelities.size() == 4);
  REQUIRE(cfg.bounds.size() == 8);
  for (BoundKind kind : cfg.bounds) {
    REQUIRE(kind != BoundKind::BuresMLHamiltonian);
  }
  REQUIRE(cfg.d_functionals.size() == 4);
  REQUIRE(cfg.quadrature == Quadrature::Trapezoid);

  const Scenario sc = build_scenario(cfg);
  REQUIRE_FALSE(sc.hamiltonian_only);
  REQUIRE(sc.spec.jumps.size() == 1);
  REQUIRE_THAT(sc.rho0.mat()(0, 1).real(), WithinAbs(0.5, 1e-12));
}

TEST_CASE("rabi config is Hamiltonian-only and gets all nine kinds", "[scenario]") {
  TempDir dir;
  const ScenarioConfig cfg = parse_config(dir.file("rabi.toml", R"(
model = "rabi_drive"
tau = 1.0
dt = 1e-3

[params]
omega = 3.14159
)"));
  REQUIRE(cfg.name == "rabi");
  REQUIRE(cfg.bounds.size() == 9);
  const Scenario sc = build_scenario(cfg);
  REQUIRE(sc.hamiltonian_only);
  REQUIRE(sc.hamiltonian.has_value());
  REQUIRE(sc.spec.jumps.empty());
  REQUIRE_THAT(sc.rho0.mat()(0, 0).real(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("json configs are equivalent to toml configs", "[scenario]") {
  TempDir dir;
  const ScenarioConfig a = parse_config(dir.file("deph.toml", kDephasingToml));
  const ScenarioConfig b = parse_config(dir.file("deph.json", R"({
    "name": "deph",
    "model": "dephasing",
    "tau": 1.0,
    "dt": 1e-3,
    "params": {"gamma": 1.0}
  })"));
  REQUIRE(a.model == b.model);
  REQUIRE(a.params.at("gamma") == b.params.at("gamma"));
  REQUIRE(a.tau == b.tau);
  REQUIRE(a.dt == b.dt);
  REQUIRE(a.bounds == b.bounds);
}

TEST_CASE("config rejection cases", "[scenario]") {
  TempDir dir;
  auto parse_text = [&](const std::string& name, const std::string& text) {
    return parse_config(dir.file(name, text));
  };
  REQUIRE_THROWS_AS(
      parse_text("a.toml", "model = \"dephasing\"\nwhat = 1\n[params]\ngamma = 1.0\n"),
      UnknownName);
  REQUIRE_THROWS_AS(parse_text("b.toml", "model = \"nope\"\n"), UnknownName);
  REQUIRE_THROWS_AS(parse_text("c.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
bounds = ["bogus"]
[params]
gamma = 1.0
)"),
                    UnknownName);
  // tau not an integer multiple of dt.
  REQUIRE_THROWS_AS(parse_text("d.toml", R"(
model = "dephasing"
tau = 1.0
dt = 0.3
[params]
gamma = 1.0
)"),
                    ValidationError);
  // gamma missing.
  REQUIRE_THROWS_AS(
      parse_text("e.toml", "model = \"dephasing\"\ntau = 1.0\ndt = 1e-3\n"),
      ValidationError);
  // negative rate.
  REQUIRE_THROWS_AS(parse_text("f.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
[params]
gamma = -1.0
)"),
                    ValidationError);
  // named models are qubit models.
  REQUIRE_THROWS_AS(parse_text("g.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
dim = 3
[params]
gamma = 1.0
)"),
                    ValidationError);
}

TEST_CASE("explicit pure initial state with complex amplitudes", "[scenario]") {
  TempDir dir;
  const ScenarioConfig cfg = parse_config(dir.file("pure.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3

[params]
gamma = 1.0

[initial_state]
kind = "pure"
vector = [0.70710678118654752, [0.0, 0.70710678118654752]]
)"));
  const Scenario sc = build_scenario(cfg);
  // rho = |psi><psi| with psi = (|0> + i|1>)/sqrt(2): rho_01 = -i/2.
  REQUIRE_THAT(sc.rho0.mat()(0, 1).imag(), WithinAbs(-0.5, 1e-9));
  REQUIRE_THAT(sc.rho0.mat()(0, 1).real(), WithinAbs(0.0, 1e-9));
}

TEST_CASE("initial state rejection cases", "[scenario]") {
  TempDir dir;
  // Wrong amplitude count.
  REQUIRE_THROWS_AS(build_scenario(parse_config(dir.file("w.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
[params]
gamma = 1.0
[initial_state]
kind = "pure"
vector = [1.0, 0.0, 0.0]
)"))),
                    ValidationError);
  // Mixture weights must sum to one.
  REQUIRE_THROWS_AS(build_scenario(parse_config(dir.file("x.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
[params]
gamma = 1.0
[initial_state]
kind = "mixture"
spectrum = [0.6, 0.3]
)"))),
                    ValidationError);
  // Custom basis must be orthonormal.
  REQUIRE_THROWS_AS(build_scenario(parse_config(dir.file("y.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
[params]
gamma = 1.0
[initial_state]
kind = "mixture"
spectrum = [0.5, 0.5]
basis = [[1.0, 0.0], [1.0, 0.0]]
)"))),
                    ValidationError);
}

TEST_CASE("mixture initial state builds the expected density matrix", "[scenario]") {
  TempDir dir;
  const Scenario sc = build_scenario(parse_config(dir.file("mix.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
[params]
gamma = 1.0
[initial_state]
kind = "mixture"
spectrum = [0.75, 0.25]
)")));
  REQUIRE_THAT(sc.rho0.mat()(0, 0).real(), WithinAbs(0.75, 1e-12));
  REQUIRE_THAT(sc.rho0.mat()(1, 1).real(), WithinAbs(0.25, 1e-12));
}

TEST_CASE("file-backed initial state round-trips", "[scenario]") {
  TempDir dir;
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.7;
  m(1, 1) = 0.3;
  write_matrix_csv(dir.path / "rho0.csv", m);
  const Scenario sc = build_scenario(parse_config(dir.file("f.toml", R"(
model = "dephasing"
tau = 1.0
dt = 1e-3
[params]
gamma = 1.0
[initial_state]
kind = "file"
path = "rho0.csv"
)")));
  REQUIRE_THAT(sc.rho0.mat()(0, 0).real(), WithinAbs(0.7, 1e-14));
}

TEST_CASE("custom matrices model reads its operators from files", "[scenario]") {
  TempDir dir;
  ComplexMatrix h(2, 2);
  h << 0.0, 0.5, 0.5, 0.0;
  write_matrix_csv(dir.path / "h.csv", h);
  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  write_matrix_csv(dir.path / "l.csv", lower);

  const ScenarioConfig cfg = parse_config(dir.file("c.toml", R"(
model = "custom_matrices"
tau = 1.0
dt = 1e-3
hamiltonian_file = "h.csv"
jump_files = ["l.csv"]
jump_rates = [0.5]
[initial_state]
kind = "pure"
vector = [0.0, 1.0]
)"));
  REQUIRE(cfg.dim == 2);
  const Scenario sc = build_scenario(cfg);
  REQUIRE_FALSE(sc.hamiltonian_only);
  REQUIRE(sc.spec.jumps.size() == 1);
  REQUIRE_THAT(sc.spec.jumps[0].rate, WithinAbs(0.5, 1e-15));

  // Zero rates with a Hamiltonian means Hamiltonian-only dynamics.
  const ScenarioConfig ho = parse_config(dir.file("ho.toml", R"(
model = "custom_matrices"
tau = 1.0
dt = 1e-3
hamiltonian_file = "h.csv"
[initial_state]
kind = "pure"
vector = [0.0, 1.0]
)"));
  REQUIRE(build_scenario(ho).hamiltonian_only);
  REQUIRE(ho.bounds.size() == 9);
}

TEST_CASE("custom matrices rejection cases", "[scenario]") {
  TempDir dir;
  REQUIRE_THROWS_AS(parse_config(dir.file("m.toml", R"(
model = "custom_matrices"
tau = 1.0
dt = 1e-3
hamiltonian_file = "missing.csv"
[initial_state]
kind = "pure"
vector = [0.0, 1.0]
)")),
                    IoError);

  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  write_matrix_csv(dir.path / "l.csv", lower);
  REQUIRE_THROWS_AS(parse_config(dir.file("r.toml", R"(
model = "custom_matrices"
tau = 1.0
dt = 1e-3
jump_files = ["l.csv"]
jump_rates = [0.5, 0.5]
[initial_state]
kind = "pure"
vector = [0.0, 1.0]
)")),
                    ValidationError);

  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  write_matrix_csv(dir.path / "bad_h.csv", bad);
  REQUIRE_THROWS_AS(build_scenario(parse_config(dir.file("n.toml", R"(
model = "custom_matrices"
tau = 1.0
dt = 1e-3
hamiltonian_file = "bad_h.csv"
[initial_state]
kind = "pure"
vector = [0.0, 1.0]
)"))),
                    NotHermitian);
}

TEST_CASE("run_scenario produces the full report and writes outputs", "[scenario]") {
  TempDir dir;
  ScenarioConfig cfg = parse_config(dir.file("deph.toml", kDephasingToml));
  cfg.tau = 0.5;
  cfg.dt = 1e-2;
  RunOptions opts;
  opts.out_dir = dir.path / "out";
  const RunResult result = run_scenario(cfg, opts);

  REQUIRE(result.fidelities.size() == 4);
  REQUIRE(result.bounds.entries.size() == 8);
  for (const BoundEntry& e : result.bounds.entries) {
    REQUIRE_FALSE(e.skipped);
    REQUIRE(e.valid);
  }
  REQUIRE_FALSE(result.independence.empty());

  const Json& report = result.report;
  REQUIRE(report.at("schema_version").get<int>() == 1);
  REQUIRE(report.at("scenario").at("model").get<std::string>() == "dephasing");
  REQUIRE(report.at("fidelities").size() == 4);
  REQUIRE(report.at("bounds").at("entries").size() == 8);
  REQUIRE(report.at("d_independence").size() > 0);

  REQUIRE(fs::exists(result.series_csv));
  REQUIRE(fs::exists(result.report_json));
  std::ifstream csv(result.series_csv);
  std::string header;
  std::getline(csv, header);
  REQUIRE(header.rfind("t,", 0) == 0);
  REQUIRE(header.find("f_") != std::string::npos);
  REQUIRE(header.find("b_") != std::string::npos);
  const Json reloaded = Json::parse(read_text(result.report_json));
  REQUIRE(reloaded.at("schema_version") == 1);
}

TEST_CASE("run_scenario honors fidelity and bound subsets", "[scenario]") {
  TempDir dir;
  const ScenarioConfig cfg = parse_config(dir.file("sub.toml", R"(
model = "dephasing"
tau = 0.5
dt = 1e-2
fidelities = ["super"]
bounds = ["super_mt_hs"]
d_functionals = ["linear"]
[params]
gamma = 1.0
)"));
  const RunResult result = run_scenario(cfg);
  REQUIRE(result.fidelities.size() == 1);
  REQUIRE(result.fidelities[0].kind == FidelityKind::Super);
  REQUIRE(result.bounds.entries.size() == 1);
  REQUIRE(result.bounds.entries[0].kind == BoundKind::SuperMThs);
  REQUIRE(result.series_csv.empty());
}

TEST_CASE("set_config_value handles nesting and rejects deep paths", "[scenario]") {
  Json doc;
  doc["model"] = "dephasing";
  set_config_value(doc, "tau", 2.0);
  REQUIRE(doc.at("tau").get<double>() == 2.0);
  set_config_value(doc, "params.gamma", 0.25);
  REQUIRE(doc.at("params").at("gamma").get<double>() == 0.25);
  REQUIRE_THROWS_AS(set_config_value(doc, "a.b.c", 1.0), UnknownName);
}

TEST_CASE("run_sweep collects one summary per value", "[scenario]") {
  TempDir dir;
  Json doc = parse_toml_lite(R"(
model = "dephasing"
tau = 0.5
dt = 1e-2
fidelities = ["bures"]
bounds = ["bures_ml_op"]
d_functionals = ["linear"]
[params]
gamma = 1.0
)");
  RunOptions opts;
  opts.out_dir = dir.path / "out";
  const Json sweep =
      run_sweep(doc, dir.path, "sweepdemo", "params.gamma", {0.5, 1.0}, opts);
  REQUIRE(sweep.at("key").get<std::string>() == "params.gamma");
  REQUIRE(sweep.at("points").size() == 2);
  const double f0 = sweep.at("points").at(0).at("f_tau").at("bures").get<double>();
  const double f1 = sweep.at("points").at(1).at("f_tau").at("bures").get<double>();
  REQUIRE(f1 < f0);

  const fs::path csv_path = dir.path / "out" / "sweepdemo_sweep.csv";
  REQUIRE(fs::exists(csv_path));
  std::ifstream csv(csv_path);
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++lines;
  }
  REQUIRE(lines == 3);
}

TEST_CASE("errors map to exit codes and json payloads", "[scenario]") {
  const ValidationError config_error("bad key");
  const DriftExceeded numeric_error("blew up", 7, 123.0);
  const IoError io_error("no file");
  const std::runtime_error plain_error("plain");
  REQUIRE(exit_code_for(config_error) == 2);
  REQUIRE(exit_code_for(numeric_error) == 3);
  REQUIRE(exit_code_for(io_error) == 2);
  REQUIRE(exit_code_for(plain_error) == 1);

  const Json payload = error_json(numeric_error);
  REQUIRE(payload.at("error").at("type").get<std::string>() == "drift_exceeded");
  REQUIRE(payload.at("error").at("step").get<int>() == 7);
  REQUIRE(payload.at("error").at("measured").get<double>() == 123.0);
}

TEST_CASE("io helpers round-trip", "[scenario]") {
  const double v = 0.1234567890123456789;
  REQUIRE(parse_double(format_full(v)) == v);
  REQUIRE_THROWS_AS(parse_double("12abc"), IoError);

  TempDir dir;
  ComplexMatrix m(2, 2);
  m << Complex(1.0, -2.0), Complex(0.5, 0.0), Complex(0.0, 3.25), Complex(-1.0, 0.0);
  write_matrix_csv(dir.path / "m.csv", m);
  const ComplexMatrix back = read_matrix_csv(dir.path / "m.csv");
  REQUIRE((back - m).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE_THROWS_AS(read_matrix_csv(dir.path / "missing.csv"), IoError);

  write_text_atomic(dir.path / "t.txt", "hello");
  REQUIRE(read_text(dir.path / "t.txt") == "hello");
}
