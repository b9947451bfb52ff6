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

// End-to-end validation of the shipped numerics: each check pins a closed
// form, an independent inequality, or a convergence rate, and prints one
// pass/fail line. Exit status 0 only when every check passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/dfunc.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/fidelity.hpp"
#include "qsl/matrix.hpp"
#include "qsl/states.hpp"
#include "qsl/verify.hpp"

using namespace qsl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DensityMatrix plus_state() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return DensityMatrix::validated(m);
}

DensityMatrix minus_state() {
  ComplexMatrix m(2, 2);
  m << 0.5, -0.5, -0.5, 0.5;
  return DensityMatrix::validated(m);
}

DensityMatrix diag_qubit(double p0) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = 1.0 - p0;
  return DensityMatrix::validated(m);
}

LindbladSpec dephasing_spec(double gamma) {
  LindbladSpec spec;
  spec.dim = 2;
  spec.jumps.push_back({sigma_z(), gamma});
  return spec;
}

LindbladSpec amplitude_damping_spec(double gamma) {
  LindbladSpec spec;
  spec.dim = 2;
  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  spec.jumps.push_back({lower, gamma});
  return spec;
}

HamiltonianSpec rabi_hamiltonian(double omega) {
  HamiltonianSpec hs;
  hs.dim = 2;
  const ComplexMatrix h = 0.5 * omega * sigma_x();
  hs.at = [h](double) { return h; };
  return hs;
}

ComplexMatrix ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

DensityMatrix rotate(const ComplexMatrix& u, const DensityMatrix& rho) {
  return DensityMatrix::validated(u * rho.mat() * u.adjoint(), 1e-8);
}

std::string format_detail(const char* label, double measured, const char* tol) {
  std::ostringstream os;
  os << label << " " << measured << " (tol " << tol << ")";
  return os.str();
}

std::vector<BoundKind> dissipative_kinds() {
  std::vector<BoundKind> kinds;
  for (BoundKind kind : all_bound_kinds()) {
    if (kind != BoundKind::BuresMLHamiltonian) kinds.push_back(kind);
  }
  return kinds;
}

// Saturation of the dissipative bounds on pure dephasing: the operator
// norm route recovers the full duration, the Hilbert-Schmidt and trace
// norm routes land at fixed fractions of it.
Outcome check_dephasing_saturation() {
  const auto start = std::chrono::steady_clock::now();
  const Trajectory traj = evolve(dephasing_spec(1.0), plus_state(), 1.0, 1e-3);
  const BoundReport report = build_report(
      traj, {BoundKind::BuresMLop, BoundKind::BuresMThs, BoundKind::BuresMLtr});

  const struct {
    BoundKind kind;
    double target;
  } expectations[] = {
      {BoundKind::BuresMLop, 1.0},
      {BoundKind::BuresMThs, 1.0 / std::sqrt(2.0)},
      {BoundKind::BuresMLtr, 0.5},
  };

  double worst = 0.0;
  for (const auto& e : expectations) {
    const BoundEntry* entry = report.find(e.kind);
    if (entry == nullptr || entry->skipped) {
      return {false, std::string("missing entry for ") + bound_kind_name(e.kind)};
    }
    worst = std::max(worst, std::abs(entry->tau_qsl - e.target) / e.target);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.pass = worst <= 1e-4 && elapsed < 1.0;
  std::ostringstream os;
  os << "max rel dev " << worst << " (tol 1e-4), " << elapsed << "s (limit 1s)";
  out.detail = os.str();
  return out;
}

// The bound assembled through any admissible decreasing functional of the
// fidelity must agree with the functional-free bound, and the chain rule
// identity behind that must hold pointwise.
Outcome check_functional_independence() {
  std::vector<DFunctional> d_set;
  for (const std::string& name : builtin_d_names()) d_set.push_back(builtin_d(name));

  const Trajectory deph = evolve(dephasing_spec(1.0), plus_state(), 1.0, 1e-3);
  const Trajectory damp =
      evolve(amplitude_damping_spec(1.0), diag_qubit(0.75), 1.0, 1e-3);

  double worst_spread = 0.0;
  worst_spread = std::max(
      worst_spread,
      verify_independence(d_set, deph, BoundKind::BuresMLop).max_rel_spread);
  worst_spread = std::max(
      worst_spread,
      verify_independence(d_set, damp, BoundKind::SuperMThs).max_rel_spread);

  const Trajectory deph_fine = evolve(dephasing_spec(1.0), plus_state(), 1.0, 1e-4);
  const Trajectory damp_fine =
      evolve(amplitude_damping_spec(1.0), diag_qubit(0.75), 1.0, 1e-4);
  const FidelitySeries deph_series = fidelity_series(FidelityKind::Bures, deph_fine);
  const FidelitySeries damp_series = fidelity_series(FidelityKind::Super, damp_fine);

  double worst_residual = 0.0;
  for (const DFunctional& d : d_set) {
    for (const FidelitySeries* series : {&deph_series, &damp_series}) {
      const ChainIdentityResult r = verify_chain_identity(d, *series, 1e-4);
      if (r.evaluated == 0) return {false, "chain identity evaluated no points"};
      worst_residual = std::max(worst_residual, r.max_residual);
    }
  }

  Outcome out;
  out.pass = worst_spread <= 1e-9 && worst_residual <= 1e-5;
  std::ostringstream os;
  os << "spread " << worst_spread << " (tol 1e-9), chain residual "
     << worst_residual << " (tol 1e-5)";
  out.detail = os.str();
  return out;
}

// Every bound computed on randomized dissipative dynamics must stay a
// lower bound on the actual duration.
Outcome check_randomized_bound_validity() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260821);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  int computed = 0;
  double worst = 0.0;
  const double tau = 1.0;
  for (int i = 0; i < 24; ++i) {
    const int dim = 2 + i % 3;
    const bool hamiltonian_only = (i % 4 == 3);
    const bool with_h = hamiltonian_only || (i % 2 == 0);
    const bool mixed = !hamiltonian_only && (i % 3 == 1);

    LindbladSpec spec;
    spec.dim = dim;
    ReportContext ctx;
    ctx.hamiltonian_only = hamiltonian_only;
    if (with_h) {
      ComplexMatrix h = random_hermitian(dim, rng);
      h *= (0.5 + uniform(rng)) / norm_op(h);
      HamiltonianSpec hs;
      hs.dim = dim;
      hs.at = [h](double) { return h; };
      spec.hamiltonian = hs;
      ctx.hamiltonian = hs;
    }
    if (!hamiltonian_only) {
      const int jumps = 1 + i % 2;
      for (int j = 0; j < jumps; ++j) {
        ComplexMatrix l = ginibre(dim, rng);
        l /= norm_op(l);
        spec.jumps.push_back({l, 0.1 + 1.9 * uniform(rng)});
      }
    }
    const std::uint64_t state_seed = 1000 + static_cast<std::uint64_t>(i);
    const DensityMatrix rho0 = mixed
                                   ? random_density(dim, 2, state_seed)
                                   : density_from_pure(random_pure(dim, state_seed));

    const Trajectory traj = evolve(spec, rho0, tau, 1e-3);
    const std::vector<BoundKind> kinds =
        hamiltonian_only ? all_bound_kinds() : dissipative_kinds();
    const BoundReport report = build_report(traj, kinds, ctx);
    for (const BoundEntry& e : report.entries) {
      if (e.skipped) continue;
      ++computed;
      worst = std::max(worst, e.tau_qsl);
      if (!e.valid) {
        std::ostringstream os;
        os << bound_kind_name(e.kind) << " exceeded tau in scenario " << i << ": "
           << e.tau_qsl;
        return {false, os.str()};
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.pass = computed >= 20 && worst <= tau + 1e-6 && elapsed < 60.0;
  std::ostringstream os;
  os << computed << " bounds from 24 scenarios, max tau_qsl " << worst
     << " (limit tau + 1e-6), " << elapsed << "s (limit 60s)";
  out.detail = os.str();
  return out;
}

// The energy-route bound on a resonant flip has a closed form, and it
// must vanish on stationary states.
Outcome check_hamiltonian_bound() {
  const double omega = M_PI;
  const HamiltonianSpec hs = rabi_hamiltonian(omega);
  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  const Trajectory traj =
      evolve(hs, DensityMatrix::validated(ground), 1.0, 1e-3);
  const double bound = ml_hamiltonian_bound(traj, hs);
  const double dev = std::abs(bound - 1.0 / M_PI);

  double stationary_dev = 0.0;
  for (const DensityMatrix& rho0 : {plus_state(), minus_state()}) {
    const Trajectory still = evolve(hs, rho0, 1.0, 1e-3);
    stationary_dev =
        std::max(stationary_dev, std::abs(ml_hamiltonian_bound(still, hs)));
  }

  Outcome out;
  out.pass = dev <= 1e-4 && bound <= 1.0 + 1e-9 && stationary_dev <= 1e-9;
  std::ostringstream os;
  os << "flip dev " << dev << " (tol 1e-4), stationary " << stationary_dev
     << " (tol 1e-9)";
  out.detail = os.str();
  return out;
}

// Symmetry, range, unitary invariance, and the tensor-product laws of the
// four fidelities on randomized state pairs.
Outcome check_fidelity_axioms() {
  const int ranks[] = {1, 2, 0};
  auto pair_at = [&](int t, int dim) {
    const int rank_a = ranks[t % 3] == 0 ? dim : ranks[t % 3];
    const int rank_b = ranks[(t + 1) % 3] == 0 ? dim : ranks[(t + 1) % 3];
    const auto seed = static_cast<std::uint64_t>(2 * t);
    return std::make_pair(random_density(dim, rank_a, 5000 + seed),
                          random_density(dim, rank_b, 5001 + seed));
  };

  double worst_symmetry = 0.0;
  double worst_range = 0.0;
  double worst_invariance = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 + t % 5;
    const auto [a, b] = pair_at(t, dim);
    const ComplexMatrix u = random_unitary(dim, 9000 + static_cast<std::uint64_t>(t));
    const DensityMatrix ua = rotate(u, a);
    const DensityMatrix ub = rotate(u, b);
    for (FidelityKind kind : all_fidelity_kinds()) {
      const double f = fidelity(kind, a, b);
      worst_symmetry = std::max(worst_symmetry, std::abs(f - fidelity(kind, b, a)));
      worst_invariance =
          std::max(worst_invariance, std::abs(fidelity(kind, ua, ub) - f));
      if (kind != FidelityKind::Alternative) {
        worst_range = std::max(worst_range, std::max(-f, f - 1.0));
      }
    }
  }

  double worst_mult = 0.0;
  double worst_super_mult = 0.0;
  const int tensor_dims[][2] = {{2, 2}, {2, 3}, {3, 2}};
  for (int t = 0; t < 42; ++t) {
    const auto* dims = tensor_dims[t % 3];
    const auto [a, b] = pair_at(t, dims[0]);
    const auto [c, d] = pair_at(t + 100, dims[1]);
    const DensityMatrix ac = DensityMatrix::validated(tensor(a.mat(), c.mat()));
    const DensityMatrix bd = DensityMatrix::validated(tensor(b.mat(), d.mat()));
    worst_mult = std::max(
        worst_mult, std::abs(bures(ac, bd) - bures(a, b) * bures(c, d)));
    for (FidelityKind kind : {FidelityKind::Super, FidelityKind::Alternative}) {
      const double whole = fidelity(kind, ac, bd);
      const double parts = fidelity(kind, a, b) * fidelity(kind, c, d);
      worst_super_mult = std::max(worst_super_mult, parts - whole);
    }
  }

  Outcome out;
  out.pass = worst_symmetry <= 1e-10 && worst_range <= 1e-10 &&
             worst_invariance <= 1e-9 && worst_mult <= 1e-8 &&
             worst_super_mult <= 1e-10;
  std::ostringstream os;
  os << "symmetry " << worst_symmetry << " (tol 1e-10), range excess "
     << worst_range << " (tol 1e-10), invariance " << worst_invariance
     << " (tol 1e-9), mult " << worst_mult << " (tol 1e-8), super-mult deficit "
     << worst_super_mult << " (tol 1e-10)";
  out.detail = os.str();
  return out;
}

// Ordering of the fidelities and their coincidence regimes: super
// dominates Bures everywhere, agrees with it on qubits, and the ratio and
// corrected overlaps collapse onto Bures in their pure-state regimes.
Outcome check_dominance_coincidence() {
  double worst_dominance = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 + t % 5;
    const DensityMatrix a = random_density(dim, 1 + t % dim, 300 + 2 * t);
    const DensityMatrix b = random_density(dim, 1 + (t + 1) % dim, 301 + 2 * t);
    worst_dominance = std::max(worst_dominance, bures(a, b) - super_fidelity(a, b));
  }

  double worst_qubit = 0.0;
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix a = random_density(2, 1 + t % 2, 700 + 2 * t);
    const DensityMatrix b = random_density(2, 1 + (t + 1) % 2, 701 + 2 * t);
    worst_qubit =
        std::max(worst_qubit, std::abs(super_fidelity(a, b) - bures(a, b)));
  }

  double worst_pure_pair = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int dim = 2 + t % 5;
    const DensityMatrix a = density_from_pure(random_pure(dim, 1100 + 2 * t));
    const DensityMatrix b = density_from_pure(random_pure(dim, 1101 + 2 * t));
    worst_pure_pair =
        std::max(worst_pure_pair, std::abs(operator_fidelity(a, b) - bures(a, b)));
  }

  double worst_pure_first = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int dim = 2 + t % 5;
    const DensityMatrix a = density_from_pure(random_pure(dim, 1500 + 2 * t));
    const DensityMatrix b = random_density(dim, 1 + t % dim, 1501 + 2 * t);
    worst_pure_first = std::max(worst_pure_first,
                                std::abs(alternative_fidelity(a, b) - bures(a, b)));
  }

  Outcome out;
  out.pass = worst_dominance <= 1e-10 && worst_qubit <= 1e-9 &&
             worst_pure_pair <= 1e-9 && worst_pure_first <= 1e-9;
  std::ostringstream os;
  os << "dominance deficit " << worst_dominance << " (tol 1e-10), qubit gap "
     << worst_qubit << " (tol 1e-9), pure-pair gap " << worst_pure_pair
     << " (tol 1e-9), pure-first gap " << worst_pure_first << " (tol 1e-9)";
  out.detail = os.str();
  return out;
}

// The trace inequalities underpinning the bound derivations, checked on
// unstructured random matrices.
Outcome check_trace_inequalities() {
  std::mt19937_64 rng(424242);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 + t % 4;
    const ComplexMatrix a = ginibre(dim, rng);
    const ComplexMatrix b = ginibre(dim, rng);

    const RealVector sa = singular_values(a);
    const RealVector sb = singular_values(b);
    const double von_neumann = sa.dot(sb) - std::abs(trace_product(a, b));
    const double cauchy_schwarz =
        norm_hs(a) * norm_hs(b) - std::abs(trace_product(a.adjoint(), b));
    const double hierarchy_lo = norm_hs(a) - norm_op(a);
    const double hierarchy_hi = norm_tr(a) - norm_hs(a);
    worst = std::max(
        {worst, -von_neumann, -cauchy_schwarz, -hierarchy_lo, -hierarchy_hi});
  }
  Outcome out;
  out.pass = worst <= 1e-10;
  out.detail = format_detail("max violation", worst, "1e-10");
  return out;
}

// The instantaneous rate bounds must dominate the realized fidelity decay
// rate at every interior grid point.
Outcome check_rate_bound_pointwise() {
  const Trajectory trajectories[] = {
      evolve(dephasing_spec(1.0), plus_state(), 1.0, 1e-3),
      evolve(amplitude_damping_spec(1.0), diag_qubit(0.75), 1.0, 1e-3),
  };

  double worst = 0.0;
  for (const Trajectory& traj : trajectories) {
    const DensityMatrix& rho0 = traj.initial();
    for (FidelityKind kind : {FidelityKind::Super, FidelityKind::Operator,
                              FidelityKind::Alternative}) {
      const FidelitySeries series = fidelity_series(kind, traj);
      for (std::size_t k = 1; k + 1 < series.size(); ++k) {
        const double cd = std::abs(series.values[k + 1] - series.values[k - 1]) /
                          (2.0 * traj.dt);
        double rate = 0.0;
        switch (kind) {
          case FidelityKind::Super:
            rate = rate_bound_super(rho0, traj.states[k], traj.derivs[k]);
            break;
          case FidelityKind::Operator:
            rate = rate_bound_operator(traj.states[k], traj.derivs[k]);
            break;
          default:
            rate = rate_bound_alternative(rho0, traj.states[k], traj.derivs[k]);
            break;
        }
        worst = std::max(worst, cd - rate);
      }
    }
  }
  Outcome out;
  out.pass = worst <= 1e-6;
  out.detail = format_detail("max rate deficit", worst, "1e-6");
  return out;
}

// Fourth-order error decay of the integrator against the dephasing closed
// form, and second-order convergence of every averaged bound quantity
// under grid refinement.
Outcome check_grid_convergence() {
  auto dephasing_error = [](double dt) {
    const Trajectory traj = evolve(dephasing_spec(1.0), plus_state(), 1.0, dt);
    double err = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const double expected = 0.5 * std::exp(-2.0 * traj.times[k]);
      err = std::max(err, std::abs(traj.states[k].mat()(0, 1).real() - expected));
    }
    return err;
  };
  const double ratio = dephasing_error(0.05) / dephasing_error(0.025);

  struct Case {
    std::function<Trajectory(double)> run;
    std::vector<BoundKind> kinds;
    ReportContext ctx;
  };
  std::vector<Case> cases;
  cases.push_back({[](double dt) {
                     return evolve(dephasing_spec(1.0), plus_state(), 1.0, dt);
                   },
                   dissipative_kinds(),
                   {}});
  cases.push_back({[](double dt) {
                     return evolve(amplitude_damping_spec(1.0), diag_qubit(0.75),
                                   1.0, dt);
                   },
                   {BoundKind::SuperMLop, BoundKind::SuperMLtr, BoundKind::SuperMThs,
                    BoundKind::OperatorMT, BoundKind::AlternativeMT},
                   {}});
  Case rabi;
  rabi.run = [](double dt) {
    ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
    ground(0, 0) = 1.0;
    return evolve(rabi_hamiltonian(M_PI), DensityMatrix::validated(ground), 1.0, dt);
  };
  rabi.kinds = {BoundKind::BuresMLHamiltonian};
  rabi.ctx.hamiltonian = rabi_hamiltonian(M_PI);
  rabi.ctx.hamiltonian_only = true;
  cases.push_back(rabi);

  double worst_slack = -1.0;
  for (const Case& c : cases) {
    const double dts[] = {4e-3, 2e-3, 1e-3};
    std::vector<std::vector<double>> b_values;
    for (double dt : dts) {
      const BoundReport report = build_report(c.run(dt), c.kinds, c.ctx);
      std::vector<double> row;
      for (const BoundEntry& e : report.entries) {
        if (e.skipped) return {false, "unexpected skip in refinement case"};
        row.push_back(e.b_tau);
      }
      b_values.push_back(row);
    }
    for (std::size_t j = 0; j < b_values[0].size(); ++j) {
      const double d1 = std::abs(b_values[0][j] - b_values[1][j]);
      const double d2 = std::abs(b_values[1][j] - b_values[2][j]);
      worst_slack = std::max(worst_slack, d1 - (4.004 * d2 + 1e-14));
    }
  }

  Outcome out;
  out.pass = ratio >= 12.0 && worst_slack <= 0.0;
  std::ostringstream os;
  os << "halving ratio " << ratio << " (min 12), refinement slack " << worst_slack
     << " (max 0)";
  out.detail = os.str();
  return out;
}

}  // namespace

int main() {
  const struct {
    const char* name;
    Outcome (*run)();
  } checks[] = {
      {"dephasing_saturation", check_dephasing_saturation},
      {"functional_independence", check_functional_independence},
      {"randomized_bound_validity", check_randomized_bound_validity},
      {"hamiltonian_bound", check_hamiltonian_bound},
      {"fidelity_axioms", check_fidelity_axioms},
      {"dominance_coincidence", check_dominance_coincidence},
      {"trace_inequalities", check_trace_inequalities},
      {"rate_bound_pointwise", check_rate_bound_pointwise},
      {"grid_convergence", check_grid_convergence},
  };

  const int total = static_cast<int>(std::size(checks));
  int passed = 0;
  for (int i = 0; i < total; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = checks[i].run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("raised: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%d/%d] %s %s: %s [%.2fs]\n", i + 1, total,
                outcome.pass ? "PASS" : "FAIL", checks[i].name,
                outcome.detail.c_str(), elapsed);
    if (outcome.pass) ++passed;
  }
  std::printf("acceptance: %d/%d passed\n", passed, total);
  return passed == total ? 0 : 1;
}
