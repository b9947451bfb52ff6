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

#include "qsl/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "qsl/io.hpp"
#include "qsl/states.hpp"

namespace qsl {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string summary(const std::string& what, double worst, double tol) {
  std::ostringstream out;
  out << what << " = " << format_full(worst) << " (tol " << format_full(tol)
      << ")";
  return out.str();
}

ComplexMatrix ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(dim, rng);
  return 0.5 * (g + g.adjoint()).eval();
}

/// Random density pair with dims cycling through 2..4 and ranks cycling
/// through 1, 2, full.
std::pair<DensityMatrix, DensityMatrix> random_pair(std::size_t i,
                                                    std::uint64_t seed) {
  const int dim = 2 + static_cast<int>(i % 3);
  const int ranks[] = {1, 2, dim};
  const int ra = ranks[i % 3];
  const int rb = ranks[(i / 3) % 3];
  return {random_density(dim, ra, seed + 2 * i),
          random_density(dim, rb, seed + 2 * i + 1)};
}

struct RandomScenario {
  LindbladSpec spec;
  std::optional<HamiltonianSpec> hamiltonian;
  bool hamiltonian_only = false;
  DensityMatrix rho0;
};

RandomScenario random_scenario(std::size_t i, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 977 * i);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int dim = 2 + static_cast<int>(i % 3);
  const bool hamiltonian_only = i % 4 == 3;
  const bool with_h = hamiltonian_only || i % 2 == 0;
  const bool mixed_rho0 = !hamiltonian_only && i % 3 == 1;

  LindbladSpec spec;
  spec.dim = dim;
  std::optional<HamiltonianSpec> hamiltonian;
  if (with_h) {
    ComplexMatrix h = random_hermitian(dim, rng);
    h *= (0.5 + uniform(rng)) / norm_op(h);
    HamiltonianSpec hs;
    hs.dim = dim;
    hs.at = [m = std::move(h)](double) { return m; };
    hamiltonian = std::move(hs);
    spec.hamiltonian = hamiltonian;
  }
  if (!hamiltonian_only) {
    const int njumps = 1 + static_cast<int>(i % 2);
    for (int j = 0; j < njumps; ++j) {
      ComplexMatrix a = ginibre(dim, rng);
      a /= norm_op(a);
      spec.jumps.push_back({std::move(a), 0.2 + 1.3 * uniform(rng)});
    }
  }

  DensityMatrix rho0 = mixed_rho0
                           ? random_density(dim, 2, seed + 5000 + i)
                           : density_from_pure(random_pure(dim, seed + 6000 + i));
  return RandomScenario{std::move(spec), std::move(hamiltonian),
                        hamiltonian_only, std::move(rho0)};
}

LindbladSpec dephasing_spec(double gamma) {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  LindbladSpec spec;
  spec.dim = 2;
  spec.jumps.push_back({std::move(z), gamma});
  return spec;
}

LindbladSpec amplitude_damping_spec(double gamma) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  LindbladSpec spec;
  spec.dim = 2;
  spec.jumps.push_back({std::move(a), gamma});
  return spec;
}

DensityMatrix plus_state() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return density_from_pure(PureState::validated(v));
}

HamiltonianSpec rabi_hamiltonian(double omega) {
  ComplexMatrix h(2, 2);
  h << 0.0, 0.5 * omega, 0.5 * omega, 0.0;
  HamiltonianSpec hs;
  hs.dim = 2;
  hs.at = [m = std::move(h)](double) { return m; };
  return hs;
}

class Runner {
 public:
  explicit Runner(const VerifyOptions& opts) : opts_(opts) {}

  std::uint64_t seed_for(const std::string& name) const {
    return fnv1a(name) ^ opts_.seed;
  }

  std::size_t count(std::size_t fast, std::size_t full) const {
    return opts_.full ? full : fast;
  }

  template <typename Fn>
  void check(const std::string& name, Fn&& fn) {
    CheckResult r;
    r.name = name;
    try {
      fn(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("raised: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

  const VerifyOptions& opts() const { return opts_; }

 private:
  VerifyOptions opts_;
  std::vector<CheckResult> results_;
};

void finish(CheckResult& r, double worst, double tol, std::size_t samples,
            const std::string& what) {
  r.worst = worst;
  r.samples = samples;
  r.pass = worst <= tol;
  r.detail = summary(what, worst, tol);
}

}  // namespace

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) == 0.0 ? Complex(1.0, 0.0) : d / std::abs(d);
  }
  return q;
}

std::vector<CheckResult> run_checks(const VerifyOptions& opts) {
  Runner run(opts);

  run.check("fidelity_symmetry", [&](CheckResult& r) {
    const std::size_t n = run.count(30, 120);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [rho, sigma] = random_pair(i, seed);
      for (FidelityKind kind : all_fidelity_kinds()) {
        worst = std::max(worst, std::abs(fidelity(kind, rho, sigma) -
                                         fidelity(kind, sigma, rho)));
      }
    }
    finish(r, worst, 1e-10, n, "max |F(a,b) - F(b,a)|");
  });

  run.check("fidelity_self_unity", [&](CheckResult& r) {
    const std::size_t n = run.count(30, 120);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [rho, sigma] = random_pair(i, seed);
      for (FidelityKind kind : all_fidelity_kinds()) {
        worst = std::max(worst, std::abs(fidelity(kind, rho, rho) - 1.0));
        worst = std::max(worst, std::abs(fidelity(kind, sigma, sigma) - 1.0));
      }
    }
    finish(r, worst, 1e-9, n, "max |F(a,a) - 1|");
  });

  run.check("fidelity_range", [&](CheckResult& r) {
    const std::size_t n = run.count(40, 160);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [rho, sigma] = random_pair(i, seed);
      for (FidelityKind kind :
           {FidelityKind::Bures, FidelityKind::Super, FidelityKind::Operator}) {
        const double f = fidelity(kind, rho, sigma);
        worst = std::max({worst, -f, f - 1.0});
      }
    }
    finish(r, worst, 1e-9, n, "max range violation of F_B, F_S, F_O");
  });

  run.check("alternative_range_report", [&](CheckResult& r) {
    const std::size_t n = run.count(200, 2000);
    const std::uint64_t seed = run.seed_for(r.name);
    std::size_t over = 0;
    double max_excess = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [rho, sigma] = random_pair(i, seed);
      const double f = alternative_fidelity(rho, sigma);
      if (f > 1.0 + 1e-12) {
        ++over;
        max_excess = std::max(max_excess, f - 1.0);
      }
    }
    r.pass = true;
    r.samples = n;
    r.worst = max_excess;
    r.detail = std::to_string(over) + " of " + std::to_string(n) +
               " pairs exceeded 1 (max excess " + format_full(max_excess) +
               "); the range is reported, not enforced";
  });

  run.check("unitary_invariance", [&](CheckResult& r) {
    const std::size_t n = run.count(20, 80);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [rho, sigma] = random_pair(i, seed);
      const ComplexMatrix u =
          random_unitary(static_cast<int>(rho.dim()), seed + 9000 + i);
      const DensityMatrix ru =
          DensityMatrix::validated(u * rho.mat() * u.adjoint());
      const DensityMatrix su =
          DensityMatrix::validated(u * sigma.mat() * u.adjoint());
      for (FidelityKind kind : all_fidelity_kinds()) {
        worst = std::max(worst, std::abs(fidelity(kind, ru, su) -
                                         fidelity(kind, rho, sigma)));
      }
    }
    finish(r, worst, 1e-9, n, "max |F(U a U*, U b U*) - F(a, b)|");
  });

  run.check("pure_pair_agreement", [&](CheckResult& r) {
    const std::size_t n = run.count(30, 120);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int dim = 2 + static_cast<int>(i % 3);
      const DensityMatrix rho =
          density_from_pure(random_pure(dim, seed + 2 * i));
      const DensityMatrix sigma =
          density_from_pure(random_pure(dim, seed + 2 * i + 1));
      const double ref = bures(rho, sigma);
      for (FidelityKind kind : all_fidelity_kinds()) {
        worst = std::max(worst, std::abs(fidelity(kind, rho, sigma) - ref));
      }
    }
    finish(r, worst, 1e-9, n, "max spread of the four kinds on pure pairs");
  });

  run.check("bures_pure_witness", [&](CheckResult& r) {
    const std::size_t n = run.count(30, 120);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int dim = 2 + static_cast<int>(i % 3);
      const PureState psi = random_pure(dim, seed + 2 * i);
      const DensityMatrix sigma =
          random_density(dim, 1 + static_cast<int>(i % dim), seed + 2 * i + 1);
      worst = std::max(worst, std::abs(bures(density_from_pure(psi), sigma) -
                                       bures_pure(psi, sigma)));
    }
    finish(r, worst, 1e-9, n, "max |bures - bures_pure|");
  });

  run.check("qubit_super_equals_bures", [&](CheckResult& r) {
    const std::size_t n = run.count(30, 120);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const DensityMatrix rho =
          random_density(2, 1 + static_cast<int>(i % 2), seed + 2 * i);
      const DensityMatrix sigma =
          random_density(2, 1 + static_cast<int>((i / 2) % 2), seed + 2 * i + 1);
      worst = std::max(worst,
                       std::abs(super_fidelity(rho, sigma) - bures(rho, sigma)));
    }
    finish(r, worst, 1e-8, n, "max |F_S - F_B| on qubit pairs");
  });

  run.check("super_dominates_bures", [&](CheckResult& r) {
    const std::size_t n = run.count(30, 120);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [rho, sigma] = random_pair(i, seed);
      worst = std::max(worst, bures(rho, sigma) - super_fidelity(rho, sigma));
    }
    finish(r, worst, 1e-9, n, "max F_B - F_S");
  });

  run.check("norm_hierarchy", [&](CheckResult& r) {
    const std::size_t n = run.count(50, 200);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::mt19937_64 rng(seed + i);
      const int dim = 2 + static_cast<int>(i % 3);
      const ComplexMatrix m =
          i % 2 == 0 ? ginibre(dim, rng) : random_hermitian(dim, rng);
      const double op = norm_op(m);
      const double hs = norm_hs(m);
      const double tr = norm_tr(m);
      const double scale = std::max(1.0, tr);
      worst = std::max({worst, (op - hs) / scale, (hs - tr) / scale});
    }
    finish(r, worst, 1e-12, n, "max normalized violation of op <= hs <= tr");
  });

  run.check("von_neumann_trace_inequality", [&](CheckResult& r) {
    const std::size_t n = run.count(50, 200);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::mt19937_64 rng(seed + i);
      const int dim = 2 + static_cast<int>(i % 3);
      const ComplexMatrix a = ginibre(dim, rng);
      const ComplexMatrix b = ginibre(dim, rng);
      const RealVector sa = singular_values(a);
      const RealVector sb = singular_values(b);
      const double rhs = sa.dot(sb);
      const double lhs = std::abs(trace_product(a, b));
      worst = std::max(worst, (lhs - rhs) / std::max(1.0, rhs));
    }
    finish(r, worst, 1e-12, n, "max normalized |Tr(ab)| - sum s(a) s(b)");
  });

  run.check("cauchy_schwarz_trace", [&](CheckResult& r) {
    const std::size_t n = run.count(50, 200);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::mt19937_64 rng(seed + i);
      const int dim = 2 + static_cast<int>(i % 3);
      const ComplexMatrix a = ginibre(dim, rng);
      const ComplexMatrix b = ginibre(dim, rng);
      const double lhs = std::norm(trace_product(a.adjoint(), b));
      const double rhs = std::abs(trace_product(a.adjoint(), a)) *
                         std::abs(trace_product(b.adjoint(), b));
      worst = std::max(worst, (lhs - rhs) / std::max(1.0, rhs));
    }
    finish(r, worst, 1e-12, n, "max normalized |Tr(a*b)|^2 - Tr(a*a)Tr(b*b)");
  });

  run.check("d_admissible_builtins", [&](CheckResult& r) {
    for (const auto& name : builtin_d_names()) {
      check_admissible(builtin_d(name));
    }
    DFunctional rising{"rising", [](double x) { return x; },
                       [](double y) { return y; }, [](double) { return 1.0; }};
    bool rejected = false;
    try {
      check_admissible(rising);
    } catch (const NotAdmissible&) {
      rejected = true;
    }
    r.pass = rejected;
    r.samples = builtin_d_names().size() + 1;
    r.detail = rejected
                   ? "4 builtins admissible; increasing map rejected"
                   : "increasing map was not rejected";
  });

  run.check("chain_identity", [&](CheckResult& r) {
    const double dt = 1e-4;
    double worst = 0.0;
    std::size_t evaluated = 0;

    const Trajectory deph = evolve(dephasing_spec(0.5), plus_state(), 1.0, dt);
    const FidelitySeries fb = fidelity_series(FidelityKind::Bures, deph,
                                              run.opts().exec);
    ComplexMatrix mix = ComplexMatrix::Zero(2, 2);
    mix(0, 0) = 0.75;
    mix(1, 1) = 0.25;
    const Trajectory damp = evolve(amplitude_damping_spec(1.0),
                                   DensityMatrix::validated(mix), 1.0, dt);
    const FidelitySeries fs = fidelity_series(FidelityKind::Super, damp,
                                              run.opts().exec);
    for (const FidelitySeries* series : {&fb, &fs}) {
      for (const auto& name : builtin_d_names()) {
        const ChainIdentityResult res =
            verify_chain_identity(builtin_d(name), *series, 1e-4);
        worst = std::max(worst, res.max_residual);
        evaluated += res.evaluated;
      }
    }
    finish(r, worst, 1e-5, evaluated, "max chain-rule residual");
  });

  run.check("d_independence", [&](CheckResult& r) {
    std::vector<DFunctional> d_set;
    for (const auto& name : builtin_d_names()) d_set.push_back(builtin_d(name));
    double worst = 0.0;

    const Trajectory deph =
        evolve(dephasing_spec(0.5), plus_state(), 1.0, 1e-3);
    ReportContext ctx;
    ctx.opts.exec = run.opts().exec;
    worst = std::max(
        worst,
        verify_independence(d_set, deph, BoundKind::BuresMLop, ctx).max_rel_spread);
    ComplexMatrix mix = ComplexMatrix::Zero(2, 2);
    mix(0, 0) = 0.75;
    mix(1, 1) = 0.25;
    const Trajectory damp = evolve(amplitude_damping_spec(1.0),
                                   DensityMatrix::validated(mix), 1.0, 1e-3);
    worst = std::max(
        worst,
        verify_independence(d_set, damp, BoundKind::SuperMThs, ctx).max_rel_spread);
    finish(r, worst, 1e-9, 2 * d_set.size(),
           "max relative spread of D-assembled bounds");
  });

  run.check("bound_validity", [&](CheckResult& r) {
    const std::size_t n = run.count(8, 24);
    const std::uint64_t seed = run.seed_for(r.name);
    double worst = 0.0;
    std::size_t entries_checked = 0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
      RandomScenario sc = random_scenario(i, seed);
      const Trajectory traj = evolve(sc.spec, sc.rho0, 1.0, 1e-3);
      std::vector<BoundKind> kinds;
      for (BoundKind k : all_bound_kinds()) {
        if (k == BoundKind::BuresMLHamiltonian && !sc.hamiltonian_only) continue;
        kinds.push_back(k);
      }
      ReportContext ctx;
      ctx.hamiltonian = sc.hamiltonian;
      ctx.hamiltonian_only = sc.hamiltonian_only;
      ctx.opts.exec = run.opts().exec;
      const BoundReport report = build_report(traj, kinds, ctx);
      for (const BoundEntry& e : report.entries) {
        if (e.skipped) {
          ++skipped;
          continue;
        }
        ++entries_checked;
        if (!e.valid) {
          r.detail = std::string("bound ") + bound_kind_name(e.kind) +
                     " exceeded tau on scenario " + std::to_string(i) +
                     ": tau_qsl = " + format_full(e.tau_qsl);
        }
        worst = std::max(worst, e.tau_qsl / report.tau);
      }
    }
    r.worst = worst;
    r.samples = entries_checked;
    r.pass = r.detail.empty() && worst <= 1.0 + 1e-6;
    if (r.detail.empty()) {
      r.detail = "max tau_qsl/tau = " + format_full(worst) + " over " +
                 std::to_string(entries_checked) + " bounds (" +
                 std::to_string(skipped) + " skipped by policy)";
    }
  });

  run.check("integrator_oracles", [&](CheckResult& r) {
    double worst = 0.0;
    const double gamma = 0.5;
    const Trajectory deph =
        evolve(dephasing_spec(gamma), plus_state(), 1.0, 1e-3);
    for (std::size_t i = 0; i < deph.size(); ++i) {
      const double expected = 0.5 * std::exp(-2.0 * gamma * deph.times[i]);
      worst = std::max(worst,
                       std::abs(deph.states[i].mat()(0, 1).real() - expected));
    }

    ComplexVector one(2);
    one << 0.0, 1.0;
    const Trajectory damp =
        evolve(amplitude_damping_spec(1.0),
               density_from_pure(PureState::validated(one)), 1.0, 1e-3);
    for (std::size_t i = 0; i < damp.size(); ++i) {
      const double expected = std::exp(-damp.times[i]);
      worst = std::max(worst,
                       std::abs(damp.states[i].mat()(1, 1).real() - expected));
    }

    ComplexVector zero(2);
    zero << 1.0, 0.0;
    const double omega = 3.0;
    const Trajectory rabi =
        evolve(rabi_hamiltonian(omega),
               density_from_pure(PureState::validated(zero)), 1.0, 1e-3);
    for (std::size_t i = 0; i < rabi.size(); ++i) {
      const double c = std::cos(0.5 * omega * rabi.times[i]);
      worst = std::max(worst,
                       std::abs(rabi.states[i].mat()(0, 0).real() - c * c));
    }
    finish(r, worst, 1e-10, deph.size() + damp.size() + rabi.size(),
           "max deviation from closed-form trajectories");
  });

  run.check("grid_refinement", [&](CheckResult& r) {
    double worst = 0.0;
    std::size_t cases = 0;
    ComplexMatrix mix = ComplexMatrix::Zero(2, 2);
    mix(0, 0) = 0.75;
    mix(1, 1) = 0.25;
    struct Case {
      LindbladSpec spec;
      DensityMatrix rho0;
      std::vector<BoundKind> kinds;
    };
    const std::vector<Case> setups = {
        {dephasing_spec(0.5), plus_state(),
         {BoundKind::BuresMLop, BoundKind::BuresMLtr, BoundKind::OperatorMT,
          BoundKind::AlternativeMT}},
        {amplitude_damping_spec(1.0), DensityMatrix::validated(mix),
         {BoundKind::SuperMLop, BoundKind::SuperMThs, BoundKind::OperatorMT,
          BoundKind::AlternativeMT}},
    };
    BoundOptions opts;
    opts.exec = run.opts().exec;
    for (const auto& setup : setups) {
      std::array<double, 3> dts = {4e-3, 2e-3, 1e-3};
      for (BoundKind kind : setup.kinds) {
        std::array<double, 3> b{};
        for (std::size_t j = 0; j < dts.size(); ++j) {
          const Trajectory traj = evolve(setup.spec, setup.rho0, 1.0, dts[j]);
          b[j] = time_average(bound_integrand_series(traj, kind, nullptr, opts),
                              traj.dt, opts.quadrature);
        }
        const double d1 = std::abs(b[0] - b[1]);
        const double d2 = std::abs(b[1] - b[2]);
        worst = std::max(worst, d1 - (4.004 * d2 + 1e-14));
        ++cases;
      }
    }
    finish(r, worst, 0.0, cases,
           "max excess of |B(h) - B(h/2)| over 4.004 |B(h/2) - B(h/4)| + 1e-14");
  });

  return run.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace qsl
