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

#include "qsl/bounds.hpp"

#include <cmath>
#include <sstream>

namespace qsl {

namespace {

using detail::clamp01;

/// Extracts |psi_0> from a pure rho_0; MixedInitialState otherwise.
PureState pure_initial_state(const DensityMatrix& rho0, const char* where) {
  const double p = purity(rho0);
  if (1.0 - p > kPureStateEps) {
    std::ostringstream os;
    os << where << ": initial state is mixed (purity " << p << ")";
    throw MixedInitialState(os.str(), p);
  }
  const HermitianEigen eig = hermitian_eig(rho0.mat());
  // Ascending order: the dominant eigenvector is the last column.
  ComplexVector top = eig.eigenvectors.col(rho0.dim() - 1);
  top /= top.norm();
  return PureState::validated(top);
}

void check_trajectory(const Trajectory& traj, const char* where) {
  if (traj.size() < 2 || traj.states.size() != traj.size() ||
      traj.derivs.size() != traj.size()) {
    throw TooFewSamples(std::string(where) +
                        ": trajectory needs >= 2 consistent grid points");
  }
}

std::vector<double> norm_series(const Trajectory& traj, SchattenNorm norm,
                                Exec exec) {
  std::vector<double> out(traj.size(), 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(traj.size()), exec,
               [&](std::ptrdiff_t i) {
                 out[static_cast<std::size_t>(i)] =
                     schatten_norm(norm, traj.derivs[static_cast<std::size_t>(i)]);
               });
  return out;
}

/// Super-fidelity prefactor series with the degenerate-purity policy;
/// norm_values supplies the accompanying numerator factors.
std::vector<double> super_factor_series(const Trajectory& traj,
                                        const std::vector<double>& norm_values,
                                        Exec exec) {
  const double one0 = clamp01(1.0 - purity(traj.initial()));
  std::vector<double> out(traj.size(), 1.0);
  if (one0 < kPurityEps) return out;

  parallel_for(
      static_cast<std::ptrdiff_t>(traj.size()), exec, [&](std::ptrdiff_t i) {
        const auto idx = static_cast<std::size_t>(i);
        const double onet = clamp01(1.0 - purity(traj.states[idx]));
        if (onet < kPurityEps) {
          if (norm_values[idx] < kPurityEps) {
            out[idx] = 1.0;
            return;
          }
          std::ostringstream os;
          os << "b_super: trajectory state at grid index " << idx
             << " is pure while rho_0 is mixed";
          throw PurityDegenerate(os.str(), idx, onet);
        }
        out[idx] = 1.0 + std::sqrt(one0 / onet);
      });
  return out;
}

std::vector<double> rate_series(
    const Trajectory& traj, Exec exec,
    double (*rate)(const DensityMatrix&, const DensityMatrix&,
                   const ComplexMatrix&)) {
  const DensityMatrix& rho0 = traj.initial();
  std::vector<double> out(traj.size(), 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(traj.size()), exec,
               [&](std::ptrdiff_t i) {
                 const auto idx = static_cast<std::size_t>(i);
                 try {
                   out[idx] = rate(rho0, traj.states[idx], traj.derivs[idx]);
                 } catch (const PurityDegenerate& e) {
                   std::ostringstream os;
                   os << e.what() << " (grid index " << idx << ")";
                   throw PurityDegenerate(os.str(), idx, e.measured());
                 }
               });
  return out;
}

double fidelity_at_tau(BoundKind kind, const Trajectory& traj) {
  const DensityMatrix& rho0 = traj.initial();
  const DensityMatrix& rho_tau = traj.final_state();
  switch (bound_kind_fidelity(kind)) {
    case FidelityKind::Bures:
      return bures_pure(pure_initial_state(rho0, bound_kind_name(kind)), rho_tau);
    case FidelityKind::Super:
      return super_fidelity(rho0, rho_tau);
    case FidelityKind::Operator:
      return operator_fidelity(rho0, rho_tau);
    case FidelityKind::Alternative:
      return alternative_fidelity(rho0, rho_tau);
  }
  throw UnknownName("fidelity_at_tau: unhandled kind");
}

}  // namespace

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::BuresMLop:
      return "bures_ml_op";
    case BoundKind::BuresMLtr:
      return "bures_ml_tr";
    case BoundKind::BuresMThs:
      return "bures_mt_hs";
    case BoundKind::BuresMLHamiltonian:
      return "bures_ml_hamiltonian";
    case BoundKind::SuperMLop:
      return "super_ml_op";
    case BoundKind::SuperMLtr:
      return "super_ml_tr";
    case BoundKind::SuperMThs:
      return "super_mt_hs";
    case BoundKind::OperatorMT:
      return "operator_mt";
    case BoundKind::AlternativeMT:
      return "alternative_mt";
  }
  throw UnknownName("bound_kind_name: unhandled kind");
}

BoundKind parse_bound_kind(const std::string& name) {
  for (BoundKind kind : all_bound_kinds()) {
    if (name == bound_kind_name(kind)) return kind;
  }
  throw UnknownName("unknown bound kind: " + name);
}

const std::vector<BoundKind>& all_bound_kinds() {
  static const std::vector<BoundKind> kinds = {
      BoundKind::BuresMLop,          BoundKind::BuresMLtr,
      BoundKind::BuresMThs,          BoundKind::BuresMLHamiltonian,
      BoundKind::SuperMLop,          BoundKind::SuperMLtr,
      BoundKind::SuperMThs,          BoundKind::OperatorMT,
      BoundKind::AlternativeMT};
  return kinds;
}

FidelityKind bound_kind_fidelity(BoundKind kind) {
  switch (kind) {
    case BoundKind::BuresMLop:
    case BoundKind::BuresMLtr:
    case BoundKind::BuresMThs:
    case BoundKind::BuresMLHamiltonian:
      return FidelityKind::Bures;
    case BoundKind::SuperMLop:
    case BoundKind::SuperMLtr:
    case BoundKind::SuperMThs:
      return FidelityKind::Super;
    case BoundKind::OperatorMT:
      return FidelityKind::Operator;
    case BoundKind::AlternativeMT:
      return FidelityKind::Alternative;
  }
  throw UnknownName("bound_kind_fidelity: unhandled kind");
}

double schatten_norm(SchattenNorm norm, const ComplexMatrix& m) {
  switch (norm) {
    case SchattenNorm::Op:
      return norm_op(m);
    case SchattenNorm::Tr:
      return norm_tr(m);
    case SchattenNorm::Hs:
      return norm_hs(m);
  }
  throw UnknownName("schatten_norm: unhandled norm");
}

double time_average(std::span<const double> samples, double dt,
                    Quadrature quadrature) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw TooFewSamples("time_average: need at least 2 samples");
  }
  if (!(dt > 0.0)) {
    throw ValidationError("time_average: dt must be positive");
  }

  const std::size_t intervals = n - 1;
  double integral = 0.0;
  if (quadrature == Quadrature::Trapezoid || intervals == 1) {
    double sum = 0.0;
    for (double v : samples) sum += v;
    integral = dt * (sum - 0.5 * (samples.front() + samples.back()));
  } else {
    // Simpson: pairs of intervals, with the 3/8 rule absorbing an odd tail.
    std::size_t simpson_end = intervals;
    if (intervals % 2 != 0) {
      simpson_end = (intervals >= 3) ? intervals - 3 : 0;
    }
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
      integral += dt / 3.0 * (samples[i] + 4.0 * samples[i + 1] + samples[i + 2]);
    }
    if (simpson_end < intervals) {
      const std::size_t i = simpson_end;
      integral += 3.0 * dt / 8.0 *
                  (samples[i] + 3.0 * samples[i + 1] + 3.0 * samples[i + 2] +
                   samples[i + 3]);
    }
  }
  return integral / (dt * static_cast<double>(intervals));
}

std::vector<double> shifted_energy_series(const Trajectory& traj,
                                          const HamiltonianSpec& h,
                                          ShiftPolicy shift, Exec exec) {
  check_trajectory(traj, "shifted_energy_series");
  if (!h.at) {
    throw ValidationError("shifted_energy_series: Hamiltonian evaluator is empty");
  }

  const std::size_t n = traj.size();
  std::vector<double> raw(n, 0.0);
  std::vector<double> min_eigs(n, 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(n), exec, [&](std::ptrdiff_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const ComplexMatrix ht = h.at(traj.times[idx]);
    const HermitianEigen eig = hermitian_eig(ht);
    min_eigs[idx] = eig.eigenvalues.minCoeff();
    raw[idx] = trace_product(ht, traj.states[idx].mat()).real();
  });

  double global_min = min_eigs[0];
  for (double m : min_eigs) global_min = std::min(global_min, m);

  // Tr((H - s I) rho) = Tr(H rho) - s Tr(rho); the trajectory trace is 1
  // within validation tolerance.
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = (shift == ShiftPolicy::PerInstant) ? min_eigs[i] : global_min;
    out[i] = raw[i] - s * traj.states[i].mat().trace().real();
  }
  return out;
}

double avg_energy(const Trajectory& traj, const HamiltonianSpec& h,
                  ShiftPolicy shift, Quadrature quadrature, Exec exec) {
  const std::vector<double> energies = shifted_energy_series(traj, h, shift, exec);
  return time_average(energies, traj.dt, quadrature);
}

double ml_hamiltonian_bound(const Trajectory& traj, const HamiltonianSpec& h,
                            double hbar, ShiftPolicy shift, Quadrature quadrature,
                            Exec exec) {
  check_trajectory(traj, "ml_hamiltonian_bound");
  if (!(hbar > 0.0)) {
    throw ValidationError("ml_hamiltonian_bound: hbar must be positive");
  }
  const PureState psi0 = pure_initial_state(traj.initial(), "ml_hamiltonian_bound");
  const double f_tau = bures_pure(psi0, traj.final_state());
  const double energy = avg_energy(traj, h, shift, quadrature, exec);
  const double numerator = 1.0 - f_tau;
  if (energy < 1e-14) {
    if (numerator < 1e-12) return 0.0;
    std::ostringstream os;
    os << "ml_hamiltonian_bound: time-averaged energy " << energy
       << " vanishes while F_B(tau) = " << f_tau;
    throw ZeroEnergy(os.str(), energy);
  }
  return hbar * numerator / (2.0 * energy);
}

double b_bures(const Trajectory& traj, SchattenNorm norm, Quadrature quadrature,
               Exec exec) {
  check_trajectory(traj, "b_bures");
  pure_initial_state(traj.initial(), "b_bures");
  return time_average(norm_series(traj, norm, exec), traj.dt, quadrature);
}

double b_super(const Trajectory& traj, SchattenNorm norm, Quadrature quadrature,
               Exec exec) {
  check_trajectory(traj, "b_super");
  std::vector<double> norms = norm_series(traj, norm, exec);
  const std::vector<double> factors = super_factor_series(traj, norms, exec);
  for (std::size_t i = 0; i < norms.size(); ++i) norms[i] *= factors[i];
  return time_average(norms, traj.dt, quadrature);
}

double b_operator(const Trajectory& traj, Quadrature quadrature, Exec exec) {
  check_trajectory(traj, "b_operator");
  std::vector<double> samples(traj.size(), 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(traj.size()), exec,
               [&](std::ptrdiff_t i) {
                 const auto idx = static_cast<std::size_t>(i);
                 samples[idx] =
                     rate_bound_operator(traj.states[idx], traj.derivs[idx]);
               });
  return time_average(samples, traj.dt, quadrature);
}

double b_alternative(const Trajectory& traj, Quadrature quadrature, Exec exec) {
  check_trajectory(traj, "b_alternative");
  const std::vector<double> samples =
      rate_series(traj, exec, &rate_bound_alternative);
  return time_average(samples, traj.dt, quadrature);
}

std::vector<double> bound_integrand_series(const Trajectory& traj, BoundKind kind,
                                           const HamiltonianSpec* hamiltonian,
                                           const BoundOptions& opts) {
  check_trajectory(traj, "bound_integrand_series");
  switch (kind) {
    case BoundKind::BuresMLop:
      pure_initial_state(traj.initial(), bound_kind_name(kind));
      return norm_series(traj, SchattenNorm::Op, opts.exec);
    case BoundKind::BuresMLtr:
      pure_initial_state(traj.initial(), bound_kind_name(kind));
      return norm_series(traj, SchattenNorm::Tr, opts.exec);
    case BoundKind::BuresMThs:
      pure_initial_state(traj.initial(), bound_kind_name(kind));
      return norm_series(traj, SchattenNorm::Hs, opts.exec);
    case BoundKind::BuresMLHamiltonian: {
      if (hamiltonian == nullptr) {
        throw ValidationError(
            "bound_integrand_series: bures_ml_hamiltonian needs the Hamiltonian");
      }
      pure_initial_state(traj.initial(), bound_kind_name(kind));
      std::vector<double> energies =
          shifted_energy_series(traj, *hamiltonian, opts.shift, opts.exec);
      for (double& e : energies) e *= 2.0 / opts.hbar;
      return energies;
    }
    case BoundKind::SuperMLop:
    case BoundKind::SuperMLtr:
    case BoundKind::SuperMThs: {
      const SchattenNorm norm = (kind == BoundKind::SuperMLop) ? SchattenNorm::Op
                                : (kind == BoundKind::SuperMLtr)
                                    ? SchattenNorm::Tr
                                    : SchattenNorm::Hs;
      std::vector<double> norms = norm_series(traj, norm, opts.exec);
      const std::vector<double> factors =
          super_factor_series(traj, norms, opts.exec);
      for (std::size_t i = 0; i < norms.size(); ++i) norms[i] *= factors[i];
      return norms;
    }
    case BoundKind::OperatorMT: {
      std::vector<double> samples(traj.size(), 0.0);
      parallel_for(static_cast<std::ptrdiff_t>(traj.size()), opts.exec,
                   [&](std::ptrdiff_t i) {
                     const auto idx = static_cast<std::size_t>(i);
                     samples[idx] =
                         rate_bound_operator(traj.states[idx], traj.derivs[idx]);
                   });
      return samples;
    }
    case BoundKind::AlternativeMT:
      return rate_series(traj, opts.exec, &rate_bound_alternative);
  }
  throw UnknownName("bound_integrand_series: unhandled kind");
}

double tau_qsl(double f_tau, double b_tau) {
  if (f_tau < -1e-9 || f_tau > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "tau_qsl: fidelity " << f_tau << " outside [0, 1] beyond 1e-9";
    throw DomainExit(os.str(), f_tau);
  }
  if (!(b_tau >= 0.0)) {
    std::ostringstream os;
    os << "tau_qsl: bound quantity " << b_tau << " must be nonnegative";
    throw ValidationError(os.str());
  }
  const double numerator = 1.0 - f_tau;
  if (b_tau < 1e-12) {
    if (numerator < 1e-12) return 0.0;
    std::ostringstream os;
    os << "tau_qsl: bound quantity vanishes while 1 - F = " << numerator;
    throw ZeroDenominator(os.str(), b_tau);
  }
  const double q = numerator / b_tau;
  // Negative only through fidelity roundoff above 1.
  return q < 0.0 ? 0.0 : q;
}

const BoundEntry* BoundReport::find(BoundKind kind) const {
  for (const BoundEntry& e : entries) {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

double unified_bound(const std::vector<BoundEntry>& entries) {
  bool any = false;
  double best = 0.0;
  for (const BoundEntry& e : entries) {
    if (e.skipped) continue;
    if (!any || e.tau_qsl > best) best = e.tau_qsl;
    any = true;
  }
  if (!any) {
    throw TooFewSamples("unified_bound: no computed entries");
  }
  return best;
}

BoundReport build_report(const Trajectory& traj, const std::vector<BoundKind>& kinds,
                         const ReportContext& ctx) {
  check_trajectory(traj, "build_report");

  BoundReport report;
  report.tau = traj.tau();
  const double tol = 1e-6 * report.tau;

  for (BoundKind kind : kinds) {
    BoundEntry entry;
    entry.kind = kind;
    try {
      if (kind == BoundKind::BuresMLHamiltonian) {
        if (!ctx.hamiltonian || !ctx.hamiltonian_only) {
          throw ValidationError(
              "bures_ml_hamiltonian requires a Hamiltonian-only trajectory");
        }
      }
      const HamiltonianSpec* h =
          ctx.hamiltonian ? &ctx.hamiltonian.value() : nullptr;
      const std::vector<double> integrand =
          bound_integrand_series(traj, kind, h, ctx.opts);
      entry.b_tau = time_average(integrand, traj.dt, ctx.opts.quadrature);
      entry.f_tau = fidelity_at_tau(kind, traj);
      entry.tau_qsl = tau_qsl(entry.f_tau, entry.b_tau);
      entry.valid = entry.tau_qsl <= report.tau + tol;
    } catch (const Error& e) {
      entry.skipped = true;
      entry.skip_reason = e.what();
    }
    report.entries.push_back(std::move(entry));
  }

  std::vector<BoundEntry> bures_entries;
  std::vector<BoundEntry> super_entries;
  for (const BoundEntry& e : report.entries) {
    if (e.skipped) continue;
    if (bound_kind_fidelity(e.kind) == FidelityKind::Bures) {
      bures_entries.push_back(e);
    } else if (bound_kind_fidelity(e.kind) == FidelityKind::Super) {
      super_entries.push_back(e);
    }
  }
  if (!bures_entries.empty()) {
    report.unified_bures = unified_bound(bures_entries);
  }
  if (!super_entries.empty()) {
    report.unified_super = unified_bound(super_entries);
  }
  return report;
}

}  // namespace qsl
