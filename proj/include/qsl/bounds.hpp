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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsl/fidelity.hpp"

namespace qsl {

enum class SchattenNorm { Op, Tr, Hs };

enum class Quadrature { Trapezoid, Simpson };

/// How the Hamiltonian spectrum is shifted to make <H_t> nonnegative:
/// subtract the instantaneous minimum eigenvalue, or the minimum over
/// the whole grid. Identical for time-independent Hamiltonians.
enum class ShiftPolicy { PerInstant, GlobalMin };

/// The nine time-averaged bound quantities. Naming: fidelity family,
/// bound family (ML = energy/op/tr-norm route, MT = Hilbert-Schmidt
/// route), then the norm or generator flavour.
enum class BoundKind {
  BuresMLop,
  BuresMLtr,
  BuresMThs,
  BuresMLHamiltonian,
  SuperMLop,
  SuperMLtr,
  SuperMThs,
  OperatorMT,
  AlternativeMT
};

const char* bound_kind_name(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);
const std::vector<BoundKind>& all_bound_kinds();

/// The fidelity whose decay the kind bounds.
FidelityKind bound_kind_fidelity(BoundKind kind);

double schatten_norm(SchattenNorm norm, const ComplexMatrix& m);

struct BoundOptions {
  double hbar = 1.0;
  Quadrature quadrature = Quadrature::Trapezoid;
  ShiftPolicy shift = ShiftPolicy::PerInstant;
  Exec exec = Exec::Parallel;
};

/// (1/tau) integral of the sampled integrand over its uniform grid.
/// Composite trapezoid by default; Simpson uses the 3/8 rule on the tail
/// when the interval count is odd. At least 2 samples (TooFewSamples).
double time_average(std::span<const double> samples, double dt,
                    Quadrature quadrature = Quadrature::Trapezoid);

/// Shifted instantaneous energies <H_t - shift*I> = Tr((H_t - shift*I) rho_t)
/// on the trajectory grid.
std::vector<double> shifted_energy_series(const Trajectory& traj,
                                          const HamiltonianSpec& h,
                                          ShiftPolicy shift = ShiftPolicy::PerInstant,
                                          Exec exec = Exec::Parallel);

/// Time-averaged shifted energy E_tau.
double avg_energy(const Trajectory& traj, const HamiltonianSpec& h,
                  ShiftPolicy shift = ShiftPolicy::PerInstant,
                  Quadrature quadrature = Quadrature::Trapezoid,
                  Exec exec = Exec::Parallel);

/// hbar (1 - F_B(tau)) / (2 E_tau) for a pure initial state under
/// Hamiltonian-only evolution. MixedInitialState when rho_0 is not pure;
/// ZeroEnergy when E_tau vanishes while F_B(tau) < 1.
double ml_hamiltonian_bound(const Trajectory& traj, const HamiltonianSpec& h,
                            double hbar = 1.0,
                            ShiftPolicy shift = ShiftPolicy::PerInstant,
                            Quadrature quadrature = Quadrature::Trapezoid,
                            Exec exec = Exec::Parallel);

/// Time average of the chosen Schatten norm of the generator outputs.
/// Requires a pure initial state (MixedInitialState otherwise).
double b_bures(const Trajectory& traj, SchattenNorm norm,
               Quadrature quadrature = Quadrature::Trapezoid,
               Exec exec = Exec::Parallel);

/// Same norms scaled by (1 + sqrt((1 - Tr rho_0^2)/(1 - Tr rho_t^2))).
/// PurityDegenerate (with grid index) when a trajectory state is pure
/// while rho_0 is mixed.
double b_super(const Trajectory& traj, SchattenNorm norm,
               Quadrature quadrature = Quadrature::Trapezoid,
               Exec exec = Exec::Parallel);

/// Time average of rate_bound_operator over the grid.
double b_operator(const Trajectory& traj,
                  Quadrature quadrature = Quadrature::Trapezoid,
                  Exec exec = Exec::Parallel);

/// Time average of rate_bound_alternative over the grid.
double b_alternative(const Trajectory& traj,
                     Quadrature quadrature = Quadrature::Trapezoid,
                     Exec exec = Exec::Parallel);

/// The instantaneous integrand B(t) behind each bound kind, sampled on
/// the trajectory grid; its time average is the corresponding B(tau).
/// BuresMLHamiltonian requires the Hamiltonian that generated the
/// trajectory and yields 2 <H~_t> / hbar.
std::vector<double> bound_integrand_series(const Trajectory& traj, BoundKind kind,
                                           const HamiltonianSpec* hamiltonian = nullptr,
                                           const BoundOptions& opts = {});

/// (1 - F_tau)/B_tau. Returns 0 when both 1 - F_tau and B_tau are below
/// 1e-12 (no evolution); ZeroDenominator when only B_tau vanishes.
double tau_qsl(double f_tau, double b_tau);

struct BoundEntry {
  BoundKind kind = BoundKind::BuresMLop;
  bool skipped = false;
  std::string skip_reason;
  double b_tau = 0.0;
  double f_tau = 1.0;
  double tau_qsl = 0.0;
  bool valid = false;
};

struct BoundReport {
  double tau = 0.0;
  std::vector<BoundEntry> entries;
  std::optional<double> unified_bures;
  std::optional<double> unified_super;

  const BoundEntry* find(BoundKind kind) const;
};

/// Sharpest lower bound among the computed entries: max tau_qsl over
/// the non-skipped ones. At least one such entry required.
double unified_bound(const std::vector<BoundEntry>& entries);

struct ReportContext {
  /// Needed for BuresMLHamiltonian; ignored by other kinds.
  std::optional<HamiltonianSpec> hamiltonian;
  /// True when the trajectory has no dissipative part.
  bool hamiltonian_only = false;
  BoundOptions opts;
};

/// Computes every requested kind, recording per-kind failures
/// (MixedInitialState, PurityDegenerate, ...) as skipped-with-reason
/// entries instead of aborting. valid = (tau_qsl <= tau + 1e-6 tau).
BoundReport build_report(const Trajectory& traj, const std::vector<BoundKind>& kinds,
                         const ReportContext& ctx = {});

}  // namespace qsl
