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

#include <string>
#include <vector>

#include "qsl/dynamics.hpp"
#include "qsl/parallel.hpp"
#include "qsl/states.hpp"

namespace qsl {

enum class FidelityKind { Bures, Super, Operator, Alternative };

const char* fidelity_kind_name(FidelityKind kind);
FidelityKind parse_fidelity_kind(const std::string& name);

/// All four kinds of FidelityKind, in declaration order.
const std::vector<FidelityKind>& all_fidelity_kinds();

/// Below this, 1 - Tr(rho^2) counts as zero in purity-ratio guards.
inline constexpr double kPurityEps = 1e-12;

/// Below this deviation from purity 1, a state counts as pure.
inline constexpr double kPureStateEps = 1e-9;

/// Bures fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, evaluated through
/// two PSD square roots.
double bures(const DensityMatrix& rho, const DensityMatrix& sigma);

/// <psi0| sigma |psi0>; agrees with bures(|psi0><psi0|, sigma) within 1e-9.
double bures_pure(const PureState& psi0, const DensityMatrix& sigma);

/// Tr(rho sigma) + sqrt(1 - Tr rho^2) sqrt(1 - Tr sigma^2), the 1 - purity
/// factors clamped to [0, 1] before the square roots.
double super_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// |Tr(rho sigma)| / (sqrt(Tr rho^2) sqrt(Tr sigma^2)).
double operator_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1 + sqrt((1 - Tr rho^2)/Tr rho^2) sqrt((1 - Tr sigma^2)/Tr sigma^2))
/// * Tr(rho sigma).
double alternative_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double fidelity(FidelityKind kind, const DensityMatrix& rho,
                const DensityMatrix& sigma);

/// Fidelity of each trajectory state against the trajectory's initial
/// state, on the trajectory's own grid. values[0] = 1 within 1e-9.
struct FidelitySeries {
  FidelityKind kind = FidelityKind::Bures;
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
};

/// Per-point failures are rethrown with the grid index attached.
FidelitySeries fidelity_series(FidelityKind kind, const Trajectory& traj,
                               Exec exec = Exec::Parallel);

/// Upper bound on |d F_s/dt|:
/// |Tr(rho0 rho_dot)| + sqrt((1 - Tr rho0^2)/(1 - Tr rho_t^2)) |Tr(rho_t rho_dot)|.
/// The ratio term is 0 when its numerator factors vanish alongside a
/// degenerate denominator; PurityDegenerate otherwise.
double rate_bound_super(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                        const ComplexMatrix& drho_t);

/// Upper bound on |d F_o/dt|: 2 sqrt(Tr rho_dot^2 / Tr rho_t^2).
double rate_bound_operator(const DensityMatrix& rho_t, const ComplexMatrix& drho_t);

/// Upper bound on |d F_a/dt|: the three-term sum over the purity-ratio,
/// Cauchy-Schwarz, and cross terms. Same degenerate-purity policy as
/// rate_bound_super.
double rate_bound_alternative(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                              const ComplexMatrix& drho_t);

}  // namespace qsl
