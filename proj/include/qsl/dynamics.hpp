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

#include <functional>
#include <optional>
#include <vector>

#include "qsl/states.hpp"

namespace qsl {

/// Time-dependent Hamiltonian. The evaluator must return a Hermitian
/// dim x dim matrix (within 1e-10 max-entry) at every sampled time.
struct HamiltonianSpec {
  Eigen::Index dim = 0;
  std::function<ComplexMatrix(double)> at;
};

struct JumpOperator {
  ComplexMatrix op;
  double rate = 0.0;
};

/// Lindblad generator: optional Hamiltonian part plus jump operators
/// with nonnegative rates.
struct LindbladSpec {
  Eigen::Index dim = 0;
  std::optional<HamiltonianSpec> hamiltonian;
  std::vector<JumpOperator> jumps;
};

/// Uniform-grid evolution record. states[i] is the state at times[i] and
/// derivs[i] the generator evaluated on it (not a finite difference).
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<ComplexMatrix> derivs;

  std::size_t size() const { return times.size(); }
  double tau() const { return times.back(); }
  const DensityMatrix& initial() const { return states.front(); }
  const DensityMatrix& final_state() const { return states.back(); }
};

/// (1/(i hbar)) [H, rho]. Hermitian and traceless up to roundoff.
ComplexMatrix von_neumann_rhs(const ComplexMatrix& h, const ComplexMatrix& rho,
                              double hbar = 1.0);
ComplexMatrix von_neumann_rhs(const ComplexMatrix& h, const DensityMatrix& rho,
                              double hbar = 1.0);

/// Full generator output: von Neumann part (when a Hamiltonian is
/// present) plus the dissipator sum_k rate_k (A rho A^dag -
/// {A^dag A, rho}/2). Hermitian and traceless within 1e-9.
ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const ComplexMatrix& rho,
                           double t, double hbar = 1.0);
ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const DensityMatrix& rho,
                           double t, double hbar = 1.0);

/// Classical fixed-step 4th-order Runge-Kutta integration of
/// rho_dot = L_t(rho) over [0, tau].
///
/// tau/dt must be an integer n >= 2 within 1e-9 relative rounding
/// (StepMismatch otherwise); the realized step is tau/n so the final
/// grid point is exactly tau. No renormalization is applied; every state
/// must pass density validation at 1e-8 or DriftExceeded is raised with
/// the step index.
Trajectory evolve(const LindbladSpec& spec, const DensityMatrix& rho0, double tau,
                  double dt, double hbar = 1.0);
Trajectory evolve(const HamiltonianSpec& h, const DensityMatrix& rho0, double tau,
                  double dt, double hbar = 1.0);

/// Shared step-count check: the integer n with |duration/step - n| within
/// 1e-9 relative, n >= min_steps. StepMismatch otherwise.
std::size_t step_count(double duration, double step, std::size_t min_steps = 2);

}  // namespace qsl
