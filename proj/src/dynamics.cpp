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

#include "qsl/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace qsl {

namespace {

void check_spec(const LindbladSpec& spec) {
  if (spec.dim < 1) {
    throw DimMismatch("LindbladSpec: dim must be >= 1");
  }
  if (spec.hamiltonian) {
    if (spec.hamiltonian->dim != spec.dim) {
      throw DimMismatch("LindbladSpec: Hamiltonian dim differs from spec dim");
    }
    if (!spec.hamiltonian->at) {
      throw ValidationError("LindbladSpec: Hamiltonian evaluator is empty");
    }
  }
  for (const JumpOperator& j : spec.jumps) {
    if (j.op.rows() != spec.dim || j.op.cols() != spec.dim) {
      throw DimMismatch("LindbladSpec: jump operator dim differs from spec dim");
    }
    if (!(j.rate >= 0.0)) {
      std::ostringstream os;
      os << "LindbladSpec: negative jump rate " << j.rate;
      throw ValidationError(os.str());
    }
  }
}

ComplexMatrix hamiltonian_at(const HamiltonianSpec& h, double t) {
  ComplexMatrix m = h.at(t);
  if (m.rows() != h.dim || m.cols() != h.dim) {
    throw DimMismatch("HamiltonianSpec: evaluator returned wrong dimensions");
  }
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "HamiltonianSpec: evaluator output deviates from Hermitian by " << dev
       << " at t = " << t;
    throw NotHermitian(os.str(), dev);
  }
  return m;
}

}  // namespace

ComplexMatrix von_neumann_rhs(const ComplexMatrix& h, const ComplexMatrix& rho,
                              double hbar) {
  detail::require_square(h, "von_neumann_rhs");
  detail::require_square(rho, "von_neumann_rhs");
  if (h.rows() != rho.rows()) {
    throw DimMismatch("von_neumann_rhs: Hamiltonian and state dims differ");
  }
  if (!(hbar > 0.0)) {
    throw ValidationError("von_neumann_rhs: hbar must be positive");
  }
  const Complex minus_i_over_hbar(0.0, -1.0 / hbar);
  return minus_i_over_hbar * (h * rho - rho * h);
}

ComplexMatrix von_neumann_rhs(const ComplexMatrix& h, const DensityMatrix& rho,
                              double hbar) {
  return von_neumann_rhs(h, rho.mat(), hbar);
}

ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const ComplexMatrix& rho,
                           double t, double hbar) {
  check_spec(spec);
  if (rho.rows() != spec.dim || rho.cols() != spec.dim) {
    throw DimMismatch("lindblad_rhs: state dim differs from spec dim");
  }

  ComplexMatrix out = ComplexMatrix::Zero(spec.dim, spec.dim);
  if (spec.hamiltonian) {
    out = von_neumann_rhs(hamiltonian_at(*spec.hamiltonian, t), rho, hbar);
  }
  for (const JumpOperator& j : spec.jumps) {
    if (j.rate == 0.0) continue;
    const ComplexMatrix ada = j.op.adjoint() * j.op;
    out += j.rate * (j.op * rho * j.op.adjoint() - 0.5 * (ada * rho + rho * ada));
  }
  return out;
}

ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const DensityMatrix& rho,
                           double t, double hbar) {
  return lindblad_rhs(spec, rho.mat(), t, hbar);
}

std::size_t step_count(double duration, double step, std::size_t min_steps) {
  if (!(duration > 0.0) || !(step > 0.0)) {
    throw StepMismatch("step_count: duration and step must be positive");
  }
  const double ratio = duration / step;
  const double rounded = std::round(ratio);
  const double dev = std::abs(ratio - rounded);
  if (dev > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "step_count: duration/step = " << ratio
       << " is not an integer within 1e-9 relative";
    throw StepMismatch(os.str(), dev);
  }
  const auto n = static_cast<std::size_t>(rounded);
  if (n < min_steps) {
    std::ostringstream os;
    os << "step_count: need at least " << min_steps << " steps, got " << n;
    throw StepMismatch(os.str(), static_cast<double>(n));
  }
  return n;
}

Trajectory evolve(const LindbladSpec& spec, const DensityMatrix& rho0, double tau,
                  double dt, double hbar) {
  check_spec(spec);
  if (rho0.dim() != spec.dim) {
    throw DimMismatch("evolve: initial state dim differs from spec dim");
  }

  const std::size_t n = step_count(tau, dt);
  // Realized step: exact-endpoint and uniform-step invariants both hold.
  const double h = tau / static_cast<double>(n);

  Trajectory traj;
  traj.dt = h;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.derivs.reserve(n + 1);

  ComplexMatrix rho = rho0.mat();
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = (i == n) ? tau : static_cast<double>(i) * h;
    traj.times.push_back(t);
    try {
      traj.states.push_back(DensityMatrix::validated(rho, 1e-8));
    } catch (const NumericError& e) {
      std::ostringstream os;
      os << "evolve: state left the density-matrix manifold at step " << i << ": "
         << e.what();
      throw DriftExceeded(os.str(), i, e.measured());
    }
    traj.derivs.push_back(lindblad_rhs(spec, rho, t, hbar));

    if (i == n) break;
    const ComplexMatrix& k1 = traj.derivs.back();
    const ComplexMatrix k2 = lindblad_rhs(spec, rho + 0.5 * h * k1, t + 0.5 * h, hbar);
    const ComplexMatrix k3 = lindblad_rhs(spec, rho + 0.5 * h * k2, t + 0.5 * h, hbar);
    const ComplexMatrix k4 = lindblad_rhs(spec, rho + h * k3, t + h, hbar);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return traj;
}

Trajectory evolve(const HamiltonianSpec& h, const DensityMatrix& rho0, double tau,
                  double dt, double hbar) {
  LindbladSpec spec;
  spec.dim = h.dim;
  spec.hamiltonian = h;
  return evolve(spec, rho0, tau, dt, hbar);
}

}  // namespace qsl
