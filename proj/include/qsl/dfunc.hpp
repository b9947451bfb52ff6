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
#include <string>
#include <vector>

#include "qsl/bounds.hpp"

namespace qsl {

/// A bounded, strictly decreasing, differentiable, invertible map on
/// [0, 1] applied to a fidelity. The speed-limit bound assembled through
/// any admissible D equals the D-free bound; the routines below verify
/// that numerically instead of assuming it.
struct DFunctional {
  std::string name;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;
};

/// Builtins: bures_angle (arccos sqrt x), modified_angle (the same map,
/// conventionally applied to super-fidelity series), linear (1 - x),
/// exponential (e^-x - e^-1). UnknownName otherwise.
DFunctional builtin_d(const std::string& name);

const std::vector<std::string>& builtin_d_names();

/// Sweeps a 1e-3 grid on [0, 1]: strict decrease, round trip within
/// 1e-10 (skipping points where |derivative| > 1e6), negative derivative
/// on the interior. NotAdmissible on the first failure.
void check_admissible(const DFunctional& d);

struct ChainIdentityResult {
  /// max over evaluated points of |d/dt D^-1(D(F)) - dF/dt|, both sides
  /// central differences at the realized step.
  double max_residual = 0.0;
  std::size_t evaluated = 0;
  /// Points skipped because F sits within the endpoint margin of 0 or 1
  /// or |D'| exceeds 1e6 there.
  std::size_t excluded = 0;
  /// The realized finite-difference step (stride times the grid step).
  double fd_step = 0.0;
};

/// Verifies d/dt D^-1(D(F(t))) = dF/dt on the series grid. fd_step must
/// be an integer multiple of the grid step within 1e-9 relative
/// (StepMismatch otherwise); the difference stride is that multiple.
/// DomainExit when any series value leaves [0, 1] beyond 1e-9.
ChainIdentityResult verify_chain_identity(const DFunctional& d,
                                          const FidelitySeries& series,
                                          double fd_step = 1e-4,
                                          double endpoint_margin = 0.02);

struct IndependenceEntry {
  std::string name;
  double tau_qsl = 0.0;
};

struct IndependenceReport {
  BoundKind kind = BoundKind::BuresMLop;
  /// (1 - F(tau)) / B(tau), no D involved.
  double d_free = 0.0;
  std::vector<IndependenceEntry> per_d;
  /// max |per_d - d_free| / d_free (0 when d_free is 0 and all agree).
  double max_rel_spread = 0.0;
};

/// Computes tau_QSL once per functional by the D-mediated route: apply D
/// to the fidelity series pointwise, accumulate the increments of
/// D^-1(D(F)) across the grid, divide by the kind's B(tau). The report
/// lists per-D values and their spread against the D-free value.
IndependenceReport verify_independence(const std::vector<DFunctional>& d_set,
                                       const Trajectory& traj, BoundKind kind,
                                       const ReportContext& ctx = {});

}  // namespace qsl
