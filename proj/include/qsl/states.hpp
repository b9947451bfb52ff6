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

#include "qsl/matrix.hpp"

namespace qsl {

/// A validated density matrix: Hermitian, unit trace, positive
/// semidefinite, each within the tolerance passed at validation.
/// Immutable after construction.
class DensityMatrix {
 public:
  /// Validates m and wraps it. Tolerance is applied to the Hermiticity
  /// deviation (max entry), |Tr - 1|, and -min_eigenvalue; the first
  /// failed check raises NotHermitian / TraceDeviation / NotPSD with the
  /// measured violation. Construction-grade inputs use the default
  /// 1e-10; integrator output is revalidated at 1e-8.
  static DensityMatrix validated(ComplexMatrix m, double tol = 1e-10);

  const ComplexMatrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// A unit-norm complex amplitude vector (norm 1 within 1e-12).
class PureState {
 public:
  /// Raises NotNormalized (carrying |norm - 1|) when the vector is not
  /// unit-norm within tol.
  static PureState validated(ComplexVector amplitudes, double tol = 1e-12);

  const ComplexVector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }

 private:
  explicit PureState(ComplexVector amps) : amps_(std::move(amps)) {}
  ComplexVector amps_;
};

/// |psi><psi| as a validated density matrix (purity 1 within 1e-10).
DensityMatrix density_from_pure(const PureState& psi);

/// Tr(rho^2), in [1/dim - 1e-10, 1 + 1e-10].
double purity(const DensityMatrix& rho);

/// Same as validated(); free-function spelling for call sites that read
/// better with a verb.
DensityMatrix validate_density(const ComplexMatrix& m, double tol = 1e-10);

/// Random density matrix rho = G G^dagger / Tr(G G^dagger) with G a
/// dim x rank matrix of seeded standard complex Gaussian entries.
/// Deterministic per seed; BadRank unless 1 <= rank <= dim.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

/// Random unit vector from the same seeded Gaussian construction.
PureState random_pure(int dim, std::uint64_t seed);

}  // namespace qsl
