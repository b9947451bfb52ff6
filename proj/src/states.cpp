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

#include "qsl/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qsl {

DensityMatrix DensityMatrix::validated(ComplexMatrix m, double tol) {
  detail::require_square(m, "DensityMatrix");
  detail::require_finite(m, "DensityMatrix");

  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol) {
    std::ostringstream os;
    os << "DensityMatrix: Hermiticity deviation " << herm_dev << " exceeds " << tol;
    throw NotHermitian(os.str(), herm_dev);
  }

  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol) {
    std::ostringstream os;
    os << "DensityMatrix: trace deviates from 1 by " << trace_dev << " (tolerance "
       << tol << ")";
    throw TraceDeviation(os.str(), trace_dev);
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    std::ostringstream os;
    os << "DensityMatrix: min eigenvalue " << min_eig << " below -" << tol;
    throw NotPSD(os.str(), min_eig);
  }

  return DensityMatrix(std::move(m));
}

PureState PureState::validated(ComplexVector amplitudes, double tol) {
  if (amplitudes.size() == 0) {
    throw DimMismatch("PureState: empty amplitude vector");
  }
  if (!amplitudes.allFinite()) {
    throw NotFinite("PureState: non-finite amplitudes");
  }
  const double dev = std::abs(amplitudes.norm() - 1.0);
  if (dev > tol) {
    std::ostringstream os;
    os << "PureState: norm deviates from 1 by " << dev << " (tolerance " << tol << ")";
    throw NotNormalized(os.str(), dev);
  }
  return PureState(std::move(amplitudes));
}

DensityMatrix density_from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix::validated(a * a.adjoint());
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.mat().squaredNorm();
}

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
  return DensityMatrix::validated(m, tol);
}

namespace {

ComplexMatrix ginibre(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1) {
    throw DimMismatch("random_density: dim must be >= 1");
  }
  if (rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "random_density: rank " << rank << " outside [1, " << dim << "]";
    throw BadRank(os.str());
  }
  const ComplexMatrix g = ginibre(dim, rank, seed);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the roundoff of G G^dagger before strict validation.
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::validated(rho);
}

PureState random_pure(int dim, std::uint64_t seed) {
  if (dim < 1) {
    throw DimMismatch("random_pure: dim must be >= 1");
  }
  ComplexVector v = ginibre(dim, 1, seed).col(0);
  v /= v.norm();
  return PureState::validated(v);
}

}  // namespace qsl
