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

#include <complex>

#include <Eigen/Dense>

#include "qsl/errors.hpp"

namespace qsl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Result of a Hermitian eigendecomposition: m == eigenvectors *
/// eigenvalues.asDiagonal() * eigenvectors.adjoint(), eigenvalues real
/// and ascending, eigenvectors unitary.
struct HermitianEigen {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be square with finite entries and Hermitian to within
/// hermiticity_tol, measured as the largest |m - m^dagger| entry
/// (NotHermitian otherwise, carrying the measured deviation). The
/// decomposition itself runs on the Hermitian part (m + m^dagger)/2.
HermitianEigen hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = 1e-10);

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in [-clamp_tol, 0) are clamped to zero; anything below
/// -clamp_tol raises NotPSD with the most negative eigenvalue attached.
/// The result R is Hermitian PSD with R * R == m to working precision.
ComplexMatrix sqrtm_psd(const ComplexMatrix& m, double clamp_tol = 1e-10);

/// Singular values of a square matrix, descending, all nonnegative.
RealVector singular_values(const ComplexMatrix& m);

/// Operator norm: the largest singular value.
double norm_op(const ComplexMatrix& m);

/// Trace norm: the sum of singular values.
double norm_tr(const ComplexMatrix& m);

/// Hilbert-Schmidt norm: the root of the sum of squared singular values.
double norm_hs(const ComplexMatrix& m);

/// Tr(a * b) without forming the product. Both operands must be square
/// with the same dimension (DimMismatch otherwise).
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, row-major block convention:
/// result((i*p + k), (j*q + l)) = a(i, j) * b(k, l) for b of size p x q.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

namespace detail {

void require_square(const ComplexMatrix& m, const char* where);
void require_finite(const ComplexMatrix& m, const char* where);

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace detail

}  // namespace qsl
