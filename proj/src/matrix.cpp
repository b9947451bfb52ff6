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

#include "qsl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsl {

namespace detail {

void require_square(const ComplexMatrix& m, const char* where) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << where << ": expected a nonempty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimMismatch(os.str());
  }
}

void require_finite(const ComplexMatrix& m, const char* where) {
  if (!m.allFinite()) {
    throw NotFinite(std::string(where) + ": matrix has non-finite entries");
  }
}

}  // namespace detail

HermitianEigen hermitian_eig(const ComplexMatrix& m, double hermiticity_tol) {
  detail::require_square(m, "hermitian_eig");
  detail::require_finite(m, "hermitian_eig");

  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > hermiticity_tol) {
    std::ostringstream os;
    os << "hermitian_eig: matrix deviates from Hermitian by " << deviation
       << " (tolerance " << hermiticity_tol << ")";
    throw NotHermitian(os.str(), deviation);
  }

  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eig: eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m, double clamp_tol) {
  HermitianEigen eig = hermitian_eig(m);
  const double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < -clamp_tol) {
    std::ostringstream os;
    os << "sqrtm_psd: matrix is not positive semidefinite (eigenvalue " << min_eig
       << " below -" << clamp_tol << ")";
    throw NotPSD(os.str(), min_eig);
  }
  // Eigenvalues that are zero up to the decomposition's resolution come
  // back as O(eps) noise; the square root would amplify that to O(1e-8),
  // so anything below 1e-14 of the largest eigenvalue is snapped to 0.
  const double floor = 1e-14 * std::max(eig.eigenvalues.maxCoeff(), 0.0);
  RealVector roots = eig.eigenvalues.unaryExpr(
      [floor](double x) { return x < floor ? 0.0 : std::sqrt(x); });
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

RealVector singular_values(const ComplexMatrix& m) {
  detail::require_square(m, "singular_values");
  detail::require_finite(m, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double norm_op(const ComplexMatrix& m) { return singular_values(m).maxCoeff(); }

double norm_tr(const ComplexMatrix& m) { return singular_values(m).sum(); }

double norm_hs(const ComplexMatrix& m) { return singular_values(m).norm(); }

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_square(a, "trace_product");
  detail::require_square(b, "trace_product");
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "trace_product: dimension mismatch " << a.rows() << " vs " << b.rows();
    throw DimMismatch(os.str());
  }
  return a.cwiseProduct(b.transpose()).sum();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace qsl
