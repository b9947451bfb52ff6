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

#include "qsl/fidelity.hpp"

#include <cmath>
#include <sstream>

namespace qsl {

namespace {

using detail::clamp01;

void require_equal_dims(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const char* where) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << where << ": state dims differ, " << rho.dim() << " vs " << sigma.dim();
    throw DimMismatch(os.str());
  }
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return trace_product(a, b).real();
}

}  // namespace

const char* fidelity_kind_name(FidelityKind kind) {
  switch (kind) {
    case FidelityKind::Bures:
      return "bures";
    case FidelityKind::Super:
      return "super";
    case FidelityKind::Operator:
      return "operator";
    case FidelityKind::Alternative:
      return "alternative";
  }
  throw UnknownName("fidelity_kind_name: unhandled kind");
}

FidelityKind parse_fidelity_kind(const std::string& name) {
  for (FidelityKind kind : all_fidelity_kinds()) {
    if (name == fidelity_kind_name(kind)) return kind;
  }
  throw UnknownName("unknown fidelity kind: " + name);
}

const std::vector<FidelityKind>& all_fidelity_kinds() {
  static const std::vector<FidelityKind> kinds = {
      FidelityKind::Bures, FidelityKind::Super, FidelityKind::Operator,
      FidelityKind::Alternative};
  return kinds;
}

double bures(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "bures");
  const ComplexMatrix root = sqrtm_psd(rho.mat());
  ComplexMatrix inner = root * sigma.mat() * root;
  inner = 0.5 * (inner + inner.adjoint());
  const double tr = sqrtm_psd(inner).trace().real();
  return tr * tr;
}

double bures_pure(const PureState& psi0, const DensityMatrix& sigma) {
  if (psi0.dim() != sigma.dim()) {
    throw DimMismatch("bures_pure: state dims differ");
  }
  const ComplexVector& a = psi0.amplitudes();
  return (a.adjoint() * sigma.mat() * a)(0, 0).real();
}

// 1 - Tr rho^2, clamped to [0, 1] and snapped to 0 below kPurityEps:
// for a numerically pure state the raw difference is O(eps) noise whose
// square root would pollute the fidelity at O(1e-8).
static double one_minus_purity(const DensityMatrix& rho) {
  const double x = clamp01(1.0 - purity(rho));
  return x < kPurityEps ? 0.0 : x;
}

double super_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "super_fidelity");
  const double overlap = real_trace_product(rho.mat(), sigma.mat());
  return overlap + std::sqrt(one_minus_purity(rho)) * std::sqrt(one_minus_purity(sigma));
}

double operator_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "operator_fidelity");
  const double overlap = std::abs(trace_product(rho.mat(), sigma.mat()));
  return overlap / (std::sqrt(purity(rho)) * std::sqrt(purity(sigma)));
}

double alternative_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "alternative_fidelity");
  const double factor =
      1.0 + std::sqrt(one_minus_purity(rho) / purity(rho)) *
                std::sqrt(one_minus_purity(sigma) / purity(sigma));
  return factor * real_trace_product(rho.mat(), sigma.mat());
}

double fidelity(FidelityKind kind, const DensityMatrix& rho,
                const DensityMatrix& sigma) {
  switch (kind) {
    case FidelityKind::Bures:
      return bures(rho, sigma);
    case FidelityKind::Super:
      return super_fidelity(rho, sigma);
    case FidelityKind::Operator:
      return operator_fidelity(rho, sigma);
    case FidelityKind::Alternative:
      return alternative_fidelity(rho, sigma);
  }
  throw UnknownName("fidelity: unhandled kind");
}

FidelitySeries fidelity_series(FidelityKind kind, const Trajectory& traj,
                               Exec exec) {
  FidelitySeries series;
  series.kind = kind;
  series.times = traj.times;
  series.values.assign(traj.size(), 0.0);

  const DensityMatrix& rho0 = traj.initial();
  parallel_for(static_cast<std::ptrdiff_t>(traj.size()), exec,
               [&](std::ptrdiff_t i) {
                 try {
                   series.values[static_cast<std::size_t>(i)] =
                       fidelity(kind, rho0, traj.states[static_cast<std::size_t>(i)]);
                 } catch (const NumericError& e) {
                   std::ostringstream os;
                   os << "fidelity_series(" << fidelity_kind_name(kind)
                      << ") at grid index " << i << ": " << e.what();
                   throw NumericError(os.str(), e.measured());
                 }
               });
  return series;
}

double rate_bound_super(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                        const ComplexMatrix& drho_t) {
  require_equal_dims(rho0, rho_t, "rate_bound_super");
  detail::require_finite(drho_t, "rate_bound_super");

  const double direct = std::abs(trace_product(rho0.mat(), drho_t));
  const double one0 = clamp01(1.0 - purity(rho0));
  if (one0 < kPurityEps) return direct;

  const double onet = clamp01(1.0 - purity(rho_t));
  const double cross = std::abs(trace_product(rho_t.mat(), drho_t));
  if (onet < kPurityEps) {
    if (cross < kPurityEps) return direct;
    std::ostringstream os;
    os << "rate_bound_super: rho_t is pure (1 - Tr rho^2 = " << onet
       << ") with nonvanishing numerator " << cross;
    throw PurityDegenerate(os.str(), 0, onet);
  }
  return direct + std::sqrt(one0 / onet) * cross;
}

double rate_bound_operator(const DensityMatrix& rho_t, const ComplexMatrix& drho_t) {
  detail::require_finite(drho_t, "rate_bound_operator");
  const double deriv_sq = std::max(0.0, real_trace_product(drho_t, drho_t));
  return 2.0 * std::sqrt(deriv_sq / purity(rho_t));
}

double rate_bound_alternative(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                              const ComplexMatrix& drho_t) {
  require_equal_dims(rho0, rho_t, "rate_bound_alternative");
  detail::require_finite(drho_t, "rate_bound_alternative");

  const double p0 = purity(rho0);
  const double pt = purity(rho_t);
  const double one0 = clamp01(1.0 - p0);
  const double onet = clamp01(1.0 - pt);
  const double deriv_sq = std::max(0.0, real_trace_product(drho_t, drho_t));

  const double cauchy_schwarz = std::sqrt(p0 * deriv_sq);
  // Third term carries 1 - Tr rho_t^2 in the numerator: no guard needed.
  const double cross = std::sqrt(onet / pt) * std::sqrt(one0) * std::sqrt(deriv_sq);

  double ratio_term = 0.0;
  if (one0 >= kPurityEps) {
    const double trace_t = rho_t.mat().trace().real();
    const double numerator =
        std::abs(real_trace_product(drho_t, rho_t.mat()) *
                 real_trace_product(rho0.mat(), rho_t.mat())) /
        (trace_t * trace_t);
    if (onet < kPurityEps) {
      if (numerator >= kPurityEps) {
        std::ostringstream os;
        os << "rate_bound_alternative: rho_t is pure (1 - Tr rho^2 = " << onet
           << ") with nonvanishing numerator " << numerator;
        throw PurityDegenerate(os.str(), 0, onet);
      }
    } else {
      ratio_term = std::sqrt(one0 / p0) * std::sqrt(pt / onet) * numerator;
    }
  }
  return ratio_term + cauchy_schwarz + cross;
}

}  // namespace qsl
