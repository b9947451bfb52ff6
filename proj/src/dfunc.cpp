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

#include "qsl/dfunc.hpp"

#include <cmath>
#include <sstream>

namespace qsl {

namespace {

using detail::clamp01;

constexpr double kDerivativeSingular = 1e6;

double dt_of(const FidelitySeries& series) {
  if (series.size() < 3) {
    throw TooFewSamples("verify_chain_identity: series needs >= 3 points");
  }
  return series.times[1] - series.times[0];
}

void check_domain(const FidelitySeries& series) {
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const double v = series.values[i];
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
      std::ostringstream os;
      os << "series value " << v << " at grid index " << i
         << " leaves [0, 1] beyond 1e-9";
      throw DomainExit(os.str(), v);
    }
  }
}

}  // namespace

DFunctional builtin_d(const std::string& name) {
  if (name == "bures_angle" || name == "modified_angle") {
    return DFunctional{
        name,
        [](double x) { return std::acos(std::sqrt(clamp01(x))); },
        [](double y) {
          const double c = std::cos(y);
          return c * c;
        },
        [](double x) { return -1.0 / (2.0 * std::sqrt(x * (1.0 - x))); },
    };
  }
  if (name == "linear") {
    return DFunctional{
        name,
        [](double x) { return 1.0 - x; },
        [](double y) { return 1.0 - y; },
        [](double) { return -1.0; },
    };
  }
  if (name == "exponential") {
    return DFunctional{
        name,
        [](double x) { return std::exp(-x) - std::exp(-1.0); },
        [](double y) { return -std::log(y + std::exp(-1.0)); },
        [](double x) { return -std::exp(-x); },
    };
  }
  throw UnknownName("builtin_d: unknown functional '" + name + "'");
}

const std::vector<std::string>& builtin_d_names() {
  static const std::vector<std::string> names = {"bures_angle", "modified_angle",
                                                 "linear", "exponential"};
  return names;
}

void check_admissible(const DFunctional& d) {
  if (!d.forward || !d.inverse || !d.derivative) {
    throw NotAdmissible("check_admissible: functional '" + d.name +
                        "' has empty callbacks");
  }
  constexpr double step = 1e-3;
  constexpr int n = 1000;
  double prev = d.forward(0.0);
  for (int i = 1; i <= n; ++i) {
    const double x = (i == n) ? 1.0 : i * step;
    const double fx = d.forward(x);
    if (!(fx < prev)) {
      std::ostringstream os;
      os << "check_admissible: '" << d.name << "' not strictly decreasing at x = "
         << x;
      throw NotAdmissible(os.str(), fx);
    }
    prev = fx;

    const double deriv = d.derivative(x);
    if (std::abs(deriv) <= kDerivativeSingular) {
      const double back = d.inverse(fx);
      const double err = std::abs(back - x);
      if (err > 1e-10) {
        std::ostringstream os;
        os << "check_admissible: '" << d.name << "' round trip off by " << err
           << " at x = " << x;
        throw NotAdmissible(os.str(), err);
      }
    }
    if (i < n && !(deriv < 0.0)) {
      std::ostringstream os;
      os << "check_admissible: '" << d.name << "' derivative " << deriv
         << " not negative at x = " << x;
      throw NotAdmissible(os.str(), deriv);
    }
  }
}

ChainIdentityResult verify_chain_identity(const DFunctional& d,
                                          const FidelitySeries& series,
                                          double fd_step, double endpoint_margin) {
  const double dt = dt_of(series);
  check_domain(series);
  const std::size_t stride = step_count(fd_step, dt, 1);
  const double h = static_cast<double>(stride) * dt;
  const std::size_t n = series.size();
  if (n < 2 * stride + 1) {
    throw TooFewSamples("verify_chain_identity: series shorter than one stride");
  }

  ChainIdentityResult result;
  result.fd_step = h;

  auto near_endpoint = [&](double v) {
    return v < endpoint_margin || v > 1.0 - endpoint_margin;
  };

  for (std::size_t i = stride; i + stride < n; ++i) {
    const double lo = clamp01(series.values[i - stride]);
    const double mid = clamp01(series.values[i]);
    const double hi = clamp01(series.values[i + stride]);

    const double deriv_at_mid = d.derivative(d.inverse(d.forward(mid)));
    if (near_endpoint(lo) || near_endpoint(mid) || near_endpoint(hi) ||
        !(std::abs(deriv_at_mid) <= kDerivativeSingular)) {
      ++result.excluded;
      continue;
    }

    const double transformed_rate =
        (d.forward(hi) - d.forward(lo)) / (2.0 * h) / deriv_at_mid;
    const double direct_rate =
        (series.values[i + stride] - series.values[i - stride]) / (2.0 * h);
    const double residual = std::abs(transformed_rate - direct_rate);
    if (residual > result.max_residual) result.max_residual = residual;
    ++result.evaluated;
  }
  return result;
}

IndependenceReport verify_independence(const std::vector<DFunctional>& d_set,
                                       const Trajectory& traj, BoundKind kind,
                                       const ReportContext& ctx) {
  if (d_set.empty()) {
    throw TooFewSamples("verify_independence: empty functional set");
  }

  const HamiltonianSpec* h = ctx.hamiltonian ? &ctx.hamiltonian.value() : nullptr;
  const std::vector<double> integrand =
      bound_integrand_series(traj, kind, h, ctx.opts);
  const double b_tau = time_average(integrand, traj.dt, ctx.opts.quadrature);

  const FidelitySeries series =
      fidelity_series(bound_kind_fidelity(kind), traj, ctx.opts.exec);
  check_domain(series);

  IndependenceReport report;
  report.kind = kind;
  report.d_free = tau_qsl(series.values.back(), b_tau);

  auto assemble = [&](const DFunctional& d) {
    // Accumulate the grid increments of D^-1(D(F)): the integral of
    // -d/dt D^-1 telescopes to D^-1(D(F(0))) - D^-1(D(F(tau))).
    double numerator = 0.0;
    double prev = d.inverse(d.forward(clamp01(series.values[0])));
    for (std::size_t i = 1; i < series.size(); ++i) {
      const double cur = d.inverse(d.forward(clamp01(series.values[i])));
      numerator += prev - cur;
      prev = cur;
    }
    if (b_tau < 1e-12) {
      if (std::abs(numerator) < 1e-12) return 0.0;
      std::ostringstream os;
      os << "verify_independence: bound vanishes while D-mediated numerator = "
         << numerator << " for '" << d.name << "'";
      throw ZeroDenominator(os.str(), b_tau);
    }
    const double q = numerator / b_tau;
    return q < 0.0 ? 0.0 : q;
  };

  for (const DFunctional& d : d_set) {
    check_admissible(d);
    report.per_d.push_back({d.name, assemble(d)});
  }

  const double floor = std::max(std::abs(report.d_free), 1e-30);
  for (const IndependenceEntry& e : report.per_d) {
    const double rel = std::abs(e.tau_qsl - report.d_free) / floor;
    if (rel > report.max_rel_spread) report.max_rel_spread = rel;
  }
  return report;
}

}  // namespace qsl
