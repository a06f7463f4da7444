// Copyright 2026 The noetherdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <noetherdyn/symmetry.hpp>

#include <cmath>
#include <limits>

namespace noetherdyn {

Vec delta_h(const Metric& metric, const Vec& q, const Vec& q_dot, double alpha) {
  require(q.size() == q_dot.size(), "delta_h: dimension mismatch");
  const double damp = std::exp(-alpha);
  if (metric.is_euclidean()) {
    metric.check_domain(q);
    return damp * q_dot;
  }
  return metric.gradient(q + damp * q_dot) - metric.gradient(q);
}

double noether_charge(const Metric& metric, const SymmetryTransform& transform, const Vec& q,
                      const Vec& q_dot, double alpha) {
  return delta_h(metric, q, q_dot, alpha).dot(transform.generator(q));
}

double kinetic_asymmetry(const Metric& metric, const SymmetryTransform& transform, const Vec& q,
                         const Vec& q_dot, double alpha) {
  const double step = std::cbrt(std::numeric_limits<double>::epsilon());
  const auto energy_at = [&](double s) {
    return kinetic_energy(metric, transform.apply(q, s), transform.apply_velocity(q, q_dot, s),
                          alpha);
  };
  return (energy_at(step) - energy_at(-step)) / (2.0 * step);
}

double kinetic_asymmetry_analytic(const Metric& metric, const SymmetryTransform& transform,
                                  const Vec& q, const Vec& q_dot, double alpha) {
  const Vec velocity_generator = transform.velocity_generator(q, q_dot);
  if (metric.is_euclidean()) {
    metric.check_domain(q);
    return std::exp(-alpha) * q_dot.dot(velocity_generator);
  }
  const Vec delta = delta_h(metric, q, q_dot, alpha);
  const Vec curvature = std::exp(-alpha) * (metric.hessian(q) * q_dot);
  return delta.dot(velocity_generator) +
         std::exp(alpha) * (delta - curvature).dot(transform.generator(q));
}

double max_abs_residual(const std::vector<NoetherObservables>& observables) {
  double worst = 0.0;
  for (const auto& o : observables) worst = std::max(worst, std::abs(o.residual));
  return worst;
}

}  // namespace noetherdyn
