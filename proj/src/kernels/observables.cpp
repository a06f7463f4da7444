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

// Per-sample evaluation of the Noether balance terms along a trajectory.

#include <noetherdyn/symmetry.hpp>

#include <cmath>

namespace noetherdyn {

namespace {

struct PointTerms {
  double charge = 0.0;
  double dissipation = 0.0;
  double dynamic_asymmetry = 0.0;
  double noneuclid_term = 0.0;
};

PointTerms evaluate_point(const Metric& metric, const BregmanSchedule& schedule,
                          const SymmetryTransform& transform, double t, const Vec& q,
                          const Vec& q_dot) {
  const double alpha = schedule.alpha(t);
  const Vec delta = delta_h(metric, q, q_dot, alpha);
  const Vec generator = transform.generator(q);
  PointTerms out;
  out.charge = delta.dot(generator);
  out.dissipation = schedule.gamma_dot(t) * out.charge;
  out.dynamic_asymmetry = delta.dot(transform.velocity_generator(q, q_dot));
  if (metric.is_euclidean()) {
    // Delta_E - e^-alpha q_dot vanishes identically.
    out.noneuclid_term = 0.0;
  } else {
    const Vec curvature = std::exp(-alpha) * (metric.hessian(q) * q_dot);
    out.noneuclid_term = std::exp(alpha) * (delta - curvature).dot(generator);
  }
  return out;
}

}  // namespace

std::vector<NoetherObservables> noether_residual(const Metric& metric,
                                                 const BregmanSchedule& schedule,
                                                 const SymmetryTransform& transform,
                                                 const Trajectory& trajectory, Stencil stencil,
                                                 Execution policy) {
  trajectory.validate();
  const std::size_t width = 2 * stencil_half_width(stencil) + 1;
  if (trajectory.size() < width) {
    throw ContractError("noether_residual: trajectory needs at least " + std::to_string(width) +
                        " samples");
  }
  require(trajectory.q_dot.size() == trajectory.size(), "noether_residual: q_dot required");
  require(trajectory.dt > 0.0, "noether_residual: time step must be positive");
  schedule.check_time(trajectory.times.front());

  const auto terms = kernels::map_indices<PointTerms>(
      trajectory.size(), policy, [&](std::size_t i) {
        return evaluate_point(metric, schedule, transform, trajectory.times[i], trajectory.q[i],
                              trajectory.q_dot[i]);
      });

  std::vector<double> charge(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) charge[i] = terms[i].charge;
  const auto rate = kernels::centered_derivative(charge, trajectory.dt, stencil, policy);

  const std::size_t offset = stencil_half_width(stencil);
  std::vector<NoetherObservables> out(rate.size());
  for (std::size_t k = 0; k < rate.size(); ++k) {
    const PointTerms& p = terms[k + offset];
    NoetherObservables& o = out[k];
    o.t = trajectory.times[k + offset];
    o.charge = p.charge;
    o.charge_rate = rate[k];
    o.dissipation = p.dissipation;
    o.dynamic_asymmetry = p.dynamic_asymmetry;
    o.noneuclid_term = p.noneuclid_term;
    o.residual = o.charge_rate + o.dissipation - o.dynamic_asymmetry - o.noneuclid_term;
  }
  return out;
}

}  // namespace noetherdyn
