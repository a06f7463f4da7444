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

// Fixed-step RK4 for the continuous-time models of the optimizers.

#pragma once

#include <noetherdyn/geometry.hpp>
#include <noetherdyn/losses.hpp>
#include <noetherdyn/trajectory.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace noetherdyn {

/// (q, q_dot) plus optional first-order auxiliary states (the RMSProp
/// accumulator, for instance).
struct PhaseState {
  Vec q;
  Vec q_dot;
  Vec aux;
};

struct PhaseRate {
  Vec q_ddot;
  Vec aux_dot;
};

struct SecondOrderSystem {
  std::string name;
  std::map<std::string, double> parameters;
  std::vector<std::string> aux_names;  // one per auxiliary component
  /// Must throw IntegrationAbort where the model is singular.
  std::function<PhaseRate(double t, const PhaseState& x)> rhs;
  /// Optional projection applied after every accepted step.
  std::function<void(double t, PhaseState& x)> constrain;

  /// Convenience: q_ddot only, no auxiliary states.
  Vec acceleration(double t, const Vec& q, const Vec& q_dot) const;
};

/// y_dot = rhs(t, y).
struct FirstOrderSystem {
  std::string name;
  std::map<std::string, double> parameters;
  std::function<Vec(double t, const Vec& y)> rhs;
};

/// Number of RK4 steps covering [t0, t1] with nominal step dt; the step
/// actually taken is (t1 - t0) / n.
std::size_t rk4_step_count(double t0, double t1, double dt);

/// Classical RK4 on the first-order reduction. Samples every record_stride
/// steps (plus the start). Auxiliary states become trajectory channels named
/// by system.aux_names. Throws IntegrationAbort on singular or non-finite
/// states.
Trajectory integrate_rk4(const SecondOrderSystem& system, const Vec& q0, const Vec& q_dot0,
                         double t0, double t1, double dt, const Vec& aux0 = Vec(),
                         std::size_t record_stride = 1);

/// RK4 for first-order systems; the trajectory's q_dot holds rhs(t, y).
Trajectory integrate_rk4(const FirstOrderSystem& system, const Vec& y0, double t0, double t1,
                         double dt, std::size_t record_stride = 1);

/// (eta (1+beta)/2) q_ddot + (1 - beta) q_dot + grad f(q) + k q = 0.
SecondOrderSystem eom_modified(double eta, double beta, double k, const Loss& loss);

/// q_ddot + (gamma_dot - alpha_dot) q_dot + e^(2 alpha + beta) grad f(q) = 0.
SecondOrderSystem eom_bregman_euclidean(const BregmanSchedule& schedule, const Loss& loss);

/// Euler-Lagrange system of the Bregman Lagrangian for a general metric.
/// With y = q + e^-alpha q_dot and D = grad h(y) - grad h(q):
///   dD/dt = -gamma_dot D + e^alpha (D - e^-alpha hess h(q) q_dot) - e^(alpha+beta) grad f(q).
/// Reduces to eom_bregman_euclidean for the Euclidean metric.
SecondOrderSystem eom_bregman(const Metric& metric, const BregmanSchedule& schedule,
                              const Loss& loss);

/// (friction) q_dot = -grad f(q).
FirstOrderSystem gradient_flow(const Loss& loss, double friction = 1.0);

/// Coupled radial/angular equations for a scale-invariant loss, state
/// q = (r, u) with |u| = 1:
///   m r_ddot + mu r_dot = (m |u_dot|^2 - k) r
///   m u_ddot + mu u_dot = -g(u) / r^2 - m |u_dot|^2 u  [- 2 m (r_dot / r) u_dot]
/// g(u) is grad f at the unit vector u. The bracketed Coriolis term is
/// included only when coriolis is set; with it the system is exactly the
/// Cartesian one in polar coordinates. u is renormalized and u_dot projected
/// onto the tangent space after each step. Aborts when r < 1e-8.
SecondOrderSystem eom_radial_angular(double m, double mu, double k, const Loss& loss,
                                     bool coriolis = false);

/// Polar initial data (r, u, r_dot, u_dot) for a Cartesian (q, q_dot).
PhaseState to_polar(const Vec& q, const Vec& q_dot);
/// Inverse map q = r u, q_dot = r_dot u + r u_dot.
PhaseState from_polar(const Vec& polar_q, const Vec& polar_q_dot);

/// Piecewise-linear signal on a uniform grid, clamped at the ends.
struct SampledSignal {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  double operator()(double t) const;
};

/// m d2(r^2)/dt2 + mu d(r^2)/dt = -2 k r^2 + (2 m / (mu^2 r^2)) |g|^2(t),
/// state q = (r^2). Aborts when r^2 <= 0.
SecondOrderSystem eom_noether_radial(double m, double mu, double k, SampledSignal gsq);

/// (eta/2) q_ddot + q_dot = -g / sqrt(G),  eta G_dot = (1 - rho)(|g|^2 - G).
/// G is the single auxiliary state ("G"). Aborts when G <= 0.
SecondOrderSystem eom_rmsprop(double eta, double rho, const Loss& loss);

/// Initial velocity v such that integrating system from (q0, v) over
/// [t0, t0 + horizon] lands on q_target. Newton iterations with a
/// finite-difference Jacobian.
Vec match_initial_velocity(const SecondOrderSystem& system, const Vec& q0, const Vec& q_target,
                           double t0, double horizon, double dt, const Vec& aux0 = Vec());

/// Series start for q_ddot + (3/t) q_dot + grad f(q) = 0 at small t0 > 0:
/// q = q0 - (t0^2 / 8) grad f(q0), q_dot = -(t0 / 4) grad f(q0).
PhaseState nesterov_initial_state(const Loss& loss, const Vec& q0, double t0);

}  // namespace noetherdyn
