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

#pragma once

#include <noetherdyn/geometry.hpp>
#include <noetherdyn/kernels.hpp>
#include <noetherdyn/trajectory.hpp>
#include <noetherdyn/transforms.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace noetherdyn {

/// Delta_h = grad h(q + e^-alpha q_dot) - grad h(q).
Vec delta_h(const Metric& metric, const Vec& q, const Vec& q_dot, double alpha);

/// Generalized Noether charge <Delta_h, dQ/ds>.
double noether_charge(const Metric& metric, const SymmetryTransform& transform, const Vec& q,
                      const Vec& q_dot, double alpha);

/// d T_h / ds at s = 0 by a central difference in s of the kinetic energy of
/// the transformed state (apply(q, s), apply_velocity(q, q_dot, s)).
double kinetic_asymmetry(const Metric& metric, const SymmetryTransform& transform, const Vec& q,
                         const Vec& q_dot, double alpha);

/// Closed form of the same derivative:
///   <Delta_h, dQdot/ds> + e^alpha <Delta_h - e^-alpha hess h(q) q_dot, dQ/ds>.
/// For the Euclidean metric this is e^-alpha <q_dot, dQdot/ds>.
double kinetic_asymmetry_analytic(const Metric& metric, const SymmetryTransform& transform,
                                  const Vec& q, const Vec& q_dot, double alpha);

enum class Symmetry { Symmetric, Asymmetric };

struct Table2Cell {
  std::string metric;
  std::string transform;
  Symmetry verdict = Symmetry::Asymmetric;
  double max_abs = 0.0;
  double median_abs = 0.0;
  double min_abs = 0.0;
};

struct Table2Report {
  std::vector<std::string> metrics;
  std::vector<std::string> transforms;
  std::vector<Table2Cell> cells;  // row-major: metrics x transforms
  int samples = 0;

  const Table2Cell& at(std::size_t metric, std::size_t transform) const {
    return cells.at(metric * transforms.size() + transform);
  }
};

inline constexpr double kSymmetricThreshold = 1e-8;

/// Classifies every (metric, transform) pair as symmetric iff
/// |kinetic_asymmetry| <= 1e-8 at every sampled (q, q_dot). Samples that fall
/// outside a metric's domain are redrawn. All metrics must share a dimension.
Table2Report table2_report(const std::vector<Metric>& metrics,
                           const std::vector<SymmetryTransform>& transforms, int samples,
                           std::uint64_t seed, double alpha = 0.0,
                           Execution policy = Execution::Parallel);

struct NoetherObservables {
  double t = 0.0;
  double charge = 0.0;
  double charge_rate = 0.0;  // d(charge)/dt from the sampled grid
  double dissipation = 0.0;
  double dynamic_asymmetry = 0.0;
  double noneuclid_term = 0.0;
  double residual = 0.0;
};

/// Evaluates every term of the Noether balance law
///   d/dt <D, dQ/ds> + gamma_dot <D, dQ/ds>
///       = <D, dQdot/ds> + e^alpha <D - e^-alpha hess h(q) q_dot, dQ/ds>
/// on a uniformly sampled trajectory. d/dt uses a centered stencil on the
/// stored grid, so observables cover the interior samples only. Throws
/// ContractError when the trajectory is shorter than the stencil.
std::vector<NoetherObservables> noether_residual(const Metric& metric,
                                                 const BregmanSchedule& schedule,
                                                 const SymmetryTransform& transform,
                                                 const Trajectory& trajectory,
                                                 Stencil stencil = Stencil::FivePoint,
                                                 Execution policy = Execution::Parallel);

double max_abs_residual(const std::vector<NoetherObservables>& observables);

}  // namespace noetherdyn
