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

// Discrete update rules. Each step is a pure state -> state function.

#pragma once

#include <noetherdyn/geometry.hpp>
#include <noetherdyn/losses.hpp>

#include <cstdint>
#include <vector>

namespace noetherdyn {

struct OptimizerState {
  Vec q;
  Vec buffer;        // heavy-ball velocity, or x_k - x_{k-1} for Nesterov
  double G = 1.0;    // RMSProp accumulator (scalar, global gradient norm)
  std::uint64_t step_index = 0;

  /// Zero buffer, given accumulator.
  static OptimizerState at(const Vec& q, double g = 1.0);
};

/// buffer <- beta buffer - eta (grad f(q) + k q);  q <- q + buffer.
OptimizerState step_gd_momentum_wd(const OptimizerState& state, const Loss& loss, double eta,
                                   double beta, double k);

/// Accelerated gradient with momentum (n - 1)/(n + 2), n = step_index:
///   y = x_n + max(0, (n-1)/(n+2)) (x_n - x_{n-1}),  x_{n+1} = y - eta grad f(y).
OptimizerState step_nesterov(const OptimizerState& state, const Loss& loss, double eta);

/// Continuous time attached to Nesterov iterate n: (n + 2) sqrt(eta).
/// The shift aligns the momentum factor 1 - 3/(n+2) with the damping 3/t.
double nesterov_time(std::uint64_t n, double eta);

/// q <- q - (eta / sqrt(G)) g;  G <- rho G + (1 - rho) |g|^2, with g at the old q.
/// Throws StateError when G <= 0.
OptimizerState step_rmsprop(const OptimizerState& state, const Loss& loss, double eta, double rho);

/// Solves grad h(q_new) = grad h(q) - eta grad f(q). Throws DomainError when
/// q_new leaves the metric domain (no projection).
OptimizerState step_mirror(const OptimizerState& state, const Loss& loss, double eta,
                           const Metric& metric);

/// q_dot_n = (q_{n+1} - q_{n-1}) / (2 eta) at interior points, one-sided
/// differences at both ends.
std::vector<Vec> centered_velocity(const std::vector<Vec>& iterates, double eta);

}  // namespace noetherdyn
