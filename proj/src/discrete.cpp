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

#include <noetherdyn/discrete.hpp>

#include <algorithm>
#include <cmath>

namespace noetherdyn {

namespace {

void check_buffer(const OptimizerState& s) {
  require(s.buffer.size() == s.q.size(), "optimizer state: buffer dimension mismatch");
}

}  // namespace

OptimizerState OptimizerState::at(const Vec& q, double g) {
  OptimizerState s;
  s.q = q;
  s.buffer = Vec::Zero(q.size());
  s.G = g;
  return s;
}

OptimizerState step_gd_momentum_wd(const OptimizerState& state, const Loss& loss, double eta,
                                   double beta, double k) {
  require(eta > 0.0, "step_gd_momentum_wd: eta must be positive");
  require(beta >= 0.0 && beta < 1.0, "step_gd_momentum_wd: beta must lie in [0, 1)");
  require(k >= 0.0, "step_gd_momentum_wd: weight decay must be non-negative");
  check_buffer(state);
  OptimizerState next = state;
  next.buffer = beta * state.buffer - eta * (loss.grad(state.q) + k * state.q);
  next.q = state.q + next.buffer;
  ++next.step_index;
  return next;
}

OptimizerState step_nesterov(const OptimizerState& state, const Loss& loss, double eta) {
  require(eta > 0.0, "step_nesterov: eta must be positive");
  check_buffer(state);
  const double n = static_cast<double>(state.step_index);
  const double momentum = std::max(0.0, (n - 1.0) / (n + 2.0));
  const Vec y = state.q + momentum * state.buffer;
  OptimizerState next = state;
  next.q = y - eta * loss.grad(y);
  next.buffer = next.q - state.q;
  ++next.step_index;
  return next;
}

double nesterov_time(std::uint64_t n, double eta) {
  require(eta > 0.0, "nesterov_time: eta must be positive");
  return (static_cast<double>(n) + 2.0) * std::sqrt(eta);
}

OptimizerState step_rmsprop(const OptimizerState& state, const Loss& loss, double eta, double rho) {
  require(eta > 0.0, "step_rmsprop: eta must be positive");
  require(rho > 0.0 && rho < 1.0, "step_rmsprop: rho must lie in (0, 1)");
  if (!(state.G > 0.0)) throw StateError("step_rmsprop: accumulator G must stay positive");
  const Vec g = loss.grad(state.q);
  OptimizerState next = state;
  next.q = state.q - (eta / std::sqrt(state.G)) * g;
  next.G = rho * state.G + (1.0 - rho) * g.squaredNorm();
  if (!(next.G > 0.0)) throw StateError("step_rmsprop: accumulator G underflowed to zero");
  ++next.step_index;
  return next;
}

OptimizerState step_mirror(const OptimizerState& state, const Loss& loss, double eta,
                           const Metric& metric) {
  require(eta > 0.0, "step_mirror: eta must be positive");
  metric.check_domain(state.q);
  OptimizerState next = state;
  next.q = metric.inverse_gradient(metric.gradient(state.q) - eta * loss.grad(state.q));
  metric.check_domain(next.q);
  ++next.step_index;
  return next;
}

std::vector<Vec> centered_velocity(const std::vector<Vec>& iterates, double eta) {
  require(eta > 0.0, "centered_velocity: eta must be positive");
  require(iterates.size() >= 2, "centered_velocity: need at least two iterates");
  const std::size_t n = iterates.size();
  std::vector<Vec> out(n);
  out.front() = (iterates[1] - iterates[0]) / eta;
  out.back() = (iterates[n - 1] - iterates[n - 2]) / eta;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (iterates[i + 1] - iterates[i - 1]) / (2.0 * eta);
  return out;
}

}  // namespace noetherdyn
