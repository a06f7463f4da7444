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

#include <noetherdyn/closedform.hpp>

#include <cmath>
#include <limits>

namespace noetherdyn {

void GradNormHistory::validate() const {
  require(!gsq.empty(), "gradient-norm history is empty");
  require(dt > 0.0, "gradient-norm history: dt must be positive");
  for (double v : gsq) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ContractError("gradient-norm history has a gap or a negative sample");
    }
  }
}

GradNormHistory GradNormHistory::from_channel(const Trajectory& trajectory,
                                              const std::string& channel) {
  trajectory.validate();
  const auto it = trajectory.channels.find(channel);
  if (it == trajectory.channels.end()) {
    throw ContractError("trajectory has no channel '" + channel + "'");
  }
  GradNormHistory h{trajectory.t0, trajectory.dt, it->second};
  h.validate();
  return h;
}

std::vector<double> evaluate_memory_kernel(const GradNormHistory& history, MemoryKernel kernel,
                                           double w0, Quadrature quadrature, Execution policy) {
  history.validate();
  require(kernel.prefactor >= 0.0 && kernel.rate >= 0.0,
          "memory kernel: prefactor and rate must be non-negative");
  require(w0 > 0.0, "memory kernel: initial value must be positive");
  const auto integral =
      quadrature == Quadrature::Recursive
          ? kernels::exp_convolution_recursive(history.gsq, history.dt, kernel.rate)
          : kernels::exp_convolution_direct(history.gsq, history.dt, kernel.rate, policy);
  std::vector<double> out(history.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double elapsed = static_cast<double>(i) * history.dt;
    out[i] = std::sqrt(kernel.prefactor * integral[i] + std::exp(-kernel.rate * elapsed) * w0);
  }
  return out;
}

MemoryKernel bn_kernel(double eta, double beta, double k) {
  require(eta > 0.0, "bn kernel: eta must be positive");
  require(beta > -1.0 && beta < 1.0, "bn kernel: beta must lie in (-1, 1)");
  require(k >= 0.0, "bn kernel: weight decay must be non-negative");
  const double friction = 1.0 - beta;
  return {2.0 * eta * (1.0 + beta) / (friction * friction * friction), 4.0 * k / friction};
}

MemoryKernel rmsprop_kernel(double eta, double rho) {
  require(eta > 0.0, "rmsprop kernel: eta must be positive");
  require(rho > 0.0 && rho <= 1.0, "rmsprop kernel: rho must lie in (0, 1]");
  const double rate = (1.0 - rho) / eta;
  return {rate, rate};
}

std::vector<double> r2_schedule(const GradNormHistory& history, double eta, double beta, double k,
                                double r0, Quadrature quadrature) {
  require(r0 > 0.0, "r2_schedule: r0 must be positive");
  return evaluate_memory_kernel(history, bn_kernel(eta, beta, k), std::pow(r0, 4), quadrature);
}

std::vector<double> g_schedule(const GradNormHistory& history, double eta, double rho, double g0,
                               Quadrature quadrature) {
  require(g0 > 0.0, "g_schedule: G0 must be positive");
  return evaluate_memory_kernel(history, rmsprop_kernel(eta, rho), g0, quadrature);
}

double steady_angular_speed(double eta, double beta, double k) {
  require(eta > 0.0 && k > 0.0, "steady_angular_speed: eta and k must be positive");
  require(beta >= 0.0 && beta < 1.0, "steady_angular_speed: beta must lie in [0, 1)");
  return std::sqrt(2.0 * eta * k / (1.0 + beta));
}

double steady_radius(double eta, double beta, double k, double gnorm) {
  if (k == 0.0) throw ContractError("no steady norm without weight decay");
  require(eta > 0.0 && k > 0.0, "steady_radius: eta and k must be positive");
  require(beta >= 0.0 && beta < 1.0, "steady_radius: beta must lie in [0, 1)");
  require(gnorm >= 0.0, "steady_radius: gradient norm must be non-negative");
  const double friction = 1.0 - beta;
  return std::pow(eta * (1.0 + beta) / (2.0 * k * friction * friction), 0.25) * std::sqrt(gnorm);
}

double transient_cutoff(double beta, double k, double t_end) {
  const double cap = 0.2 * t_end;
  if (k <= 0.0) return cap;
  return std::min(5.0 * (1.0 - beta) / (4.0 * k), cap);
}

namespace {

BnRmspropMap finish_map(double eta, double beta, double k, double eta_prime, double rho_prime) {
  BnRmspropMap map;
  map.eta_prime = eta_prime;
  map.rho_prime = rho_prime;
  const MemoryKernel bn = bn_kernel(eta, beta, k);
  map.rate = bn.rate;
  map.bn_prefactor = bn.prefactor;
  map.rmsprop_prefactor = (1.0 - rho_prime) / eta_prime;
  map.prefactor_ratio = map.rmsprop_prefactor > 0.0
                            ? map.bn_prefactor / map.rmsprop_prefactor
                            : std::numeric_limits<double>::infinity();
  map.satisfiable = std::abs(map.prefactor_ratio - 1.0) <= 1e-12;
  return map;
}

}  // namespace

BnRmspropMap bn_rmsprop_map(double eta, double beta, double k, double eta_prime) {
  require(eta_prime > 0.0, "bn_rmsprop_map: eta' must be positive");
  const double rho_prime = 1.0 - bn_kernel(eta, beta, k).rate * eta_prime;
  if (!(rho_prime > 0.0)) {
    throw ContractError("bn_rmsprop_map: matched decay rho' <= 0, choose a smaller eta'");
  }
  return finish_map(eta, beta, k, eta_prime, rho_prime);
}

BnRmspropMap bn_rmsprop_map_for_decay(double eta, double beta, double k, double rho_prime) {
  require(rho_prime > 0.0 && rho_prime < 1.0, "bn_rmsprop_map: rho' must lie in (0, 1)");
  if (k == 0.0) {
    throw ContractError("bn_rmsprop_map: k = 0 has no decay; only rho' = 1 matches");
  }
  return finish_map(eta, beta, k, (1.0 - rho_prime) / bn_kernel(eta, beta, k).rate, rho_prime);
}

double bernoulli_r2(double m, double mu, double k, double gsq, double r0, double t) {
  require(m > 0.0 && mu > 0.0, "bernoulli_r2: m and mu must be positive");
  require(k >= 0.0 && gsq >= 0.0 && r0 > 0.0, "bernoulli_r2: invalid k, gsq or r0");
  const double drive = 4.0 * m / (mu * mu * mu) * gsq;
  const double w0 = std::pow(r0, 4);
  if (k == 0.0) return std::sqrt(drive * t + w0);
  const double rate = 4.0 * k / mu;
  const double decay = std::exp(-rate * t);
  return std::sqrt(drive * (-std::expm1(-rate * t)) / rate + decay * w0);
}

std::vector<double> solve_bernoulli_check(double m, double mu, double k, double gsq, double r0,
                                          double t_end, double dt) {
  require(t_end > 0.0 && dt > 0.0, "solve_bernoulli_check: t_end and dt must be positive");
  require(mu < 2.0, "solve_bernoulli_check: friction must be below 2 to map onto (eta, beta)");
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  GradNormHistory history{0.0, dt, std::vector<double>(n + 1, gsq)};
  const double beta = 1.0 - mu;
  const double eta = 2.0 * m / (1.0 + beta);
  const auto quadrature = r2_schedule(history, eta, beta, k, r0);
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out[i] = bernoulli_r2(m, mu, k, gsq, r0, history.time(i));
    if (std::abs(out[i] - quadrature[i]) > 1e-8 * std::abs(out[i])) {
      throw ContractError("solve_bernoulli_check: quadrature and analytic solution disagree");
    }
  }
  return out;
}

}  // namespace noetherdyn
