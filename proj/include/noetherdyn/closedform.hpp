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

// Exponential-memory solutions for the weight norm under scale symmetry and
// for the RMSProp accumulator, and the steady-state formulas.

#pragma once

#include <noetherdyn/kernels.hpp>
#include <noetherdyn/trajectory.hpp>

#include <string>
#include <vector>

namespace noetherdyn {

/// |g(tau)|^2 sampled on t0 + i dt.
struct GradNormHistory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> gsq;

  std::size_t size() const { return gsq.size(); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  /// Throws ContractError on an empty history, dt <= 0, or a negative or
  /// non-finite sample (a gap).
  void validate() const;

  /// Reads a channel of a uniformly sampled trajectory.
  static GradNormHistory from_channel(const Trajectory& trajectory, const std::string& channel);
};

/// sqrt(P int_0^t e^{-lambda (t - tau)} gsq dtau + e^{-lambda t} w0).
struct MemoryKernel {
  double prefactor = 0.0;  // P
  double rate = 0.0;       // lambda
};

enum class Quadrature { Recursive, Direct };

/// Trapezoid evaluation of the kernel on the history grid. Recursive is O(N);
/// Direct sums every output independently (O(N^2), parallel over outputs).
std::vector<double> evaluate_memory_kernel(const GradNormHistory& history, MemoryKernel kernel,
                                           double w0, Quadrature quadrature = Quadrature::Recursive,
                                           Execution policy = Execution::Parallel);

/// P = 2 eta (1+beta) / (1-beta)^3, lambda = 4 k / (1-beta), w0 = r0^4.
MemoryKernel bn_kernel(double eta, double beta, double k);
/// P = lambda = (1 - rho) / eta, w0 = G0.
MemoryKernel rmsprop_kernel(double eta, double rho);

/// r^2(t) of the normalized-weight norm under SGD + momentum + weight decay.
std::vector<double> r2_schedule(const GradNormHistory& history, double eta, double beta, double k,
                                double r0, Quadrature quadrature = Quadrature::Recursive);

/// sqrt(G(t)) of RMSProp.
std::vector<double> g_schedule(const GradNormHistory& history, double eta, double rho, double g0,
                               Quadrature quadrature = Quadrature::Recursive);

/// Per-step angular displacement sqrt(2 eta k / (1 + beta)).
double steady_angular_speed(double eta, double beta, double k);

/// ((eta (1+beta)) / (2 k (1-beta)^2))^{1/4} sqrt(gnorm). Throws ContractError
/// for k = 0: there is no steady norm without weight decay.
double steady_radius(double eta, double beta, double k, double gnorm);

/// Start of the comparison window: min(5 (1-beta) / (4k), 0.2 t_end)
/// (0.2 t_end when k = 0).
double transient_cutoff(double beta, double k, double t_end);

struct BnRmspropMap {
  double eta_prime = 0.0;
  double rho_prime = 1.0;
  double rate = 0.0;                // shared decay rate 4k/(1-beta) = (1-rho')/eta'
  double bn_prefactor = 0.0;        // 2 eta (1+beta)/(1-beta)^3
  double rmsprop_prefactor = 0.0;   // (1-rho')/eta'
  double prefactor_ratio = 0.0;     // bn / rmsprop; +inf when k = 0
  bool satisfiable = false;         // both identities hold (ratio == 1)
  std::string g0_rule = "G0' = r0^4";

  /// With matched rates, r2[gsq] equals sqrt(G)[prefactor_ratio * gsq]
  /// with G0' = r0^4. Satisfiable means the identity holds on the same gsq.
};

/// Rate-matched RMSProp parameters for a chosen eta': rho' = 1 - 4 k eta' / (1 - beta).
/// k = 0 gives rho' = 1 (pure accumulation). Throws ContractError if rho' <= 0.
BnRmspropMap bn_rmsprop_map(double eta, double beta, double k, double eta_prime);

/// Same family parameterized by the decay rho' < 1: eta' = (1 - rho')(1 - beta) / (4k).
/// Throws ContractError when k = 0 (no decay to match).
BnRmspropMap bn_rmsprop_map_for_decay(double eta, double beta, double k, double rho_prime);

/// Over-damped constant-drive solution of mu d(r^2)/dt = -2 k r^2 + 2 m gsq / (mu^2 r^2):
///   r^2(t) = sqrt((4m/mu^3) gsq (mu/(4k)) (1 - e^{-4kt/mu}) + e^{-4kt/mu} r0^4),
/// and its k = 0 limit sqrt((4m/mu^3) gsq t + r0^4).
double bernoulli_r2(double m, double mu, double k, double gsq, double r0, double t);

/// bernoulli_r2 on every time of a constant history, checked against
/// r2_schedule (m = eta(1+beta)/2, mu = 1-beta) to <= 1e-8 relative.
/// Throws ContractError when the check fails.
std::vector<double> solve_bernoulli_check(double m, double mu, double k, double gsq, double r0,
                                          double t_end, double dt);

}  // namespace noetherdyn
