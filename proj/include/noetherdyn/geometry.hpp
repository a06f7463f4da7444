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

#include <noetherdyn/losses.hpp>
#include <noetherdyn/types.hpp>

#include <functional>
#include <limits>
#include <string>
#include <variant>

namespace noetherdyn {

/// Strictly convex distance-generating function h on an open subset of R^n.
class Metric {
 public:
  /// h(x) = |x|^2 / 2.
  struct Euclidean {};
  /// h(x) = x^T A x / 2 with A symmetric positive definite.
  struct QuadraticForm {
    Mat a;
    Eigen::LLT<Mat> factor;
  };
  /// h(x) = sum_i x_i log x_i on the positive orthant.
  struct NegativeEntropy {};
  using Kind = std::variant<Euclidean, QuadraticForm, NegativeEntropy>;

  static Metric euclidean(Eigen::Index dimension);
  /// Throws ContractError unless A is symmetric positive definite.
  static Metric quadratic_form(const Mat& a);
  static Metric negative_entropy(Eigen::Index dimension);

  Eigen::Index dimension() const { return dimension_; }
  std::string name() const;
  const Kind& data() const { return kind_; }
  bool is_euclidean() const { return std::holds_alternative<Euclidean>(kind_); }

  /// Throws DomainError outside the open domain. Coordinates <= 1e-12 are
  /// outside the negative-entropy domain; nothing is clamped.
  void check_domain(const Vec& x) const;
  bool in_domain(const Vec& x) const;

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  /// Solves hessian(x) * y = v.
  Vec solve_hessian(const Vec& x, const Vec& v) const;
  /// Inverse of the gradient map: returns x with gradient(x) = y.
  Vec inverse_gradient(const Vec& y) const;

 private:
  Metric(Kind kind, Eigen::Index dimension) : kind_(std::move(kind)), dimension_(dimension) {}
  Kind kind_;
  Eigen::Index dimension_;
};

/// Time functions (alpha_t, beta_t, gamma_t) of the Bregman Lagrangian and
/// their derivatives. Presets cover the natural (mass/friction), heavy-ball
/// and Nesterov parameterizations.
struct BregmanSchedule {
  std::string name;
  std::function<double(double)> alpha;
  std::function<double(double)> beta;
  std::function<double(double)> gamma;
  std::function<double(double)> alpha_dot;
  std::function<double(double)> beta_dot;
  std::function<double(double)> gamma_dot;
  /// Schedules are defined for t > t_min (strictly) when singular_at_min,
  /// otherwise for t >= t_min.
  double t_min = -std::numeric_limits<double>::infinity();
  bool singular_at_min = false;

  /// Throws DomainError outside the schedule's domain.
  void check_time(double t) const;

  /// Particle of mass m with friction mu: (-log m, log m, (mu/m) t).
  static BregmanSchedule natural(double mass, double friction);
  /// Heavy-ball momentum with learning rate eta:
  /// (-log(eta(1+beta)/2), log(eta(1+beta)/2), 2(1-beta) t / (eta(1+beta))).
  static BregmanSchedule sgd_momentum(double eta, double momentum);
  /// Accelerated family: (log n - log t, n log t + log C, n log t), t > 0.
  static BregmanSchedule nesterov(double n, double c);
};

/// D_h(y, x) = h(y) - h(x) - <grad h(x), y - x>.
double bregman_divergence(const Metric& metric, const Vec& y, const Vec& x);

/// T_h = e^alpha D_h(q + e^-alpha q_dot, q).
double kinetic_energy(const Metric& metric, const Vec& q, const Vec& q_dot, double alpha);

/// e^(alpha + gamma) (D_h(q + e^-alpha q_dot, q) - e^beta f(q)).
double lagrangian(const Metric& metric, const BregmanSchedule& schedule, const Loss& loss,
                  const Vec& q, const Vec& q_dot, double t);

}  // namespace noetherdyn
