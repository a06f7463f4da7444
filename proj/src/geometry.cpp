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

#include <noetherdyn/geometry.hpp>

#include "overloaded.hpp"

#include <cmath>
#include <sstream>

namespace noetherdyn {

using detail::Overloaded;

namespace {

constexpr double kEntropyFloor = 1e-12;

}  // namespace

Metric Metric::euclidean(Eigen::Index dimension) {
  require(dimension > 0, "euclidean: dimension must be positive");
  return Metric(Euclidean{}, dimension);
}

Metric Metric::quadratic_form(const Mat& a) {
  require(a.rows() == a.cols() && a.rows() > 0, "quadratic_form: square matrix required");
  require((a - a.transpose()).norm() <= 1e-12 * std::max(1.0, a.norm()),
          "quadratic_form: matrix must be symmetric");
  Eigen::LLT<Mat> factor(a);
  require(factor.info() == Eigen::Success, "quadratic_form: matrix must be positive definite");
  return Metric(QuadraticForm{a, std::move(factor)}, a.rows());
}

Metric Metric::negative_entropy(Eigen::Index dimension) {
  require(dimension > 0, "negative_entropy: dimension must be positive");
  return Metric(NegativeEntropy{}, dimension);
}

std::string Metric::name() const {
  return std::visit(Overloaded{
                        [](const Euclidean&) { return std::string("euclidean"); },
                        [](const QuadraticForm&) { return std::string("quadratic-form"); },
                        [](const NegativeEntropy&) { return std::string("negative-entropy"); },
                    },
                    kind_);
}

bool Metric::in_domain(const Vec& x) const {
  if (x.size() != dimension_ || !x.allFinite()) return false;
  if (std::holds_alternative<NegativeEntropy>(kind_)) return x.minCoeff() > kEntropyFloor;
  return true;
}

void Metric::check_domain(const Vec& x) const {
  if (x.size() != dimension_) {
    throw ContractError(name() + ": expected dimension " + std::to_string(dimension_) + ", got " +
                        std::to_string(x.size()));
  }
  if (!in_domain(x)) {
    std::ostringstream msg;
    msg << name() << ": point outside the metric domain (min coordinate " << x.minCoeff() << ")";
    throw DomainError(msg.str());
  }
}

double Metric::value(const Vec& x) const {
  check_domain(x);
  return std::visit(Overloaded{
                        [&](const Euclidean&) { return 0.5 * x.squaredNorm(); },
                        [&](const QuadraticForm& m) { return 0.5 * x.dot(m.a * x); },
                        [&](const NegativeEntropy&) {
                          return (x.array() * x.array().log()).sum();
                        },
                    },
                    kind_);
}

Vec Metric::gradient(const Vec& x) const {
  check_domain(x);
  return std::visit(Overloaded{
                        [&](const Euclidean&) -> Vec { return x; },
                        [&](const QuadraticForm& m) -> Vec { return m.a * x; },
                        [&](const NegativeEntropy&) -> Vec { return x.array().log() + 1.0; },
                    },
                    kind_);
}

Mat Metric::hessian(const Vec& x) const {
  check_domain(x);
  return std::visit(Overloaded{
                        [&](const Euclidean&) -> Mat { return Mat::Identity(x.size(), x.size()); },
                        [&](const QuadraticForm& m) -> Mat { return m.a; },
                        [&](const NegativeEntropy&) -> Mat {
                          return x.cwiseInverse().asDiagonal();
                        },
                    },
                    kind_);
}

Vec Metric::solve_hessian(const Vec& x, const Vec& v) const {
  check_domain(x);
  require(v.size() == x.size(), "solve_hessian: dimension mismatch");
  return std::visit(Overloaded{
                        [&](const Euclidean&) -> Vec { return v; },
                        [&](const QuadraticForm& m) -> Vec { return m.factor.solve(v); },
                        [&](const NegativeEntropy&) -> Vec { return x.cwiseProduct(v); },
                    },
                    kind_);
}

Vec Metric::inverse_gradient(const Vec& y) const {
  require(y.size() == dimension_, "inverse_gradient: dimension mismatch");
  Vec x = std::visit(Overloaded{
                         [&](const Euclidean&) -> Vec { return y; },
                         [&](const QuadraticForm& m) -> Vec { return m.factor.solve(y); },
                         [&](const NegativeEntropy&) -> Vec { return (y.array() - 1.0).exp(); },
                     },
                     kind_);
  check_domain(x);
  return x;
}

void BregmanSchedule::check_time(double t) const {
  if (!std::isfinite(t) || t < t_min || (singular_at_min && t == t_min)) {
    throw DomainError(name + " schedule is singular at t = " + std::to_string(t));
  }
}

BregmanSchedule BregmanSchedule::natural(double mass, double friction) {
  require(mass > 0.0, "natural schedule: mass must be positive");
  require(friction >= 0.0, "natural schedule: friction must be non-negative");
  const double log_m = std::log(mass);
  const double rate = friction / mass;
  BregmanSchedule s;
  s.name = "natural";
  s.alpha = [=](double) { return -log_m; };
  s.beta = [=](double) { return log_m; };
  s.gamma = [=](double t) { return rate * t; };
  s.alpha_dot = [](double) { return 0.0; };
  s.beta_dot = [](double) { return 0.0; };
  s.gamma_dot = [=](double) { return rate; };
  return s;
}

BregmanSchedule BregmanSchedule::sgd_momentum(double eta, double momentum) {
  require(eta > 0.0, "sgd_momentum schedule: eta must be positive");
  require(momentum >= 0.0 && momentum < 1.0, "sgd_momentum schedule: momentum must be in [0, 1)");
  const double mass = eta * (1.0 + momentum) / 2.0;
  BregmanSchedule s = natural(mass, 1.0 - momentum);
  s.name = "sgd-momentum";
  return s;
}

BregmanSchedule BregmanSchedule::nesterov(double n, double c) {
  require(n > 0.0 && c > 0.0, "nesterov schedule: n and C must be positive");
  const double log_n = std::log(n);
  const double log_c = std::log(c);
  BregmanSchedule s;
  s.name = "nesterov";
  s.alpha = [=](double t) { return log_n - std::log(t); };
  s.beta = [=](double t) { return n * std::log(t) + log_c; };
  s.gamma = [=](double t) { return n * std::log(t); };
  s.alpha_dot = [](double t) { return -1.0 / t; };
  s.beta_dot = [=](double t) { return n / t; };
  s.gamma_dot = [=](double t) { return n / t; };
  s.t_min = 0.0;
  s.singular_at_min = true;
  return s;
}

double bregman_divergence(const Metric& metric, const Vec& y, const Vec& x) {
  metric.check_domain(y);
  metric.check_domain(x);
  if (metric.is_euclidean()) return 0.5 * (y - x).squaredNorm();
  if (const auto* q = std::get_if<Metric::QuadraticForm>(&metric.data())) {
    const Vec d = y - x;
    return 0.5 * d.dot(q->a * d);
  }
  // Negative entropy: sum y log(y/x) - y + x, the cancellation-free form.
  return (y.array() * (y.array() / x.array()).log() - y.array() + x.array()).sum();
}

double kinetic_energy(const Metric& metric, const Vec& q, const Vec& q_dot, double alpha) {
  require(q.size() == q_dot.size(), "kinetic_energy: dimension mismatch");
  const double damp = std::exp(-alpha);
  return std::exp(alpha) * bregman_divergence(metric, q + damp * q_dot, q);
}

double lagrangian(const Metric& metric, const BregmanSchedule& schedule, const Loss& loss,
                  const Vec& q, const Vec& q_dot, double t) {
  schedule.check_time(t);
  require(q.size() == q_dot.size(), "lagrangian: dimension mismatch");
  const double alpha = schedule.alpha(t);
  const double divergence = bregman_divergence(metric, q + std::exp(-alpha) * q_dot, q);
  return std::exp(alpha + schedule.gamma(t)) *
         (divergence - std::exp(schedule.beta(t)) * loss.value(q));
}

}  // namespace noetherdyn
