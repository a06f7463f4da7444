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

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

using namespace noetherdyn;

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
Vec v1(double a) { return Vec::Constant(1, a); }

TEST(BregmanDivergence, EuclideanHalfSquaredDistance) {
  EXPECT_DOUBLE_EQ(bregman_divergence(Metric::euclidean(2), v2(1, 0), v2(0, 0)), 0.5);
}

TEST(BregmanDivergence, VanishesOnDiagonal) {
  gen::for_all(20, 11, [](gen::Gen& g, int) {
    for (const Metric& m : gen::metrics(3, g)) {
      const Vec x = g.domain_point(m);
      EXPECT_NEAR(bregman_divergence(m, x, x), 0.0, 1e-14) << m.name();
    }
  });
}

TEST(BregmanDivergence, NegativeEntropyHandValue) {
  // h(e) = e, h(1) = 0, grad h(1) = 1: e - 0 - (e - 1) = 1.
  EXPECT_NEAR(bregman_divergence(Metric::negative_entropy(1), v1(std::numbers::e), v1(1.0)), 1.0,
              1e-14);
}

TEST(BregmanDivergence, EuclideanReductionProperty) {
  gen::for_all(200, 12, [](gen::Gen& g, int) {
    const Eigen::Index n = g.integer(1, 6);
    const Vec x = g.normal_vec(n), y = g.normal_vec(n);
    EXPECT_LE(std::abs(bregman_divergence(Metric::euclidean(n), y, x) - 0.5 * (x - y).squaredNorm()),
              1e-12);
  });
}

TEST(BregmanDivergence, PositiveOnDistinctPairs) {
  gen::Gen g(13);
  for (const Metric& m : gen::metrics(4, g)) {
    int positive = 0;
    for (int i = 0; i < 1000; ++i) {
      const Vec x = g.domain_point(m), y = g.domain_point(m);
      positive += bregman_divergence(m, y, x) > 0.0 ? 1 : 0;
    }
    EXPECT_EQ(positive, 1000) << m.name();
  }
}

TEST(Metric, GradientAndHessianMatchFiniteDifferences) {
  gen::for_all(50, 14, [](gen::Gen& g, int) {
    for (const Metric& m : gen::metrics(4, g)) {
      const Vec x = g.domain_point(m);
      const Vec fd_g = oracle::fd_gradient([&](const Vec& z) { return m.value(z); }, x);
      EXPECT_LE(oracle::rel_err(m.gradient(x), fd_g), 1e-6) << m.name();
      const Mat fd_h = oracle::fd_jacobian([&](const Vec& z) { return m.gradient(z); }, x);
      EXPECT_LE((m.hessian(x) - fd_h).norm() / fd_h.norm(), 1e-6) << m.name();
    }
  });
}

TEST(Metric, SolveHessianAndInverseGradientRoundTrip) {
  gen::for_all(50, 15, [](gen::Gen& g, int) {
    for (const Metric& m : gen::metrics(5, g)) {
      const Vec x = g.domain_point(m);
      const Vec v = g.normal_vec(5);
      EXPECT_LE(oracle::rel_err(m.hessian(x) * m.solve_hessian(x, v), v), 1e-12) << m.name();
      EXPECT_LE(oracle::rel_err(m.inverse_gradient(m.gradient(x)), x), 1e-12) << m.name();
    }
  });
}

TEST(Metric, NegativeEntropyBoundaryIsAnErrorNotAClamp) {
  const Metric m = Metric::negative_entropy(2);
  EXPECT_THROW(m.check_domain(v2(1.0, 1e-12)), DomainError);
  EXPECT_THROW(m.gradient(v2(1.0, -0.5)), DomainError);
  EXPECT_NO_THROW(m.check_domain(v2(1.0, 2e-12)));
  EXPECT_FALSE(m.in_domain(v2(0.0, 1.0)));
}

TEST(Metric, QuadraticFormRejectsIndefinite) {
  Mat a(2, 2);
  a << 1, 0, 0, -1;
  EXPECT_THROW(Metric::quadratic_form(a), ContractError);
  Mat b(2, 2);
  b << 1, 2, 0, 1;
  EXPECT_THROW(Metric::quadratic_form(b), ContractError);
}

TEST(KineticEnergy, Examples) {
  EXPECT_DOUBLE_EQ(kinetic_energy(Metric::euclidean(2), v2(0, 0), v2(2, 0), 0.0), 2.0);
  Mat a = Mat::Identity(2, 2) * 2.0;
  EXPECT_NEAR(kinetic_energy(Metric::quadratic_form(a), v2(0.3, -1), v2(1, 0), 0.0), 1.0, 1e-14);
  gen::Gen g(16);
  for (const Metric& m : gen::metrics(2, g)) {
    EXPECT_EQ(kinetic_energy(m, g.domain_point(m), Vec::Zero(2), 0.7), 0.0) << m.name();
  }
}

TEST(Lagrangian, Examples) {
  const Loss zero = Loss::quadratic(Mat::Zero(1, 1), Vec::Zero(1));
  const Loss half_sq = Loss::quadratic(Mat::Identity(1, 1), Vec::Zero(1));
  const Metric e = Metric::euclidean(1);
  EXPECT_EQ(lagrangian(e, BregmanSchedule::sgd_momentum(0.1, 0.9), zero, v1(0.4), v1(0.0), 0.0),
            0.0);
  // m = 1, mu = 0: 1/2 qdot^2 - f(q).
  EXPECT_NEAR(lagrangian(e, BregmanSchedule::natural(1.0, 0.0), half_sq, v1(1.0), v1(1.0), 3.7),
              0.0, 1e-15);
  // e^(alpha+gamma) e^-alpha |qdot|^2 / 2 at t = 0 with alpha = -log(eta/2).
  EXPECT_NEAR(lagrangian(e, BregmanSchedule::sgd_momentum(0.1, 0.0), zero, v1(0.0), v1(1.0), 0.0),
              0.025, 1e-15);
}

TEST(Schedule, DerivativesMatchFiniteDifferences) {
  const std::vector<BregmanSchedule> presets = {BregmanSchedule::natural(0.3, 0.7),
                                                BregmanSchedule::sgd_momentum(0.05, 0.9),
                                                BregmanSchedule::nesterov(2.0, 0.25),
                                                BregmanSchedule::nesterov(3.0, 1.5)};
  gen::for_all(30, 17, [&](gen::Gen& g, int) {
    const double t = g.uniform(0.2, 5.0);
    for (const auto& s : presets) {
      auto check = [&](const std::function<double(double)>& f,
                       const std::function<double(double)>& df, const char* what) {
        const double h = oracle::fd_step(t);
        const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
        EXPECT_LE(std::abs(df(t) - fd), 1e-6 * std::max(1.0, std::abs(fd))) << s.name << " " << what;
      };
      check(s.alpha, s.alpha_dot, "alpha");
      check(s.beta, s.beta_dot, "beta");
      check(s.gamma, s.gamma_dot, "gamma");
    }
  });
}

TEST(Schedule, NesterovIsSingularAtZero) {
  const auto s = BregmanSchedule::nesterov(2.0, 0.25);
  EXPECT_THROW(s.check_time(0.0), DomainError);
  EXPECT_NO_THROW(s.check_time(1e-6));
  EXPECT_NO_THROW(BregmanSchedule::natural(1.0, 1.0).check_time(-3.0));
}

TEST(Schedule, IdealScalingHoldsForNesterov) {
  // gamma_dot = e^alpha and beta_dot <= e^alpha: the conditions under which the
  // Euler-Lagrange flow is the accelerated family.
  const auto s = BregmanSchedule::nesterov(2.0, 0.25);
  for (double t : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(s.gamma_dot(t), std::exp(s.alpha(t)), 1e-12);
    EXPECT_LE(s.beta_dot(t), std::exp(s.alpha(t)) + 1e-12);
  }
}

}  // namespace
