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
#include <noetherdyn/continuous.hpp>
#include <noetherdyn/discrete.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

using namespace noetherdyn;

Vec v1(double a) { return Vec::Constant(1, a); }

SecondOrderSystem harmonic() {
  SecondOrderSystem s;
  s.name = "harmonic";
  s.rhs = [](double, const PhaseState& x) { return PhaseRate{-x.q, Vec()}; };
  return s;
}

const Loss& unit_quadratic() {
  static const Loss l = Loss::quadratic(Mat::Identity(1, 1), Vec::Zero(1));
  return l;
}

TEST(Rk4, FreeParticleIsExact) {
  SecondOrderSystem s;
  s.rhs = [](double, const PhaseState& x) { return PhaseRate{Vec::Zero(x.q.size()), Vec()}; };
  const Trajectory tr = integrate_rk4(s, v1(0.0), v1(1.0), 0.0, 1.0, 0.1);
  EXPECT_NEAR(tr.q.back()(0), 1.0, 1e-15);
  EXPECT_EQ(tr.size(), 11u);
  EXPECT_NO_THROW(tr.validate());
}

TEST(Rk4, HarmonicOscillatorMatchesCosine) {
  const double t1 = 2.0 * std::numbers::pi;
  const Trajectory tr = integrate_rk4(harmonic(), v1(1.0), v1(0.0), 0.0, t1, 1e-3);
  EXPECT_NEAR(tr.t_end(), t1, 1e-12);
  EXPECT_NEAR(tr.q.back()(0), 1.0, 1e-9);
}

TEST(Rk4, FourthOrderUnderHalving) {
  const Loss well = Loss::mexican_hat(1.0, 0.7);
  const auto sys = eom_modified(0.2, 0.3, 0.05, well);
  Vec q0(2), v0(2);
  q0 << 0.4, -1.1;
  v0 << 0.9, 0.2;
  const double exact = integrate_rk4(sys, q0, v0, 0.0, 2.0, 0.000625).q.back()(0);
  const double e1 = std::abs(integrate_rk4(sys, q0, v0, 0.0, 2.0, 0.01).q.back()(0) - exact);
  const double e2 = std::abs(integrate_rk4(sys, q0, v0, 0.0, 2.0, 0.005).q.back()(0) - exact);
  EXPECT_NEAR(e1 / e2, 16.0, 3.0);
}

TEST(Rk4, RecordStrideAndStepCount) {
  EXPECT_EQ(rk4_step_count(0.0, 1.0, 0.1), 10u);
  EXPECT_EQ(rk4_step_count(0.0, 1.0, 0.3), 4u);
  const Trajectory tr = integrate_rk4(harmonic(), v1(1.0), v1(0.0), 0.0, 1.0, 0.01, Vec(), 10);
  EXPECT_EQ(tr.size(), 11u);
  EXPECT_NEAR(tr.dt, 0.1, 1e-15);
}

TEST(Rk4, NonFiniteStateAborts) {
  SecondOrderSystem s;
  s.name = "blowup";
  s.rhs = [](double, const PhaseState& x) { return PhaseRate{x.q.array().exp().matrix() * 1e300, Vec()}; };
  EXPECT_THROW(integrate_rk4(s, v1(1.0), v1(0.0), 0.0, 1.0, 0.1), IntegrationAbort);
}

TEST(EomModified, FrictionOnlyDecay) {
  const Loss flat = Loss::quadratic(Mat::Zero(1, 1), Vec::Zero(1));
  const double eta = 0.1, beta = 0.5;
  const auto sys = eom_modified(eta, beta, 0.0, flat);
  const Vec a = sys.acceleration(0.0, v1(3.0), v1(2.0));
  EXPECT_NEAR(a(0), -2.0 * (1.0 - beta) / (eta * (1.0 + beta)) * 2.0, 1e-14);
}

TEST(EomModified, PlainGradientDescentForm) {
  // beta = 0: (eta/2) qddot + qdot = -g.
  gen::for_all(20, 51, [](gen::Gen& g, int) {
    const Loss quad = Loss::quadratic(g.spd(3), g.normal_vec(3));
    const double eta = g.uniform(0.01, 0.5);
    const Vec q = g.normal_vec(3), qd = g.normal_vec(3);
    const Vec a = eom_modified(eta, 0.0, 0.0, quad).acceleration(0.0, q, qd);
    EXPECT_LE((0.5 * eta * a + qd + quad.grad(q)).norm(), 1e-12 * (1.0 + a.norm()));
  });
}

TEST(EomModified, TracksGradientDescentBetterThanGradientFlow) {
  const double eta = 0.1;
  const auto disc = [&] {
    std::vector<double> xs;
    auto s = OptimizerState::at(v1(1.0));
    for (int n = 0; n <= 10; ++n) {
      xs.push_back(s.q(0));
      s = step_gd_momentum_wd(s, unit_quadratic(), eta, 0.0, 0.0);
    }
    return xs;
  }();
  // Start on the slow root of (eta/2) s^2 + s + 1 = 0; from rest the fast
  // mode adds an O(eta) initial layer that gradient descent never sees.
  const double slow = (-1.0 + std::sqrt(1.0 - 2.0 * eta)) / eta;
  const Trajectory ode = integrate_rk4(eom_modified(eta, 0.0, 0.0, unit_quadratic()), v1(1.0), v1(slow),
                                       0.0, 1.0, eta / 100.0, Vec(), 100);
  const Trajectory gf = integrate_rk4(gradient_flow(unit_quadratic()), v1(1.0), 0.0, 1.0, eta / 100.0,
                                      100);
  const double dev_ode = std::abs(ode.q.back()(0) - disc.back());
  const double dev_gf = std::abs(gf.q.back()(0) - disc.back());
  EXPECT_GE(dev_gf, 5.0 * dev_ode) << dev_ode << " " << dev_gf;
}

TEST(EomBregman, NaturalPresetIsNewton) {
  gen::for_all(20, 52, [](gen::Gen& g, int) {
    const double m = g.uniform(0.1, 2.0), mu = g.uniform(0.0, 2.0);
    const Loss loss = Loss::quadratic(g.spd(3), g.normal_vec(3));
    const Vec q = g.normal_vec(3), qd = g.normal_vec(3);
    const Vec a = eom_bregman_euclidean(BregmanSchedule::natural(m, mu), loss).acceleration(g.uniform(0, 3), q, qd);
    EXPECT_LE((m * a + mu * qd + loss.grad(q)).norm(), 1e-12 * (1.0 + a.norm()));
  });
}

TEST(EomBregman, NesterovDampingIsThreeOverT) {
  const Loss flat = Loss::quadratic(Mat::Zero(1, 1), Vec::Zero(1));
  const auto sys = eom_bregman_euclidean(BregmanSchedule::nesterov(2.0, 0.25), flat);
  EXPECT_NEAR(sys.acceleration(2.0, v1(0.0), v1(1.0))(0), -1.5, 1e-14);
  // With C = 1/4 the force coefficient e^(2 alpha + beta) is 1.
  EXPECT_NEAR(eom_bregman_euclidean(BregmanSchedule::nesterov(2.0, 0.25), unit_quadratic())
                  .acceleration(3.0, v1(2.0), v1(0.0))(0),
              -2.0, 1e-13);
}

TEST(EomBregman, SgdMomentumPresetEqualsModifiedEquation) {
  gen::for_all(50, 53, [](gen::Gen& g, int) {
    const double eta = g.uniform(0.001, 0.5), beta = g.uniform(0.0, 0.95);
    const Loss loss = Loss::rayleigh_quotient(g.spd(4));
    const Vec q = g.normal_vec(4), qd = g.normal_vec(4);
    const double t = g.uniform(0.0, 10.0);
    const Vec a = eom_bregman_euclidean(BregmanSchedule::sgd_momentum(eta, beta), loss).acceleration(t, q, qd);
    const Vec b = eom_modified(eta, beta, 0.0, loss).acceleration(t, q, qd);
    EXPECT_LE((a - b).norm(), 1e-12 * (1.0 + b.norm()));
  });
}

TEST(EomBregman, GeneralMetricSatisfiesEulerLagrange) {
  // Oracle: finite differences of the Lagrangian itself.
  gen::for_all(10, 54, [](gen::Gen& g, int) {
    const Eigen::Index n = 3;
    const Loss loss = Loss::quadratic(g.spd(n), g.normal_vec(n));
    const std::vector<BregmanSchedule> schedules = {BregmanSchedule::natural(g.uniform(0.3, 2), g.uniform(0.1, 2)),
                                                    BregmanSchedule::nesterov(2.0, 0.25)};
    for (const Metric& m : gen::metrics(n, g)) {
      for (const auto& s : schedules) {
        const Vec q = g.domain_point(m);
        const Vec qd = g.uniform_vec(n, -0.1, 0.1);
        const double t = g.uniform(0.5, 2.0);
        const Vec a = eom_bregman(m, s, loss).acceleration(t, q, qd);
        const Vec defect = oracle::euler_lagrange_defect(
            [&](const Vec& x, const Vec& v, double tt) { return lagrangian(m, s, loss, x, v, tt); }, q, qd, a, t);
        // Scale: the size of the individual terms of the EL equation.
        const double scale = std::exp(s.alpha(t) + s.beta(t) + s.gamma(t)) * (1.0 + loss.grad(q).norm());
        EXPECT_LE(defect.norm() / scale, 1e-5) << m.name() << " " << s.name;
      }
    }
  });
}

TEST(EomBregman, GeneralFormReducesToEuclidean) {
  gen::for_all(20, 55, [](gen::Gen& g, int) {
    const Loss loss = Loss::mexican_hat(1.0, 0.4);
    const auto s = BregmanSchedule::sgd_momentum(0.1, 0.8);
    const Vec q = g.normal_vec(3), qd = g.normal_vec(3);
    // Quadratic form with A = I takes the general path.
    const Vec a = eom_bregman(Metric::quadratic_form(Mat::Identity(3, 3)), s, loss).acceleration(1.0, q, qd);
    const Vec b = eom_bregman_euclidean(s, loss).acceleration(1.0, q, qd);
    EXPECT_LE((a - b).norm(), 1e-10 * (1.0 + b.norm()));
  });
}

TEST(EomBregman, LeavingTheOrthantAborts) {
  const Loss lin = Loss::quadratic(Mat::Zero(1, 1), v1(-50.0));
  const auto sys = eom_bregman(Metric::negative_entropy(1), BregmanSchedule::natural(1, 1), lin);
  EXPECT_THROW(integrate_rk4(sys, v1(0.1), v1(-0.5), 0.0, 1.0, 0.01), IntegrationAbort);
}

TEST(Energy, NaturalPresetDissipates) {
  gen::for_all(5, 56, [](gen::Gen& g, int) {
    const double m = g.uniform(0.2, 2.0), mu = g.uniform(0.1, 1.0);
    const Loss loss = Loss::mexican_hat(1.3, 0.6);
    const Trajectory tr = integrate_rk4(eom_bregman_euclidean(BregmanSchedule::natural(m, mu), loss),
                                        g.normal_vec(3), g.normal_vec(3), 0.0, 5.0, 1e-3);
    auto energy = [&](std::size_t i) { return 0.5 * m * tr.q_dot[i].squaredNorm() + loss.value(tr.q[i]); };
    for (std::size_t i = 1; i < tr.size(); ++i) ASSERT_LE(energy(i), energy(i - 1) + 1e-9) << i;
  });
}

TEST(RadialAngular, FreeMotionSettles) {
  const Loss rq = Loss::rayleigh_quotient(Mat::Identity(3, 3));  // g(u) = 0
  Vec q(4), qd(4);
  q << 2.0, 1.0, 0.0, 0.0;
  qd << 0.3, 0.0, 0.4, 0.0;
  const Trajectory tr = integrate_rk4(eom_radial_angular(1.0, 2.0, 0.0, rq), q, qd, 0.0, 20.0, 1e-2);
  EXPECT_LE(tr.q_dot.back().norm(), 1e-6);
  EXPECT_LE(std::abs(tr.q.back()(0) - tr.q[tr.size() - 2](0)), 1e-9);
}

TEST(RadialAngular, SteadySpinBalancesWeightDecay) {
  // m |u_dot|^2 = k leaves r_ddot = 0 when r_dot = 0.
  const double m = 0.4, k = 0.1;
  const Loss rq = Loss::rayleigh_quotient(Mat::Identity(2, 2));
  Vec q(3), qd(3);
  q << 1.5, 1.0, 0.0;
  qd << 0.0, 0.0, std::sqrt(k / m);
  const Vec a = eom_radial_angular(m, 0.3, k, rq).acceleration(0.0, q, qd);
  EXPECT_NEAR(a(0), 0.0, 1e-15);
}

TEST(RadialAngular, CovariantWithCartesianAndKeepsUnitNorm) {
  gen::for_all(3, 57, [](gen::Gen& g, int) {
    const double eta = 0.05, beta = 0.8, k = 0.01;
    const double m = eta * (1.0 + beta) / 2.0, mu = 1.0 - beta;
    const Loss rq = Loss::rayleigh_quotient(g.spd(4));
    const Vec q0 = g.normal_vec(4), v0 = 0.5 * g.normal_vec(4);
    const Trajectory cart = integrate_rk4(eom_modified(eta, beta, k, rq), q0, v0, 0.0, 1.0, 1e-4);
    const PhaseState p0 = to_polar(q0, v0);
    const Trajectory pol = integrate_rk4(eom_radial_angular(m, mu, k, rq, true), p0.q, p0.q_dot, 0.0, 1.0, 1e-4);
    double dev = 0.0, unit = 0.0;
    for (std::size_t i = 0; i < cart.size(); i += 100) {
      const PhaseState back = from_polar(pol.q[i], pol.q_dot[i]);
      dev = std::max(dev, (back.q - cart.q[i]).norm());
      unit = std::max(unit, std::abs(pol.q[i].tail(4).norm() - 1.0));
    }
    EXPECT_LE(dev, 1e-4);
    EXPECT_LE(unit, 1e-10);
  });
}

TEST(RadialAngular, PolarRoundTrip) {
  gen::for_all(20, 58, [](gen::Gen& g, int) {
    const Vec q = g.normal_vec(5), qd = g.normal_vec(5);
    const PhaseState p = to_polar(q, qd);
    const PhaseState back = from_polar(p.q, p.q_dot);
    EXPECT_LE((back.q - q).norm(), 1e-14 * q.norm());
    EXPECT_LE((back.q_dot - qd).norm(), 1e-13 * (1.0 + qd.norm()));
  });
  EXPECT_THROW(to_polar(Vec::Zero(3), Vec::Ones(3)), SingularityError);
}

TEST(NoetherRadial, SteadyRadius) {
  const double m = 0.02, mu = 0.2, k = 1e-3, c = 0.7;
  const SampledSignal gsq{0.0, 1.0, {c * c}};
  // 0 = -2 k w + 2 m c^2 / (mu^2 w); the state w is r^2.
  const double w = std::sqrt(m * c * c / (k * mu * mu));
  const double r_star = std::pow(m / (k * mu * mu), 0.25) * std::sqrt(c);
  EXPECT_NEAR(w, r_star * r_star, 1e-12);
  const Vec a = eom_noether_radial(m, mu, k, gsq).acceleration(0.0, v1(w), v1(0.0));
  EXPECT_NEAR(a(0), 0.0, 1e-12);
}

TEST(NoetherRadial, FreeNormHoldsStill) {
  const SampledSignal zero{0.0, 1.0, {0.0}};
  const Trajectory tr = integrate_rk4(eom_noether_radial(0.01, 0.1, 0.0, zero), v1(2.0), v1(0.0), 0.0, 5.0, 1e-2);
  EXPECT_EQ(tr.q.back()(0), 2.0);
  const Trajectory moving = integrate_rk4(eom_noether_radial(0.01, 0.1, 0.0, zero), v1(2.0), v1(0.5), 0.0, 5.0, 1e-3);
  EXPECT_LE(std::abs(moving.q_dot.back()(0)), 1e-12);
}

TEST(NoetherRadial, MatchesClosedFormOnASlowChannel) {
  const double eta = 0.01, beta = 0.9, k = 1e-3;
  const double m = eta * (1.0 + beta) / 2.0, mu = 1.0 - beta;
  std::vector<double> samples;
  // Long enough that the cutoff is the relaxation time, not the 20% cap.
  const double dt = 0.02, t_end = 1000.0;
  for (int i = 0; i <= 50000; ++i) samples.push_back(0.2 + 0.1 * std::sin(0.01 * i * dt));
  const GradNormHistory hist{0.0, dt, samples};
  const auto r2 = r2_schedule(hist, eta, beta, k, 1.0);
  const SampledSignal sig{0.0, dt, samples};
  const double w0 = 1.0;
  const double wd0 = (-2.0 * k * w0 + 2.0 * m * samples[0] / (mu * mu * w0)) / mu;
  const Trajectory tr = integrate_rk4(eom_noether_radial(m, mu, k, sig), v1(w0), v1(wd0), 0.0, t_end, dt);
  const double cutoff = transient_cutoff(beta, k, t_end);
  ASSERT_LT(cutoff, 0.2 * t_end);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.times[i] >= cutoff) worst = std::max(worst, oracle::rel_err(tr.q[i](0), r2[i]));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(EomRmsprop, FixedPointAndDecay) {
  // f = c q: |g|^2 = c^2 constant.
  const double c = 0.8;
  const Loss lin = Loss::quadratic(Mat::Zero(1, 1), v1(-c));
  const Trajectory tr = integrate_rk4(eom_rmsprop(0.1, 0.9, lin), v1(0.0), v1(0.0), 0.0, 2.0, 1e-2, v1(c * c));
  for (double gv : tr.channels.at("G")) EXPECT_NEAR(gv, c * c, 1e-14);
  const Loss flat = Loss::quadratic(Mat::Zero(1, 1), Vec::Zero(1));
  const double eta = 0.1, rho = 0.9;
  const Trajectory d = integrate_rk4(eom_rmsprop(eta, rho, flat), v1(0.0), v1(0.0), 0.0, 2.0, 1e-3, v1(3.0));
  EXPECT_NEAR(d.channels.at("G").back(), 3.0 * std::exp(-(1.0 - rho) * 2.0 / eta), 1e-12);
}

TEST(EomRmsprop, DiscreteConvergesAtFirstOrder) {
  const Loss quad = Loss::quadratic(Mat(Vec::LinSpaced(2, 1.0, 3.0).asDiagonal()), Vec::Zero(2));
  auto deviation = [&](double eta) {
    // Hold the accumulator rate (1 - rho)/eta fixed so the ODE does not move
    // with eta; at fixed rho the G update alone errs by O((1 - rho)^2 / eta).
    const double rho = 1.0 - 0.5 * eta;
    auto s = OptimizerState::at(Vec::Ones(2), 1.0);
    const auto steps = static_cast<int>(std::lround(1.0 / eta));
    for (int i = 0; i < steps; ++i) s = step_rmsprop(s, quad, eta, rho);
    const Trajectory tr = integrate_rk4(eom_rmsprop(eta, rho, quad), Vec::Ones(2),
                                        -quad.grad(Vec::Ones(2)), 0.0, 1.0, eta / 20.0, v1(1.0));
    return (tr.q.back() - s.q).norm();
  };
  const double d1 = deviation(0.02), d2 = deviation(0.01);
  EXPECT_GE(std::log2(d1 / d2), 0.8) << d1 << " " << d2;
}

TEST(Shooting, LandsOnTarget) {
  const Vec target = v1(0.3);
  const Vec v = match_initial_velocity(harmonic(), v1(1.0), target, 0.0, 1.0, 1e-3);
  const Trajectory tr = integrate_rk4(harmonic(), v1(1.0), v, 0.0, 1.0, 1e-3);
  EXPECT_NEAR(tr.q.back()(0), 0.3, 1e-12);
  // Analytic: cos(1) + v sin(1) = 0.3.
  EXPECT_NEAR(v(0), (0.3 - std::cos(1.0)) / std::sin(1.0), 1e-10);
}

TEST(SampledSignal, InterpolatesAndClamps) {
  const SampledSignal s{1.0, 0.5, {0.0, 1.0, 4.0}};
  EXPECT_EQ(s(0.0), 0.0);
  EXPECT_EQ(s(1.25), 0.5);
  EXPECT_EQ(s(1.75), 2.5);
  EXPECT_EQ(s(9.0), 4.0);
}

}  // namespace
