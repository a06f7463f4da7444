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

#include <noetherdyn/continuous.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

namespace noetherdyn {

namespace {

// x + h * (q_dot, rate)
PhaseState advance(const PhaseState& x, const PhaseState& slope_state, const PhaseRate& rate,
                   double h) {
  PhaseState out;
  out.q = x.q + h * slope_state.q_dot;
  out.q_dot = x.q_dot + h * rate.q_ddot;
  out.aux = x.aux.size() > 0 ? Vec(x.aux + h * rate.aux_dot) : Vec();
  return out;
}

bool finite(const PhaseState& x) {
  return x.q.allFinite() && x.q_dot.allFinite() && (x.aux.size() == 0 || x.aux.allFinite());
}

void check_rate(const PhaseState& x, const PhaseRate& r, double t) {
  if (r.q_ddot.size() != x.q.size() || r.aux_dot.size() != x.aux.size()) {
    throw IntegrationAbort("rhs returned a rate of the wrong dimension", t);
  }
}

PhaseRate rate_of(const SecondOrderSystem& system, double t, const PhaseState& x) {
  PhaseRate r = system.rhs(t, x);
  if (r.aux_dot.size() == 0 && x.aux.size() > 0) r.aux_dot = Vec::Zero(x.aux.size());
  check_rate(x, r, t);
  return r;
}

PhaseRate plain(Vec q_ddot) { return PhaseRate{std::move(q_ddot), Vec()}; }

void require_positive(double v, const char* message) { require(v > 0.0, message); }

}  // namespace

Vec SecondOrderSystem::acceleration(double t, const Vec& q, const Vec& q_dot) const {
  return rhs(t, PhaseState{q, q_dot, Vec()}).q_ddot;
}

std::size_t rk4_step_count(double t0, double t1, double dt) {
  require(dt > 0.0, "integrate_rk4: dt must be positive");
  require(t1 > t0, "integrate_rk4: need t0 < t1");
  const double steps = std::ceil((t1 - t0) / dt - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, steps));
}

Trajectory integrate_rk4(const SecondOrderSystem& system, const Vec& q0, const Vec& q_dot0,
                         double t0, double t1, double dt, const Vec& aux0,
                         std::size_t record_stride) {
  require(q0.size() == q_dot0.size(), "integrate_rk4: q0 and q_dot0 differ in dimension");
  require(static_cast<std::size_t>(aux0.size()) == system.aux_names.size(),
          "integrate_rk4: auxiliary state does not match system.aux_names");
  require(record_stride >= 1, "integrate_rk4: record_stride must be >= 1");
  const std::size_t n = rk4_step_count(t0, t1, dt);
  const double h = (t1 - t0) / static_cast<double>(n);

  Trajectory out;
  out.t0 = t0;
  out.dt = h * static_cast<double>(record_stride);
  for (const auto& name : system.aux_names) out.channels[name];
  PhaseState x{q0, q_dot0, aux0};
  if (system.constrain) system.constrain(t0, x);

  const auto record = [&](std::size_t step, const PhaseState& s) {
    out.times.push_back(t0 + static_cast<double>(step) * h);
    out.q.push_back(s.q);
    out.q_dot.push_back(s.q_dot);
    for (std::size_t a = 0; a < system.aux_names.size(); ++a) {
      out.channels[system.aux_names[a]].push_back(s.aux(static_cast<Eigen::Index>(a)));
    }
  };
  record(0, x);

  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const PhaseRate k1 = rate_of(system, t, x);
    const PhaseState x2 = advance(x, x, k1, 0.5 * h);
    const PhaseRate k2 = rate_of(system, t + 0.5 * h, x2);
    const PhaseState x3 = advance(x, x2, k2, 0.5 * h);
    const PhaseRate k3 = rate_of(system, t + 0.5 * h, x3);
    const PhaseState x4 = advance(x, x3, k3, h);
    const PhaseRate k4 = rate_of(system, t + h, x4);

    x.q += (h / 6.0) * (x.q_dot + 2.0 * x2.q_dot + 2.0 * x3.q_dot + x4.q_dot);
    x.q_dot += (h / 6.0) * (k1.q_ddot + 2.0 * k2.q_ddot + 2.0 * k3.q_ddot + k4.q_ddot);
    if (x.aux.size() > 0) {
      x.aux += (h / 6.0) * (k1.aux_dot + 2.0 * k2.aux_dot + 2.0 * k3.aux_dot + k4.aux_dot);
    }
    const double t_next = t0 + static_cast<double>(i + 1) * h;
    if (system.constrain) system.constrain(t_next, x);
    if (!finite(x)) throw IntegrationAbort(system.name + ": non-finite state", t_next);
    if ((i + 1) % record_stride == 0) record(i + 1, x);
  }
  return out;
}

Trajectory integrate_rk4(const FirstOrderSystem& system, const Vec& y0, double t0, double t1,
                         double dt, std::size_t record_stride) {
  require(record_stride >= 1, "integrate_rk4: record_stride must be >= 1");
  const std::size_t n = rk4_step_count(t0, t1, dt);
  const double h = (t1 - t0) / static_cast<double>(n);
  Trajectory out;
  out.t0 = t0;
  out.dt = h * static_cast<double>(record_stride);
  Vec y = y0;
  const auto record = [&](std::size_t step) {
    const double t = t0 + static_cast<double>(step) * h;
    out.times.push_back(t);
    out.q.push_back(y);
    out.q_dot.push_back(system.rhs(t, y));
  };
  record(0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const Vec k1 = system.rhs(t, y);
    const Vec k2 = system.rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const Vec k3 = system.rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const Vec k4 = system.rhs(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) {
      throw IntegrationAbort(system.name + ": non-finite state", t0 + static_cast<double>(i + 1) * h);
    }
    if ((i + 1) % record_stride == 0) record(i + 1);
  }
  return out;
}

SecondOrderSystem eom_modified(double eta, double beta, double k, const Loss& loss) {
  require_positive(eta, "eom_modified: eta must be positive");
  require(beta >= 0.0 && beta < 1.0, "eom_modified: beta must lie in [0, 1)");
  require(k >= 0.0, "eom_modified: weight decay must be non-negative");
  SecondOrderSystem s;
  s.name = "modified";
  s.parameters = {{"eta", eta}, {"beta", beta}, {"k", k}};
  const double inv_mass = 2.0 / (eta * (1.0 + beta));
  const double friction = 1.0 - beta;
  s.rhs = [=](double, const PhaseState& x) {
    return plain(-inv_mass * (friction * x.q_dot + loss.grad(x.q) + k * x.q));
  };
  return s;
}

SecondOrderSystem eom_bregman_euclidean(const BregmanSchedule& schedule, const Loss& loss) {
  SecondOrderSystem s;
  s.name = "bregman-euclidean:" + schedule.name;
  s.rhs = [=](double t, const PhaseState& x) {
    try {
      schedule.check_time(t);
    } catch (const DomainError& e) {
      throw IntegrationAbort(e.what(), t);
    }
    const double damping = schedule.gamma_dot(t) - schedule.alpha_dot(t);
    const double drive = std::exp(2.0 * schedule.alpha(t) + schedule.beta(t));
    return plain(-damping * x.q_dot - drive * loss.grad(x.q));
  };
  return s;
}

SecondOrderSystem eom_bregman(const Metric& metric, const BregmanSchedule& schedule,
                              const Loss& loss) {
  if (metric.is_euclidean()) return eom_bregman_euclidean(schedule, loss);
  SecondOrderSystem s;
  s.name = "bregman-" + metric.name() + ":" + schedule.name;
  s.rhs = [=](double t, const PhaseState& x) {
    try {
      schedule.check_time(t);
      const double a = schedule.alpha(t);
      const double ea = std::exp(a);
      const Vec y = x.q + x.q_dot / ea;
      const Vec delta = metric.gradient(y) - metric.gradient(x.q);
      const Vec hq_qdot = metric.hessian(x.q) * x.q_dot;
      const Vec delta_rate = -schedule.gamma_dot(t) * delta + ea * delta - hq_qdot -
                             std::exp(a + schedule.beta(t)) * loss.grad(x.q);
      const Vec y_dot = metric.solve_hessian(y, delta_rate + hq_qdot);
      return plain(ea * (y_dot - (1.0 - schedule.alpha_dot(t) / ea) * x.q_dot));
    } catch (const DomainError& e) {
      throw IntegrationAbort(e.what(), t);
    }
  };
  return s;
}

FirstOrderSystem gradient_flow(const Loss& loss, double friction) {
  require_positive(friction, "gradient_flow: friction must be positive");
  FirstOrderSystem s;
  s.name = "gradient-flow";
  s.parameters = {{"friction", friction}};
  s.rhs = [=](double, const Vec& y) -> Vec { return -loss.grad(y) / friction; };
  return s;
}

SecondOrderSystem eom_radial_angular(double m, double mu, double k, const Loss& loss,
                                     bool coriolis) {
  require_positive(m, "eom_radial_angular: mass must be positive");
  require(mu >= 0.0 && k >= 0.0, "eom_radial_angular: friction and weight decay must be >= 0");
  require(loss.scale_invariant(), "eom_radial_angular: loss must be scale-invariant");
  SecondOrderSystem s;
  s.name = coriolis ? "radial-angular-coriolis" : "radial-angular";
  s.parameters = {{"m", m}, {"mu", mu}, {"k", k}};
  s.rhs = [=](double t, const PhaseState& x) {
    const Eigen::Index d = x.q.size() - 1;
    const double r = x.q(0);
    if (!(r >= 1e-8)) throw IntegrationAbort("radial-angular: radius collapsed below 1e-8", t);
    const double r_dot = x.q_dot(0);
    const Vec u = x.q.tail(d);
    const Vec u_dot = x.q_dot.tail(d);
    const double spin = u_dot.squaredNorm();
    Vec acc(x.q.size());
    acc(0) = ((m * spin - k) * r - mu * r_dot) / m;
    Vec u_acc = (-mu * u_dot - loss.grad(u) / (r * r)) / m - spin * u;
    if (coriolis) u_acc -= (2.0 * r_dot / r) * u_dot;
    acc.tail(d) = u_acc;
    return plain(std::move(acc));
  };
  s.constrain = [](double, PhaseState& x) {
    const Eigen::Index d = x.q.size() - 1;
    Vec u = x.q.tail(d);
    Vec u_dot = x.q_dot.tail(d);
    u_dot -= u.dot(u_dot) * u;
    u.normalize();
    u_dot -= u.dot(u_dot) * u;
    x.q.tail(d) = u;
    x.q_dot.tail(d) = u_dot;
  };
  return s;
}

PhaseState to_polar(const Vec& q, const Vec& q_dot) {
  require(q.size() == q_dot.size(), "to_polar: dimension mismatch");
  const double r = q.norm();
  if (!(r > 0.0)) throw SingularityError("to_polar: the origin has no direction");
  const Vec u = q / r;
  const double r_dot = u.dot(q_dot);
  PhaseState out;
  out.q.resize(q.size() + 1);
  out.q_dot.resize(q.size() + 1);
  out.q(0) = r;
  out.q.tail(q.size()) = u;
  out.q_dot(0) = r_dot;
  out.q_dot.tail(q.size()) = (q_dot - r_dot * u) / r;
  return out;
}

PhaseState from_polar(const Vec& polar_q, const Vec& polar_q_dot) {
  require(polar_q.size() == polar_q_dot.size() && polar_q.size() >= 2,
          "from_polar: expected (r, u) and (r_dot, u_dot)");
  const Eigen::Index d = polar_q.size() - 1;
  const double r = polar_q(0);
  PhaseState out;
  out.q = r * polar_q.tail(d);
  out.q_dot = polar_q_dot(0) * polar_q.tail(d) + r * polar_q_dot.tail(d);
  return out;
}

double SampledSignal::operator()(double t) const {
  require(!values.empty(), "SampledSignal: no samples");
  require(dt > 0.0, "SampledSignal: dt must be positive");
  const double x = (t - t0) / dt;
  if (x <= 0.0) return values.front();
  const double last = static_cast<double>(values.size() - 1);
  if (x >= last) return values.back();
  const auto i = static_cast<std::size_t>(x);
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

SecondOrderSystem eom_noether_radial(double m, double mu, double k, SampledSignal gsq) {
  require_positive(m, "eom_noether_radial: mass must be positive");
  require_positive(mu, "eom_noether_radial: friction must be positive");
  require(k >= 0.0, "eom_noether_radial: weight decay must be non-negative");
  SecondOrderSystem s;
  s.name = "noether-radial";
  s.parameters = {{"m", m}, {"mu", mu}, {"k", k}};
  s.rhs = [=](double t, const PhaseState& x) {
    const double w = x.q(0);
    if (!(w > 0.0)) throw IntegrationAbort("noether-radial: r^2 reached zero", t);
    Vec acc(1);
    acc(0) = (-mu * x.q_dot(0) - 2.0 * k * w + 2.0 * m * gsq(t) / (mu * mu * w)) / m;
    return plain(std::move(acc));
  };
  return s;
}

SecondOrderSystem eom_rmsprop(double eta, double rho, const Loss& loss) {
  require_positive(eta, "eom_rmsprop: eta must be positive");
  require(rho > 0.0 && rho < 1.0, "eom_rmsprop: rho must lie in (0, 1)");
  SecondOrderSystem s;
  s.name = "rmsprop";
  s.parameters = {{"eta", eta}, {"rho", rho}};
  s.aux_names = {"G"};
  s.rhs = [=](double t, const PhaseState& x) {
    const double G = x.aux(0);
    if (!(G > 0.0)) throw IntegrationAbort("rmsprop: accumulator G reached zero", t);
    const Vec g = loss.grad(x.q);
    PhaseRate r;
    r.q_ddot = (2.0 / eta) * (-x.q_dot - g / std::sqrt(G));
    r.aux_dot = Vec::Constant(1, (1.0 - rho) * (g.squaredNorm() - G) / eta);
    return r;
  };
  return s;
}

Vec match_initial_velocity(const SecondOrderSystem& system, const Vec& q0, const Vec& q_target,
                           double t0, double horizon, double dt, const Vec& aux0) {
  require(q0.size() == q_target.size(), "match_initial_velocity: dimension mismatch");
  require_positive(horizon, "match_initial_velocity: horizon must be positive");
  const auto land = [&](const Vec& v) {
    return integrate_rk4(system, q0, v, t0, t0 + horizon, dt, aux0).q.back();
  };
  const Eigen::Index n = q0.size();
  Vec v = (q_target - q0) / horizon;
  const double tol = 1e-13 * std::max(1.0, q_target.lpNorm<Eigen::Infinity>());
  for (int iter = 0; iter < 30; ++iter) {
    const Vec miss = land(v) - q_target;
    if (miss.lpNorm<Eigen::Infinity>() <= tol) return v;
    Mat jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double step = 1e-6 * std::max(1.0, std::abs(v(j)));
      Vec vp = v;
      Vec vm = v;
      vp(j) += step;
      vm(j) -= step;
      jac.col(j) = (land(vp) - land(vm)) / (2.0 * step);
    }
    v -= jac.fullPivLu().solve(miss);
  }
  const Vec miss = land(v) - q_target;
  if (miss.lpNorm<Eigen::Infinity>() > 1e-9 * std::max(1.0, q_target.lpNorm<Eigen::Infinity>())) {
    throw IntegrationAbort(system.name + ": shooting for the initial velocity did not converge",
                           t0 + horizon);
  }
  return v;
}

PhaseState nesterov_initial_state(const Loss& loss, const Vec& q0, double t0) {
  require_positive(t0, "nesterov_initial_state: t0 must be positive");
  const Vec g = loss.grad(q0);
  return PhaseState{q0 - (t0 * t0 / 8.0) * g, -(t0 / 4.0) * g, Vec()};
}

}  // namespace noetherdyn
