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

// table2, noether-residual and conservation experiments.

#include "support.hpp"

#include <noetherdyn/continuous.hpp>
#include <noetherdyn/discrete.hpp>
#include <noetherdyn/symmetry.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace noetherdyn::harness::detail {

namespace {

std::vector<SymmetryTransform> standard_transforms(Eigen::Index dim, std::mt19937_64& rng) {
  return {SymmetryTransform::translation(Vec::Ones(dim)),
          SymmetryTransform::rotation(random_skew(dim, rng)), SymmetryTransform::scale(),
          SymmetryTransform::rescale(dim / 2)};
}

bool expected_symmetric(const std::string& metric, const std::string& transform) {
  return metric == "euclidean" && (transform == "translation" || transform == "rotation");
}

}  // namespace

ExperimentResult run_table2(const Config& config) {
  Stopwatch clock;
  const auto dim = static_cast<Eigen::Index>(config.integer("dim"));
  const auto samples = static_cast<int>(config.integer("samples"));
  if (dim < 2 || dim % 2 != 0) throw UsageError("table2: dim must be even and >= 2");
  if (samples < 1) throw UsageError("table2: samples must be >= 1");
  std::mt19937_64 rng(config.seed());
  const auto transforms = standard_transforms(dim, rng);
  std::vector<Metric> metrics = {Metric::euclidean(dim), Metric::negative_entropy(dim)};
  // The quadratic-form row is reported but not part of the asserted pattern.
  const bool with_quadratic = config.number_or("include_quadratic_form", 0.0) != 0.0;
  if (with_quadratic) metrics.push_back(Metric::quadratic_form(random_spd(dim, rng)));

  const Table2Report report = table2_report(metrics, transforms, samples, config.seed());
  const double seconds = clock.seconds();

  ExperimentResult out;
  out.kind = Experiment::Table2;
  TextTable matrix{"table2_matrix", {"metric"}, {}};
  TextTable stats{"table2_cells",
                  {"metric", "transform", "verdict", "expected", "max_abs", "median_abs", "min_abs"},
                  {}};
  for (const auto& t : report.transforms) matrix.header.push_back(t);

  int mismatches = 0;
  double worst_symmetric = 0.0;
  double weakest_asymmetric = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    std::vector<std::string> row = {report.metrics[m]};
    const bool asserted = report.metrics[m] != "quadratic-form";
    for (std::size_t t = 0; t < report.transforms.size(); ++t) {
      const Table2Cell& c = report.at(m, t);
      const std::string verdict = c.verdict == Symmetry::Symmetric ? "symmetric" : "asymmetric";
      const bool expect = expected_symmetric(c.metric, c.transform);
      row.push_back(verdict);
      stats.rows.push_back({c.metric, c.transform, verdict,
                            asserted ? (expect ? "symmetric" : "asymmetric") : "not-asserted",
                            format_number(c.max_abs), format_number(c.median_abs),
                            format_number(c.min_abs)});
      if (!asserted) continue;
      if ((c.verdict == Symmetry::Symmetric) != expect) ++mismatches;
      if (expect) {
        worst_symmetric = std::max(worst_symmetric, c.max_abs);
      } else {
        weakest_asymmetric = std::min(weakest_asymmetric, c.median_abs);
      }
    }
    matrix.rows.push_back(row);
  }
  out.text_tables = {matrix, stats};

  Chart chart{"table2_asymmetry", "Median |dT/ds| per cell", "transform index", "median |dT/ds|",
              true, {}};
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    ChartSeries s{report.metrics[m], {}, {}};
    for (std::size_t t = 0; t < report.transforms.size(); ++t) {
      s.x.push_back(static_cast<double>(t));
      s.y.push_back(report.at(m, t).median_abs);
    }
    chart.series.push_back(s);
  }
  out.charts = {chart};

  out.assertions = {
      at_most("table2.pattern-mismatches", mismatches, 0.0),
      at_most("table2.symmetric-max-abs", worst_symmetric, kSymmetricThreshold),
      at_least("table2.asymmetric-min-median-abs", weakest_asymmetric, 1e-3),
      below("table2.runtime-seconds", seconds, 1.0),
  };
  out.summary = {{"dim", std::to_string(dim)},
                 {"samples", std::to_string(samples)},
                 {"quadratic_form_row", with_quadratic ? "reported" : "off"}};
  return out;
}

namespace {

struct ResidualCell {
  std::string metric;
  std::string transform;
  std::vector<NoetherObservables> coarse;
  double max_coarse = 0.0;
  double max_fine = 0.0;
  double floor_fine = 0.0;
  double max_noneuclid = 0.0;
};

struct ResidualProblem {
  Metric metric;
  SymmetryTransform transform;
  Loss loss;
  Vec q0;
  Vec q_dot0;
};

ResidualProblem make_problem(int metric_kind, int transform_kind, Eigen::Index dim,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1000003ULL * static_cast<std::uint64_t>(4 * metric_kind + transform_kind));
  Loss loss = Loss::quadratic(Mat::Identity(1, 1), Vec::Zero(1));
  SymmetryTransform transform = SymmetryTransform::scale();
  Eigen::Index n = dim;
  switch (transform_kind) {
    case 0:
      loss = Loss::softmax_xent(dim, 0);
      transform = SymmetryTransform::translation(Vec::Ones(dim));
      break;
    case 1:
      loss = Loss::mexican_hat(1.5, 0.5);
      transform = SymmetryTransform::rotation(random_skew(dim, rng));
      break;
    case 2:
      // Spread spectrum keeps the stencil truncation error above roundoff.
      loss = Loss::rayleigh_quotient(Mat(linspace(1.0, 12.0, dim).asDiagonal()));
      transform = SymmetryTransform::scale();
      break;
    default: {
      const Eigen::Index d_in = 2, hidden = 2, d_out = 2, count = 4;
      Mat x(d_in, count);
      Mat y(d_out, count);
      for (Eigen::Index j = 0; j < count; ++j) {
        // Small data: with unit-scale data the negative-entropy dual point
        // y = q + qdot runs into the boundary (min y ~ 1e-8 by t = 1) and the
        // charge loses nine digits to cancellation in y.
        x.col(j) = 0.3 * random_normal(d_in, rng);
        y.col(j) = 0.3 * random_normal(d_out, rng);
      }
      loss = Loss::two_layer_linear(x, y, hidden);
      n = hidden * d_in + d_out * hidden;
      transform = SymmetryTransform::rescale(hidden * d_in);
      break;
    }
  }
  Metric metric = metric_kind == 0   ? Metric::euclidean(n)
                  : metric_kind == 1 ? Metric::quadratic_form(random_spd(n, rng))
                                     : Metric::negative_entropy(n);
  Vec q0 = metric_kind == 2 ? random_uniform(n, 0.5, 1.5, rng) : Vec(random_normal(n, rng));
  Vec q_dot0 = random_uniform(n, -0.3, 0.3, rng);
  return {metric, transform, loss, q0, q_dot0};
}

}  // namespace

ExperimentResult run_noether_residual(const Config& config) {
  Stopwatch clock;
  const double dt = config.number("dt");
  const double t1 = config.number("t1");
  const double mass = config.number("mass");
  const double friction = config.number("friction");
  const auto dim = static_cast<Eigen::Index>(config.integer("dim"));
  if (!(dt > 0.0 && t1 > 0.0 && mass > 0.0 && friction >= 0.0) || dim < 2) {
    throw UsageError("noether-residual: need dt, t1, mass > 0, friction >= 0, dim >= 2");
  }
  const std::uint64_t seed = config.seed();
  const BregmanSchedule schedule = BregmanSchedule::natural(mass, friction);

  std::vector<ResidualCell> cells(12);
  kernels::for_each_index(cells.size(), Execution::Parallel, [&](std::size_t i) {
    const int metric_kind = static_cast<int>(i / 4);
    const int transform_kind = static_cast<int>(i % 4);
    const ResidualProblem p = make_problem(metric_kind, transform_kind, dim, seed);
    const SecondOrderSystem system = eom_bregman(p.metric, schedule, p.loss);
    ResidualCell& c = cells[i];
    c.metric = p.metric.name();
    c.transform = p.transform.name();
    const Trajectory coarse = integrate_rk4(system, p.q0, p.q_dot0, 0.0, t1, dt);
    const Trajectory fine = integrate_rk4(system, p.q0, p.q_dot0, 0.0, t1, 0.5 * dt);
    c.coarse = noether_residual(p.metric, schedule, p.transform, coarse, Stencil::FivePoint,
                                Execution::Serial);
    const auto fine_obs = noether_residual(p.metric, schedule, p.transform, fine,
                                           Stencil::FivePoint, Execution::Serial);
    c.max_coarse = max_abs_residual(c.coarse);
    c.max_fine = max_abs_residual(fine_obs);
    double charge_scale = 0.0;
    for (const auto& o : fine_obs) charge_scale = std::max(charge_scale, std::abs(o.charge));
    // Rounding bound of the five-point stencil (coefficient mass 18/12),
    // with a safety factor of 64.
    c.floor_fine = 64.0 * std::numeric_limits<double>::epsilon() * 1.5 * charge_scale /
                   (0.5 * fine.dt);
    for (const auto& o : c.coarse) c.max_noneuclid = std::max(c.max_noneuclid, std::abs(o.noneuclid_term));
  });
  const double seconds = clock.seconds();

  ExperimentResult out;
  out.kind = Experiment::NoetherResidual;
  TextTable summary{"noether_residual_summary",
                    {"metric", "transform", "max_residual_dt", "max_residual_half_dt", "ratio",
                     "roundoff_floor_half_dt"},
                    {}};
  double euclid_noneuclid = 0.0;
  std::map<std::string, Chart> charts;
  for (const auto& c : cells) {
    const std::string key = c.metric + "." + c.transform;
    const double ratio = c.max_fine > 0.0 ? c.max_coarse / c.max_fine
                                          : std::numeric_limits<double>::infinity();
    summary.rows.push_back({c.metric, c.transform, format_number(c.max_coarse),
                            format_number(c.max_fine), format_number(ratio),
                            format_number(c.floor_fine)});
    out.assertions.push_back(at_most("noether-residual." + key + ".max-residual", c.max_coarse, 1e-4));
    if (c.max_fine <= c.floor_fine) {
      // Halving cannot shrink a residual that already sits at rounding level.
      out.assertions.push_back(
          at_most("noether-residual." + key + ".roundoff-floor", c.max_fine, c.floor_fine));
    } else {
      out.assertions.push_back(at_least("noether-residual." + key + ".halving-ratio", ratio, 8.0));
    }
    if (c.metric == "euclidean") euclid_noneuclid = std::max(euclid_noneuclid, c.max_noneuclid);

    Table table{"noether_" + c.metric + "_" + c.transform, "t", {}, {}};
    std::vector<double> charge, rate, diss, asym, noneu, res, abs_res;
    for (const auto& o : c.coarse) {
      table.index.push_back(o.t);
      charge.push_back(o.charge);
      rate.push_back(o.charge_rate);
      diss.push_back(o.dissipation);
      asym.push_back(o.dynamic_asymmetry);
      noneu.push_back(o.noneuclid_term);
      res.push_back(o.residual);
      abs_res.push_back(std::abs(o.residual));
    }
    Chart& chart = charts[c.metric];
    chart.name = "noether_residual_" + c.metric;
    chart.title = "Noether balance residual, " + c.metric + " metric";
    chart.x_label = "t";
    chart.y_label = "|residual|";
    chart.log_y = true;
    chart.series.push_back({c.transform, table.index, abs_res});
    table.add("charge", charge);
    table.add("charge_rate", rate);
    table.add("dissipation", diss);
    table.add("dynamic_asymmetry", asym);
    table.add("noneuclid_term", noneu);
    table.add("residual", res);
    out.tables.push_back(std::move(table));
  }
  out.text_tables = {summary};
  for (auto& [name, chart] : charts) out.charts.push_back(std::move(chart));
  out.assertions.push_back(
      at_most("noether-residual.euclidean-noneuclid-term", euclid_noneuclid, 1e-10));
  out.assertions.push_back(below("noether-residual.runtime-seconds", seconds, 30.0));
  out.summary = {{"schedule", schedule.name},
                 {"dt", format_number(dt)},
                 {"stencil", "five-point"}};
  return out;
}

ExperimentResult run_conservation(const Config& config) {
  const double eta = config.number("eta");
  const auto steps = config.integer("steps");
  const auto dim = static_cast<Eigen::Index>(config.integer("dim"));
  const auto sweep = config.list("eta_sweep");
  const double horizon = config.number("sweep_horizon");
  const auto masses = config.list("masses");
  const double mass_friction = config.number("mass_friction");
  const double mass_t1 = config.number("mass_t1");
  if (!(eta > 0.0) || steps < 1 || dim < 2 || !(horizon > 0.0) || !(mass_friction > 0.0) ||
      !(mass_t1 > 0.0)) {
    throw UsageError("conservation: invalid eta, steps, dim, sweep_horizon or mass settings");
  }
  std::mt19937_64 rng(config.seed());
  const Loss rayleigh = Loss::rayleigh_quotient(Mat(linspace(1.0, 2.0, dim).asDiagonal()));
  const Vec q0 = random_unit(dim, rng);

  ExperimentResult out;
  out.kind = Experiment::Conservation;

  // |q|^2 under plain gradient descent on a scale-invariant loss.
  {
    Table table{"conservation_rayleigh", "t", {}, {}};
    std::vector<double> r2, drift;
    OptimizerState s = OptimizerState::at(q0);
    const double r2_0 = q0.squaredNorm();
    double worst = 0.0;
    for (std::int64_t n = 0; n <= steps; ++n) {
      if (n > 0) s = step_gd_momentum_wd(s, rayleigh, eta, 0.0, 0.0);
      const double rel = (s.q.squaredNorm() - r2_0) / r2_0;
      worst = std::max(worst, std::abs(rel));
      table.index.push_back(static_cast<double>(n) * eta);
      r2.push_back(s.q.squaredNorm());
      drift.push_back(rel);
    }
    table.add("r2", r2);
    table.add("relative_drift", drift);
    out.charts.push_back({"conservation_rayleigh", "|q|^2 drift under gradient descent", "t = n eta",
                          "relative drift of |q|^2", false, {{"rayleigh", table.index, drift}}});
    out.tables.push_back(std::move(table));
    out.assertions.push_back(at_most("conservation.rayleigh-r2-drift", worst, 1e-3));
  }

  // |q1|^2 - |q2|^2 on the two-layer linear chain.
  {
    const Eigen::Index d_in = 3, hidden = 3, d_out = 2, count = 5;
    Mat x(d_in, count);
    Mat y(d_out, count);
    for (Eigen::Index j = 0; j < count; ++j) {
      x.col(j) = 0.5 * random_normal(d_in, rng);
      y.col(j) = 0.5 * random_normal(d_out, rng);
    }
    const Loss chain = Loss::two_layer_linear(x, y, hidden);
    const Eigen::Index split = chain.rescale_split();
    Vec w(chain.dimension());
    w.head(split) = random_normal(split, rng);
    w.tail(w.size() - split) = 0.5 * random_normal(w.size() - split, rng);
    const auto imbalance = [&](const Vec& q) {
      return q.head(split).squaredNorm() - q.tail(q.size() - split).squaredNorm();
    };
    Table table{"conservation_chain", "t", {}, {}};
    std::vector<double> value, drift;
    OptimizerState s = OptimizerState::at(w);
    const double d0 = imbalance(w);
    double worst = 0.0;
    for (std::int64_t n = 0; n <= steps; ++n) {
      if (n > 0) s = step_gd_momentum_wd(s, chain, eta, 0.0, 0.0);
      const double rel = (imbalance(s.q) - d0) / std::abs(d0);
      worst = std::max(worst, std::abs(rel));
      table.index.push_back(static_cast<double>(n) * eta);
      value.push_back(imbalance(s.q));
      drift.push_back(rel);
    }
    table.add("imbalance", value);
    table.add("relative_drift", drift);
    out.charts.push_back({"conservation_chain", "|q1|^2 - |q2|^2 drift under gradient descent",
                          "t = n eta", "relative drift", false, {{"two-layer chain", table.index, drift}}});
    out.tables.push_back(std::move(table));
    out.assertions.push_back(at_most("conservation.chain-imbalance-drift", worst, 1e-3));
  }

  // Drift per unit time against eta over a fixed horizon.
  {
    Table table{"conservation_eta_sweep", "eta", {}, {}};
    std::vector<double> rates;
    for (double e : sweep) {
      if (!(e > 0.0)) throw UsageError("conservation: eta_sweep entries must be positive");
      const auto n = static_cast<std::int64_t>(std::llround(horizon / e));
      OptimizerState s = OptimizerState::at(q0);
      for (std::int64_t i = 0; i < n; ++i) s = step_gd_momentum_wd(s, rayleigh, e, 0.0, 0.0);
      const double t_end = static_cast<double>(n) * e;
      table.index.push_back(e);
      rates.push_back((s.q.squaredNorm() - q0.squaredNorm()) / (q0.squaredNorm() * t_end));
    }
    const double slope = loglog_slope(table.index, rates);
    std::vector<double> log_eta;
    for (double e : table.index) log_eta.push_back(std::log10(e));
    table.add("drift_per_unit_time", rates);
    out.charts.push_back({"conservation_eta_sweep", "|q|^2 drift rate against learning rate",
                          "log10 eta", "drift per unit time", true, {{"measured", log_eta, rates}}});
    out.tables.push_back(std::move(table));
    out.assertions.push_back(
        at_most("conservation.drift-eta-slope-error", std::abs(slope - 1.0), 0.2));
    out.summary.push_back({"drift_eta_slope", format_number(slope)});
  }

  // Over-damped limit: the velocity charge <q_dot, q> shrinks linearly with m.
  {
    Table table{"conservation_mass_sweep", "mass", {}, {}};
    std::vector<double> mean_abs;
    for (double m : masses) {
      if (!(m > 0.0)) throw UsageError("conservation: masses must be positive");
      const auto system =
          eom_bregman_euclidean(BregmanSchedule::natural(m, mass_friction), rayleigh);
      const double dt = std::min(m / 20.0, 1e-3);
      const Vec v0 = -rayleigh.grad(q0) / mass_friction;
      const Trajectory tr = integrate_rk4(system, q0, v0, 0.0, mass_t1, dt);
      // Trapezoid time average of |<q_dot, q>|.
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
        acc += 0.5 * tr.dt * (std::abs(tr.q_dot[i].dot(tr.q[i])) +
                              std::abs(tr.q_dot[i + 1].dot(tr.q[i + 1])));
      }
      table.index.push_back(m);
      mean_abs.push_back(acc / (tr.t_end() - tr.t0));
    }
    const double slope = loglog_slope(table.index, mean_abs);
    table.add("mean_abs_velocity_charge", mean_abs);
    out.tables.push_back(std::move(table));
    out.assertions.push_back(
        at_most("conservation.charge-mass-slope-error", std::abs(slope - 1.0), 0.2));
    out.summary.push_back({"charge_mass_slope", format_number(slope)});
  }
  return out;
}

}  // namespace noetherdyn::harness::detail
