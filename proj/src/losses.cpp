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

#include <noetherdyn/losses.hpp>

#include "overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace noetherdyn {

using detail::Overloaded;

namespace {

constexpr double kOriginRadius = 1e-12;

bool is_symmetric(const Mat& a) {
  return (a - a.transpose()).norm() <= 1e-12 * std::max(1.0, a.norm());
}

// W1 is hidden x d_in, W2 is d_out x hidden, both column-major inside q.
struct ChainView {
  Eigen::Map<const Mat> w1;
  Eigen::Map<const Mat> w2;
};

ChainView chain_view(const Loss::TwoLayerLinear& net, const Vec& q) {
  const Eigen::Index d_in = net.inputs.rows();
  const Eigen::Index d_out = net.targets.rows();
  const Eigen::Index n1 = net.hidden * d_in;
  return ChainView{Eigen::Map<const Mat>(q.data(), net.hidden, d_in),
                   Eigen::Map<const Mat>(q.data() + n1, d_out, net.hidden)};
}

double log_sum_exp(const Vec& q) {
  const double top = q.maxCoeff();
  return top + std::log((q.array() - top).exp().sum());
}

}  // namespace

Loss Loss::rayleigh_quotient(const Mat& a) {
  require(a.rows() == a.cols() && a.rows() > 0, "rayleigh_quotient: square matrix required");
  require(is_symmetric(a), "rayleigh_quotient: matrix must be symmetric");
  return Loss(RayleighQuotient{a});
}

Loss Loss::normalized(const Loss& base) {
  return Loss(NormalizedComposite{std::make_shared<const Loss>(base)});
}

Loss Loss::two_layer_linear(const Mat& inputs, const Mat& targets, Eigen::Index hidden) {
  require(hidden > 0, "two_layer_linear: hidden width must be positive");
  require(inputs.cols() == targets.cols() && inputs.cols() > 0,
          "two_layer_linear: inputs and targets must have the same sample count");
  return Loss(TwoLayerLinear{inputs, targets, hidden});
}

Loss Loss::scalar_chain(double x, double y) {
  return two_layer_linear(Mat::Constant(1, 1, x), Mat::Constant(1, 1, y), 1);
}

Loss Loss::softmax_xent(Eigen::Index classes, Eigen::Index label) {
  require(classes >= 2, "softmax_xent: at least two classes");
  require(label >= 0 && label < classes, "softmax_xent: label out of range");
  return Loss(SoftmaxXent{classes, label});
}

Loss Loss::radial_well(std::function<double(double)> v, std::function<double(double)> dv,
                       std::string label) {
  require(static_cast<bool>(v) && static_cast<bool>(dv), "radial_well: v and dv required");
  return Loss(RadialWell{std::move(v), std::move(dv), std::move(label)});
}

Loss Loss::mexican_hat(double radius, double depth) {
  return radial_well([=](double r) { return depth * std::pow(r * r - radius * radius, 2); },
                     [=](double r) { return 4.0 * depth * r * (r * r - radius * radius); },
                     "mexican-hat");
}

Loss Loss::quadratic(const Mat& a, const Vec& b) {
  require(a.rows() == a.cols() && a.rows() == b.size(), "quadratic: dimension mismatch");
  require(is_symmetric(a), "quadratic: matrix must be symmetric");
  return Loss(Quadratic{a, b});
}

Loss Loss::planar_winding(Eigen::Index dim, Eigen::Index i, Eigen::Index j, double strength) {
  require(dim >= 2 && i >= 0 && j >= 0 && i < dim && j < dim && i != j,
          "planar_winding: invalid plane");
  return Loss(PlanarWinding{dim, i, j, strength});
}

Loss Loss::sum(const std::vector<Loss>& terms) {
  require(!terms.empty(), "sum: at least one term");
  Sum out;
  Eigen::Index dim = 0;
  for (const auto& term : terms) {
    const Eigen::Index d = term.dimension();
    require(dim == 0 || d == 0 || d == dim, "sum: terms disagree on dimension");
    if (d != 0) dim = d;
    out.terms.push_back(std::make_shared<const Loss>(term));
  }
  return Loss(std::move(out));
}

Eigen::Index Loss::dimension() const {
  return std::visit(
      Overloaded{
          [](const RayleighQuotient& l) { return l.a.rows(); },
          [](const NormalizedComposite& l) { return l.base->dimension(); },
          [](const TwoLayerLinear& l) {
            return l.hidden * (l.inputs.rows() + l.targets.rows());
          },
          [](const SoftmaxXent& l) { return l.classes; },
          [](const RadialWell&) { return Eigen::Index{0}; },
          [](const Quadratic& l) { return l.a.rows(); },
          [](const PlanarWinding& l) { return l.dim; },
          [](const Sum& l) {
            Eigen::Index d = 0;
            for (const auto& t : l.terms) d = std::max(d, t->dimension());
            return d;
          },
      },
      *kind_);
}

Eigen::Index Loss::rescale_split() const {
  if (const auto* net = std::get_if<TwoLayerLinear>(kind_.get())) {
    return net->hidden * net->inputs.rows();
  }
  return 0;
}

std::string Loss::name() const {
  return std::visit(Overloaded{
                        [](const RayleighQuotient&) { return std::string("rayleigh-quotient"); },
                        [](const NormalizedComposite& l) { return "normalized(" + l.base->name() + ")"; },
                        [](const TwoLayerLinear&) { return std::string("two-layer-linear"); },
                        [](const SoftmaxXent&) { return std::string("softmax-xent"); },
                        [](const RadialWell& l) { return l.label; },
                        [](const Quadratic&) { return std::string("quadratic"); },
                        [](const PlanarWinding&) { return std::string("planar-winding"); },
                        [](const Sum& l) {
                          std::string out;
                          for (const auto& t : l.terms) out += (out.empty() ? "" : "+") + t->name();
                          return out;
                        },
                    },
                    *kind_);
}

std::vector<SymmetryKind> Loss::symmetry_tags() const {
  return std::visit(
      Overloaded{
          [](const RayleighQuotient&) { return std::vector{SymmetryKind::Scale}; },
          [](const NormalizedComposite&) { return std::vector{SymmetryKind::Scale}; },
          [](const TwoLayerLinear&) { return std::vector{SymmetryKind::Rescale}; },
          [](const SoftmaxXent&) { return std::vector{SymmetryKind::Translation}; },
          [](const RadialWell&) { return std::vector{SymmetryKind::Rotation}; },
          [](const Quadratic&) { return std::vector<SymmetryKind>{}; },
          [](const PlanarWinding&) { return std::vector{SymmetryKind::Scale}; },
          [](const Sum& l) {
            std::vector<SymmetryKind> common = l.terms.front()->symmetry_tags();
            for (const auto& t : l.terms) {
              std::erase_if(common, [&](SymmetryKind k) { return !t->has_tag(k); });
            }
            return common;
          },
      },
      *kind_);
}

bool Loss::has_tag(SymmetryKind kind) const {
  const auto tags = symmetry_tags();
  return std::find(tags.begin(), tags.end(), kind) != tags.end();
}

void Loss::check_argument(const Vec& q) const {
  const Eigen::Index d = dimension();
  if (d != 0 && q.size() != d) {
    throw ContractError(name() + ": expected dimension " + std::to_string(d) + ", got " +
                        std::to_string(q.size()));
  }
  if (scale_invariant() && q.norm() <= kOriginRadius) {
    throw SingularityError("origin is a singular point of scale-invariant losses");
  }
}

double Loss::value(const Vec& q) const {
  check_argument(q);
  return std::visit(
      Overloaded{
          [&](const RayleighQuotient& l) { return q.dot(l.a * q) / q.squaredNorm(); },
          [&](const NormalizedComposite& l) { return l.base->value(q / q.norm()); },
          [&](const TwoLayerLinear& l) {
            const auto v = chain_view(l, q);
            return 0.5 * (v.w2 * (v.w1 * l.inputs) - l.targets).squaredNorm();
          },
          [&](const SoftmaxXent& l) { return log_sum_exp(q) - q(l.label); },
          [&](const RadialWell& l) { return l.v(q.norm()); },
          [&](const Quadratic& l) { return 0.5 * q.dot(l.a * q) - l.b.dot(q); },
          [&](const PlanarWinding& l) { return -l.strength * std::atan2(q(l.j), q(l.i)); },
          [&](const Sum& l) {
            double total = 0.0;
            for (const auto& t : l.terms) total += t->value(q);
            return total;
          },
      },
      *kind_);
}

Vec Loss::grad(const Vec& q) const {
  check_argument(q);
  return std::visit(
      Overloaded{
          [&](const RayleighQuotient& l) -> Vec {
            const double r2 = q.squaredNorm();
            const Vec aq = l.a * q;
            return 2.0 * (aq - (q.dot(aq) / r2) * q) / r2;
          },
          [&](const NormalizedComposite& l) -> Vec {
            const double r = q.norm();
            const Vec unit = q / r;
            const Vec g = l.base->grad(unit);
            return (g - unit.dot(g) * unit) / r;
          },
          [&](const TwoLayerLinear& l) -> Vec {
            const auto v = chain_view(l, q);
            const Mat hidden = v.w1 * l.inputs;
            const Mat residual = v.w2 * hidden - l.targets;
            Vec out(q.size());
            Eigen::Map<Mat>(out.data(), v.w1.rows(), v.w1.cols()) =
                v.w2.transpose() * residual * l.inputs.transpose();
            Eigen::Map<Mat>(out.data() + v.w1.size(), v.w2.rows(), v.w2.cols()) =
                residual * hidden.transpose();
            return out;
          },
          [&](const SoftmaxXent& l) -> Vec {
            Vec p = (q.array() - log_sum_exp(q)).exp();
            p(l.label) -= 1.0;
            return p;
          },
          [&](const RadialWell& l) -> Vec {
            const double r = q.norm();
            if (r == 0.0) return Vec::Zero(q.size());
            return (l.dv(r) / r) * q;
          },
          [&](const Quadratic& l) -> Vec { return l.a * q - l.b; },
          [&](const PlanarWinding& l) -> Vec {
            const double rho2 = q(l.i) * q(l.i) + q(l.j) * q(l.j);
            if (rho2 <= kOriginRadius * kOriginRadius) {
              throw SingularityError("planar-winding: gradient undefined on the winding axis");
            }
            Vec out = Vec::Zero(q.size());
            out(l.i) = l.strength * q(l.j) / rho2;
            out(l.j) = -l.strength * q(l.i) / rho2;
            return out;
          },
          [&](const Sum& l) -> Vec {
            Vec total = Vec::Zero(q.size());
            for (const auto& t : l.terms) total += t->grad(q);
            return total;
          },
      },
      *kind_);
}

Vec normalized_gradient(const Loss& loss, const Vec& q) {
  const double r = q.norm();
  if (r <= kOriginRadius) {
    throw SingularityError("origin is a singular point of scale-invariant losses");
  }
  return loss.grad(q / r);
}

SymmetryReport check_symmetry(const Loss& loss, const SymmetryTransform& transform, int samples,
                              std::uint64_t seed) {
  if (!loss.has_tag(transform.kind())) {
    throw ContractError(loss.name() + " is not tagged with " + transform.name() + " symmetry");
  }
  require(samples >= 1, "check_symmetry: samples must be >= 1");

  Eigen::Index dim = loss.dimension();
  if (dim == 0) {
    if (const auto* r = std::get_if<SymmetryTransform::Rotation>(&transform.data())) {
      dim = r->generator.rows();
    } else if (const auto* t = std::get_if<SymmetryTransform::Translation>(&transform.data())) {
      dim = t->direction.size();
    } else {
      dim = 4;
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);

  SymmetryReport report;
  report.samples = samples;
  for (int k = 0; k < samples; ++k) {
    Vec q(dim);
    for (Eigen::Index i = 0; i < dim; ++i) q(i) = normal(rng);
    const double s = shift(rng);
    const double f = loss.value(q);
    const double scale = 1.0 + std::abs(f);
    report.max_value_deviation =
        std::max(report.max_value_deviation, std::abs(loss.value(transform.apply(q, s)) - f) / scale);
    report.max_generator_overlap = std::max(
        report.max_generator_overlap, std::abs(loss.grad(q).dot(transform.generator(q))) / scale);
  }
  report.passed = report.max_value_deviation <= 1e-10 && report.max_generator_overlap <= 1e-10;
  return report;
}

}  // namespace noetherdyn
