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

// Minimal SVG line charts: linear x, linear or log10 y, 1-2-5 ticks.

#include <noetherdyn/harness.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace noetherdyn::harness {

namespace {

constexpr double kWidth = 820.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 200.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Keeps the first, last, and per-bucket min and max, in x order.
std::vector<std::pair<double, double>> decimate(const std::vector<std::pair<double, double>>& pts,
                                                std::size_t max_points) {
  if (pts.size() <= max_points || max_points < 4) return pts;
  const std::size_t buckets = max_points / 2;
  std::vector<std::pair<double, double>> out;
  for (std::size_t b = 0; b < buckets; ++b) {
    const std::size_t lo = b * pts.size() / buckets;
    const std::size_t hi = (b + 1) * pts.size() / buckets;
    if (lo >= hi) continue;
    std::size_t imin = lo;
    std::size_t imax = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (pts[i].second < pts[imin].second) imin = i;
      if (pts[i].second > pts[imax].second) imax = i;
    }
    out.push_back(pts[std::min(imin, imax)]);
    if (imin != imax) out.push_back(pts[std::max(imin, imax)]);
  }
  if (out.back() != pts.back()) out.push_back(pts.back());
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return ticks;
}

}  // namespace

std::string render_svg(const Chart& chart, std::size_t max_points) {
  // Transform to plotting coordinates; log charts drop non-positive values.
  std::vector<std::vector<std::pair<double, double>>> lines;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : chart.series) {
    std::vector<std::pair<double, double>> pts;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      double y = s.y[i];
      if (chart.log_y) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      if (!std::isfinite(y) || !std::isfinite(s.x[i])) continue;
      pts.emplace_back(s.x[i], y);
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    lines.push_back(decimate(pts, max_points));
  }
  if (!(xmin <= xmax)) xmin = 0.0, xmax = 1.0;
  if (!(ymin <= ymax)) ymin = 0.0, ymax = 1.0;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) {
    const double pad = std::max(1e-12, 0.05 * std::abs(ymin));
    ymin -= pad;
    ymax += pad;
  } else {
    const double pad = 0.04 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
         "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " +
         fixed(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"28\" text-anchor=\"middle\" " +
         "font-size=\"15\">" + escape(chart.title) + "</text>\n";
  svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) +
         "\" height=\"" + fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : nice_ticks(xmin, xmax)) {
    const double x = px(t);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" + fixed(x) +
           "\" y2=\"" + fixed(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t : nice_ticks(ymin, ymax)) {
    const double y = py(t);
    svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft) +
           "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft + pw) +
           "\" y2=\"" + fixed(y) + "\" stroke=\"#e0e0e0\"/>\n";
    const std::string label = chart.log_y ? "1e" + tick_label(t) : tick_label(t);
    svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(y + 4) +
           "\" text-anchor=\"end\">" + label + "</text>\n";
  }
  svg += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape(chart.x_label) + "</text>\n";
  const std::string y_label = chart.log_y ? chart.y_label + " (log10)" : chart.y_label;
  svg += "<text transform=\"translate(20," + fixed(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(y_label) + "</text>\n";

  for (std::size_t s = 0; s < lines.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    if (!lines[s].empty()) {
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : lines[s]) svg += fixed(px(x)) + "," + fixed(py(y)) + " ";
      svg += "\"/>\n";
    }
    const double ly = kTop + 15.0 + 20.0 * static_cast<double>(s);
    const double lx = kLeft + pw + 15.0;
    svg += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 25) +
           "\" y2=\"" + fixed(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(lx + 32) + "\" y=\"" + fixed(ly + 4) + "\">" +
           escape(chart.series[s].label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace noetherdyn::harness
