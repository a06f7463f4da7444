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

#include <noetherdyn/harness.hpp>
#include <noetherdyn/types.hpp>

#include <cmath>
#include <cstdio>

namespace noetherdyn::harness {

void Table::add(const std::string& column, std::vector<double> values) {
  if (values.size() != index.size()) {
    throw ContractError("table '" + name + "': column '" + column + "' has " +
                        std::to_string(values.size()) + " rows, index has " +
                        std::to_string(index.size()));
  }
  columns.emplace_back(column, std::move(values));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_csv(const Table& table) {
  std::string out = table.index_name;
  for (const auto& [name, values] : table.columns) out += "," + name;
  out += "\n";
  for (std::size_t i = 0; i < table.index.size(); ++i) {
    out += format_number(table.index[i]);
    for (const auto& column : table.columns) out += "," + format_number(column.second[i]);
    out += "\n";
  }
  return out;
}

std::string format_csv(const TextTable& table) {
  std::string out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

ChannelComparison compare_channels(const Series& a, const Series& b, double tolerance,
                                   Deviation mode, double t_lo, double t_hi) {
  if (a.t.size() != a.v.size() || b.t.size() != b.v.size()) {
    throw ContractError("compare_channels: series times and values differ in length");
  }
  if (a.t.size() != b.t.size()) throw ContractError("compare_channels: grids differ in length");
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    if (std::abs(a.t[i] - b.t[i]) > 1e-12 * std::max(1.0, std::abs(a.t[i]))) {
      throw ContractError("compare_channels: series do not share a time grid");
    }
  }
  ChannelComparison out;
  out.max_deviation = 0.0;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    if (a.t[i] < t_lo || a.t[i] > t_hi) continue;
    double dev = std::abs(a.v[i] - b.v[i]);
    if (mode == Deviation::Relative) dev /= std::abs(b.v[i]);
    if (out.samples == 0 || dev > out.max_deviation || std::isnan(dev)) {
      out.max_deviation = dev;
      out.argmax_t = a.t[i];
    }
    ++out.samples;
    if (std::isnan(dev)) break;
  }
  if (out.samples == 0) throw ContractError("compare_channels: comparison window is empty");
  out.pass = out.max_deviation < tolerance;
  return out;
}

std::string format_verdict(const std::vector<Assertion>& assertions) {
  std::string out;
  for (const auto& a : assertions) {
    out += a.id + "\t" + (a.pass ? "pass" : "fail") + "\t" + format_number(a.measured) + "\t" +
           format_number(a.tolerance) + "\n";
  }
  return out;
}

bool ExperimentResult::all_pass() const {
  for (const auto& a : assertions) {
    if (!a.pass) return false;
  }
  return true;
}

const Assertion* ExperimentResult::find(const std::string& id) const {
  for (const auto& a : assertions) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

}  // namespace noetherdyn::harness
