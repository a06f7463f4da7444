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

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace noetherdyn::harness {

namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_names() {
  static const std::vector<std::pair<Experiment, std::string>> names = {
      {Experiment::NoetherResidual, "noether-residual"},
      {Experiment::Table2, "table2"},
      {Experiment::Conservation, "conservation"},
      {Experiment::ModifiedEq, "modified-eq"},
      {Experiment::BnEffectiveLr, "bn-effective-lr"},
      {Experiment::RmspropEquiv, "rmsprop-equiv"},
      {Experiment::SteadyState, "steady-state"},
  };
  return names;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return errno == 0 && end == text.c_str() + text.size() && std::isfinite(out);
}

// Keys every experiment accepts: the command-line overrides and bookkeeping.
const std::vector<std::string> kCommonKeys = {"experiment", "out", "eta", "beta", "wd",
                                              "rho",        "dt",  "t1",  "seed"};

const std::vector<std::string> kListKeys = {"eta_sweep", "masses", "quad_diag", "q0"};
const std::vector<std::string> kTextKeys = {"experiment", "out"};

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [kind, name] : experiment_names()) {
    if (kind == e) return name;
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& [kind, n] : experiment_names()) {
    if (n == name) return kind;
  }
  throw UsageError("unknown experiment '" + name + "'");
}

std::vector<Experiment> all_experiments() {
  std::vector<Experiment> out;
  for (const auto& entry : experiment_names()) out.push_back(entry.first);
  return out;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string::npos) throw UsageError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw UsageError(where + ": invalid key '" + key + "'");
    if (value.empty()) throw UsageError(where + ": empty value for '" + key + "'");
    if (c.values_.count(key)) throw UsageError(where + ": duplicate key '" + key + "'");
    c.values_[key] = value;
  }
  return c;
}

std::string Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("missing required key '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key) const {
  double v = 0.0;
  if (!parse_double(text(key), v)) throw UsageError("key '" + key + "' is not a finite number");
  return v;
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::int64_t Config::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw UsageError("key '" + key + "' must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

std::uint64_t Config::seed() const {
  const std::string s = text("seed");
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw UsageError("seed must be a non-negative integer");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno != 0) throw UsageError("seed does not fit in 64 bits");
  return v;
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream in(text(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    if (!parse_double(trim(item), v)) {
      throw UsageError("key '" + key + "' must be a comma-separated list of numbers");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("key '" + key + "' is an empty list");
  return out;
}

std::vector<std::string> required_keys(Experiment e) {
  switch (e) {
    case Experiment::Table2:
      return {"seed", "dim", "samples"};
    case Experiment::NoetherResidual:
      return {"seed", "dt", "t1", "mass", "friction", "dim"};
    case Experiment::Conservation:
      return {"seed",  "eta",           "steps",  "dim",           "eta_sweep",
              "sweep_horizon", "masses", "mass_friction", "mass_t1"};
    case Experiment::ModifiedEq:
      return {"eta", "beta", "wd", "t1", "q0", "nesterov_eta", "nesterov_t1"};
    case Experiment::BnEffectiveLr:
      return {"seed", "eta", "beta", "wd", "steps", "dim", "eig_min", "eig_max"};
    case Experiment::SteadyState:
      return {"seed", "eta", "beta", "wd", "steps", "dim", "eig_min", "eig_max",
              "window_fraction"};
    case Experiment::RmspropEquiv:
      return {"seed",           "eta",          "rho",
              "g0",             "t1",           "quad_diag",
              "q0",             "identity_eta", "identity_beta",
              "identity_eta_prime", "identity_dt", "identity_t1",
              "bn_eta",         "bn_beta",      "bn_wd"};
  }
  return {};
}

std::vector<std::string> known_keys(Experiment e) {
  std::vector<std::string> keys = required_keys(e);
  keys.insert(keys.end(), kCommonKeys.begin(), kCommonKeys.end());
  switch (e) {
    case Experiment::Table2:
      keys.push_back("include_quadratic_form");
      break;
    case Experiment::BnEffectiveLr:
      keys.push_back("record_stride");
      keys.push_back("radial_check");
      break;
    case Experiment::SteadyState:
      keys.push_back("record_stride");
      keys.push_back("driven_strength");
      break;
    case Experiment::ModifiedEq:
      keys.push_back("substeps");
      break;
    default:
      break;
  }
  return keys;
}

void validate(Experiment e, const Config& config) {
  const auto known = known_keys(e);
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : config.values()) {
    if (!allowed.count(key)) {
      throw UsageError("key '" + key + "' is not used by experiment " + to_string(e));
    }
  }
  if (config.has("experiment") && config.text("experiment") != to_string(e)) {
    throw UsageError("config is for experiment '" + config.text("experiment") + "', not '" +
                     to_string(e) + "'");
  }
  for (const auto& key : required_keys(e)) {
    if (!config.has(key)) throw UsageError("missing required key '" + key + "'");
  }
  for (const auto& [key, value] : config.values()) {
    if (std::find(kTextKeys.begin(), kTextKeys.end(), key) != kTextKeys.end()) continue;
    if (key == "seed") {
      config.seed();
    } else if (std::find(kListKeys.begin(), kListKeys.end(), key) != kListKeys.end()) {
      config.list(key);
    } else {
      config.number(key);
    }
  }
}

}  // namespace noetherdyn::harness
