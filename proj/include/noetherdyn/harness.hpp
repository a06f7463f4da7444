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

// Experiment configuration, orchestration and result files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace noetherdyn::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Bad command line or configuration (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  NoetherResidual,
  Table2,
  Conservation,
  ModifiedEq,
  BnEffectiveLr,
  RmspropEquiv,
  SteadyState,
};

std::string to_string(Experiment e);
/// Throws UsageError for unknown names.
Experiment parse_experiment(const std::string& name);
std::vector<Experiment> all_experiments();

/// Flat key = value text; '#' starts a comment. Values are kept as text and
/// parsed on access.
class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config parse(const std::string& text, const std::string& origin = "<string>");

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }
  const std::string& origin() const { return origin_; }

  /// Accessors throw UsageError when the key is missing or malformed.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t seed() const;
  std::string text(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

/// Keys that must be present for an experiment.
std::vector<std::string> required_keys(Experiment e);
/// Keys an experiment reads (required ones plus optional ones).
std::vector<std::string> known_keys(Experiment e);
/// Throws UsageError naming the first missing or unknown key, or a value
/// that does not parse.
void validate(Experiment e, const Config& config);

/// CSV table. The index column comes first (named "t" for time series).
struct Table {
  std::string name;
  std::string index_name = "t";
  std::vector<double> index;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  void add(const std::string& column, std::vector<double> values);
};

/// Text matrix (labels instead of numbers), written as plain CSV.
struct TextTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits ("%.17g"), enough to round-trip a double.
std::string format_number(double v);
std::string format_csv(const Table& table);
std::string format_csv(const TextTable& table);

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string name;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<ChartSeries> series;
};

/// Standalone SVG line chart with axis ticks. Long series are decimated to
/// at most max_points per series (min/max preserving).
std::string render_svg(const Chart& chart, std::size_t max_points = 2000);

struct Series {
  std::vector<double> t;
  std::vector<double> v;
};

enum class Deviation { Absolute, Relative };

struct ChannelComparison {
  bool pass = true;
  double max_deviation = 0.0;
  double argmax_t = std::numeric_limits<double>::quiet_NaN();
  std::size_t samples = 0;
};

/// Max |a - b| (or |a - b| / |b|) over samples with t_lo <= t <= t_hi.
/// Passes iff max deviation < tolerance. Throws ContractError when the grids
/// differ or the window is empty.
ChannelComparison compare_channels(const Series& a, const Series& b, double tolerance,
                                   Deviation mode,
                                   double t_lo = -std::numeric_limits<double>::infinity(),
                                   double t_hi = std::numeric_limits<double>::infinity());

struct Assertion {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::string format_verdict(const std::vector<Assertion>& assertions);

struct ExperimentResult {
  Experiment kind = Experiment::Table2;
  std::vector<Table> tables;
  std::vector<TextTable> text_tables;
  std::vector<Chart> charts;
  std::vector<Assertion> assertions;
  std::vector<std::pair<std::string, std::string>> summary;
  double wall_seconds = 0.0;

  bool all_pass() const;
  const Assertion* find(const std::string& id) const;
};

/// Runs the experiment in memory. Numerical failures propagate as the
/// library's exceptions.
ExperimentResult run_experiment(Experiment e, const Config& config);

/// --out / config "out" > $NOETHERDYN_OUT/<experiment> > ./noetherdyn-out/<experiment>.
std::filesystem::path resolve_out_dir(Experiment e, const Config& config);

struct RunReport {
  int exit_code = kExitOk;
  std::filesystem::path out_dir;
  std::string diagnostic;
  ExperimentResult result;
};

/// Validates, runs and writes manifest.json, verdict.tsv, one CSV per table
/// and one SVG per chart. Never throws for usage or numerical problems;
/// those map to exit codes 2 and 3.
RunReport run(Experiment e, const Config& config, const std::filesystem::path& out_dir);

/// Entry point of the command-line tool.
int cli_main(int argc, char** argv);

}  // namespace noetherdyn::harness
