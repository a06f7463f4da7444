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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace noetherdyn::harness {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
}

nlohmann::ordered_json manifest(Experiment e, const Config& config, const RunReport& report,
                                const std::vector<std::string>& files) {
  nlohmann::ordered_json j;
  j["tool"] = "noetherdyn";
  j["version"] = kVersion;
  j["experiment"] = to_string(e);
  j["config_origin"] = config.origin();
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config.values()) j["config"][key] = value;
  j["exit_code"] = report.exit_code;
  if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
  j["wall_seconds"] = report.result.wall_seconds;
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.result.summary) j["summary"][key] = value;
  int passed = 0;
  for (const auto& a : report.result.assertions) passed += a.pass ? 1 : 0;
  j["assertions"] = report.result.assertions.size();
  j["assertions_passed"] = passed;
  j["files"] = files;
  return j;
}

}  // namespace

std::filesystem::path resolve_out_dir(Experiment e, const Config& config) {
  if (config.has("out")) return config.text("out");
  if (const char* root = std::getenv("NOETHERDYN_OUT"); root != nullptr && *root != '\0') {
    return std::filesystem::path(root) / to_string(e);
  }
  return std::filesystem::path("noetherdyn-out") / to_string(e);
}

RunReport run(Experiment e, const Config& config, const std::filesystem::path& out_dir) {
  RunReport report;
  report.out_dir = out_dir;
  report.result.kind = e;
  try {
    report.result = run_experiment(e, config);
    report.exit_code = report.result.all_pass() ? kExitOk : kExitAssertionFailed;
  } catch (const UsageError& err) {
    report.exit_code = kExitUsage;
    report.diagnostic = err.what();
    return report;
  } catch (const ContractError& err) {
    report.exit_code = kExitUsage;
    report.diagnostic = err.what();
    return report;
  } catch (const IntegrationAbort& err) {
    report.exit_code = kExitNumerical;
    report.diagnostic = std::string("integration aborted: ") + err.what();
  } catch (const std::exception& err) {
    // StateError, SingularityError, DomainError: the numbers went bad.
    report.exit_code = kExitNumerical;
    report.diagnostic = std::string("numerical failure: ") + err.what();
  }

  try {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files;
    for (const auto& t : report.result.tables) {
      write_file(out_dir / (t.name + ".csv"), format_csv(t));
      files.push_back(t.name + ".csv");
    }
    for (const auto& t : report.result.text_tables) {
      write_file(out_dir / (t.name + ".csv"), format_csv(t));
      files.push_back(t.name + ".csv");
    }
    for (const auto& c : report.result.charts) {
      write_file(out_dir / (c.name + ".svg"), render_svg(c));
      files.push_back(c.name + ".svg");
    }
    write_file(out_dir / "verdict.tsv", format_verdict(report.result.assertions));
    files.push_back("verdict.tsv");
    write_file(out_dir / "manifest.json", manifest(e, config, report, files).dump(2) + "\n");
  } catch (const std::exception& err) {
    report.exit_code = kExitUsage;
    report.diagnostic = std::string("cannot write results: ") + err.what();
  }
  return report;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"noetherdyn: Lagrangian learning-dynamics experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string experiment;
  std::string config_path;
  std::map<std::string, std::string> overrides;
  app.add_option("experiment", experiment,
                 "noether-residual | table2 | conservation | modified-eq | bn-effective-lr | "
                 "rmsprop-equiv | steady-state")
      ->required();
  app.add_option("--config", config_path, "flat key = value configuration file")->required();
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--eta", "eta"}, {"--beta", "beta"}, {"--wd", "wd"},     {"--rho", "rho"},
      {"--dt", "dt"},   {"--t1", "t1"},     {"--seed", "seed"}, {"--out", "out"}};
  for (const auto& [flag, key] : flags) {
    app.add_option_function<std::string>(
        flag, [&overrides, key = key](const std::string& v) { overrides[key] = v; },
        "override '" + key + "'");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Experiment kind{};
  Config config;
  try {
    kind = parse_experiment(experiment);
    config = Config::load(config_path);
    for (const auto& [key, value] : overrides) config.set(key, value);
    validate(kind, config);
  } catch (const UsageError& err) {
    std::cerr << "noetherdyn: " << err.what() << "\n";
    return kExitUsage;
  }

  const std::filesystem::path out_dir = resolve_out_dir(kind, config);
  const RunReport report = run(kind, config, out_dir);
  for (const auto& a : report.result.assertions) {
    std::cout << (a.pass ? "PASS " : "FAIL ") << a.id << "  measured " << format_number(a.measured)
              << "  tolerance " << format_number(a.tolerance) << "\n";
  }
  if (!report.diagnostic.empty()) std::cerr << "noetherdyn: " << report.diagnostic << "\n";
  if (report.exit_code != kExitUsage) std::cout << "results in " << out_dir.string() << "\n";
  return report.exit_code;
}

}  // namespace noetherdyn::harness
