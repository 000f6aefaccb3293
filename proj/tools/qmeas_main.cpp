// Copyright 2026 The qmeas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmeas/scenarios.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumericFailure = 1;
constexpr int kExitUsage = 2;

constexpr std::uint64_t kDefaultSeed = 1;

struct RunOptions {
  std::string scenario;
  std::map<std::string, double> params;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out_path;
};

std::pair<std::string, double> parse_param(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw qmeas::UsageError("--param expects name=value, got '" + text + "'");
  }
  const std::string name = text.substr(0, eq);
  const std::string value_text = text.substr(eq + 1);
  try {
    std::size_t consumed = 0;
    const double value = std::stod(value_text, &consumed);
    if (consumed != value_text.size()) {
      throw std::invalid_argument(value_text);
    }
    return {name, value};
  } catch (const std::exception&) {
    throw qmeas::UsageError("--param " + name + " expects a numeric value, got '" +
                            value_text + "'");
  }
}

// Loads defaults from a JSON config file.  Recognized keys mirror the run
// flags: "seed" (integer), "format" (string), "out" (string), and "param"
// (object of name -> number, or list of "name=value" strings).
void apply_config(const std::string& path, RunOptions& opts,
                  std::map<std::string, double>& config_params) {
  std::ifstream in(path);
  if (!in) {
    throw qmeas::UsageError("cannot open config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw qmeas::UsageError("config file '" + path + "' is not valid JSON: " +
                            e.what());
  }
  if (!doc.is_object()) {
    throw qmeas::UsageError("config file '" + path + "' must hold a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "seed") {
      if (!value.is_number_integer() && !value.is_number_unsigned()) {
        throw qmeas::UsageError("config key 'seed' must be an integer");
      }
      opts.seed = value.get<std::uint64_t>();
    } else if (key == "format") {
      if (!value.is_string()) {
        throw qmeas::UsageError("config key 'format' must be a string");
      }
      opts.format = value.get<std::string>();
    } else if (key == "out") {
      if (!value.is_string()) {
        throw qmeas::UsageError("config key 'out' must be a string");
      }
      opts.out_path = value.get<std::string>();
    } else if (key == "param") {
      if (value.is_object()) {
        for (const auto& [name, v] : value.items()) {
          if (!v.is_number()) {
            throw qmeas::UsageError("config parameter '" + name +
                                    "' must be a number");
          }
          config_params[name] = v.get<double>();
        }
      } else if (value.is_array()) {
        for (const auto& item : value) {
          if (!item.is_string()) {
            throw qmeas::UsageError(
                "config key 'param' lists must hold name=value strings");
          }
          config_params.insert(parse_param(item.get<std::string>()));
        }
      } else {
        throw qmeas::UsageError(
            "config key 'param' must be an object or a list of name=value strings");
      }
    } else {
      throw qmeas::UsageError("unknown config key '" + key + "'");
    }
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw qmeas::UsageError("cannot open output file '" + out_path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + out_path + "'");
  }
}

int run_command(const RunOptions& opts) {
  if (opts.format != "json" && opts.format != "csv") {
    throw qmeas::UsageError("--format must be json or csv, got '" + opts.format +
                            "'");
  }
  const qmeas::ScenarioResult result =
      qmeas::run_scenario(opts.scenario, opts.params, opts.seed);
  emit(opts.format == "json" ? qmeas::render_json(result)
                             : qmeas::render_csv(result),
       opts.out_path);
  if (!result.pass) {
    std::cerr << "qmeas: scenario '" << opts.scenario
              << "' has values outside their expected tolerance bands\n";
    return kExitNumericFailure;
  }
  return kExitPass;
}

int verify_command(std::uint64_t seed) {
  bool all_pass = true;
  for (const qmeas::ScenarioInfo& info : qmeas::list_scenarios()) {
    const qmeas::ScenarioResult result = qmeas::run_scenario(info.name, {}, seed);
    std::size_t in_band = 0;
    for (const auto& [name, exp] : result.expected) {
      if (std::abs(result.value(name) - exp.value) <= exp.tolerance) {
        ++in_band;
      }
    }
    std::cout << (result.pass ? "[ok]   " : "[FAIL] ") << info.name << " ("
              << in_band << "/" << result.expected.size()
              << " expected values within tolerance)\n";
    all_pass = all_pass && result.pass;
  }
  std::cout << (all_pass ? "verify: all scenarios pass\n"
                         : "verify: at least one scenario failed\n");
  return all_pass ? kExitPass : kExitNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmeas — generalized-measurement scenario runner"};
  app.require_subcommand(1);

  RunOptions opts;
  std::vector<std::string> param_args;
  std::string config_path;
  bool seed_given = false;
  bool format_given = false;
  bool out_given = false;

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("scenario", opts.scenario, "scenario name (see `qmeas list`)")
      ->required();
  run->add_option("--param", param_args, "parameter override name=value")
      ->take_all();
  run->add_option("--seed", opts.seed, "root seed for stochastic scenarios")
      ->each([&seed_given](const std::string&) { seed_given = true; });
  run->add_option("--format", opts.format, "output format: json or csv")
      ->each([&format_given](const std::string&) { format_given = true; });
  run->add_option("--out", opts.out_path, "write output to this path")
      ->each([&out_given](const std::string&) { out_given = true; });
  run->add_option("--config", config_path, "JSON config file with defaults");

  CLI::App* list = app.add_subcommand("list", "describe the available scenarios");
  std::string list_format = "text";
  list->add_option("--format", list_format, "output format: text or json");

  CLI::App* verify = app.add_subcommand("verify", "run every scenario with defaults");
  std::uint64_t verify_seed = kDefaultSeed;
  verify->add_option("--seed", verify_seed, "root seed for stochastic scenarios");

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      RunOptions merged;
      merged.scenario = opts.scenario;
      std::map<std::string, double> config_params;
      if (!config_path.empty()) {
        RunOptions from_config;
        apply_config(config_path, from_config, config_params);
        merged.seed = from_config.seed;
        merged.format = from_config.format.empty() ? "json" : from_config.format;
        merged.out_path = from_config.out_path;
      }
      if (seed_given || config_path.empty()) {
        merged.seed = opts.seed;
      }
      if (format_given || config_path.empty()) {
        merged.format = opts.format;
      }
      if (out_given || config_path.empty()) {
        merged.out_path = opts.out_path;
      }
      merged.params = std::move(config_params);
      for (const std::string& text : param_args) {
        const auto [name, value] = parse_param(text);
        merged.params[name] = value;
      }
      return run_command(merged);
    }
    if (list->parsed()) {
      if (list_format == "json") {
        std::cout << qmeas::render_list_json(qmeas::list_scenarios());
      } else if (list_format == "text") {
        std::cout << qmeas::render_list_text(qmeas::list_scenarios());
      } else {
        throw qmeas::UsageError("list --format must be text or json, got '" +
                                list_format + "'");
      }
      return kExitPass;
    }
    return verify_command(verify_seed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const qmeas::UsageError& e) {
    std::cerr << "qmeas: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qmeas: numeric failure: " << e.what() << "\n";
    return kExitNumericFailure;
  }
}
