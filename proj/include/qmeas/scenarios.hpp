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

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmeas {

// Raised for malformed command lines, unknown scenarios, or unknown
// parameter keys; the CLI maps it to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  std::string description;
};

/**
 * Static descriptor of one runnable scenario: name, one-line summary, the
 * accepted parameters with defaults, and the anchors (short descriptions of
 * the physical results the expected values encode).
 */
struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<std::string> anchors;
};

/**
 * Reference value attached to a computed quantity: the number it must
 * reproduce, the tolerance, a provenance tag ("paper" for quantities quoted
 * by the source material, "trivial" for definitional identities, "derived"
 * for independently computed closed forms), and a short anchor naming the
 * physical result.
 */
struct ExpectedValue {
  double value = 0.0;
  double tolerance = 0.0;
  std::string provenance;
  std::string anchor;
};

struct Curve {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::array<double, 2>> points;
};

/**
 * Output of one scenario run.  `values` keeps emission order; every entry
 * of `expected` refers to a name in `values`, and `pass` is true iff each
 * such value sits within its tolerance.
 */
struct ScenarioResult {
  std::string scenario;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, ExpectedValue>> expected;
  std::vector<Curve> curves;
  bool pass = false;

  double value(const std::string& name) const;
};

// The fixed scenario registry, in canonical order.
const std::vector<ScenarioInfo>& list_scenarios();

// FNV-1a split of the root seed, so each scenario owns an independent,
// deterministic generator stream.
std::uint64_t scenario_seed(std::uint64_t root_seed, const std::string& name);

// Runs one scenario with the given parameter overrides.  Unknown names or
// parameter keys raise UsageError; out-of-range values raise
// std::invalid_argument.
ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, double>& overrides,
                            std::uint64_t root_seed);

// Deterministic pretty-printed JSON for one result (insertion-ordered keys).
std::string render_json(const ScenarioResult& result);
// CSV of the values table only: header "name,value" then one row per value.
std::string render_csv(const ScenarioResult& result);

// Scenario listing as text (one block per scenario) or JSON.
std::string render_list_text(const std::vector<ScenarioInfo>& infos);
std::string render_list_json(const std::vector<ScenarioInfo>& infos);

}  // namespace qmeas
