// Copyright 2026 The nmflow authors
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

#include <iosfwd>

#include "nmflow/nonmarkov.hpp"

namespace nmflow {

/// Raised on malformed or inconsistent scenario configs; the message names
/// the offending field path (e.g. "ad.gamma0").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  double t_max = 10.0;
  double dt = 0.01;
};

/// One scenario definition: channel family, time grid, initial SA state
/// and optional output/search knobs. Exactly one channel block ([ad] or
/// [gad]) may appear in the config file.
struct ScenarioConfig {
  ChannelFamily::Kind channel = ChannelFamily::Kind::AmplitudeDamping;
  ADParams ad;
  GADParams gad;
  GridConfig grid;
  bool initial_is_bell = true;
  BlochVector initial;
  std::vector<std::string> outputs;  // default quantity selection for plots
  SearchConfig search;
};

/// Parse the key-value config format with [section] blocks. '#' starts a
/// comment. Unknown keys and invariant violations raise ConfigError.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

/// Serialization; parse(serialize(c)) == c field-for-field.
std::string serialize_config(const ScenarioConfig& c);

ChannelFamily family_from_config(const ScenarioConfig& c);
DensityMatrix initial_from_config(const ScenarioConfig& c);
std::vector<double> grid_from_config(const ScenarioConfig& c);

}  // namespace nmflow
