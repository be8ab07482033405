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

#include "nmflow/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace nmflow {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& path, const std::string& value) {
  size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(path + ": not a number: '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(path + ": trailing characters in '" + value + "'");
  return out;
}

int parse_int(const std::string& path, const std::string& value) {
  const double d = parse_double(path, value);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) throw ConfigError(path + ": not an integer: '" + value + "'");
  return i;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  // section -> (key -> value), section order tracked for the channel-block rule
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        std::ostringstream os;
        os << "line " << lineno << ": unterminated section header";
        throw ConfigError(os.str());
      }
      section = trim(line.substr(1, line.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << lineno << ": expected key = value";
      throw ConfigError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << "line " << lineno << ": empty key";
      throw ConfigError(os.str());
    }
    sections[section][key] = value;
  }

  ScenarioConfig c;
  auto& top = sections[""];

  const auto chan_it = top.find("channel");
  if (chan_it == top.end()) throw ConfigError("channel: missing");
  if (chan_it->second == "ad") {
    c.channel = ChannelFamily::Kind::AmplitudeDamping;
  } else if (chan_it->second == "gad") {
    c.channel = ChannelFamily::Kind::GeneralizedAmplitudeDamping;
  } else {
    throw ConfigError("channel: expected 'ad' or 'gad', got '" + chan_it->second + "'");
  }
  top.erase(chan_it);

  if (auto it = top.find("initial"); it != top.end()) {
    if (it->second == "bell") {
      c.initial_is_bell = true;
    } else {
      std::istringstream is(it->second);
      double r1, r2, r3;
      if (!(is >> r1 >> r2 >> r3) || !(is >> std::ws).eof())
        throw ConfigError("initial: expected 'bell' or three reals, got '" + it->second + "'");
      c.initial_is_bell = false;
      c.initial = BlochVector{r1, r2, r3};
      if (c.initial.norm() > 1.0 + 1e-12) throw ConfigError("initial: Bloch norm exceeds 1");
    }
    top.erase(it);
  }
  if (auto it = top.find("outputs"); it != top.end()) {
    std::string item;
    std::istringstream is(it->second);
    while (std::getline(is, item, ',')) {
      item = trim(item);
      if (!item.empty()) c.outputs.push_back(item);
    }
    top.erase(it);
  }
  if (!top.empty()) throw ConfigError("unknown key: " + top.begin()->first);
  sections.erase("");

  const bool has_ad = sections.count("ad") > 0;
  const bool has_gad = sections.count("gad") > 0;
  if (has_ad && has_gad) throw ConfigError("exactly one channel block allowed, found [ad] and [gad]");
  if (c.channel == ChannelFamily::Kind::AmplitudeDamping && has_gad)
    throw ConfigError("gad: block present but channel = ad");
  if (c.channel == ChannelFamily::Kind::GeneralizedAmplitudeDamping && has_ad)
    throw ConfigError("ad: block present but channel = gad");

  auto take = [&](const std::string& sec, const std::string& key, double* dst) {
    auto sit = sections.find(sec);
    if (sit == sections.end()) return false;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return false;
    *dst = parse_double(sec + "." + key, kit->second);
    sit->second.erase(kit);
    return true;
  };
  auto take_int = [&](const std::string& sec, const std::string& key, int* dst) {
    auto sit = sections.find(sec);
    if (sit == sections.end()) return false;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return false;
    *dst = parse_int(sec + "." + key, kit->second);
    sit->second.erase(kit);
    return true;
  };

  take("ad", "gamma0", &c.ad.gamma0);
  take("ad", "lam", &c.ad.lam);
  if (has_ad && (c.ad.gamma0 <= 0.0 || c.ad.lam <= 0.0))
    throw ConfigError("ad: gamma0 and lam must be positive");
  take("gad", "omega", &c.gad.omega);
  take("grid", "t_max", &c.grid.t_max);
  take("grid", "dt", &c.grid.dt);
  if (c.grid.dt <= 0.0) throw ConfigError("grid.dt: must be positive");
  if (c.grid.t_max <= c.grid.dt) throw ConfigError("grid.t_max: must exceed grid.dt");
  take_int("search", "blp_theta_grid", &c.search.blp_theta_grid);
  take_int("search", "blp_phi_grid", &c.search.blp_phi_grid);
  take_int("search", "blp_random_pairs", &c.search.blp_random_pairs);
  take_int("search", "bloch_grid", &c.search.bloch_grid);
  take_int("search", "refine_seeds", &c.search.refine_seeds);
  take_int("search", "refine_max_iter", &c.search.refine_max_iter);
  take("search", "zero_tol", &c.search.zero_tol);
  int seed;
  if (take_int("search", "rng_seed", &seed)) c.search.rng_seed = static_cast<unsigned>(seed);

  for (const auto& [sec, kv] : sections) {
    if (sec != "ad" && sec != "gad" && sec != "grid" && sec != "search")
      throw ConfigError("unknown section: [" + sec + "]");
    if (!kv.empty()) throw ConfigError(sec + "." + kv.begin()->first + ": unknown key");
  }
  return c;
}

ScenarioConfig parse_config_text(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  const bool is_ad = c.channel == ChannelFamily::Kind::AmplitudeDamping;
  os << "channel = " << (is_ad ? "ad" : "gad") << "\n";
  if (c.initial_is_bell) {
    os << "initial = bell\n";
  } else {
    os << "initial = " << format_double(c.initial.r1) << ' ' << format_double(c.initial.r2)
       << ' ' << format_double(c.initial.r3) << "\n";
  }
  if (!c.outputs.empty()) {
    os << "outputs = ";
    for (size_t i = 0; i < c.outputs.size(); ++i) os << (i ? "," : "") << c.outputs[i];
    os << "\n";
  }
  os << "\n";
  if (is_ad) {
    os << "[ad]\ngamma0 = " << format_double(c.ad.gamma0) << "\nlam = " << format_double(c.ad.lam)
       << "\n\n";
  } else {
    os << "[gad]\nomega = " << format_double(c.gad.omega) << "\n\n";
  }
  os << "[grid]\nt_max = " << format_double(c.grid.t_max) << "\ndt = " << format_double(c.grid.dt)
     << "\n\n";
  os << "[search]\n";
  os << "blp_theta_grid = " << c.search.blp_theta_grid << "\n";
  os << "blp_phi_grid = " << c.search.blp_phi_grid << "\n";
  os << "blp_random_pairs = " << c.search.blp_random_pairs << "\n";
  os << "bloch_grid = " << c.search.bloch_grid << "\n";
  os << "refine_seeds = " << c.search.refine_seeds << "\n";
  os << "refine_max_iter = " << c.search.refine_max_iter << "\n";
  os << "zero_tol = " << format_double(c.search.zero_tol) << "\n";
  os << "rng_seed = " << c.search.rng_seed << "\n";
  return os.str();
}

ChannelFamily family_from_config(const ScenarioConfig& c) {
  if (c.channel == ChannelFamily::Kind::AmplitudeDamping)
    return ChannelFamily::amplitude_damping(c.ad);
  return ChannelFamily::generalized_amplitude_damping(c.gad);
}

DensityMatrix initial_from_config(const ScenarioConfig& c) {
  if (c.initial_is_bell) return bell_state();
  return pure_sa_from_bloch(c.initial);
}

std::vector<double> grid_from_config(const ScenarioConfig& c) {
  return uniform_grid(c.grid.t_max, c.grid.dt);
}

}  // namespace nmflow
