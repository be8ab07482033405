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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nmflow/frontend.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nmflow::ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw nmflow::ConfigError("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-flow diagnostics for qubit open-system dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_path, which = "all", csv_path;
  std::vector<std::string> quantities;

  auto* sweep = app.add_subcommand("sweep", "Evolve a scenario and write per-time CSV");
  sweep->add_option("--config", config_path, "scenario config file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  auto* measure = app.add_subcommand("measure", "Compute non-Markovianity measures");
  measure->add_option("--config", config_path, "scenario config file")->required();
  measure->add_option("--which", which, "blp|lfs|rhp|all");
  measure->add_option("--out", out_path, "output JSON path")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the built-in identity suite");

  auto* plot = app.add_subcommand("plotscript", "Emit a plotting script for a sweep CSV");
  plot->add_option("--csv", csv_path, "sweep CSV path")->required();
  plot->add_option("--quantities", quantities, "comma-separated column names")
      ->required()
      ->delimiter(',');
  plot->add_option("--out", out_path, "script path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sweep->parsed()) {
      write_file(out_path, nmflow::sweep_csv(nmflow::parse_config_file(config_path)));
    } else if (measure->parsed()) {
      write_file(out_path,
                 nmflow::measure_report(nmflow::parse_config_file(config_path), which));
    } else if (selftest->parsed()) {
      return nmflow::selftest(std::cout) == 0 ? kExitOk : kExitNumerical;
    } else if (plot->parsed()) {
      const std::string script = nmflow::plot_script(csv_path, quantities);
      if (out_path.empty())
        std::cout << script;
      else
        write_file(out_path, script);
    }
  } catch (const nmflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nmflow::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
