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

#include "nmflow/config.hpp"

namespace nmflow {

/// CSV with header t,p_or_s,r,gamma,I_tilde,L_tilde,N_tilde,J,delta,E_SA,g;
/// one row per grid point, 12 significant digits, LF line endings. Columns
/// that do not apply to the channel are empty. For AD the t column carries
/// scaled time gamma0*t.
std::string sweep_csv(const ScenarioConfig& config);

/// JSON report for `which` in {"blp","lfs","rhp","all"}: measure values,
/// growth intervals, argmax parameters, grid step, and the value change
/// from one grid-halving at the argmax.
std::string measure_report(const ScenarioConfig& config, const std::string& which);

/// Identity suite (completeness, conservation, Koashi-Winter, duality,
/// Kraus-vs-integrator, closed-form witness). Prints one residual line per
/// check; returns 0 when all pass. `inject_fault` is a test hook that
/// corrupts one named check ("completeness").
int selftest(std::ostream& out, const std::string& inject_fault = "");

/// Standalone matplotlib script plotting the selected CSV columns against
/// t, with a decay-rate inset when the gamma column is populated. Rejects
/// quantities missing from the CSV header.
std::string plot_script(const std::string& csv_path,
                        const std::vector<std::string>& quantities);

}  // namespace nmflow
