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

#include "nmflow/channels.hpp"
#include "nmflow/info.hpp"

namespace nmflow {

/// Purity tolerance for the global tripartite state. Looser than the matrix
/// tolerances because the dilation takes square roots of channel parameters
/// near 0 and 1.
inline constexpr double kGlobalPurityTol = 1e-9;

/// One point of a decoherence sweep. Channel parameters that do not apply
/// to the family are NaN.
struct ScenarioSample {
  double t = 0.0;
  EntropyDiagram diagram;
  double p_or_s = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  double gamma_t = std::numeric_limits<double>::quiet_NaN();
};

/// Evolve a pure SA state through the one-shot dilation of the family's
/// channel at time t: fresh environment, pure SAE output on dims
/// [2, 2, k] with k the number of Kraus operators.
DensityMatrix evolve_scenario(const DensityMatrix& initial_sa, const ChannelFamily& family,
                              double t);

/// Entropy diagram of a pure SAE state. Both routes for the quantum loss
/// (direct S(S:E~) and the environment-free formula) are evaluated and must
/// agree within 1e-9.
EntropyDiagram sample_diagram(const DensityMatrix& state_sae, double S_sys);

/// One ScenarioSample per grid point; deterministic.
std::vector<ScenarioSample> sweep(const DensityMatrix& initial_sa, const ChannelFamily& family,
                                  const std::vector<double>& grid);

}  // namespace nmflow
