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

#include "nmflow/tripartite.hpp"

#include <cmath>
#include <sstream>

#include "nmflow/parallel.hpp"

namespace nmflow {

DensityMatrix evolve_scenario(const DensityMatrix& initial_sa, const ChannelFamily& family,
                              double t) {
  if (initial_sa.dims != std::vector<Eigen::Index>{2, 2})
    throw DimensionError("evolve_scenario: initial state must live on [S, A]");
  const double top = purity_largest_eigenvalue(initial_sa);
  if (std::abs(top - 1.0) > kHermitianTol) {
    std::ostringstream os;
    os << "evolve_scenario: initial SA state not pure, largest eigenvalue " << top;
    throw NumericalError(os.str());
  }
  const KrausChannel ch = family.at(t);
  const Matrix v = dilate(ch);
  const Matrix w = tensor(Matrix::Identity(2, 2), v);
  const Matrix out = conjugate_by(w, initial_sa.mat);
  const auto k = static_cast<Eigen::Index>(ch.operators.size());
  return DensityMatrix{out, {2, 2, k}};
}

EntropyDiagram sample_diagram(const DensityMatrix& state_sae, double S_sys) {
  if (state_sae.dims.size() != 3)
    throw DimensionError("sample_diagram: tripartite dims required");
  const auto sp = hermitian_eig(state_sae.mat);
  if (std::abs(sp.eigenvalues[0] - 1.0) > kGlobalPurityTol) {
    std::ostringstream os;
    os << "sample_diagram: global state not pure (largest eigenvalue " << sp.eigenvalues[0]
       << "); conservation identities require a pure SAE state";
    throw NumericalError(os.str());
  }

  const Matrix rho_sa = partial_trace(state_sae.mat, state_sae.dims, {0, 1});
  const Matrix rho_se = partial_trace(state_sae.mat, state_sae.dims, {0, 2});
  const Matrix rho_ae = partial_trace(state_sae.mat, state_sae.dims, {1, 2});
  const double s_s = entropy(partial_trace(state_sae.mat, state_sae.dims, {0}));
  const double s_a = entropy(partial_trace(state_sae.mat, state_sae.dims, {1}));
  const double s_e = entropy(partial_trace(state_sae.mat, state_sae.dims, {2}));
  const double s_sa = entropy(rho_sa);
  const double s_se = entropy(rho_se);
  const double s_ae = entropy(rho_ae);

  EntropyDiagram d;
  d.S_sys = s_s;
  d.I_tilde = s_s + s_a - s_sa;
  d.L_tilde = s_s + s_e - s_se;
  d.N_tilde = s_a + s_e - s_ae;

  // Environment-free route: initial S(rho_A) equals S_sys for a pure SA start.
  const DensityMatrix sa{rho_sa, {2, 2}};
  const double l_env_free = quantum_loss(S_sys, sa);
  if (std::abs(l_env_free - d.L_tilde) > 1e-9) {
    std::ostringstream os;
    os << "sample_diagram: quantum-loss routes disagree, |" << l_env_free << " - " << d.L_tilde
       << "| > 1e-9";
    throw NumericalError(os.str());
  }

  d.E_SA = entanglement_of_formation(sa);
  d.J = accessible_information_kw(sa, S_sys);
  d.delta = discord(d.L_tilde, d.J);
  return d;
}

std::vector<ScenarioSample> sweep(const DensityMatrix& initial_sa, const ChannelFamily& family,
                                  const std::vector<double>& grid) {
  const double s_sys = entropy(partial_trace(initial_sa.mat, initial_sa.dims, {0}));
  std::vector<ScenarioSample> out(grid.size());
  parallel_for(grid.size(), [&](size_t k) {
    const double t = grid[k];
    try {
      ScenarioSample s;
      s.t = t;
      s.diagram = sample_diagram(evolve_scenario(initial_sa, family, t), s_sys);
      switch (family.kind()) {
        case ChannelFamily::Kind::AmplitudeDamping:
          s.p_or_s = ad_p(t, family.ad());
          s.gamma_t = ad_decay_rate(t, family.ad());
          break;
        case ChannelFamily::Kind::GeneralizedAmplitudeDamping: {
          const auto [sch_s, sch_r] = gad_schedule(t, family.gad());
          s.p_or_s = sch_s;
          s.r = sch_r;
          break;
        }
        case ChannelFamily::Kind::Identity:
          break;
      }
      out[k] = s;
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "sweep: failure at t = " << t << ": " << e.what();
      throw NumericalError(os.str());
    }
  });
  return out;
}

}  // namespace nmflow
