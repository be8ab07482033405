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

#include "nmflow/states.hpp"

namespace nmflow {

/// Entropic snapshot of the tripartite S-A-E state at one time. All
/// entropies are base-2 (bits/ebits).
struct EntropyDiagram {
  double I_tilde = 0.0;  // S(S:A~)
  double L_tilde = 0.0;  // S(S:E~), the quantum loss
  double N_tilde = 0.0;  // S(A~:E~), the quantum noise
  double J = 0.0;        // accessible information about S from E
  double delta = 0.0;    // discord, L~ - J
  double E_SA = 0.0;     // entanglement of formation of S-A~
  double S_sys = 0.0;    // S(rho_S), constant along the dynamics
};

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x).
double binary_entropy(double x);

/// von Neumann entropy -sum l log2 l, with 0 log 0 = 0 and roundoff
/// negatives clamped.
double entropy(const Matrix& rho);
double entropy(const DensityMatrix& rho);

/// S(X) + S(Y) - S(XY) for a bipartite state.
double mutual_information(const DensityMatrix& rho);

/// S(XZ) + S(YZ) - S(Z) - S(XYZ) for a tripartite state.
double conditional_mutual_information(const DensityMatrix& rho);

/// 1/2 ||r1 - r2||_1.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

double eof_from_concurrence(double c);

/// Entanglement of formation of a two-qubit state,
/// E = h((1 + sqrt(1 - C^2))/2).
double entanglement_of_formation(const DensityMatrix& rho);

/// Quantum loss without access to the environment,
/// L~ = S(rho_A(0)) - S(rho_A~) + S(rho_SA~).
double quantum_loss(double initial_entropy_A, const DensityMatrix& rho_sa_evolved);

/// Accessible information via the Koashi-Winter relation for a pure global
/// state: J = S_sys - E(rho_SA~).
double accessible_information_kw(const DensityMatrix& rho_sa_evolved, double S_sys);

/// Accessible information by direct maximization over rank-1 projective
/// measurements on a qubit environment (Bloch-angle grid plus simplex
/// refinement). Oracle route; the KW value is authoritative.
double accessible_information_povm(const DensityMatrix& rho_se);

/// delta = L~ - J.
double discord(double L_tilde, double J);

}  // namespace nmflow
