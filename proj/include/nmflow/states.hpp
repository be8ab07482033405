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

#include "nmflow/qmat.hpp"

namespace nmflow {

/// Density matrix with subsystem dimension tags. Subsystem ordering is
/// fixed globally as S (x) A (x) E.
struct DensityMatrix {
  Matrix mat;
  std::vector<Eigen::Index> dims;

  Eigen::Index dim() const { return mat.rows(); }
};

/// Qubit Bloch vector, |r| <= 1.
struct BlochVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double norm() const;
};

struct InvariantViolation {
  std::string name;
  double magnitude;
};

struct ValidationReport {
  std::vector<InvariantViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Pauli matrices and the 2x2 identity.
const Matrix& sigma_x();
const Matrix& sigma_y();
const Matrix& sigma_z();
const Matrix& identity2();

/// Lowering operator |0><1| (sigma-minus).
const Matrix& sigma_minus();

/// Diagnostic check of the density-matrix invariants (Hermiticity, unit
/// trace, positivity). `positivity_tol` may be loosened for states coming
/// out of a numerical integrator.
ValidationReport validate(const DensityMatrix& rho, double positivity_tol = kHermitianTol);

/// Construct a DensityMatrix, throwing NumericalError if invalid.
DensityMatrix make_density(Matrix m, std::vector<Eigen::Index> dims,
                           double positivity_tol = kHermitianTol);

/// Reduced state on the kept subsystems.
DensityMatrix marginal(const DensityMatrix& rho, const std::vector<int>& keep);

/// (I + r.sigma)/2.
DensityMatrix bloch_to_density(const BlochVector& r);

/// Canonical purification sum_aj sqrt(rho)(a,j) |a> (x) |j> with a
/// standard-basis ancilla (second factor); diagonal inputs purify as
/// sum_i sqrt(rho_ii) |ii>.
DensityMatrix purify(const DensityMatrix& rho);

/// Pure two-qubit state on [S, A] whose A-marginal is bloch_to_density(r);
/// S is the purifying system.
DensityMatrix pure_sa_from_bloch(const BlochVector& r);

/// |Phi+><Phi+| on [S, A].
DensityMatrix bell_state();

/// Largest eigenvalue of rho (1 for a pure state).
double purity_largest_eigenvalue(const DensityMatrix& rho);

}  // namespace nmflow
