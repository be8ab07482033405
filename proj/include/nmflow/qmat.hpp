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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
/// Magnitude below which a negative eigenvalue is treated as roundoff
/// and clamped to zero before entropy/concurrence evaluation.
inline constexpr double kEigenvalueClampTol = 1e-10;

/// Raised when a numerical contract is violated (non-Hermitian input,
/// negative spectrum beyond roundoff, singular composition, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on shape/subsystem-dimension mismatches.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending
/// with matching orthonormal eigenvector columns.
struct HermitianSpectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// Kronecker product, dimensions (a.rows*b.rows) x (a.cols*b.cols).
Matrix tensor(const Matrix& a, const Matrix& b);

/// Largest deviation from Hermiticity, max |M(i,j) - conj(M(j,i))|.
double hermiticity_defect(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

/// Trace out the subsystems not listed in `keep`. `dims` gives the
/// dimension of each tensor factor (their product must equal m.rows()),
/// `keep` lists kept factor indices in strictly increasing order.
Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep);

/// Spectrum of a Hermitian matrix. The input is symmetrized as (M+M')/2
/// first; inputs farther than kHermitianTol from Hermitian are rejected.
HermitianSpectrum hermitian_eig(const Matrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& m);

/// u * m * u' for an isometry u (u'u = I within kHermitianTol). u may be
/// rectangular; m must be square with m.rows() == u.cols().
Matrix conjugate_by(const Matrix& u, const Matrix& m);

/// Clamp roundoff negatives (magnitude <= kEigenvalueClampTol) to zero.
/// Larger negatives indicate a genuine positivity violation and throw.
RealVector clamp_spectrum(const RealVector& eigenvalues);

}  // namespace nmflow
