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

#include "nmflow/states.hpp"

#include <cmath>
#include <sstream>

namespace nmflow {

double BlochVector::norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.name << " (magnitude " << v.magnitude << "); ";
  return os.str();
}

namespace {
Matrix make2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

const Matrix& sigma_x() {
  static const Matrix m = make2(0, 1, 1, 0);
  return m;
}
const Matrix& sigma_y() {
  static const Matrix m = make2(0, Complex(0, -1), Complex(0, 1), 0);
  return m;
}
const Matrix& sigma_z() {
  static const Matrix m = make2(1, 0, 0, -1);
  return m;
}
const Matrix& identity2() {
  static const Matrix m = Matrix::Identity(2, 2);
  return m;
}
const Matrix& sigma_minus() {
  static const Matrix m = make2(0, 1, 0, 0);
  return m;
}

ValidationReport validate(const DensityMatrix& rho, double positivity_tol) {
  ValidationReport rep;
  Eigen::Index prod = 1;
  for (Eigen::Index d : rho.dims) prod *= d;
  if (rho.mat.rows() != rho.mat.cols() || prod != rho.mat.rows()) {
    rep.violations.push_back({"dims", static_cast<double>(prod - rho.mat.rows())});
    return rep;
  }
  const double herm = hermiticity_defect(rho.mat);
  if (herm > kHermitianTol) rep.violations.push_back({"hermiticity", herm});
  const double tr = std::abs(rho.mat.trace() - Complex(1.0));
  if (tr > kHermitianTol) rep.violations.push_back({"trace", tr});
  if (herm <= kHermitianTol) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho.mat + rho.mat.adjoint()));
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -positivity_tol) rep.violations.push_back({"positivity", -min_eig});
  }
  return rep;
}

DensityMatrix make_density(Matrix m, std::vector<Eigen::Index> dims, double positivity_tol) {
  DensityMatrix rho{std::move(m), std::move(dims)};
  const auto rep = validate(rho, positivity_tol);
  if (!rep.ok()) throw NumericalError("make_density: invalid state: " + rep.to_string());
  return rho;
}

DensityMatrix marginal(const DensityMatrix& rho, const std::vector<int>& keep) {
  std::vector<Eigen::Index> kept_dims;
  for (int k : keep) kept_dims.push_back(rho.dims.at(k));
  return DensityMatrix{partial_trace(rho.mat, rho.dims, keep), kept_dims};
}

DensityMatrix bloch_to_density(const BlochVector& r) {
  const double n2 = r.r1 * r.r1 + r.r2 * r.r2 + r.r3 * r.r3;
  if (n2 > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "bloch_to_density: |r| = " << std::sqrt(n2) << " exceeds 1";
    throw NumericalError(os.str());
  }
  Matrix m = 0.5 * (identity2() + r.r1 * sigma_x() + r.r2 * sigma_y() + r.r3 * sigma_z());
  return DensityMatrix{m, {2}};
}

DensityMatrix purify(const DensityMatrix& rho) {
  const Eigen::Index d = rho.dim();
  const auto sp = hermitian_eig(rho.mat);
  const RealVector probs = clamp_spectrum(sp.eigenvalues);
  // |psi> = sum_aj sqrt(rho)(a, j) |a> (x) |j>, the canonical purification;
  // tracing the ancilla gives sqrt(rho) sqrt(rho)' = rho, and diagonal
  // states purify with ancilla labels matching the system basis.
  Matrix root = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    root += std::sqrt(probs[i]) * sp.eigenvectors.col(i) * sp.eigenvectors.col(i).adjoint();
  Vector psi = Vector::Zero(d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index j = 0; j < d; ++j) psi[a * d + j] = root(a, j);
  return DensityMatrix{psi * psi.adjoint(), {d, d}};
}

DensityMatrix pure_sa_from_bloch(const BlochVector& r) {
  const DensityMatrix rho_a = bloch_to_density(r);
  const auto sp = hermitian_eig(rho_a.mat);
  const RealVector probs = clamp_spectrum(sp.eigenvalues);
  Vector psi = Vector::Zero(4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    const double amp = std::sqrt(probs[i]);
    // purifying system S in basis label |i>, apparatus A in eigenvector |v_i>
    for (Eigen::Index a = 0; a < 2; ++a) psi[i * 2 + a] += amp * sp.eigenvectors(a, i);
  }
  return DensityMatrix{psi * psi.adjoint(), {2, 2}};
}

DensityMatrix bell_state() {
  Vector psi = Vector::Zero(4);
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  return DensityMatrix{psi * psi.adjoint(), {2, 2}};
}

double purity_largest_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eig(rho.mat).eigenvalues[0];
}

}  // namespace nmflow
