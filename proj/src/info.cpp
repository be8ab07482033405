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

#include "nmflow/info.hpp"

#include <algorithm>
#include <cmath>

#include "nmflow/optimize.hpp"
#include "nmflow/qmat.hpp"

namespace nmflow {

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy(const Matrix& rho) {
  const RealVector probs = clamp_spectrum(hermitian_eig(rho).eigenvalues);
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    if (probs[i] > 0.0) s -= probs[i] * std::log2(probs[i]);
  return s;
}

double entropy(const DensityMatrix& rho) { return entropy(rho.mat); }

double mutual_information(const DensityMatrix& rho) {
  if (rho.dims.size() != 2) throw DimensionError("mutual_information: bipartite dims required");
  const double sx = entropy(partial_trace(rho.mat, rho.dims, {0}));
  const double sy = entropy(partial_trace(rho.mat, rho.dims, {1}));
  return sx + sy - entropy(rho.mat);
}

double conditional_mutual_information(const DensityMatrix& rho) {
  if (rho.dims.size() != 3)
    throw DimensionError("conditional_mutual_information: tripartite dims required");
  const double sxz = entropy(partial_trace(rho.mat, rho.dims, {0, 2}));
  const double syz = entropy(partial_trace(rho.mat, rho.dims, {1, 2}));
  const double sz = entropy(partial_trace(rho.mat, rho.dims, {2}));
  return sxz + syz - sz - entropy(rho.mat);
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.dims != r2.dims || r1.dim() != r2.dim())
    throw DimensionError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(r1.mat - r2.mat);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dims != std::vector<Eigen::Index>{2, 2})
    throw DimensionError("concurrence: two-qubit state required");
  const Matrix yy = tensor(sigma_y(), sigma_y());
  const Matrix product = rho.mat * yy * rho.mat.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> solver(product);
  std::vector<double> lambdas(4);
  for (int i = 0; i < 4; ++i) lambdas[i] = std::max(0.0, solver.eigenvalues()[i].real());
  std::stable_sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  const double c = std::sqrt(lambdas[0]) - std::sqrt(lambdas[1]) - std::sqrt(lambdas[2]) -
                   std::sqrt(lambdas[3]);
  return std::min(1.0, std::max(0.0, c));
}

double eof_from_concurrence(double c) {
  const double arg = std::max(0.0, 1.0 - c * c);
  return binary_entropy(0.5 * (1.0 + std::sqrt(arg)));
}

double entanglement_of_formation(const DensityMatrix& rho) {
  return eof_from_concurrence(concurrence(rho));
}

double quantum_loss(double initial_entropy_A, const DensityMatrix& rho_sa_evolved) {
  const double s_a = entropy(partial_trace(rho_sa_evolved.mat, rho_sa_evolved.dims, {1}));
  return initial_entropy_A - s_a + entropy(rho_sa_evolved.mat);
}

double accessible_information_kw(const DensityMatrix& rho_sa_evolved, double S_sys) {
  return S_sys - entanglement_of_formation(rho_sa_evolved);
}

namespace {

// S(rho_S) - sum_i p_i S(rho_S^i) for the rank-1 projective measurement on
// the environment qubit along the Bloch direction (theta, phi).
double projective_information(const DensityMatrix& rho_se, double s_sys, double theta,
                              double phi) {
  Vector dir(2);
  dir << std::cos(theta / 2.0), Complex(std::cos(phi), std::sin(phi)) * std::sin(theta / 2.0);
  double total = s_sys;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const Matrix proj = (outcome == 0)
                            ? Matrix(dir * dir.adjoint())
                            : Matrix(identity2() - dir * dir.adjoint());
    const Matrix op = tensor(identity2(), proj);
    const Matrix sub = op * rho_se.mat * op;
    const Matrix rs = partial_trace(sub, rho_se.dims, {0});
    const double p = rs.trace().real();
    if (p > 1e-14) total -= p * entropy(Matrix(rs / p));
  }
  return total;
}

}  // namespace

double accessible_information_povm(const DensityMatrix& rho_se) {
  if (rho_se.dims != std::vector<Eigen::Index>{2, 2})
    throw DimensionError("accessible_information_povm: qubit environment required");
  const double s_sys = entropy(partial_trace(rho_se.mat, rho_se.dims, {0}));

  constexpr int kThetaN = 64;
  constexpr int kPhiN = 32;
  double best = -1.0;
  double best_theta = 0.0, best_phi = 0.0;
  for (int it = 0; it < kThetaN; ++it) {
    const double theta = M_PI * (it + 0.5) / kThetaN;
    for (int ip = 0; ip < kPhiN; ++ip) {
      const double phi = 2.0 * M_PI * ip / kPhiN;
      const double val = projective_information(rho_se, s_sys, theta, phi);
      if (val > best) {
        best = val;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  SimplexOptions opts;
  opts.max_iter = 400;
  opts.x_tol = 1e-10;
  opts.f_tol = 1e-13;
  opts.initial_step = 0.05;
  const auto res = nelder_mead(
      [&](const std::vector<double>& x) {
        return -projective_information(rho_se, s_sys, x[0], x[1]);
      },
      {best_theta, best_phi}, opts);
  return std::max(best, -res.f);
}

double discord(double L_tilde, double J) { return L_tilde - J; }

}  // namespace nmflow
