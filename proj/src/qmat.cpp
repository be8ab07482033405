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

#include "nmflow/qmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nmflow {

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial_trace: matrix not square");
  Eigen::Index prod = 1;
  for (Eigen::Index d : dims) prod *= d;
  if (prod != m.rows()) {
    std::ostringstream os;
    os << "partial_trace: dims product " << prod << " != matrix dimension " << m.rows()
       << " (dims:";
    for (Eigen::Index d : dims) os << ' ' << d;
    os << ")";
    throw DimensionError(os.str());
  }
  const int n = static_cast<int>(dims.size());
  for (size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= n) throw DimensionError("partial_trace: keep index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw DimensionError("partial_trace: keep indices must be strictly increasing");
  }

  std::vector<Eigen::Index> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> traced;
  for (int s = 0; s < n; ++s)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

  Eigen::Index dk = 1, dt = 1;
  for (int s : keep) dk *= dims[s];
  for (int s : traced) dt *= dims[s];

  // Flat offset of a multi-index restricted to a subsystem subset.
  auto offsets = [&](const std::vector<int>& subs, Eigen::Index count) {
    std::vector<Eigen::Index> off(count);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rem = flat, o = 0;
      for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        o += (rem % dims[*it]) * stride[*it];
        rem /= dims[*it];
      }
      off[flat] = o;
    }
    return off;
  };
  const auto koff = offsets(keep, dk);
  const auto toff = offsets(traced, dt);

  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) acc += m(koff[i] + toff[t], koff[j] + toff[t]);
      out(i, j) = acc;
    }
  return out;
}

HermitianSpectrum hermitian_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eig: matrix not square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "hermitian_eig: Hermiticity defect " << defect << " exceeds " << kHermitianTol;
    throw NumericalError(os.str());
  }
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eig: solver failed");
  HermitianSpectrum sp;
  sp.eigenvalues = solver.eigenvalues().reverse();
  sp.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return sp;
}

double trace_norm(const Matrix& m) {
  return hermitian_eig(m).eigenvalues.cwiseAbs().sum();
}

Matrix conjugate_by(const Matrix& u, const Matrix& m) {
  if (m.rows() != m.cols() || u.cols() != m.rows())
    throw DimensionError("conjugate_by: incompatible shapes");
  const double defect = (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()))
                            .cwiseAbs()
                            .maxCoeff();
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "conjugate_by: isometry defect " << defect << " exceeds " << kHermitianTol;
    throw NumericalError(os.str());
  }
  return u * m * u.adjoint();
}

RealVector clamp_spectrum(const RealVector& eigenvalues) {
  RealVector out = eigenvalues;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0) {
      if (out[i] < -kEigenvalueClampTol) {
        std::ostringstream os;
        os << "clamp_spectrum: eigenvalue " << out[i] << " below -" << kEigenvalueClampTol;
        throw NumericalError(os.str());
      }
      out[i] = 0.0;
    }
  }
  return out;
}

}  // namespace nmflow
