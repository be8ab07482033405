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

#include <functional>
#include <utility>

#include "nmflow/states.hpp"

namespace nmflow {

/// Completeness tolerance for Kraus sets, sum_i M_i' M_i = I.
inline constexpr double kCompletenessTol = 1e-12;

/// Raised when a time-dependent rate is evaluated at (or across) a pole.
class SingularTimeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when an early-time map cannot be inverted for an intermediate map.
class NonInvertibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Ordered Kraus set on a d-dimensional system.
struct KrausChannel {
  std::vector<Matrix> operators;
  Eigen::Index dim = 0;
};

/// max-entry deviation of sum_i M_i' M_i from the identity.
double completeness_defect(const KrausChannel& ch);

/// Validates the completeness invariant (kCompletenessTol) on construction.
KrausChannel make_kraus(std::vector<Matrix> operators);

/// Amplitude damping: coupling rate gamma0 and spectral width lam, both 1/time.
struct ADParams {
  double gamma0 = 1.0;
  double lam = 3.0;
};

/// Generalized amplitude damping schedule s(t) = cos^2(omega t), r(t) = exp(-t).
struct GADParams {
  double omega = 5.0;
};

/// Superoperator acting on column-vectorized operators.
struct Superoperator {
  Matrix mat;
  Eigen::Index dim = 0;  // system dimension d; mat is d^2 x d^2
};

/// Time-dependent decay rate gamma(t). For lam < 2*gamma0 the square root
/// d = sqrt(lam^2 - 2*gamma0*lam) is imaginary and the rate is evaluated
/// via its real trigonometric continuation; it may be negative there.
/// Throws SingularTimeError within ~1e-6 of a denominator zero.
double ad_decay_rate(double t, const ADParams& p);

/// Kraus parameter p(t), clamped to [0, 1].
double ad_p(double t, const ADParams& p);

/// Denominator zeros of gamma(t) in (0, t_max]; empty for lam >= 2*gamma0.
std::vector<double> ad_rate_poles(const ADParams& p, double t_max);

/// Two-operator amplitude damping channel at parameter p in [0, 1].
KrausChannel ad_kraus(double pval);

/// (s, r) = (cos^2(omega t), exp(-t)).
std::pair<double, double> gad_schedule(double t, const GADParams& g);

/// Four-operator generalized amplitude damping channel, s and r in [0, 1].
KrausChannel gad_kraus(double s, double r);

/// Map t -> KrausChannel for one of the two channel families.
class ChannelFamily {
 public:
  enum class Kind { Identity, AmplitudeDamping, GeneralizedAmplitudeDamping };

  static ChannelFamily identity();
  static ChannelFamily amplitude_damping(ADParams p);
  static ChannelFamily generalized_amplitude_damping(GADParams p);

  KrausChannel at(double t) const;
  Kind kind() const { return kind_; }
  const ADParams& ad() const { return ad_; }
  const GADParams& gad() const { return gad_; }

 private:
  ChannelFamily() = default;
  Kind kind_ = Kind::Identity;
  ADParams ad_{};
  GADParams gad_{};
};

/// sum_i (I (x) ... M_i ... (x) I) rho (...)', acting on subsystem `target`.
DensityMatrix apply_to_subsystem(const KrausChannel& ch, const DensityMatrix& rho, int target);

/// Stinespring isometry V: d -> d*k with V|psi> = sum_i (M_i|psi>) (x) |i>_E.
Matrix dilate(const KrausChannel& ch);

/// Fixed-step RK4 integration of the relaxation master equation
/// d rho/dt = gamma(t) (s- rho s+ - 1/2 {s+ s-, rho}) over a uniform grid.
/// Each sample is validated as a density matrix with positivity tolerance
/// 1e-8; rate poles inside a step surface as SingularTimeError.
std::vector<DensityMatrix> integrate_master(const DensityMatrix& rho0,
                                            const std::function<double(double)>& rate,
                                            const std::vector<double>& grid);

/// Column-stacking vectorization helpers.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Eigen::Index d);

/// Superoperator of the Kraus sum: vec(M rho M') = (conj(M) (x) M) vec(rho).
Superoperator superoperator(const KrausChannel& ch);

/// Lambda(t2, t1) = late * early^{-1}. Throws NonInvertibleError when the
/// early map's condition number exceeds 1e12.
Superoperator intermediate_map(const Superoperator& late, const Superoperator& early);

/// Choi matrix (I (x) Lambda)|Omega><Omega| with |Omega> = 1/sqrt(d) sum |jj>.
Matrix choi(const Superoperator& s);

/// Non-divisibility witness (||Choi(Lambda_{t+eps,t})||_1 - 1)/eps, evaluated
/// with a centered intermediate map over [t-eps/2, t+eps/2] and floored at 0
/// below 1e-5 (finite-difference noise level).
double g_witness(double t, const ChannelFamily& family, double eps = 1e-5);

/// Exact GAD witness 1/2 [|1-f| + |f| - 1] with
/// f(t) = -omega sin(2 omega t)(1 - e^{-t}) + cos^2(omega t).
double gad_g_closed_form(double t, const GADParams& g);

}  // namespace nmflow
