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

#include <doctest.h>

#include "nmflow/channels.hpp"
#include "testutil.hpp"

using namespace nmflow;
using test::max_abs_diff;
using test::random_density;

namespace {
const ADParams kMarkovian{1.0, 3.0};
const ADParams kNonMarkovian{1.0, 0.1};
}  // namespace

TEST_CASE("ad decay rate") {
  CHECK(ad_decay_rate(0.0, kMarkovian) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ad_decay_rate(0.0, kNonMarkovian) == doctest::Approx(0.0).epsilon(1e-12));

  for (double t = 0.05; t <= 10.0; t += 0.05) CHECK(ad_decay_rate(t, kMarkovian) > 0.0);

  bool negative_seen = false;
  for (double t = 0.05; t <= 50.0; t += 0.05) {
    try {
      if (ad_decay_rate(t, kNonMarkovian) < 0.0) negative_seen = true;
    } catch (const SingularTimeError&) {
      // pole crossings are expected in this regime
    }
  }
  CHECK(negative_seen);

  const auto poles = ad_rate_poles(kNonMarkovian, 50.0);
  REQUIRE(!poles.empty());
  CHECK_THROWS_AS(ad_decay_rate(poles.front(), kNonMarkovian), SingularTimeError);
  CHECK(ad_rate_poles(kMarkovian, 50.0).empty());
}

TEST_CASE("ad kraus parameter p(t)") {
  CHECK(ad_p(0.0, kMarkovian) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ad_p(30.0, kMarkovian) == doctest::Approx(1.0).epsilon(1e-10));

  // p reaches 1 exactly where the rate denominator first vanishes.
  const auto poles = ad_rate_poles(kNonMarkovian, 50.0);
  REQUIRE(!poles.empty());
  CHECK(ad_p(poles.front(), kNonMarkovian) == doctest::Approx(1.0).epsilon(1e-8));

  // Critical damping lam = 2 gamma0 uses the d -> 0 limit branch.
  const ADParams critical{1.0, 2.0};
  const ADParams nearly{1.0, 2.0 + 1e-9};
  CHECK(ad_decay_rate(1.3, critical) ==
        doctest::Approx(ad_decay_rate(1.3, nearly)).epsilon(1e-6));
  CHECK(ad_p(1.3, critical) == doctest::Approx(ad_p(1.3, nearly)).epsilon(1e-6));
}

TEST_CASE("ad kraus channel") {
  const auto id = ad_kraus(0.0);
  CHECK(max_abs_diff(id.operators[0], Matrix::Identity(2, 2)) == 0.0);
  CHECK(id.operators[1].cwiseAbs().maxCoeff() == 0.0);

  Matrix one_state = Matrix::Zero(2, 2);
  one_state(1, 1) = 1.0;
  const DensityMatrix rho1{one_state, {2}};
  Matrix zero_state = Matrix::Zero(2, 2);
  zero_state(0, 0) = 1.0;
  CHECK(max_abs_diff(apply_to_subsystem(ad_kraus(1.0), rho1, 0).mat, zero_state) < 1e-15);

  const auto half = apply_to_subsystem(ad_kraus(0.5), rho1, 0);
  CHECK(half.mat(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.mat(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));

  for (double p = 0.0; p <= 1.0; p += 0.1) CHECK(completeness_defect(ad_kraus(p)) < 1e-12);

  std::vector<Matrix> broken = ad_kraus(0.5).operators;
  broken[0] *= 1.001;
  CHECK_THROWS_AS(make_kraus(broken), NumericalError);
}

TEST_CASE("gad schedule and kraus channel") {
  const GADParams g{5.0};
  auto [s0, r0] = gad_schedule(0.0, g);
  CHECK(s0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r0 == doctest::Approx(1.0).epsilon(1e-12));

  auto [s1, r1] = gad_schedule(M_PI / 10.0, g);
  CHECK(s1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r1 == doctest::Approx(std::exp(-M_PI / 10.0)).epsilon(1e-12));

  auto [s2, r2] = gad_schedule(M_PI / 20.0, g);
  CHECK(s2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(std::exp(-M_PI / 20.0)).epsilon(1e-12));

  for (double s = 0.0; s <= 1.0; s += 0.25)
    for (double r = 0.0; r <= 1.0; r += 0.25) CHECK(completeness_defect(gad_kraus(s, r)) < 1e-12);

  // s = 1 reduces to amplitude damping with p = 1 - r.
  std::mt19937 rng(31);
  const DensityMatrix rho = random_density(rng, {2});
  CHECK(max_abs_diff(apply_to_subsystem(gad_kraus(1.0, 0.4), rho, 0).mat,
                     apply_to_subsystem(ad_kraus(0.6), rho, 0).mat) < 1e-12);

  // Unital exactly at s = 1/2 or r = 1; distinctly non-unital otherwise.
  const DensityMatrix eye{Matrix::Identity(2, 2), {2}};
  CHECK(max_abs_diff(apply_to_subsystem(gad_kraus(0.5, 0.3), eye, 0).mat, eye.mat) < 1e-12);
  CHECK(max_abs_diff(apply_to_subsystem(gad_kraus(0.8, 1.0), eye, 0).mat, eye.mat) < 1e-12);
  CHECK(max_abs_diff(apply_to_subsystem(gad_kraus(1.0, 1.0), rho, 0).mat, rho.mat) < 1e-12);
  CHECK(max_abs_diff(apply_to_subsystem(gad_kraus(0.9, 0.3), eye, 0).mat, eye.mat) > 1e-3);
}

TEST_CASE("apply_to_subsystem locality") {
  std::mt19937 rng(37);
  const auto identity = ChannelFamily::identity();
  const DensityMatrix rho = random_density(rng, {2, 2});
  CHECK(max_abs_diff(apply_to_subsystem(identity.at(1.0), rho, 0).mat, rho.mat) < 1e-15);

  // Full relaxation on A of a Bell pair: A lands in |0>, S untouched.
  const auto relaxed = apply_to_subsystem(ad_kraus(1.0), bell_state(), 1);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(2, 2) = 0.5;
  CHECK(max_abs_diff(relaxed.mat, expect) < 1e-14);

  for (int k = 0; k < 100; ++k) {
    const DensityMatrix sa = random_density(rng, {2, 2});
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto out = apply_to_subsystem(ad_kraus(p), sa, 1);
    CHECK(max_abs_diff(marginal(out, {0}).mat, marginal(sa, {0}).mat) < 1e-12);
  }
}

TEST_CASE("stinespring dilation") {
  // Identity family carries a zero second Kraus operator, so V embeds the
  // qubit as |psi> (x) |0>_E.
  const auto vid = dilate(ChannelFamily::identity().at(0.0));
  REQUIRE(vid.rows() == 4);
  for (Eigen::Index b = 0; b < 2; ++b)
    for (Eigen::Index a = 0; a < 2; ++a) {
      CHECK(std::abs(vid(a * 2, b) - (a == b ? 1.0 : 0.0)) < 1e-15);
      CHECK(std::abs(vid(a * 2 + 1, b)) < 1e-15);
    }

  const double p = 0.37;
  const Matrix v = dilate(ad_kraus(p));
  REQUIRE(v.rows() == 4);
  // |1> -> sqrt(1-p)|1>|0>_E + sqrt(p)|0>|1>_E.
  CHECK(std::abs(v(2, 1) - std::sqrt(1.0 - p)) < 1e-14);
  CHECK(std::abs(v(1, 1) - std::sqrt(p)) < 1e-14);
  CHECK(max_abs_diff(v.adjoint() * v, Matrix::Identity(2, 2)) < 1e-14);

  std::mt19937 rng(41);
  for (int k = 0; k < 200; ++k) {
    const bool use_gad = k % 2 == 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const KrausChannel ch = use_gad ? gad_kraus(u(rng), u(rng)) : ad_kraus(u(rng));
    const DensityMatrix rho = random_density(rng, {2});
    const Matrix big = conjugate_by(dilate(ch), rho.mat);
    const Eigen::Index env = static_cast<Eigen::Index>(ch.operators.size());
    if (use_gad) CHECK(env == 4);
    const Matrix reduced = partial_trace(big, {2, env}, {0});
    CHECK(max_abs_diff(reduced, apply_to_subsystem(ch, rho, 0).mat) < 1e-12);
  }
}

static std::vector<double> make_grid(double t_max, double dt) {
  std::vector<double> g;
  for (double t = 0.0; t <= t_max + dt / 2.0; t += dt) g.push_back(t);
  return g;
}

TEST_CASE("integrate_master") {
  std::mt19937 rng(43);
  const DensityMatrix rho0 = random_density(rng, {2});
  const auto grid = make_grid(2.0, 0.01);

  const auto frozen = integrate_master(rho0, [](double) { return 0.0; }, grid);
  CHECK(max_abs_diff(frozen.back().mat, rho0.mat) < 1e-12);

  Matrix one_state = Matrix::Zero(2, 2);
  one_state(1, 1) = 1.0;
  const double gamma = 0.7;
  const auto decay =
      integrate_master(DensityMatrix{one_state, {2}}, [&](double) { return gamma; }, grid);
  for (size_t k = 0; k < grid.size(); ++k)
    CHECK(decay[k].mat(1, 1).real() ==
          doctest::Approx(std::exp(-gamma * grid[k])).epsilon(1e-8));

  const auto traj = integrate_master(
      bloch_to_density({0.3, -0.5, 0.2}),
      [&](double t) { return ad_decay_rate(t, kMarkovian); }, make_grid(10.0, 0.01));
  const DensityMatrix start = bloch_to_density({0.3, -0.5, 0.2});
  for (size_t k = 0; k < traj.size(); ++k) {
    const auto direct = apply_to_subsystem(ad_kraus(ad_p(k * 0.01, kMarkovian)), start, 0);
    CHECK(max_abs_diff(traj[k].mat, direct.mat) < 1e-6);
  }
}

TEST_CASE("superoperators and vectorization") {
  std::mt19937 rng(47);
  const DensityMatrix rho = random_density(rng, {2});
  CHECK(max_abs_diff(unvectorize(vectorize(rho.mat), 2), rho.mat) == 0.0);

  CHECK(max_abs_diff(superoperator(ChannelFamily::identity().at(0.0)).mat,
                     Matrix::Identity(4, 4)) == 0.0);

  // Full relaxation maps everything to |0><0|: rank-deficient superoperator.
  const auto s1 = superoperator(ad_kraus(1.0));
  CHECK(hermitian_eig(s1.mat.adjoint() * s1.mat).eigenvalues.tail(2).cwiseAbs().maxCoeff() <
        1e-14);

  for (int k = 0; k < 50; ++k) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const KrausChannel ch = gad_kraus(u(rng), u(rng));
    const DensityMatrix x = random_density(rng, {2});
    const Vector via_super = superoperator(ch).mat * vectorize(x.mat);
    const Vector via_kraus = vectorize(apply_to_subsystem(ch, x, 0).mat);
    CHECK((via_super - via_kraus).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("intermediate maps") {
  const auto s = superoperator(ad_kraus(0.4));
  CHECK(max_abs_diff(intermediate_map(s, s).mat, Matrix::Identity(4, 4)) < 1e-12);

  const auto id = superoperator(ChannelFamily::identity().at(0.0));
  CHECK(max_abs_diff(intermediate_map(s, id).mat, s.mat) < 1e-14);

  // The AD family composes within itself: Lambda(t2, t1) = AD(p12).
  const double p1 = 0.3, p2 = 0.55;
  const double p12 = (p2 - p1) / (1.0 - p1);
  const auto bridged = intermediate_map(superoperator(ad_kraus(p2)), superoperator(ad_kraus(p1)));
  CHECK(max_abs_diff(bridged.mat, superoperator(ad_kraus(p12)).mat) < 1e-12);

  CHECK_THROWS_AS(intermediate_map(s, superoperator(ad_kraus(1.0))), NonInvertibleError);
}

TEST_CASE("choi matrices") {
  const auto id = superoperator(ChannelFamily::identity().at(0.0));
  const Matrix omega = choi(id);
  CHECK(std::abs(omega.trace() - 1.0) < 1e-14);
  CHECK(hermitian_eig(omega).eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));

  const auto spec = hermitian_eig(choi(superoperator(ad_kraus(0.6))));
  CHECK(spec.eigenvalues.minCoeff() > -1e-12);

  // Inside a non-divisible window the GAD intermediate map loses CP.
  const GADParams g{5.0};
  const auto family = ChannelFamily::generalized_amplitude_damping(g);
  REQUIRE(gad_g_closed_form(0.5, g) > 0.1);
  const auto mid = intermediate_map(superoperator(family.at(0.5 + 1e-3)),
                                    superoperator(family.at(0.5 - 1e-3)));
  CHECK(hermitian_eig(choi(mid)).eigenvalues.minCoeff() < 0.0);
}

TEST_CASE("divisibility witness") {
  const auto ad3 = ChannelFamily::amplitude_damping(kMarkovian);
  CHECK(g_witness(1e-8, ad3) == doctest::Approx(0.0).epsilon(1e-9));
  for (double t = 0.0; t <= 10.0; t += 0.5) CHECK(g_witness(t, ad3) == 0.0);

  const GADParams g{5.0};
  const auto gad = ChannelFamily::generalized_amplitude_damping(g);
  for (double t = 0.0; t <= 3.0; t += 0.1)
    CHECK(std::abs(g_witness(t, gad) - gad_g_closed_form(t, g)) < 1e-4);

  CHECK(gad_g_closed_form(0.0, g) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gad closed form witness pointwise") {
  // g = 1/2 [|1-f| + |f| - 1] endpoints: f = 1/2 -> 0, f = -1 -> 1.
  auto from_f = [](double f) { return 0.5 * (std::abs(1.0 - f) + std::abs(f) - 1.0); };
  CHECK(from_f(0.5) == doctest::Approx(0.0));
  CHECK(from_f(-1.0) == doctest::Approx(1.0));
}
