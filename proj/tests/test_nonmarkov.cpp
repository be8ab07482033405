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

#include "nmflow/nonmarkov.hpp"
#include "nmflow/optimize.hpp"
#include "testutil.hpp"

using namespace nmflow;
using test::random_density;

namespace {

const ChannelFamily kAD3 = ChannelFamily::amplitude_damping({1.0, 3.0});
const ChannelFamily kAD01 = ChannelFamily::amplitude_damping({1.0, 0.1});
const ChannelFamily kGAD = ChannelFamily::generalized_amplitude_damping({5.0});

// Slimmed-down search so unit tests stay fast; the acceptance suite runs
// the full defaults.
SearchConfig quick_search() {
  SearchConfig s;
  s.blp_theta_grid = 8;
  s.blp_phi_grid = 6;
  s.blp_random_pairs = 40;
  s.bloch_grid = 5;
  s.refine_seeds = 1;
  s.refine_max_iter = 60;
  return s;
}

}  // namespace

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid(1.0, 0.25);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("positive_variation") {
  TimeSeries falling{{0, 1, 2, 3}, {3.0, 2.0, 1.5, 0.2}, "f"};
  auto [v1, i1] = positive_variation(falling);
  CHECK(v1 == 0.0);
  CHECK(i1.empty());

  TimeSeries zigzag{{0, 1, 2, 3}, {0.0, 1.0, 0.0, 1.0}, "z"};
  auto [v2, i2] = positive_variation(zigzag);
  CHECK(v2 == doctest::Approx(2.0).epsilon(1e-15));
  REQUIRE(i2.size() == 2);
  CHECK(i2[0].first == 0.0);
  CHECK(i2[0].second == 1.0);
  CHECK(i2[1].first == 2.0);

  // Sampled sine over one period rises by 2 (from -1 up to +1), and the
  // interval sum telescopes to the same value.
  TimeSeries sine;
  sine.grid = uniform_grid(2.0 * M_PI, 1e-4);
  for (double t : sine.grid) sine.values.push_back(std::sin(t));
  auto [v3, i3] = positive_variation(sine);
  // Discretization and the rounded grid endpoint shift the analytic value
  // of 2 by O(dt).
  CHECK(v3 == doctest::Approx(2.0).epsilon(1e-4));
  double interval_sum = 0.0;
  for (auto [a, b] : i3) {
    const size_t ia = static_cast<size_t>(std::round(a / 1e-4));
    const size_t ib = static_cast<size_t>(std::round(b / 1e-4));
    interval_sum += sine.values[ib] - sine.values[ia];
  }
  CHECK(std::abs(interval_sum - v3) < 1e-9);
}

TEST_CASE("nelder_mead") {
  auto quad = [](const std::vector<double>& x) {
    return (x[0] - 1.5) * (x[0] - 1.5) + 2.0 * (x[1] + 0.5) * (x[1] + 0.5);
  };
  const auto r = nelder_mead(quad, {0.0, 0.0}, {400, 1e-12, 1e-15, 0.5});
  CHECK(r.x[0] == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-6));

  // Determinism: identical inputs, identical trajectory.
  const auto r2 = nelder_mead(quad, {0.0, 0.0}, {400, 1e-12, 1e-15, 0.5});
  CHECK(r.x == r2.x);
  CHECK(r.f == r2.f);
}

TEST_CASE("blp measure") {
  const auto grid = uniform_grid(10.0, 0.02);
  const auto markov = blp_measure(kAD3, grid, quick_search());
  CHECK(markov.value <= 1e-6);
  CHECK(markov.intervals.empty());

  const auto identity = blp_measure(ChannelFamily::identity(), grid, quick_search());
  CHECK(identity.value == 0.0);

  const auto grid01 = uniform_grid(50.0, 0.02);
  const auto revival = blp_measure(kAD01, grid01, quick_search());
  CHECK(revival.value > 1e-3);
  CHECK(!revival.intervals.empty());

  // Oracle lower bound: the antipodal z-axis pair evaluated directly.
  const double z_pair = blp_value_at(kAD01, grid01, 0.0, 0.0);
  CHECK(z_pair > 1e-3);
  CHECK(revival.value >= z_pair - 1e-9);
}

TEST_CASE("lfs and rhp measures") {
  const auto grid = uniform_grid(10.0, 0.02);
  CHECK(lfs_measure(kAD3, grid, quick_search()).value <= 1e-6);
  CHECK(rhp_measure(kAD3, grid, quick_search()).value <= 1e-6);

  const auto grid01 = uniform_grid(50.0, 0.02);
  const auto lfs = lfs_measure(kAD01, grid01, quick_search());
  const auto rhp = rhp_measure(kAD01, grid01, quick_search());
  CHECK(lfs.value > 1e-3);
  CHECK(rhp.value > 1e-3);
  // Maximizers must do at least as well as the Bell seed they competed with.
  CHECK(lfs.value >= lfs_value_at(kAD01, grid01, {0, 0, 0}) - 1e-9);
  CHECK(rhp.value >= rhp_value_at(kAD01, grid01, {0, 0, 0}) - 1e-9);

  const auto gad_grid = uniform_grid(3.0, 0.01);
  const auto gad_lfs = lfs_measure(kGAD, gad_grid, quick_search());
  const auto gad_rhp = rhp_measure(kGAD, gad_grid, quick_search());
  CHECK(gad_lfs.value > 1e-3);
  CHECK(gad_rhp.value > 1e-3);
  REQUIRE(!gad_rhp.intervals.empty());
  // First E/J growth of the reverse direction: J starts decreasing near 0.3.
  CHECK(gad_rhp.intervals.front().first > 0.15);
  CHECK(gad_rhp.intervals.front().first < 0.45);
}

TEST_CASE("divisibility profile") {
  const auto grid = uniform_grid(3.0, 0.05);
  const auto identity = divisibility_profile(ChannelFamily::identity(), grid);
  for (double v : identity.values) CHECK(v == 0.0);

  const auto ad = divisibility_profile(kAD3, uniform_grid(10.0, 0.05));
  for (double v : ad.values) CHECK(std::abs(v) <= 1e-9);

  const auto gad = divisibility_profile(kGAD, grid);
  for (size_t k = 0; k < grid.size(); ++k)
    CHECK(std::abs(gad.values[k] - gad_g_closed_form(grid[k], {5.0})) < 1e-4);
}

TEST_CASE("CPTP trace-distance contraction") {
  std::mt19937 rng(89);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix r1 = random_density(rng, {2});
    const DensityMatrix r2 = random_density(rng, {2});
    const double before = trace_distance(r1, r2);

    const KrausChannel ad = ad_kraus(u(rng));
    CHECK(trace_distance(apply_to_subsystem(ad, r1, 0), apply_to_subsystem(ad, r2, 0)) <=
          before + 1e-10);

    const KrausChannel gad = gad_kraus(u(rng), u(rng));
    CHECK(trace_distance(apply_to_subsystem(gad, r1, 0), apply_to_subsystem(gad, r2, 0)) <=
          before + 1e-10);
  }
}
