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

#include "nmflow/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "nmflow/optimize.hpp"
#include "nmflow/parallel.hpp"

namespace nmflow {

namespace {

std::vector<KrausChannel> channels_along(const ChannelFamily& family,
                                         const std::vector<double>& grid) {
  std::vector<KrausChannel> chans(grid.size());
  parallel_for(grid.size(), [&](size_t k) { chans[k] = family.at(grid[k]); });
  return chans;
}

// Kraus sum restricted to the second qubit of a two-qubit state, blockwise.
Matrix apply_to_apparatus(const Matrix& rho_sa, const KrausChannel& ch) {
  Matrix out = Matrix::Zero(4, 4);
  for (const Matrix& m : ch.operators) {
    const Matrix ma = m.adjoint();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.block(2 * i, 2 * j, 2, 2) += m * rho_sa.block(2 * i, 2 * j, 2, 2) * ma;
  }
  return out;
}

double entropy2x2(const Matrix& rho) {
  const double tr = rho.trace().real();
  const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  double l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
  double s = 0.0;
  if (l1 > 0.0) s -= l1 * std::log2(l1);
  if (l2 > 0.0) s -= l2 * std::log2(l2);
  return s;
}

Matrix apparatus_marginal(const Matrix& rho_sa) {
  Matrix a(2, 2);
  a(0, 0) = rho_sa(0, 0) + rho_sa(2, 2);
  a(0, 1) = rho_sa(0, 1) + rho_sa(2, 3);
  a(1, 0) = rho_sa(1, 0) + rho_sa(3, 2);
  a(1, 1) = rho_sa(1, 1) + rho_sa(3, 3);
  return a;
}

enum class SaQuantity { MutualInformation, Entanglement };

TimeSeries sa_series(const Matrix& rho_sa0, double s_sys,
                     const std::vector<KrausChannel>& chans, const std::vector<double>& grid,
                     SaQuantity q) {
  TimeSeries ts;
  ts.grid = grid;
  ts.values.resize(grid.size());
  ts.label = (q == SaQuantity::MutualInformation) ? "I_tilde" : "E_SA";
  for (size_t k = 0; k < grid.size(); ++k) {
    const Matrix rho_sa = apply_to_apparatus(rho_sa0, chans[k]);
    if (q == SaQuantity::MutualInformation) {
      ts.values[k] = s_sys + entropy2x2(apparatus_marginal(rho_sa)) - entropy(rho_sa);
    } else {
      ts.values[k] = entanglement_of_formation(DensityMatrix{rho_sa, {2, 2}});
    }
  }
  return ts;
}

double sa_objective(const BlochVector& r, const std::vector<KrausChannel>& chans,
                    const std::vector<double>& grid, SaQuantity q) {
  const DensityMatrix sa0 = pure_sa_from_bloch(r);
  const double s_sys = entropy(partial_trace(sa0.mat, sa0.dims, {0}));
  return positive_variation(sa_series(sa0.mat, s_sys, chans, grid, q)).first;
}

TimeSeries blp_series(double theta, double phi, const std::vector<KrausChannel>& chans,
                      const std::vector<double>& grid) {
  const double n1 = std::sin(theta) * std::cos(phi);
  const double n2 = std::sin(theta) * std::sin(phi);
  const double n3 = std::cos(theta);
  const Matrix plus = bloch_to_density(BlochVector{n1, n2, n3}).mat;
  const Matrix minus = bloch_to_density(BlochVector{-n1, -n2, -n3}).mat;
  TimeSeries ts;
  ts.grid = grid;
  ts.label = "D";
  ts.values.resize(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    Matrix diff = Matrix::Zero(2, 2);
    for (const Matrix& m : chans[k].operators)
      diff += m * (plus - minus) * m.adjoint();
    // diff is traceless Hermitian; D = sqrt(x^2 + |w|^2).
    const double x = 0.5 * (diff(0, 0).real() - diff(1, 1).real());
    ts.values[k] = std::sqrt(x * x + std::norm(diff(0, 1)));
  }
  return ts;
}

double pair_positive_variation(const Matrix& r1, const Matrix& r2,
                               const std::vector<KrausChannel>& chans) {
  double total = 0.0, prev = 0.0;
  for (size_t k = 0; k < chans.size(); ++k) {
    Matrix diff = Matrix::Zero(2, 2);
    for (const Matrix& m : chans[k].operators) diff += m * (r1 - r2) * m.adjoint();
    const double x = 0.5 * (diff(0, 0).real() - diff(1, 1).real());
    const double d = std::sqrt(x * x + std::norm(diff(0, 1)));
    if (k > 0 && d > prev) total += d - prev;
    prev = d;
  }
  return total;
}

// Maximize over the 3-parameter Bloch family with a coarse spherical grid
// followed by simplex restarts from the best distinct seeds.
MeasureReport bloch_family_measure(const ChannelFamily& family, const std::vector<double>& grid,
                                   const SearchConfig& search, SaQuantity q) {
  const auto chans = channels_along(family, grid);
  const int g = search.bloch_grid;

  std::vector<BlochVector> candidates;
  candidates.reserve(static_cast<size_t>(g) * g * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      for (int k = 0; k < g; ++k) {
        const double rad = static_cast<double>(i) / (g - 1);
        const double theta = M_PI * static_cast<double>(j) / (g - 1);
        const double phi = 2.0 * M_PI * static_cast<double>(k) / g;
        candidates.push_back(BlochVector{rad * std::sin(theta) * std::cos(phi),
                                         rad * std::sin(theta) * std::sin(phi),
                                         rad * std::cos(theta)});
      }

  std::vector<double> scores(candidates.size());
  parallel_for(candidates.size(),
               [&](size_t k) { scores[k] = sa_objective(candidates[k], chans, grid, q); });

  std::vector<size_t> order(candidates.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    const auto& ca = candidates[a];
    const auto& cb = candidates[b];
    return std::tie(ca.r1, ca.r2, ca.r3) < std::tie(cb.r1, cb.r2, cb.r3);
  });

  auto penalized = [&](const std::vector<double>& x) {
    const double norm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (norm > 1.0) return 10.0 * (norm - 1.0);
    return -sa_objective(BlochVector{x[0], x[1], x[2]}, chans, grid, q);
  };

  double best = scores[order[0]];
  BlochVector best_r = candidates[order[0]];
  SimplexOptions opts;
  opts.max_iter = search.refine_max_iter;
  opts.x_tol = 1e-8;
  opts.f_tol = 1e-11;
  opts.initial_step = 0.5 / (g - 1);
  const int seeds = std::min<int>(search.refine_seeds, static_cast<int>(order.size()));
  for (int s = 0; s < seeds; ++s) {
    const auto& c = candidates[order[s]];
    const auto res = nelder_mead(penalized, {c.r1, c.r2, c.r3}, opts);
    if (-res.f > best) {
      best = -res.f;
      best_r = BlochVector{res.x[0], res.x[1], res.x[2]};
    }
  }

  // Duality pair: the dual series (-L~ or -J) must accumulate the same
  // positive variation as the primary one.
  const DensityMatrix sa0 = pure_sa_from_bloch(best_r);
  const double s_sys = entropy(partial_trace(sa0.mat, sa0.dims, {0}));
  const TimeSeries primary = sa_series(sa0.mat, s_sys, chans, grid, q);
  TimeSeries dual;
  dual.grid = grid;
  dual.values.resize(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    const Matrix rho_sa = apply_to_apparatus(sa0.mat, chans[k]);
    const DensityMatrix sa{rho_sa, {2, 2}};
    dual.values[k] = (q == SaQuantity::MutualInformation)
                         ? -quantum_loss(s_sys, sa)
                         : -accessible_information_kw(sa, s_sys);
  }
  const auto [pv, intervals] = positive_variation(primary);
  const double pv_dual = positive_variation(dual).first;
  if (std::abs(pv - pv_dual) > 1e-9) {
    std::ostringstream os;
    os << "bloch_family_measure: duality violated, |" << pv << " - " << pv_dual << "| > 1e-9";
    throw NumericalError(os.str());
  }

  MeasureReport rep;
  rep.value = pv;
  rep.intervals = intervals;
  rep.argmax_params = {best_r.r1, best_r.r2, best_r.r3};
  rep.grid_step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  return rep;
}

}  // namespace

std::vector<double> uniform_grid(double t_max, double dt) {
  if (dt <= 0.0 || t_max <= dt) throw std::invalid_argument("uniform_grid: need t_max > dt > 0");
  const auto n = static_cast<size_t>(std::llround(t_max / dt));
  std::vector<double> grid(n + 1);
  for (size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) * dt;
  return grid;
}

std::pair<double, std::vector<std::pair<double, double>>> positive_variation(
    const TimeSeries& series) {
  if (series.grid.size() != series.values.size())
    throw DimensionError("positive_variation: grid/value length mismatch");
  double total = 0.0;
  std::vector<std::pair<double, double>> intervals;
  bool growing = false;
  double start = 0.0;
  for (size_t k = 0; k + 1 < series.values.size(); ++k) {
    const double step = series.values[k + 1] - series.values[k];
    if (step > 0.0) {
      total += step;
      if (!growing) {
        growing = true;
        start = series.grid[k];
      }
    } else if (growing) {
      intervals.emplace_back(start, series.grid[k]);
      growing = false;
    }
  }
  if (growing) intervals.emplace_back(start, series.grid.back());
  return {total, intervals};
}

MeasureReport blp_measure(const ChannelFamily& family, const std::vector<double>& grid,
                          const SearchConfig& search) {
  const auto chans = channels_along(family, grid);

  struct Candidate {
    double theta, phi;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i < search.blp_theta_grid; ++i)
    for (int j = 0; j < search.blp_phi_grid; ++j)
      cands.push_back({M_PI * (i + 0.5) / search.blp_theta_grid,
                       2.0 * M_PI * j / search.blp_phi_grid});

  std::vector<double> scores(cands.size());
  parallel_for(cands.size(), [&](size_t k) {
    scores[k] = positive_variation(blp_series(cands[k].theta, cands[k].phi, chans, grid)).first;
  });
  size_t best_idx = 0;
  for (size_t k = 1; k < cands.size(); ++k)
    if (scores[k] > scores[best_idx]) best_idx = k;

  SimplexOptions opts;
  opts.max_iter = search.refine_max_iter;
  opts.x_tol = 1e-8;
  opts.f_tol = 1e-11;
  opts.initial_step = 0.5 * M_PI / search.blp_theta_grid;
  const auto res = nelder_mead(
      [&](const std::vector<double>& x) {
        return -positive_variation(blp_series(x[0], x[1], chans, grid)).first;
      },
      {cands[best_idx].theta, cands[best_idx].phi}, opts);

  double value = std::max(scores[best_idx], -res.f);
  double theta = res.x[0], phi = res.x[1];

  // Falsification guard: random, possibly mixed, pairs must not beat the
  // antipodal optimum. If one does, its value wins.
  std::mt19937 rng(search.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_state = [&]() {
    const double u = unit(rng), v = unit(rng), w = unit(rng);
    const double rad = std::cbrt(u);
    const double ct = 2.0 * v - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double ph = 2.0 * M_PI * w;
    return bloch_to_density(
               BlochVector{rad * st * std::cos(ph), rad * st * std::sin(ph), rad * ct})
        .mat;
  };
  for (int k = 0; k < search.blp_random_pairs; ++k) {
    const Matrix r1 = random_state();
    const Matrix r2 = random_state();
    const double pv = pair_positive_variation(r1, r2, chans);
    if (pv > value) value = pv;
  }

  MeasureReport rep;
  rep.value = value;
  rep.intervals = positive_variation(blp_series(theta, phi, chans, grid)).second;
  rep.argmax_params = {theta, phi};
  rep.grid_step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  return rep;
}

MeasureReport lfs_measure(const ChannelFamily& family, const std::vector<double>& grid,
                          const SearchConfig& search) {
  return bloch_family_measure(family, grid, search, SaQuantity::MutualInformation);
}

MeasureReport rhp_measure(const ChannelFamily& family, const std::vector<double>& grid,
                          const SearchConfig& search) {
  return bloch_family_measure(family, grid, search, SaQuantity::Entanglement);
}

TimeSeries divisibility_profile(const ChannelFamily& family, const std::vector<double>& grid) {
  TimeSeries ts;
  ts.grid = grid;
  ts.label = "g";
  ts.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](size_t k) {
    try {
      ts.values[k] = g_witness(grid[k], family);
    } catch (const NonInvertibleError&) {
      ts.values[k] = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return ts;
}

double blp_value_at(const ChannelFamily& family, const std::vector<double>& grid, double theta,
                    double phi) {
  const auto chans = channels_along(family, grid);
  return positive_variation(blp_series(theta, phi, chans, grid)).first;
}

double lfs_value_at(const ChannelFamily& family, const std::vector<double>& grid,
                    const BlochVector& r) {
  const auto chans = channels_along(family, grid);
  return sa_objective(r, chans, grid, SaQuantity::MutualInformation);
}

double rhp_value_at(const ChannelFamily& family, const std::vector<double>& grid,
                    const BlochVector& r) {
  const auto chans = channels_along(family, grid);
  return sa_objective(r, chans, grid, SaQuantity::Entanglement);
}

}  // namespace nmflow
