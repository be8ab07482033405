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

#include "nmflow/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace nmflow {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string cell(double v) { return std::isnan(v) ? std::string() : fmt12(v); }

nlohmann::json report_json(const MeasureReport& rep, double halved_value) {
  nlohmann::json j;
  j["value"] = rep.value;
  j["intervals"] = nlohmann::json::array();
  for (const auto& [a, b] : rep.intervals) j["intervals"].push_back({a, b});
  j["argmax_params"] = rep.argmax_params;
  j["grid_step"] = rep.grid_step;
  j["halved_dt_value"] = halved_value;
  j["halving_delta"] = halved_value - rep.value;
  return j;
}

}  // namespace

std::string sweep_csv(const ScenarioConfig& config) {
  const ChannelFamily family = family_from_config(config);
  const DensityMatrix initial = initial_from_config(config);
  const std::vector<double> grid = grid_from_config(config);
  const bool is_ad = config.channel == ChannelFamily::Kind::AmplitudeDamping;

  const auto samples = sweep(initial, family, grid);
  TimeSeries g;
  if (!is_ad) g = divisibility_profile(family, grid);

  std::ostringstream os;
  os << "t,p_or_s,r,gamma,I_tilde,L_tilde,N_tilde,J,delta,E_SA,g\n";
  for (size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    const double t_out = is_ad ? config.ad.gamma0 * s.t : s.t;
    os << fmt12(t_out) << ',' << cell(s.p_or_s) << ',' << cell(s.r) << ',' << cell(s.gamma_t)
       << ',' << fmt12(s.diagram.I_tilde) << ',' << fmt12(s.diagram.L_tilde) << ','
       << fmt12(s.diagram.N_tilde) << ',' << fmt12(s.diagram.J) << ','
       << fmt12(s.diagram.delta) << ',' << fmt12(s.diagram.E_SA) << ','
       << (is_ad ? std::string() : cell(g.values[k])) << '\n';
  }
  return os.str();
}

std::string measure_report(const ScenarioConfig& config, const std::string& which) {
  if (which != "blp" && which != "lfs" && which != "rhp" && which != "all")
    throw ConfigError("which: expected blp|lfs|rhp|all, got '" + which + "'");
  const ChannelFamily family = family_from_config(config);
  const std::vector<double> grid = grid_from_config(config);
  const std::vector<double> fine = uniform_grid(config.grid.t_max, config.grid.dt / 2.0);

  nlohmann::json j;
  j["channel"] = (config.channel == ChannelFamily::Kind::AmplitudeDamping) ? "ad" : "gad";
  if (config.channel == ChannelFamily::Kind::AmplitudeDamping) {
    j["params"] = {{"gamma0", config.ad.gamma0}, {"lam", config.ad.lam}};
  } else {
    j["params"] = {{"omega", config.gad.omega}};
  }
  j["grid"] = {{"t_max", config.grid.t_max}, {"dt", config.grid.dt}};

  if (which == "blp" || which == "all") {
    const auto rep = blp_measure(family, grid, config.search);
    j["measures"]["blp"] = report_json(
        rep, blp_value_at(family, fine, rep.argmax_params[0], rep.argmax_params[1]));
  }
  if (which == "lfs" || which == "all") {
    const auto rep = lfs_measure(family, grid, config.search);
    const BlochVector r{rep.argmax_params[0], rep.argmax_params[1], rep.argmax_params[2]};
    j["measures"]["lfs"] = report_json(rep, lfs_value_at(family, fine, r));
  }
  if (which == "rhp" || which == "all") {
    const auto rep = rhp_measure(family, grid, config.search);
    const BlochVector r{rep.argmax_params[0], rep.argmax_params[1], rep.argmax_params[2]};
    j["measures"]["rhp"] = report_json(rep, rhp_value_at(family, fine, r));
  }
  return j.dump(2) + "\n";
}

int selftest(std::ostream& out, const std::string& inject_fault) {
  struct Check {
    std::string name;
    double residual;
    double tolerance;
  };
  std::vector<Check> checks;

  // Kraus completeness across both families.
  {
    double worst = 0.0;
    for (double p = 0.0; p <= 1.0; p += 0.05) worst = std::max(worst, completeness_defect(ad_kraus(p)));
    for (double s = 0.0; s <= 1.0; s += 0.125)
      for (double r = 0.0; r <= 1.0; r += 0.125)
        worst = std::max(worst, completeness_defect(gad_kraus(s, r)));
    if (inject_fault == "completeness") {
      KrausChannel ch = ad_kraus(0.5);
      ch.operators[0] *= 1.0 + 1e-6;
      worst = std::max(worst, completeness_defect(ch));
    }
    checks.push_back({"kraus_completeness", worst, kCompletenessTol});
  }

  // Conservation, Koashi-Winter and duality across both regimes plus GAD.
  {
    double cons = 0.0, kw = 0.0, dual = 0.0;
    const DensityMatrix bell = bell_state();
    struct Scenario {
      ChannelFamily family;
      double t_max;
    };
    const std::vector<Scenario> scenarios = {
        {ChannelFamily::amplitude_damping({1.0, 3.0}), 10.0},
        {ChannelFamily::amplitude_damping({1.0, 0.1}), 50.0},
        {ChannelFamily::generalized_amplitude_damping({5.0}), 3.0},
    };
    for (const auto& sc : scenarios) {
      const auto samples = sweep(bell, sc.family, uniform_grid(sc.t_max, 0.05));
      for (size_t k = 0; k < samples.size(); ++k) {
        const auto& d = samples[k].diagram;
        cons = std::max(cons, std::abs(d.I_tilde + d.L_tilde - 2.0 * d.S_sys));
        kw = std::max(kw, std::abs(d.E_SA + d.J - d.S_sys));
        if (k > 0) {
          const auto& prev = samples[k - 1].diagram;
          dual = std::max(dual, std::abs((d.L_tilde - prev.L_tilde) + (d.I_tilde - prev.I_tilde)));
          dual = std::max(dual, std::abs((d.E_SA - prev.E_SA) + (d.J - prev.J)));
        }
      }
    }
    checks.push_back({"conservation_I_plus_L", cons, 1e-9});
    checks.push_back({"koashi_winter", kw, 1e-9});
    checks.push_back({"duality_dL_dI_dE_dJ", dual, 1e-9});
  }

  // Kraus family against the master-equation integrator.
  {
    const ADParams p{1.0, 3.0};
    const auto grid = uniform_grid(5.0, 0.01);
    const DensityMatrix rho0 = bloch_to_density(BlochVector{0.4, 0.2, -0.6});
    const auto traj = integrate_master(rho0, [&](double t) { return ad_decay_rate(t, p); }, grid);
    double worst = 0.0;
    for (size_t k = 0; k < grid.size(); ++k) {
      const auto direct = apply_to_subsystem(ad_kraus(ad_p(grid[k], p)), rho0, 0);
      worst = std::max(worst, (traj[k].mat - direct.mat).cwiseAbs().maxCoeff());
    }
    checks.push_back({"kraus_vs_integrator", worst, 1e-6});
  }

  // Divisibility witness against the GAD closed form.
  {
    const GADParams gp{5.0};
    const auto family = ChannelFamily::generalized_amplitude_damping(gp);
    double worst = 0.0;
    for (double t = 0.0; t <= 3.0; t += 0.05)
      worst = std::max(worst, std::abs(g_witness(t, family) - gad_g_closed_form(t, gp)));
    checks.push_back({"gad_witness_closed_form", worst, 1e-4});
  }

  bool all_ok = true;
  for (const auto& c : checks) {
    const bool ok = c.residual <= c.tolerance;
    all_ok = all_ok && ok;
    out << (ok ? "PASS" : "FAIL") << "  " << std::left << std::setw(28) << c.name
        << "residual " << std::scientific << std::setprecision(3) << c.residual
        << "  tolerance " << c.tolerance << std::defaultfloat << "\n";
  }
  out << (all_ok ? "selftest: all checks passed" : "selftest: FAILURES present") << "\n";
  return all_ok ? 0 : 1;
}

std::string plot_script(const std::string& csv_path,
                        const std::vector<std::string>& quantities) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot open CSV file: " + csv_path);
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty CSV file: " + csv_path);
  if (!header.empty() && header.back() == '\r') header.pop_back();

  std::vector<std::string> columns;
  {
    std::istringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) columns.push_back(col);
  }
  std::string missing;
  for (const auto& q : quantities)
    if (std::find(columns.begin(), columns.end(), q) == columns.end())
      missing += (missing.empty() ? "" : ", ") + q;
  if (!missing.empty()) throw ConfigError("plotscript: columns not in CSV: " + missing);

  // Peek one data row to see whether the decay-rate column carries values.
  bool has_gamma = false;
  {
    std::string row;
    if (std::getline(in, row)) {
      std::istringstream rs(row);
      std::string f;
      for (size_t i = 0; i < columns.size() && std::getline(rs, f, ','); ++i)
        if (columns[i] == "gamma" && !f.empty()) has_gamma = true;
    }
  }

  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "# Auto-generated; plots selected sweep quantities against t.\n"
     << "import csv\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "path = " << std::quoted(csv_path) << "\n"
     << "quantities = [";
  for (size_t i = 0; i < quantities.size(); ++i)
    os << (i ? ", " : "") << std::quoted(quantities[i]);
  os << "]\n\n"
     << "cols = {}\n"
     << "with open(path, newline=\"\") as fh:\n"
     << "    for row in csv.DictReader(fh):\n"
     << "        for key, val in row.items():\n"
     << "            cols.setdefault(key, []).append(float(val) if val else None)\n\n"
     << "t = cols[\"t\"]\n"
     << "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
     << "for name in quantities:\n"
     << "    ax.plot(t, cols[name], label=name)\n"
     << "ax.set_xlabel(\"t\")\n"
     << "ax.legend()\n";
  if (has_gamma) {
    os << "inset = ax.inset_axes([0.55, 0.55, 0.4, 0.4])\n"
       << "inset.plot(t, cols[\"gamma\"], color=\"tab:orange\")\n"
       << "inset.set_title(\"decay rate\", fontsize=8)\n";
  }
  os << "fig.tight_layout()\n"
     << "plt.savefig(path.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n"
     << "plt.show()\n";
  return os.str();
}

}  // namespace nmflow
