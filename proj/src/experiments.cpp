// Copyright 2026 The kerrbistab Authors
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

#include "kerr/experiments.hpp"

#include "kerr/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>

namespace kerr {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

long stride_for(double sample_every, double steps_per_period) {
  return std::max(1L, std::lround(sample_every * steps_per_period));
}

void write_json(ArtifactSet& out, const std::string& name, const json& j, const std::string& what) {
  std::ofstream(out.dir() / name) << j.dump(2) << '\n';
  out.add(name, "json", what);
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

BasinGridConfig grid_config(const RunConfig& cfg) {
  BasinGridConfig g;
  g.bounds = cfg.basin_bounds;
  g.resolution = cfg.grid_resolution;
  g.horizon_relax = cfg.horizon_relax;
  g.steps_per_period = cfg.steps_per_period;
  g.threads = cfg.threads;
  return g;
}

LangevinConfig langevin_config(const RunConfig& cfg) {
  LangevinConfig lc;
  lc.dt = cfg.params.period() / cfg.langevin_steps_per_period;
  lc.n_traj = cfg.n_traj;
  lc.nbar = cfg.nbar;
  lc.seed = cfg.seed;
  lc.drift = cfg.langevin_drift;
  lc.initial = CircleEnsemble{resolved_a0(cfg), cfg.n_traj};
  lc.threads = cfg.threads;
  return lc;
}

std::string time_tag(double t) { return "t" + format_number(t); }

// ---------------------------------------------------------------------------

void fixed_points(const RunConfig& cfg, ArtifactSet& out) {
  const Params& p = cfg.params;
  const auto roots = find_fixed_points(p);
  out.csv("roots.csv", fixed_point_table(roots), "fixed points at nu; stable is 0/1");

  Table sweep({"nu", "count", "abs_b_0", "abs_b_1", "abs_b_2", "stable_0", "stable_1", "stable_2"});
  for (double nu : frequency_grid(cfg.nu_min, cfg.nu_max, cfg.nu_step)) {
    FixedPointSet<double> rs;
    try {
      rs = find_fixed_points(p.with_nu(nu));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateRoots) throw;
      continue;  // grid point on a saddle-node
    }
    std::vector<double> row{nu, static_cast<double>(rs.count()), kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      row[2 + i] = std::abs(rs.roots[i].b);
      row[5 + i] = rs.roots[i].stable ? 1.0 : 0.0;
    }
    sweep.add_row(row);
  }
  out.csv("root_sweep.csv", sweep, "|b| of each root against nu, ascending action; nan when absent");

  const int n_scan = static_cast<int>(std::lround((cfg.nu_max - cfg.nu_min) / cfg.nu_step)) + 1;
  const auto window = saddle_node_window(p, FrequencyScan{cfg.nu_min, cfg.nu_max, n_scan});
  write_json(out, "critical.json", {{"nu1", optional_json(window.nu1)}, {"nu2", optional_json(window.nu2)}},
             "saddle-node frequencies bounding the bistable window");
}

void basins(const RunConfig& cfg, ArtifactSet& out) {
  const auto roots = find_fixed_points(cfg.params);
  const BasinMap map = classify_grid(cfg.params, grid_config(cfg));
  out.csv("basin_map.csv", basin_table(map), "pixel centres; label 0 inner, 1 outer, 2 unresolved");
  out.pgm("basin_map.pgm", map.labels, "label grid, first row = largest Im a");
  write_basin_sidecar(out.dir() / "basin_map.json", map, roots, cfg.params.nu);
  out.add("basin_map.json", "json", "grid geometry, fractions and roots");
}

void basin_sweep(const RunConfig& cfg, ArtifactSet& out) {
  const auto nus = frequency_grid(cfg.nu_min, cfg.nu_max, cfg.nu_step);
  const auto sweep = basin_fraction_sweep(cfg.params, nus, grid_config(cfg));
  Table t({"nu", "outer", "inner", "unresolved", "bistable"});
  for (const auto& s : sweep)
    t.add_row({s.nu, s.fractions.outer, s.fractions.inner, s.fractions.unresolved, s.bistable ? 1.0 : 0.0});
  out.csv("basin_sweep.csv", t, "basin fractions against nu");
  write_json(out, "basin_sweep.json", {{"nu3_classical", optional_json(half_crossing(sweep))}},
             "outer fraction 1/2 crossing, linear interpolation");
}

void classical_ensemble(const RunConfig& cfg, ArtifactSet& out) {
  const Params& p = cfg.params;
  const double dt = p.period() / cfg.steps_per_period;
  const long stride = stride_for(cfg.sample_every, cfg.steps_per_period);
  const CircleEnsemble ens{resolved_a0(cfg), cfg.n_particles};
  out.csv("action.csv",
          action_table(ensemble_mean_action(p, ens, cfg.t_final * p.period(), dt, stride, cfg.threads)),
          "circle-ensemble mean action I(t)");
  const auto traj = integrate_classical(p, ens.member(0), cfg.t_final * p.period(), dt, stride);
  out.csv("trajectory.csv", trajectory_table(traj, p.period()),
          "rotating-frame trajectory of the theta = 0 member");
}

struct QuantumRun {
  OccupationSeries occupation;
  std::vector<std::pair<double, DensityMatrix>> snapshots;
  double max_trace_error = 0.0;
  double max_hermiticity = 0.0;
  double max_tail = 0.0;
};

QuantumRun run_quantum(const RunConfig& cfg, bool keep_snapshots) {
  const Params& p = cfg.params;
  const Index n = cfg.fock_dim;
  const double dt = p.period() / cfg.quantum_steps_per_period;
  const double t_final = cfg.t_final * p.period();
  const long stride = stride_for(cfg.sample_every, cfg.quantum_steps_per_period);
  const long n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(n_steps);

  std::map<long, double> wanted;
  if (keep_snapshots) {
    for (double ts : cfg.snapshot_times)
      if (ts <= cfg.t_final + 1e-12) wanted[std::lround(ts * p.period() / h)] = ts;
  }
  QuantumRun run;
  propagate_density(p, fock_density(resolved_n0(cfg), n), t_final, dt, 1,
                    [&](long step, double t, const DensityMatrix& rho) {
                      if (step % stride == 0 || step == n_steps) {
                        run.occupation.times.push_back(t / p.period());
                        run.occupation.values.push_back(occupation(rho));
                        const auto d = diagnose(rho, false);
                        run.max_trace_error = std::max(run.max_trace_error, d.trace_error);
                        run.max_hermiticity = std::max(run.max_hermiticity, d.hermiticity);
                        run.max_tail = std::max(run.max_tail, d.tail);
                      }
                      if (const auto it = wanted.find(step); it != wanted.end())
                        run.snapshots.emplace_back(it->second, rho);
                    });
  return run;
}

json diagnostics_json(const QuantumRun& run, const RunConfig& cfg) {
  json snaps = json::array();
  for (const auto& [t, rho] : run.snapshots) {
    const auto d = diagnose(rho, true);
    snaps.push_back({{"t", t}, {"trace_error", d.trace_error}, {"hermiticity", d.hermiticity},
                     {"min_eigenvalue", d.min_eigenvalue}, {"tail", d.tail}});
  }
  return {{"fock_dim", cfg.fock_dim}, {"n0", resolved_n0(cfg)},
          {"max_trace_error", run.max_trace_error}, {"max_hermiticity", run.max_hermiticity},
          {"max_tail", run.max_tail}, {"snapshots", snaps}};
}

void quantum_evolve(const RunConfig& cfg, ArtifactSet& out) {
  const QuantumRun run = run_quantum(cfg, true);
  out.csv("occupation.csv", occupation_table(run.occupation), "mean occupation n(t) from Fock state n0");
  for (const auto& [t, rho] : run.snapshots) {
    out.csv("density_" + time_tag(t) + ".csv", density_table(rho), "density matrix elements at t");
    out.csv("density_abs_" + time_tag(t) + ".csv", density_magnitude_table(rho), "|rho_nm| grid at t");
  }
  write_json(out, "quantum.json", diagnostics_json(run, cfg), "state integrity diagnostics");
}

void husimi_experiment(const RunConfig& cfg, ArtifactSet& out) {
  const QuantumRun run = run_quantum(cfg, true);
  HusimiGrid grid;
  grid.bounds = {-cfg.husimi_extent, cfg.husimi_extent, -cfg.husimi_extent, cfg.husimi_extent};
  grid.resolution = cfg.husimi_resolution;
  for (const auto& [t, rho] : run.snapshots) {
    const HusimiField field = husimi(rho, grid, cfg.threads);
    const std::string stem = "husimi_" + time_tag(t);
    out.csv(stem + ".csv", husimi_table(field), "Husimi Q(alpha) at t");
    write_husimi_sidecar(out.dir() / (stem + ".json"), field, t);
    out.add(stem + ".json", "json", "Husimi grid geometry");
  }
}

void spectrum_sweep_experiment(const RunConfig& cfg, ArtifactSet& out) {
  const Index n = cfg.spectrum_dim;
  const Index k = std::min<Index>(cfg.k, n * n);
  const auto nus = frequency_grid(cfg.nu_min, cfg.nu_max, cfg.nu_step);
  // Assemble once to fail fast on the dense budget.
  build_liouvillian(cfg.params.with_nu(nus.front()), n);
  const auto sweep = spectrum_sweep(cfg.params, n, nus, k, cfg.backend, cfg.threads);

  Table lon({"nu", "j", "re", "im"});
  std::vector<std::string> cols{"nu"};
  for (Index j = 0; j < k; ++j) cols.push_back("re_" + std::to_string(j));
  Table wide(std::move(cols));
  double best_nu = kNaN;
  double best_rate = std::numeric_limits<double>::infinity();
  for (const auto& s : sweep) {
    std::vector<double> row{s.nu};
    for (Index j = 0; j < s.eigenvalues.size(); ++j) {
      lon.add_row({s.nu, static_cast<double>(j), s.eigenvalues(j).real(), s.eigenvalues(j).imag()});
      row.push_back(s.eigenvalues(j).real());
    }
    row.resize(wide.columns.size(), kNaN);
    wide.add_row(row);
    if (s.eigenvalues.size() > 1 && std::abs(s.eigenvalues(1).real()) < best_rate) {
      best_rate = std::abs(s.eigenvalues(1).real());
      best_nu = s.nu;
    }
  }
  out.csv("spectrum.csv", lon, "first k Liouvillian eigenvalues per nu, sorted by |Re|");
  out.csv("spectrum_sweep.csv", wide, "Re lambda_j against nu");
  write_json(out, "spectrum_sweep.json",
             {{"fock_dim", n}, {"k", k}, {"nu_min_rate", best_nu}, {"min_abs_re_lambda1", best_rate}},
             "frequency of the smallest |Re lambda_1| on the sweep grid");
}

void mode_diagonals_experiment(const RunConfig& cfg, ArtifactSet& out) {
  const Params& p = cfg.params;
  const auto sd = spectrum(build_liouvillian(p, cfg.spectrum_dim), 3, SpectrumOptions{cfg.backend});
  const ModeDiagonals diag = mode_diagonals(sd);
  out.csv("mode_diagonals.csv", mode_diagonal_table(diag), "diagonals of the steady and metastable modes");

  json j{{"nu", p.nu}, {"fock_dim", cfg.spectrum_dim}};
  json ev = json::array();
  for (Index i = 0; i < sd.eigenvalues.size(); ++i)
    ev.push_back({sd.eigenvalues(i).real(), sd.eigenvalues(i).imag()});
  j["eigenvalues"] = ev;
  j["trace_rho0"] = {sd.steady_state().trace().real(), sd.steady_state().trace().imag()};
  j["trace_rho1"] = {sd.metastable_mode().trace().real(), sd.metastable_mode().trace().imag()};
  try {
    const double tau = lifetime(sd);
    j["lifetime_T"] = tau / p.period();
    j["lifetime_T_gamma"] = tau / p.relaxation_period();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateSpectrum) throw;
    j["lifetime_T"] = nullptr;
  }
  const auto roots = find_fixed_points(p);
  if (roots.bistable()) {
    const LobeWeights w = lobe_weights(diag.metastable, roots.saddle().action);
    j["n_split"] = roots.saddle().action;
    j["lobe_inner"] = w.inner;
    j["lobe_outer"] = w.outer;
  }
  write_json(out, "modes.json", j, "leading eigenvalues, lifetime and lobe weights");
}

void langevin_ensemble(const RunConfig& cfg, ArtifactSet& out) {
  const Params& p = cfg.params;
  const auto series = run_ensemble(p, langevin_config(cfg), cfg.t_final * p.period(),
                                   stride_for(cfg.sample_every, cfg.langevin_steps_per_period));
  out.csv("langevin.csv", action_table(series), "truncated-Wigner mean action with standard error");
}

void escape(const RunConfig& cfg, ArtifactSet& out) {
  const Params& p = cfg.params;
  const auto stats = escape_statistics(p, langevin_config(cfg), cfg.escape_start,
                                       cfg.escape_t_final * p.period(), cfg.check_every * p.period());
  out.csv("survival.csv", survival_table(stats), "fraction still in the starting basin");
  json j{{"start", cfg.escape_start == BasinLabel::kInner ? "inner" : "outer"},
         {"events", stats.events},
         {"exposure", stats.exposure},
         {"rate", stats.rate},
         {"rate_is_upper_bound", stats.rate_is_upper_bound}};
  if (cfg.spectrum_dim <= kDefaultMaxDenseDim) {
    const VectorXc ev = liouvillian_eigenvalues(build_liouvillian(p, cfg.spectrum_dim), 2, cfg.backend);
    j["abs_re_lambda1"] = std::abs(ev(1).real());
    j["rate_over_abs_re_lambda1"] = stats.rate / std::abs(ev(1).real());
  }
  write_json(out, "escape.json", j, "escape rate per natural time unit");
}

void compare_fig3_experiment(const RunConfig& cfg, ArtifactSet& out) {
  const Fig3Series s = compare_fig3(cfg);
  Table t({"t", "I_classical", "n_quantum", "I_langevin", "stderr"});
  for (std::size_t i = 0; i < s.t.size(); ++i)
    t.add_row({s.t[i], s.classical[i], s.quantum[i], s.langevin[i], s.langevin_stderr[i]});
  out.csv("fig3.csv", t, "classical, quantum and truncated-Wigner mean action on a shared time grid");
}

using Runner = void (*)(const RunConfig&, ArtifactSet&);

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> table = {
      {"fixed-points", fixed_points},
      {"basins", basins},
      {"basin-sweep", basin_sweep},
      {"classical-ensemble", classical_ensemble},
      {"quantum-evolve", quantum_evolve},
      {"husimi", husimi_experiment},
      {"spectrum-sweep", spectrum_sweep_experiment},
      {"mode-diagonals", mode_diagonals_experiment},
      {"langevin-ensemble", langevin_ensemble},
      {"escape", escape},
      {"compare-fig3", compare_fig3_experiment},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

double default_circle_radius(const Params& p) {
  return std::abs(find_fixed_points(p).roots.back().b);
}

double resolved_a0(const RunConfig& cfg) {
  return cfg.a0 ? *cfg.a0 : default_circle_radius(cfg.params);
}

int resolved_n0(const RunConfig& cfg) {
  if (cfg.n0) return *cfg.n0;
  const double a0 = resolved_a0(cfg);
  return static_cast<int>(std::lround(a0 * a0));
}

Fig3Series compare_fig3(const RunConfig& cfg) {
  const Params& p = cfg.params;
  const double t_final = cfg.t_final * p.period();
  const CircleEnsemble ens{resolved_a0(cfg), cfg.n_particles};
  const ActionSeries classical =
      ensemble_mean_action(p, ens, t_final, p.period() / cfg.steps_per_period,
                           stride_for(cfg.sample_every, cfg.steps_per_period), cfg.threads);
  const QuantumRun quantum = run_quantum(cfg, false);
  const ActionSeries langevin =
      run_ensemble(p, langevin_config(cfg), t_final, stride_for(cfg.sample_every, cfg.langevin_steps_per_period));

  const auto& tq = quantum.occupation.times;
  if (classical.times.size() != tq.size() || langevin.times.size() != tq.size())
    throw Error(ErrorKind::kConfig, "sample_every does not give a common time grid for all three runs");
  Fig3Series s;
  for (std::size_t i = 0; i < tq.size(); ++i) {
    if (std::abs(classical.times[i] - tq[i]) > 1e-9 || std::abs(langevin.times[i] - tq[i]) > 1e-9)
      throw Error(ErrorKind::kConfig, "sample_every does not give a common time grid for all three runs");
    s.t.push_back(tq[i]);
    s.classical.push_back(classical.values[i]);
    s.quantum.push_back(quantum.occupation.values[i]);
    s.langevin.push_back(langevin.values[i]);
    s.langevin_stderr.push_back(langevin.stderrs[i]);
  }
  return s;
}

fs::path run_experiment(const RunConfig& cfg) {
  cfg.validate();
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == cfg.experiment; });
  if (it == reg.end()) throw Error(ErrorKind::kConfig, "unknown experiment '" + cfg.experiment + "'");

  ArtifactSet out(fs::path(cfg.output_dir) / cfg.experiment, cfg.to_lines());
  it->second(cfg, out);
  out.write_manifest(cfg.experiment, cfg.to_text());
  return out.dir();
}

}  // namespace kerr
