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

#include "kerr/langevin.hpp"

#include "kerr/parallel.hpp"

#include <cmath>

namespace kerr {

void LangevinConfig::validate() const {
  if (!(dt > 0)) throw Error(ErrorKind::kInvalidArgument, "Langevin dt must be positive");
  if (n_traj < 1) throw Error(ErrorKind::kInvalidArgument, "n_traj must be >= 1");
  if (!(nbar >= 0)) throw Error(ErrorKind::kInvalidArgument, "nbar must be >= 0");
  if (const auto* ens = std::get_if<CircleEnsemble>(&initial); ens && ens->n_particles < 1)
    throw Error(ErrorKind::kInvalidArgument, "circle ensemble needs n_particles >= 1");
}

Complex LangevinConfig::initial_state(Index traj) const {
  if (const auto* ens = std::get_if<CircleEnsemble>(&initial))
    return ens->member(traj % ens->n_particles);
  return std::get<Complex>(initial);
}

TrajectoryRng::TrajectoryRng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

namespace {

struct Stepper {
  const Params& p;
  double h;
  double amplitude;
  DriftScheme drift;

  Complex operator()(Complex b, TrajectoryRng& rng) const {
    if (amplitude == 0.0) {
      return drift == DriftScheme::kRk4 ? rk4_step(p, b, h) : b + eom_rotating_frame(p, b) * h;
    }
    const double eta1 = rng.normal();
    const double eta2 = rng.normal();
    if (drift == DriftScheme::kRk4)
      return rk4_step(p, b, h) + amplitude * std::sqrt(h) * Complex(eta1, eta2);
    return langevin_step(p, b, h, amplitude, eta1, eta2);
  }
};

void require_finite(Complex b) {
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
    throw Error(ErrorKind::kNonFinite, "Langevin trajectory overflowed; reduce dt");
}

}  // namespace

ActionSeries run_ensemble(const Params& p, const LangevinConfig& cfg, double t_final, long stride) {
  p.validate();
  cfg.validate();
  const StepPlan plan = StepPlan::make(t_final, cfg.dt, stride);
  const auto steps = plan.sample_steps();
  const Stepper step{p, plan.h, cfg.noise_enabled ? noise_amplitude(p, cfg.nbar) : 0.0, cfg.drift};

  MatrixXd samples(static_cast<Index>(steps.size()), cfg.n_traj);
  parallel_for(cfg.n_traj, cfg.threads, [&](Index k) {
    TrajectoryRng rng(cfg.seed, static_cast<std::uint64_t>(k));
    Complex b = cfg.initial_state(k);
    std::size_t next = 0;
    for (long s = 0; s <= plan.n_steps; ++s) {
      if (s > 0) b = step(b, rng);
      if (next < steps.size() && steps[next] == s) samples(static_cast<Index>(next++), k) = std::norm(b);
    }
    require_finite(b);
  });

  ActionSeries series;
  series.values = row_means(samples);
  std::vector<double> row(samples.cols());
  for (Index r = 0; r < samples.rows(); ++r) {
    for (Index c = 0; c < samples.cols(); ++c) row[c] = samples(r, c);
    series.stderrs.push_back(mean_with_error(row).stderr_);
  }
  for (long s : steps) series.times.push_back(static_cast<double>(s) * plan.h / p.period());
  return series;
}

EscapeStatistics escape_statistics(const Params& p, const LangevinConfig& cfg, BasinLabel start,
                                   double t_final, double check_every) {
  p.validate();
  cfg.validate();
  if (start == BasinLabel::kUnresolved)
    throw Error(ErrorKind::kInvalidArgument, "escape statistics start on a stable root");
  if (!(check_every > 0)) throw Error(ErrorKind::kInvalidArgument, "check interval must be positive");
  const auto roots = find_fixed_points(p);
  if (!roots.bistable())
    throw Error(ErrorKind::kNotBistable, "escape statistics need a bistable nu");

  const Complex home = start == BasinLabel::kOuter ? roots.outer().b : roots.inner().b;
  const double quick_radius = 0.25 * std::abs(home - roots.saddle().b);
  const StepPlan plan = StepPlan::make(t_final, cfg.dt, 1);
  const long check_steps = std::max(1L, std::lround(check_every / plan.h));
  const double probe_horizon = 5.0 * p.relaxation_period();
  const double probe_dt = p.period() / 100.0;
  const Stepper step{p, plan.h, cfg.noise_enabled ? noise_amplitude(p, cfg.nbar) : 0.0, cfg.drift};

  // Step index of the check at which each trajectory was first found outside; -1 if never.
  std::vector<long> escaped_at(cfg.n_traj, -1);
  parallel_for(cfg.n_traj, cfg.threads, [&](Index k) {
    TrajectoryRng rng(cfg.seed, static_cast<std::uint64_t>(k));
    Complex b = home;
    for (long s = 1; s <= plan.n_steps; ++s) {
      b = step(b, rng);
      if (s % check_steps != 0) continue;
      require_finite(b);
      if (std::abs(b - home) < quick_radius) continue;
      const BasinLabel where = classify_point(p, roots, b, probe_horizon, probe_dt, true);
      if (where != start && where != BasinLabel::kUnresolved) {
        escaped_at[k] = s;
        return;
      }
    }
  });

  EscapeStatistics stats;
  const double n = static_cast<double>(cfg.n_traj);
  std::vector<double> exposures(cfg.n_traj);
  for (Index k = 0; k < cfg.n_traj; ++k) {
    if (escaped_at[k] >= 0) {
      ++stats.events;
      // Midpoint of the detection interval.
      exposures[k] = (static_cast<double>(escaped_at[k]) - 0.5 * static_cast<double>(check_steps)) * plan.h;
    } else {
      exposures[k] = t_final;
    }
  }
  stats.exposure = pairwise_sum(exposures);
  for (long s = 0; s <= plan.n_steps; s += check_steps) {
    const auto gone = std::count_if(escaped_at.begin(), escaped_at.end(),
                                    [s](long e) { return e >= 0 && e <= s; });
    stats.times.push_back(static_cast<double>(s) * plan.h / p.period());
    stats.survival.push_back(1.0 - static_cast<double>(gone) / n);
  }
  if (stats.events >= kMinEscapeEvents) {
    stats.rate = stats.events / stats.exposure;
  } else {
    stats.rate = (stats.events + 3.0) / stats.exposure;
    stats.rate_is_upper_bound = true;
  }
  return stats;
}

}  // namespace kerr
