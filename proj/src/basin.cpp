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

#include "kerr/basin.hpp"

#include "kerr/parallel.hpp"

#include <array>
#include <cmath>

namespace kerr {

Complex BasinMap::pixel_center(Index row, Index col) const {
  const double dx = (bounds.re_max - bounds.re_min) / resolution;
  const double dy = (bounds.im_max - bounds.im_min) / resolution;
  return {bounds.re_min + (static_cast<double>(col) + 0.5) * dx,
          bounds.im_min + (static_cast<double>(row) + 0.5) * dy};
}

namespace {

BasinLabel label_endpoint(const FixedPointSet<double>& roots, Complex b) {
  const Complex inner = roots.inner().b;
  const Complex outer = roots.outer().b;
  const double d_in = std::abs(b - inner);
  const double d_out = std::abs(b - outer);
  const bool near_in = d_in < classification_radius(inner);
  const bool near_out = d_out < classification_radius(outer);
  if (near_in && near_out) return d_out < d_in ? BasinLabel::kOuter : BasinLabel::kInner;
  if (near_out) return BasinLabel::kOuter;
  if (near_in) return BasinLabel::kInner;
  return BasinLabel::kUnresolved;
}

void require_bistable(const Params& p, const FixedPointSet<double>& roots) {
  if (!roots.bistable() || !roots.inner().stable || !roots.outer().stable) {
    throw Error(ErrorKind::kNotBistable,
                "nu = " + std::to_string(p.nu) + " has " + std::to_string(roots.count()) +
                    " fixed point(s); basin classification needs two stable roots");
  }
}

}  // namespace

BasinLabel classify_point(const Params& p, const FixedPointSet<double>& roots, Complex b0,
                          double horizon, double dt, bool early_capture) {
  require_bistable(p, roots);
  const Complex inner = roots.inner().b;
  const Complex outer = roots.outer().b;
  const Complex saddle = roots.saddle().b;
  const double capture_in = std::min(classification_radius(inner), 0.25 * std::abs(inner - saddle));
  const double capture_out =
      std::min(classification_radius(outer), 0.25 * std::abs(outer - saddle));

  const double capture_in_sq = capture_in * capture_in;
  const double capture_out_sq = capture_out * capture_out;
  const long n_steps = static_cast<long>(std::ceil(horizon / dt - 1e-9));
  const double h = horizon / static_cast<double>(std::max(n_steps, 1L));
  const long dwell = static_cast<long>(std::ceil((2.0 / p.gamma) / h));

  Complex b = b0;
  long inside_in = 0;
  long inside_out = 0;
  for (long step = 0; step < n_steps; ++step) {
    b = rk4_step(p, b, h);
    if (!early_capture) continue;
    inside_in = std::norm(b - inner) < capture_in_sq ? inside_in + 1 : 0;
    inside_out = std::norm(b - outer) < capture_out_sq ? inside_out + 1 : 0;
    if (inside_out >= dwell) return BasinLabel::kOuter;
    if (inside_in >= dwell) return BasinLabel::kInner;
  }
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
    throw Error(ErrorKind::kNonFinite, "basin trajectory overflowed");
  return label_endpoint(roots, b);
}

BasinMap classify_grid(const Params& p, const BasinGridConfig& cfg) {
  p.validate();
  if (cfg.resolution < 1) throw Error(ErrorKind::kInvalidArgument, "resolution must be >= 1");
  if (!(p.gamma > 0)) throw Error(ErrorKind::kInvalidArgument, "basins need gamma > 0");
  if (cfg.horizon_relax < 10.0)
    throw Error(ErrorKind::kInvalidArgument, "horizon must be at least 10 T_gamma");
  const auto roots = find_fixed_points(p);
  require_bistable(p, roots);

  BasinMap map;
  map.bounds = cfg.bounds;
  map.resolution = cfg.resolution;
  map.labels.resize(cfg.resolution, cfg.resolution);

  const double horizon = cfg.horizon_relax * p.relaxation_period();
  const double dt = p.period() / cfg.steps_per_period;
  parallel_for(map.labels.size(), cfg.threads, [&](Index idx) {
    const Index row = idx / cfg.resolution;
    const Index col = idx % cfg.resolution;
    const BasinLabel l =
        classify_point(p, roots, map.pixel_center(row, col), horizon, dt, cfg.early_capture);
    map.labels(row, col) = static_cast<std::uint8_t>(l);
  });

  std::array<Index, 3> counts{0, 0, 0};
  for (Index i = 0; i < map.labels.size(); ++i) ++counts[map.labels.data()[i]];
  const double total = static_cast<double>(map.labels.size());
  map.fractions.inner = static_cast<double>(counts[0]) / total;
  map.fractions.outer = static_cast<double>(counts[1]) / total;
  map.fractions.unresolved = static_cast<double>(counts[2]) / total;
  return map;
}

std::vector<SweepPoint> basin_fraction_sweep(const Params& p, const std::vector<double>& nus,
                                             const BasinGridConfig& cfg) {
  std::vector<SweepPoint> out;
  out.reserve(nus.size());
  for (double nu : nus) {
    const Params pn = p.with_nu(nu);
    const auto roots = find_fixed_points(pn);
    if (roots.bistable()) {
      out.push_back({nu, classify_grid(pn, cfg).fractions, true});
    } else {
      const bool outer = on_outer_branch(pn, roots.roots.front().action);
      out.push_back({nu, BasinFractions{outer ? 1.0 : 0.0, outer ? 0.0 : 1.0, 0.0}, false});
    }
  }
  return out;
}

std::optional<double> half_crossing(const std::vector<SweepPoint>& sweep) {
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    const double f0 = sweep[i - 1].fractions.outer - 0.5;
    const double f1 = sweep[i].fractions.outer - 0.5;
    if (f0 == 0.0) return sweep[i - 1].nu;
    if ((f0 > 0) != (f1 > 0)) {
      const double w = f0 / (f0 - f1);
      return sweep[i - 1].nu + w * (sweep[i].nu - sweep[i - 1].nu);
    }
  }
  return std::nullopt;
}

StepPlan StepPlan::make(double t_final, double dt, long stride) {
  if (!(dt > 0)) throw Error(ErrorKind::kInvalidArgument, "dt must be positive");
  if (!(t_final >= 0)) throw Error(ErrorKind::kInvalidArgument, "t_final must be >= 0");
  if (stride < 1) throw Error(ErrorKind::kInvalidArgument, "stride must be >= 1");
  StepPlan plan;
  plan.n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  plan.h = plan.n_steps > 0 ? t_final / static_cast<double>(plan.n_steps) : dt;
  plan.stride = stride;
  return plan;
}

std::vector<long> StepPlan::sample_steps() const {
  std::vector<long> steps{0};
  for (long s = 1; s <= n_steps; ++s)
    if (s % stride == 0 || s == n_steps) steps.push_back(s);
  return steps;
}

std::vector<double> row_means(const MatrixXd& samples) {
  std::vector<double> means(samples.rows());
  std::vector<double> row(samples.cols());
  for (Index r = 0; r < samples.rows(); ++r) {
    for (Index c = 0; c < samples.cols(); ++c) row[c] = samples(r, c);
    means[r] = pairwise_sum(row) / static_cast<double>(row.size());
  }
  return means;
}

ActionSeries ensemble_mean_action(const Params& p, const CircleEnsemble& ens, double t_final,
                                  double dt, long stride, int threads) {
  p.validate();
  if (ens.n_particles < 1) throw Error(ErrorKind::kInvalidArgument, "n_particles must be >= 1");
  const StepPlan plan = StepPlan::make(t_final, dt, stride);
  const auto steps = plan.sample_steps();

  MatrixXd samples(static_cast<Index>(steps.size()), ens.n_particles);
  parallel_for(ens.n_particles, threads, [&](Index k) {
    Complex b = ens.member(k);
    std::size_t next = 0;
    for (long s = 0; s <= plan.n_steps; ++s) {
      if (s > 0) b = rk4_step(p, b, plan.h);
      if (next < steps.size() && steps[next] == s) samples(static_cast<Index>(next++), k) = std::norm(b);
    }
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
      throw Error(ErrorKind::kNonFinite, "ensemble member overflowed");
  });

  ActionSeries series;
  series.values = row_means(samples);
  for (long s : steps) series.times.push_back(static_cast<double>(s) * plan.h / p.period());
  return series;
}

CriticalFrequencies critical_frequencies(const Params& p, const FrequencyScan& scan,
                                         const BasinGridConfig& grid, double nu3_tol) {
  const SaddleNodeWindow window = saddle_node_window(p, scan);
  CriticalFrequencies out{window.nu1, window.nu2, std::nullopt};
  if (!window.nu1 || !window.nu2) return out;

  // Stay clear of the saddle-node points where the root set is degenerate.
  const double margin = 1e-3 * (*window.nu2 - *window.nu1);
  double lo = *window.nu1 + margin;
  double hi = *window.nu2 - margin;
  auto balance = [&](double nu) {
    const auto f = classify_grid(p.with_nu(nu), grid).fractions;
    return f.outer - f.inner;
  };
  double f_lo = balance(lo);
  const double f_hi = balance(hi);
  if ((f_lo > 0) == (f_hi > 0)) return out;
  while (hi - lo > nu3_tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = balance(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.nu3_classical = 0.5 * (lo + hi);
  return out;
}

}  // namespace kerr
