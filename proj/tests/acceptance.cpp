// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is nonzero when any criterion fails.

#include "kerr/basin.hpp"
#include "kerr/classical.hpp"
#include "kerr/experiments.hpp"
#include "kerr/fock.hpp"
#include "kerr/langevin.hpp"
#include "kerr/liouvillian.hpp"
#include "kerr/master_equation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace kerr;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Verdict()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Params kRef = reference_params(1.2);

// |Re lambda_1| minimum over nu at N = 40; shared by two criteria.
struct QuantumMinimum {
  double nu = 0.0;
  double value = 0.0;
  bool interior = false;
  std::vector<SpectrumSweepPoint> coarse;
};

double abs_re_lambda1(const SpectrumSweepPoint& s) { return std::abs(s.eigenvalues(1).real()); }

const QuantumMinimum& quantum_minimum() {
  static const QuantumMinimum q = [] {
    QuantumMinimum out;
    std::vector<double> nus;
    for (int i = 0; i <= 15; ++i) nus.push_back(1.10 + 0.02 * i);
    out.coarse = spectrum_sweep(kRef, 40, nus, 2);
    auto it = std::min_element(out.coarse.begin(), out.coarse.end(),
                               [](const auto& a, const auto& b) { return abs_re_lambda1(a) < abs_re_lambda1(b); });
    out.interior = it != out.coarse.begin() && it + 1 != out.coarse.end();
    std::vector<double> fine;
    for (int i = -8; i <= 8; ++i) fine.push_back(it->nu + 0.0025 * i);
    const auto refined = spectrum_sweep(kRef, 40, fine, 2);
    auto best = std::min_element(refined.begin(), refined.end(),
                                 [](const auto& a, const auto& b) { return abs_re_lambda1(a) < abs_re_lambda1(b); });
    out.nu = best->nu;
    out.value = abs_re_lambda1(*best);
    return out;
  }();
  return q;
}

Verdict classical_roots() {
  const auto start = std::chrono::steady_clock::now();
  const auto nus = frequency_grid(0.6, 2.4, 0.01);
  double worst = 0.0;
  for (double nu : nus) {
    const auto roots = find_fixed_points(kRef.with_nu(nu));
    for (const auto& r : roots.roots) worst = std::max(worst, std::abs(root_residual(kRef.with_nu(nu), r.b)));
  }
  const auto w = saddle_node_window(kRef, FrequencyScan{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!w.nu1 || !w.nu2) return {false, "no bistable window"};
  const bool ok = *w.nu1 < 1.2 && 1.6 < *w.nu2 && worst < 1e-10 && secs < 1.0;
  return {ok, fmt("nu1 = %.6f, nu2 = %.6f, max residual %.2e, %.3f s", *w.nu1, *w.nu2, worst, secs)};
}

Verdict basin_fractions() {
  const auto w = saddle_node_window(kRef, FrequencyScan{});
  BasinGridConfig grid;
  grid.resolution = 400;
  grid.horizon_relax = 20;
  std::vector<double> nus{*w.nu1 - 0.01, 1.16, 1.2, 1.25, 1.3, 1.35, 1.4, 1.6, 1.8, 2.0, 2.2, 2.27, *w.nu2 + 0.01};
  const auto sweep = basin_fraction_sweep(kRef, nus, grid);
  const double pixel = 1.0 / (400.0 * 400.0);
  bool monotone = true;
  std::string trace;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    trace += fmt(" %.3f:%.4f", sweep[i].nu, sweep[i].fractions.outer);
    if (i > 0 && sweep[i].fractions.outer > sweep[i - 1].fractions.outer + pixel) monotone = false;
  }
  const bool ends = sweep.front().fractions.outer == 1.0 && sweep.back().fractions.outer == 0.0;
  const auto nu3 = half_crossing(sweep);
  const double q = quantum_minimum().nu;
  const bool near = nu3 && std::abs(*nu3 - q) <= 0.1;
  return {monotone && ends && near,
          fmt("monotone %s, ends %s, nu3_classical %.4f vs quantum minimum %.4f (|diff| %.4f, tol 0.1);",
              monotone ? "yes" : "no", ends ? "yes" : "no", nu3 ? *nu3 : NAN, q, nu3 ? std::abs(*nu3 - q) : NAN) +
              trace};
}

Verdict master_equation_integrity() {
  const Params p = kRef;
  RunConfig cfg;
  cfg.params = p;
  const Index n = 120;
  DensityDiagnostics worst;
  worst.min_eigenvalue = 1.0;
  propagate_density(p, fock_density(resolved_n0(cfg), n), 20 * p.period(), p.period() / 200, 20,
                    [&](long, double, const DensityMatrix& rho) {
                      const auto d = diagnose(rho);
                      worst.trace_error = std::max(worst.trace_error, d.trace_error);
                      worst.hermiticity = std::max(worst.hermiticity, d.hermiticity);
                      worst.min_eigenvalue = std::min(worst.min_eigenvalue, d.min_eigenvalue);
                      worst.tail = std::max(worst.tail, d.tail);
                    });
  const bool ok = worst.trace_error < 1e-8 && worst.hermiticity < 1e-10 && worst.min_eigenvalue > -1e-8 &&
                  worst.tail < 1e-8;
  return {ok, fmt("trace err %.2e, hermiticity %.2e, min eig %.2e, tail %.2e", worst.trace_error,
                  worst.hermiticity, worst.min_eigenvalue, worst.tail)};
}

Verdict pure_decay() {
  Params p = kRef;
  p.epsilon = 0;
  const auto occ = evolve_occupation(p, fock_density(10, 40), 20 * p.period(), p.period() / 200, 20);
  double worst = 0.0;
  for (std::size_t i = 0; i < occ.times.size(); ++i)
    worst = std::max(worst, std::abs(occ.values[i] - 10.0 * std::exp(-p.gamma * occ.times[i] * p.period())));
  return {worst < 1e-6, fmt("max |n - 10 exp(-gamma t)| = %.2e over %zu samples", worst, occ.times.size())};
}

Fig3Series fig3(double nu, int n_traj) {
  RunConfig cfg = default_config();
  cfg.params = reference_params(nu);
  cfg.n_traj = n_traj;
  return compare_fig3(cfg);
}

double max_rel_gap(const std::vector<double>& a, const std::vector<double>& ref) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - ref[i]) / ref[i]);
  return m;
}

Verdict quantum_classical() {
  const auto low = fig3(1.2, 1);
  const auto high = fig3(1.6, 1);
  const double gap_low = max_rel_gap(low.quantum, low.classical);
  const double gap_high = max_rel_gap(high.quantum, high.classical);
  return {gap_low < 0.05 && gap_high > 0.10,
          fmt("nu = 1.2 max rel gap %.4f (< 0.05), nu = 1.6 max rel gap %.4f (> 0.10)", gap_low, gap_high)};
}

Verdict zero_mode() {
  const Index n = 40;
  const LiouvillianMatrix l = build_liouvillian(kRef, n);
  const VectorXc all = liouvillian_eigenvalues(l, n * n);
  const double norm = l.cwiseAbs().rowwise().sum().maxCoeff();
  Index zeros = 0;
  for (Index j = 0; j < all.size(); ++j) zeros += std::abs(all(j)) < 1e-8 * norm;

  const auto sd = spectrum(l, 2);
  const MatrixXc& rho = sd.steady_state();
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  const double trace_err = std::abs(rho.trace() - 1.0);

  Params free = kRef;
  free.g = 0;
  free.epsilon = 0;
  const VectorXc ladder = liouvillian_eigenvalues(build_liouvillian(free, 12), 144);
  std::vector<double> rungs;
  for (Index j = 0; j < ladder.size(); ++j) {
    const double re = ladder(j).real();
    if (std::none_of(rungs.begin(), rungs.end(), [&](double r) { return std::abs(r - re) < 1e-6; }))
      rungs.push_back(re);
  }
  std::sort(rungs.begin(), rungs.end(), std::greater<>());
  double rung_err = rungs.size() >= 4 ? 0.0 : INFINITY;
  for (std::size_t j = 0; j < 4 && j < rungs.size(); ++j)
    rung_err = std::max(rung_err, std::abs(rungs[j] + free.gamma / 2 * static_cast<double>(j)));

  const bool ok = zeros == 1 && herm < 1e-10 && min_eig > -1e-8 && trace_err < 1e-8 && rung_err < 1e-8;
  return {ok, fmt("%td zero modes, steady state hermiticity %.2e, min eig %.2e, trace err %.2e; "
                  "ladder rung err %.2e",
                  zeros, herm, min_eig, trace_err, rung_err)};
}

Verdict metastability() {
  const auto& q = quantum_minimum();
  const auto w = saddle_node_window(kRef, FrequencyScan{});
  const bool inside = q.nu > *w.nu1 && q.nu < *w.nu2;
  const bool ok = inside && q.value < kRef.gamma / 20 && q.interior && std::abs(q.nu - 1.2) <= 0.1;
  return {ok, fmt("min |Re lambda1| = %.3e at nu = %.4f (gamma/20 = %.3e), interior %s", q.value, q.nu,
                  kRef.gamma / 20, q.interior ? "yes" : "no")};
}

Verdict mode_traces() {
  double worst0 = 0.0, worst1 = 0.0;
  std::vector<double> outer_lobe;
  for (double nu : {1.19, 1.22}) {
    const Params p = reference_params(nu);
    const auto sd = spectrum(build_liouvillian(p, 40), 2);
    worst0 = std::max(worst0, std::abs(sd.steady_state().trace() - 1.0));
    worst1 = std::max(worst1, std::abs(sd.metastable_mode().trace()));
    const auto diag = mode_diagonals(sd);
    outer_lobe.push_back(lobe_weights(diag.metastable, find_fixed_points(p).saddle().action).outer);
  }
  const bool inverted = (outer_lobe[0] > 0) != (outer_lobe[1] > 0);
  return {worst0 < 1e-8 && worst1 < 1e-8 && inverted,
          fmt("|Tr rho0 - 1| %.2e, |Tr rho1| %.2e, outer lobe of rho1: %+.4f at 1.19, %+.4f at 1.22",
              worst0, worst1, outer_lobe[0], outer_lobe[1])};
}

Verdict langevin_fdr() {
  Params p = kRef;
  p.g = 0;
  p.epsilon = 0;
  std::string detail;
  bool ok = true;
  for (double nbar : {0.0, 2.0}) {
    LangevinConfig cfg;
    cfg.n_traj = 10000;
    cfg.nbar = nbar;
    cfg.seed = 7 + static_cast<std::uint64_t>(nbar);
    const auto s = run_ensemble(p, cfg, 10 * p.relaxation_period(), 1000);
    const double z = std::abs(s.values.back() - (nbar + 0.5)) / s.stderrs.back();
    ok = ok && z < 3.0;
    detail += fmt("nbar %.0f: <|a|^2> = %.4f +- %.4f (%.2f se); ", nbar, s.values.back(), s.stderrs.back(), z);
  }
  return {ok, detail};
}

Verdict twa_vs_quantum() {
  const auto s = fig3(1.4, 10000);
  double worst = 0.0;
  double worst_t = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double allowed = std::max(0.05 * s.quantum[i], 3 * s.langevin_stderr[i]);
    const double ratio = std::abs(s.langevin[i] - s.quantum[i]) / allowed;
    if (ratio > worst) {
      worst = ratio;
      worst_t = s.t[i];
    }
  }
  return {worst < 1.0, fmt("worst |I - n| / max(5%%, 3 se) = %.3f at t = %.1f T", worst, worst_t)};
}

Verdict escape_rate() {
  const Params p = reference_params(1.4);
  LangevinConfig cfg;
  cfg.n_traj = 1000;
  cfg.initial = find_fixed_points(p).outer().b;
  cfg.seed = 11;
  const auto stats = escape_statistics(p, cfg, BasinLabel::kOuter, 1000 * p.period(), p.period());
  const double lambda = std::abs(liouvillian_eigenvalues(build_liouvillian(p, 40), 2)(1).real());
  const double ratio = stats.rate / lambda;
  const bool ok = !stats.rate_is_upper_bound && ratio > 0.5 && ratio < 2.0;
  return {ok, fmt("nu = 1.4: rate %.4e (%d events%s), |Re lambda1| %.4e, ratio %.3f", stats.rate, stats.events,
                  stats.rate_is_upper_bound ? ", upper bound" : "", lambda, ratio)};
}

}  // namespace

int main() {
  report("classical roots", classical_roots);
  report("master-equation integrity", master_equation_integrity);
  report("pure-decay oracle", pure_decay);
  report("quantum-classical agreement", quantum_classical);
  report("Liouvillian zero mode", zero_mode);
  report("metastability", metastability);
  report("mode traces", mode_traces);
  report("basin fractions", basin_fractions);
  report("Langevin fluctuation-dissipation", langevin_fdr);
  report("truncated Wigner vs quantum", twa_vs_quantum);
  report("escape rate", escape_rate);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
