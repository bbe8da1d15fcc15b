#include "kerr/classical.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace kerr;

namespace {

double cubic(const Params& p, double x) {
  const double d = p.detuning();
  return p.g * p.g * x * x * x + 2 * d * p.g * x * x + (d * d + p.gamma * p.gamma / 4) * x -
         p.epsilon * p.epsilon;
}

// Sign changes of the action cubic on a fine grid; independent of the solver.
int sign_changes(const Params& p) {
  int n = 0;
  double prev = cubic(p, 0.0);
  for (int i = 1; i <= 200000; ++i) {
    const double x = 200.0 * i / 200000.0;
    const double f = cubic(p, x);
    if ((f > 0) != (prev > 0)) ++n;
    prev = f;
  }
  return n;
}

// Saddle-node condition: f(x) = f'(x) = 0. For each nu, eps^2 is the value of
// the cubic's epsilon-free part at the two turning points x_pm; bisect nu on
// eps^2 = that value.
double turning_gap(const Params& p, int branch) {
  const double d = p.detuning();
  const double g = p.g;
  const double a = 3 * g * g, b = 4 * d * g, c = d * d + p.gamma * p.gamma / 4;
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return -1.0;
  const double x = (-b + branch * std::sqrt(disc)) / (2 * a);
  if (x <= 0) return -1.0;
  return g * g * x * x * x + 2 * d * g * x * x + c * x - p.epsilon * p.epsilon;
}

double bisect(double lo, double hi, const auto& f) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("classical") {

TEST_CASE("roots satisfy the stationary equation and the phase identities") {
  for (double nu : {0.8, 1.15, 1.2, 1.4, 1.6, 2.0, 2.27, 2.3}) {
    const Params p = reference_params(nu);
    const auto roots = find_fixed_points(p);
    CHECK(static_cast<int>(roots.count()) == sign_changes(p));
    for (const auto& r : roots.roots) {
      CHECK(std::abs(root_residual(p, r.b)) < 1e-10);
      const double x = std::norm(r.b);
      CHECK(r.action == doctest::Approx(x).epsilon(1e-12));
      // Re b / |b|^2 = -(Delta + g|b|^2)/eps, Im b / |b|^2 = -gamma/(2 eps)
      CHECK(r.b.real() / x == doctest::Approx(-(p.detuning() + p.g * x) / p.epsilon).epsilon(1e-9));
      CHECK(r.b.imag() / x == doctest::Approx(-p.gamma / (2 * p.epsilon)).epsilon(1e-9));
    }
    for (std::size_t i = 1; i < roots.count(); ++i) CHECK(roots.roots[i - 1].action < roots.roots[i].action);
  }
}

TEST_CASE("stability labels: middle root unstable, others stable") {
  const auto roots = find_fixed_points(reference_params(1.2));
  REQUIRE(roots.bistable());
  CHECK(roots.inner().stable);
  CHECK_FALSE(roots.saddle().stable);
  CHECK(roots.outer().stable);
}

TEST_CASE("stability agrees with a displacement test") {
  const Params p = reference_params(1.3);
  const auto roots = find_fixed_points(p);
  REQUIRE(roots.bistable());
  for (const auto& r : roots.roots) {
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
      const Complex b0 = r.b + std::polar(1e-6, kTwoPi * k / 8);
      const Complex b1 = relax(p, b0, 2.0 * p.relaxation_period(), p.period() / 100);
      worst = std::max(worst, std::abs(b1 - r.b) / 1e-6);
    }
    if (r.stable)
      CHECK(worst < 1.0);
    else
      CHECK(worst > 10.0);
  }
}

TEST_CASE("stability rejects a point that is not stationary") {
  CHECK_THROWS_AS(stability(reference_params(1.2), Complex(1.0, 1.0)), Error);
}

TEST_CASE("saddle-node window matches the turning-point condition") {
  const Params p = reference_params(1.0);
  const auto w = saddle_node_window(p, FrequencyScan{});
  REQUIRE(w.nu1);
  REQUIRE(w.nu2);
  // Each turning point of the cubic crosses eps^2 once on the drive side nu > omega.
  std::vector<double> edges;
  for (int branch : {-1, +1}) {
    auto gap = [&](double nu) { return turning_gap(p.with_nu(nu), branch); };
    for (int i = 0; i < 140; ++i) {
      const double lo = 1.05 + 0.01 * i;
      const double hi = lo + 0.01;
      if ((gap(lo) > 0) != (gap(hi) > 0)) edges.push_back(bisect(lo, hi, gap));
    }
  }
  std::sort(edges.begin(), edges.end());
  REQUIRE(edges.size() == 2);
  CHECK(*w.nu1 == doctest::Approx(edges[0]).epsilon(2e-6));
  CHECK(*w.nu2 == doctest::Approx(edges[1]).epsilon(2e-6));
  CHECK(*w.nu1 < 1.2);
  CHECK(*w.nu2 > 1.6);
}

TEST_CASE("root count is 1 or 3 and changes only at the window edges") {
  const Params p = reference_params(1.0);
  const auto w = saddle_node_window(p, FrequencyScan{});
  for (int i = 0; i <= 180; ++i) {
    const double nu = 0.6 + 0.01 * i;
    const auto n = find_fixed_points(p.with_nu(nu)).count();
    CHECK((n == 1 || n == 3));
    CHECK((n == 3) == (nu > *w.nu1 && nu < *w.nu2));
  }
}

TEST_CASE("undriven undamped flow conserves the action") {
  Params p = reference_params(1.2);
  p.gamma = 0;
  p.epsilon = 0;
  const Complex b0(2.0, -1.0);
  const auto traj = integrate_classical(p, b0, 100 * p.period(), p.period() / 100, 50);
  for (const Complex& b : traj.points) CHECK(std::abs(std::norm(b) - std::norm(b0)) < 1e-8);
}

TEST_CASE("RK4 converges at fourth order") {
  const Params p = reference_params(1.2);
  const Complex b0(3.0, 2.0);
  const double t = 10.0;
  const Complex ref = relax(p, b0, t, 1e-3);
  const double e1 = std::abs(relax(p, b0, t, 0.2) - ref);
  const double e2 = std::abs(relax(p, b0, t, 0.1) - ref);
  const double order = std::log2(e1 / e2);
  CHECK(order == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("relaxed endpoints land on a stable root") {
  const Params p = reference_params(1.6);
  const auto roots = find_fixed_points(p);
  REQUIRE(roots.bistable());
  for (int k = 0; k < 12; ++k) {
    const Complex b0 = std::polar(1.0 + 0.7 * k, 0.9 * k);
    const Complex b = relax(p, b0, 20 * p.relaxation_period(), p.period() / 100);
    const bool near_in = std::abs(b - roots.inner().b) < classification_radius(roots.inner().b);
    const bool near_out = std::abs(b - roots.outer().b) < classification_radius(roots.outer().b);
    CHECK((near_in || near_out));
  }
}

TEST_CASE("linear oscillator has a single root at -eps / (Delta - i gamma/2)") {
  Params p = reference_params(1.3);
  p.g = 0;
  const auto roots = find_fixed_points(p);
  REQUIRE(roots.count() == 1);
  const Complex expected = -p.epsilon / Complex(p.detuning(), -p.gamma / 2);
  CHECK(std::abs(roots.roots[0].b - expected) < 1e-12);
}

TEST_CASE("invalid parameters are rejected") {
  Params p = reference_params(1.2);
  p.gamma = -1;
  CHECK_THROWS_AS(p.validate(), Error);
  p = reference_params(1.2);
  p.nu = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("templated scalar: long double roots agree with double") {
  const auto rd = find_fixed_points(reference_params(1.2));
  const OscillatorParams<long double> pl{1.0L, 0.02L, 0.04L, 0.16L, 1.2L};
  const auto rl = find_fixed_points(pl);
  REQUIRE(rl.count() == rd.count());
  for (std::size_t i = 0; i < rd.count(); ++i)
    CHECK(static_cast<double>(rl.roots[i].action) == doctest::Approx(rd.roots[i].action).epsilon(1e-12));
}

}
