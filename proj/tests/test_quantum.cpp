#include "kerr/fock.hpp"
#include "kerr/master_equation.hpp"

#include <doctest.h>

#include <random>

using namespace kerr;

namespace {

MatrixXc random_density(Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  MatrixXc a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(d(gen), d(gen));
  MatrixXc rho = a * a.adjoint();
  return rho / rho.trace();
}

// Dense-operator Lindblad right-hand side: -i[H, rho] + gamma (a rho a+ - {n, rho}/2).
MatrixXc dense_rhs(const MatrixXc& h, const FockOperators<double>& ops, double gamma, const MatrixXc& rho) {
  const Complex i(0, 1);
  return -i * (h * rho - rho * h) +
         gamma * (ops.lowering * rho * ops.raising - 0.5 * (ops.number * rho + rho * ops.number));
}

// Lab frame: H(t) = omega n + (g/2) n^2 + eps (e^{i nu t} a + e^{-i nu t} a+).
MatrixXc lab_rhs(const Params& p, const FockOperators<double>& ops, double t, const MatrixXc& rho) {
  const Index n = ops.dim;
  MatrixXc h = MatrixXc::Zero(n, n);
  for (Index k = 0; k < n; ++k) h(k, k) = p.omega * k + 0.5 * p.g * k * k;
  const Complex phase = std::polar(1.0, p.nu * t);
  h += p.epsilon * (phase * ops.lowering + std::conj(phase) * ops.raising);
  return dense_rhs(h, ops, p.gamma, rho);
}

}  // namespace

TEST_SUITE("quantum") {

TEST_CASE("banded generator equals the dense operator products") {
  const Params p = reference_params(1.3);
  for (Index n : {2, 3, 12}) {
    const FockOperators<double> ops(n);
    const MatrixXc h = build_hamiltonian_rotating(p, n);
    for (unsigned s = 0; s < 5; ++s) {
      const MatrixXc rho = random_density(n, 100 * n + s);
      CHECK((lindblad_rhs(p, rho) - dense_rhs(h, ops, p.gamma, rho)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("generator preserves trace and hermiticity") {
  const Params p = reference_params(1.2);
  const MatrixXc rho = random_density(15, 7);
  const MatrixXc d = lindblad_rhs(p, rho);
  CHECK(std::abs(d.trace()) < 1e-12);
  CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pure decay follows n0 exp(-gamma t)") {
  Params p = reference_params(1.2);
  p.epsilon = 0;
  const auto occ = evolve_occupation(p, fock_density(10, 30), 20 * p.period(), p.period() / 200, 20);
  for (std::size_t i = 0; i < occ.times.size(); ++i) {
    const double t = occ.times[i] * p.period();
    CHECK(std::abs(occ.values[i] - 10.0 * std::exp(-p.gamma * t)) < 1e-6);
  }
}

TEST_CASE("population cascade matches its closed solution") {
  // eps = 0: d rho_nn/dt = -gamma n rho_nn + gamma (n+1) rho_{n+1,n+1}. From |2>,
  // rho_22 = e^{-2 gamma t}, rho_11 = 2 e^{-gamma t}(1 - e^{-gamma t}).
  Params p = reference_params(1.2);
  p.epsilon = 0;
  const auto ev = evolve_density_matrix(p, fock_density(2, 6), 30.0, 0.01, 1000);
  for (std::size_t i = 0; i < ev.times.size(); ++i) {
    const double t = ev.times[i] * p.period();
    const double e = std::exp(-p.gamma * t);
    CHECK(std::abs(ev.states[i](2, 2).real() - e * e) < 1e-10);
    CHECK(std::abs(ev.states[i](1, 1).real() - 2 * e * (1 - e)) < 1e-10);
  }
}

TEST_CASE("rotating and lab frame give the same occupation") {
  const Params p = reference_params(1.2);
  const Index n = 40;
  const FockOperators<double> ops(n);
  const double t_final = 5 * p.period();
  const double dt = p.period() / 400;
  const long steps = std::lround(t_final / dt);
  const long stride = 40;

  const auto rot = evolve_occupation(p, fock_density(1, n), t_final, dt, stride);

  MatrixXc rho = fock_density(1, n);
  std::vector<double> lab{occupation(rho)};
  for (long s = 0; s < steps; ++s) {
    const double t = s * dt;
    const MatrixXc k1 = lab_rhs(p, ops, t, rho);
    const MatrixXc k2 = lab_rhs(p, ops, t + dt / 2, rho + dt / 2 * k1);
    const MatrixXc k3 = lab_rhs(p, ops, t + dt / 2, rho + dt / 2 * k2);
    const MatrixXc k4 = lab_rhs(p, ops, t + dt, rho + dt * k3);
    rho += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((s + 1) % stride == 0) lab.push_back(occupation(rho));
  }
  REQUIRE(lab.size() == rot.values.size());
  for (std::size_t i = 0; i < lab.size(); ++i) CHECK(std::abs(lab[i] - rot.values[i]) < 1e-6);
}

TEST_CASE("short evolution keeps the state physical") {
  const Params p = reference_params(1.2);
  const auto ev = evolve_density_matrix(p, fock_density(12, 60), 2 * p.period(), p.period() / 200, 100);
  for (const auto& rho : ev.states) {
    const auto d = diagnose(rho);
    CHECK(d.trace_error < 1e-10);
    CHECK(d.hermiticity < 1e-12);
    CHECK(d.min_eigenvalue > -1e-8);
    CHECK(d.tail < 1e-8);
  }
}

TEST_CASE("large truncation stays stable at the default step") {
  // At N = 120 the Kerr spread g N^2 / 2 puts dt = T/200 outside the RK4 region.
  const Params p = reference_params(1.2);
  const auto ev = evolve_density_matrix(p, fock_density(12, 120), 3 * p.period(), p.period() / 200, 200);
  for (const auto& rho : ev.states) CHECK(diagnose(rho, false).tail < 1e-30);
}

TEST_CASE("truncation breach is reported") {
  const Params p = reference_params(1.2);
  CHECK_THROWS_AS(evolve_occupation(p, fock_density(12, 14), 2 * p.period(), p.period() / 200, 10), Error);
  CHECK_THROWS_AS(fock_density(5, 5), Error);
}

TEST_CASE("coherent states are normalised and have mean occupation |alpha|^2") {
  const Complex alpha(1.5, -2.0);
  const VectorXc c = coherent_state(alpha, 60);
  CHECK(c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  const MatrixXc rho = c * c.adjoint();
  CHECK(occupation(rho) == doctest::Approx(std::norm(alpha)).epsilon(1e-9));
  CHECK_THROWS_AS(coherent_state(Complex(5.0, 0.0), 20), Error);
}

TEST_CASE("Husimi function of a coherent state") {
  const Complex alpha(1.0, 0.5);
  const VectorXc c = coherent_state(alpha, 50);
  const MatrixXc rho = c * c.adjoint();
  HusimiGrid grid;
  grid.resolution = 97;
  const HusimiField q = husimi(rho, grid, 2);
  // Q(beta) = exp(-|alpha - beta|^2), integrating to pi.
  const double h = 12.0 / (grid.resolution - 1);
  double total = 0.0;
  double worst = 0.0;
  for (Index r = 0; r < q.values.rows(); ++r)
    for (Index col = 0; col < q.values.cols(); ++col) {
      const Complex beta = grid.point(r, col);
      worst = std::max(worst, std::abs(q.values(r, col) - std::exp(-std::norm(alpha - beta))));
      total += q.values(r, col) * h * h;
      CHECK(q.values(r, col) >= 0.0);
    }
  CHECK(worst < 1e-12);
  CHECK(total == doctest::Approx(kTwoPi / 2).epsilon(1e-6));
}

TEST_CASE("Husimi refuses a state with weight at the cutoff") {
  MatrixXc rho = MatrixXc::Zero(10, 10);
  rho(9, 9) = 1.0;
  CHECK_THROWS_AS(husimi(rho, HusimiGrid{}, 1), Error);
}

TEST_CASE("Hamiltonian is Hermitian and tridiagonal") {
  const MatrixXc h = build_hamiltonian_rotating(reference_params(1.2), 8);
  CHECK((h - h.adjoint()).norm() == 0.0);
  CHECK(h(0, 2) == Complex(0.0));
  CHECK(h(3, 3).real() == doctest::Approx(-0.2 * 3 + 0.01 * 9));
}

}
