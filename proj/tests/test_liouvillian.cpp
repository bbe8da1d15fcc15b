#include "kerr/classical.hpp"
#include "kerr/liouvillian.hpp"
#include "kerr/master_equation.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace kerr;

namespace {

MatrixXc random_hermitian(Index n, std::mt19937& gen) {
  std::normal_distribution<double> d;
  MatrixXc a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(d(gen), d(gen));
  return a + a.adjoint();
}

Params harmonic(double nu) {
  Params p = reference_params(nu);
  p.g = 0;
  p.epsilon = 0;
  return p;
}

}  // namespace

TEST_SUITE("liouvillian") {

TEST_CASE("matrix action equals the master-equation right-hand side") {
  const Params p = reference_params(1.2);
  const Index n = 9;
  const LiouvillianMatrix l = build_liouvillian(p, n);
  std::mt19937 gen(3);
  for (int i = 0; i < 20; ++i) {
    const MatrixXc rho = random_hermitian(n, gen);
    const VectorXc lhs = l * vectorize(rho);
    const VectorXc rhs = vectorize(lindblad_rhs(p, rho));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("vec(identity) is a left null vector") {
  const Index n = 10;
  const LiouvillianMatrix l = build_liouvillian(reference_params(1.4), n);
  const VectorXc id = vectorize(MatrixXc::Identity(n, n));
  CHECK((id.transpose() * l).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-level decay spectrum") {
  const Params p = harmonic(1.3);
  const VectorXc ev = liouvillian_eigenvalues(build_liouvillian(p, 2), 4);
  const double dw = p.detuning();
  CHECK(std::abs(ev(0)) < 1e-14);
  CHECK(std::abs(ev(1) - Complex(-p.gamma / 2, std::abs(dw))) < 1e-12);
  CHECK(std::abs(ev(2) - Complex(-p.gamma / 2, -std::abs(dw))) < 1e-12);
  CHECK(std::abs(ev(3) - Complex(-p.gamma, 0)) < 1e-12);
}

TEST_CASE("harmonic ladder: Re lambda = -(gamma/2) j with multiplicity j + 1") {
  const Params p = harmonic(1.3);
  const Index n = 12;
  const VectorXc ev = liouvillian_eigenvalues(build_liouvillian(p, n), n * n);
  for (int j = 0; j < 4; ++j) {
    const double rung = -p.gamma / 2 * j;
    const auto count = std::count_if(ev.begin(), ev.end(), [&](Complex z) { return std::abs(z.real() - rung) < 1e-8; });
    CHECK(count == j + 1);
  }
}

TEST_CASE("eigenvalues come in conjugate pairs with Re <= 0") {
  const VectorXc ev = liouvillian_eigenvalues(build_liouvillian(reference_params(1.25), 12), 144);
  for (Index j = 0; j < ev.size(); ++j) {
    CHECK(ev(j).real() < 1e-10);
    double best = 1e300;
    for (Index i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev(i) - std::conj(ev(j))));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("spectral order sorts by |Re|, then |Im|, then positive Im first") {
  VectorXc v(5);
  v << Complex(-0.5, -1), Complex(-0.5, 1), Complex(0, 0), Complex(-0.1, 3), Complex(-0.5, 0.2);
  CHECK(spectral_order(v) == std::vector<Index>{2, 3, 4, 1, 0});
}

TEST_CASE("backends agree") {
  if (!lapacke_available()) return;
  const LiouvillianMatrix l = build_liouvillian(reference_params(1.2), 10);
  const VectorXc a = liouvillian_eigenvalues(l, 100, EigenBackend::kEigen);
  const VectorXc b = liouvillian_eigenvalues(l, 100, EigenBackend::kLapacke);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("steady state and metastable mode normalisation") {
  const SpectralDecomposition sd = spectrum(build_liouvillian(reference_params(1.2), 20), 4);
  const MatrixXc& r0 = sd.steady_state();
  CHECK(std::abs(r0.trace() - 1.0) < 1e-10);
  CHECK((r0 - r0.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (r0 + r0.adjoint()));
  CHECK(es.eigenvalues().minCoeff() > -1e-8);
  CHECK(std::abs(sd.metastable_mode().trace()) < 1e-8);
  CHECK(sd.metastable_mode().diagonal().real().cwiseAbs().sum() == doctest::Approx(1.0));
  // Biorthogonality of the stored duals.
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      CHECK(std::abs(sd.coefficient(i, sd.right_modes[j]) - (i == j ? 1.0 : 0.0)) < 1e-8);
}

TEST_CASE("undriven steady state is the vacuum and lifetime is 2 T_gamma") {
  const Params p = harmonic(1.3);
  const SpectralDecomposition sd = spectrum(build_liouvillian(p, 8), 2);
  CHECK(std::abs(sd.steady_state()(0, 0) - 1.0) < 1e-10);
  CHECK(sd.steady_state().diagonal().tail(7).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(lifetime(sd) == doctest::Approx(2 * p.relaxation_period()).epsilon(1e-10));
}

TEST_CASE("full mode expansion reproduces direct integration") {
  const Params p = reference_params(1.2);
  const Index n = 8;
  const SpectralDecomposition sd = spectrum(build_liouvillian(p, n), n * n);
  std::mt19937 gen(11);
  MatrixXc a = random_hermitian(n, gen);
  const MatrixXc rho0 = (a * a).eval() / (a * a).trace();
  // The truncated generator is a valid linear ODE on its own; skip the tail guard.
  int checked = 0;
  propagate_density(p, rho0, 40 * p.period(), p.period() / 200, 1000,
                    [&](long, double t, const DensityMatrix& rho) {
                      CHECK((mode_reconstruction(sd, rho0, t) - rho).cwiseAbs().maxCoeff() < 1e-6);
                      ++checked;
                    }, 1.0);
  CHECK(checked == 9);
}

TEST_CASE("two-mode reconstruction after the fast modes have decayed") {
  const Params p = reference_params(1.22);
  const Index n = 30;
  const SpectralDecomposition sd = spectrum(build_liouvillian(p, n), 3);
  const MatrixXc rho0 = fock_density(16, n);
  const double t = 2 * p.relaxation_period();
  const auto ev = evolve_density_matrix(p, rho0, t, p.period() / 200, 1000000);
  const MatrixXc two = two_mode_reconstruction(sd, rho0, t);
  const double bound = std::max(std::exp(sd.eigenvalues(2).real() * t), 1e-8);
  CHECK((two - ev.states.back()).cwiseAbs().maxCoeff() < bound);
  // A steady initial state stays put.
  const MatrixXc still = two_mode_reconstruction(sd, sd.steady_state(), t);
  CHECK((still - sd.steady_state()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("metastable lobe flips across the quantum switching point") {
  auto outer_lobe = [](double nu) {
    const Params p = reference_params(nu);
    const SpectralDecomposition sd = spectrum(build_liouvillian(p, 30), 2);
    return lobe_weights(mode_diagonals(sd).metastable, find_fixed_points(p).saddle().action).outer;
  };
  CHECK(outer_lobe(1.19) < 0);
  CHECK(outer_lobe(1.22) > 0);
}

TEST_CASE("budget and degeneracy errors") {
  CHECK_THROWS_AS(build_liouvillian(reference_params(1.2), 41), Error);
  try {
    build_liouvillian(reference_params(1.2), 41);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudgetExceeded);
  }
  // Undamped: every population is stationary, so the zero mode is not unique.
  Params p = harmonic(1.3);
  p.gamma = 0;
  CHECK_THROWS_AS(spectrum(build_liouvillian(p, 4), 2), Error);
}

}
