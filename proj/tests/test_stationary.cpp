#include <cmath>

#include "doctest.h"
#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"
#include "langevin/stationary.hpp"

using namespace langevin;

namespace {

double rel_frobenius(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  return (a - b).norm() / b.norm();
}

bool is_psd(const Eigen::Matrix2d& m, double tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  return es.eigenvalues()(0) >= -tol * std::max(1.0, m.norm());
}

LinearScheme constant_scheme(const char* name, const Eigen::Matrix2d& a,
                             const Eigen::Vector2d& b) {
  return LinearScheme(name, 1.0, [a](double) { return a; },
                      [b](double) { return b; });
}

}  // namespace

TEST_SUITE("stationary") {

TEST_CASE("lyapunov solves one-step whitening exactly") {
  // A = 0: sigma = eps h b b^T in a single step
  const LinearScheme s = constant_scheme(
      "whitening", Eigen::Matrix2d::Zero(), Eigen::Vector2d(1.0, 0.0));
  const StationaryCovariance sc = lyapunov_sigma(s, 1.0, 1.0);
  CHECK(sc.sigma(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(sc.sigma(0, 1)) <= 1e-15);
  CHECK(std::abs(sc.sigma(1, 1)) <= 1e-15);
  CHECK(sc.degenerate_spectrum);  // repeated eigenvalue 0
}

TEST_CASE("lyapunov solves the diagonal contraction exactly") {
  // A = I/2, b = (1,1): s = s/4 + 1 entrywise, so sigma = (4/3) * ones
  Eigen::Matrix2d a;
  a << 0.5, 0.0, 0.0, 0.5;
  const LinearScheme s = constant_scheme("half", a, Eigen::Vector2d(1.0, 1.0));
  const StationaryCovariance sc = lyapunov_sigma(s, 1.0, 1.0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(sc.sigma(i, j) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    }
  }
  CHECK(sc.degenerate_spectrum);
}

TEST_CASE("closed form matches a 40-digit reference for EM") {
  const StationaryCovariance sc = closed_form_sigma(euler_maruyama(3.0), 1.0,
                                                    0.01);
  CHECK(std::abs(sc.sigma(0, 0) - 0.16976633107541283564) < 1e-14);
  CHECK(std::abs(sc.sigma(0, 1) - (-0.00084883165537706417821)) < 1e-16);
  CHECK(std::abs(sc.sigma(1, 1) - 0.16722832442583541375) < 1e-14);
}

TEST_CASE("closed form and lyapunov agree") {
  const StationaryCovariance a =
      closed_form_sigma(euler_maruyama(3.0), 1.0, 0.01);
  const StationaryCovariance b =
      lyapunov_sigma(euler_maruyama(3.0), 1.0, 0.01);
  CHECK(rel_frobenius(a.sigma, b.sigma) <= 1e-10);

  const StationaryCovariance c =
      closed_form_sigma(theta_method(0.5, 3.0), 1.0, 0.1);
  const StationaryCovariance d =
      lyapunov_sigma(theta_method(0.5, 3.0), 1.0, 0.1);
  CHECK(rel_frobenius(c.sigma, d.sigma) <= 1e-10);
}

TEST_CASE("oracle equivalence, psd and residual across a parameter sweep") {
  for (double theta : {0.5, 0.75, 1.0}) {
    for (double nu : {0.5, 1.0, 3.0, 100.0}) {
      for (double h : {1e-4, 1e-2, 1e-1}) {
        for (double eps : {0.1, 1.0}) {
          CAPTURE(theta);
          CAPTURE(nu);
          CAPTURE(h);
          CAPTURE(eps);
          const LinearScheme s = theta_method(theta, nu);
          const StationaryCovariance cf = closed_form_sigma(s, eps, h);
          const StationaryCovariance ly = lyapunov_sigma(s, eps, h);
          CHECK(rel_frobenius(cf.sigma, ly.sigma) <= 1e-10);
          CHECK(cf.lyapunov_residual <= 1e-10);
          CHECK(ly.lyapunov_residual <= 1e-10);
          CHECK(cf.sigma(0, 1) == cf.sigma(1, 0));
          CHECK(is_psd(cf.sigma));
          CHECK(is_psd(ly.sigma));
        }
      }
    }
  }
}

TEST_CASE("sigma scales linearly in eps") {
  const LinearScheme s = theta_method(0.75, 3.0);
  const StationaryCovariance one = closed_form_sigma(s, 1.0, 0.01);
  const StationaryCovariance two = closed_form_sigma(s, 2.0, 0.01);
  CHECK((two.sigma - 2.0 * one.sigma).norm() <= 1e-15 * one.sigma.norm());
  // components are eps-free, the prefactor carries the scaling
  CHECK(two.s11 == one.s11);
  CHECK(two.prefactor == 2.0 * one.prefactor);
}

TEST_CASE("degenerate spectrum at nu = 2") {
  CHECK_THROWS_AS(closed_form_sigma(theta_method(0.5, 2.0), 1.0, 0.01),
                  DegenerateSpectrumError);
  CHECK_THROWS_AS(closed_form_sigma(euler_maruyama(2.0), 1.0, 0.01),
                  DegenerateSpectrumError);

  // the lyapunov oracle still returns a covariance, flagged as degenerate
  const StationaryCovariance sc =
      lyapunov_sigma(theta_method(0.5, 2.0), 1.0, 0.01);
  CHECK(sc.degenerate_spectrum);
  CHECK(is_psd(sc.sigma));
  CHECK(sc.lyapunov_residual <= 1e-10);
  CHECK(std::isnan(sc.prefactor));
}

TEST_CASE("unstable schemes are rejected") {
  CHECK_THROWS_AS(closed_form_sigma(euler_maruyama(3.0), 1.0, 1.0),
                  StabilityError);
  CHECK_THROWS_AS(lyapunov_sigma(euler_maruyama(3.0), 1.0, 1.0),
                  StabilityError);
}

TEST_CASE("component ratios approach the (nu^2-4)/(2 nu) law") {
  const auto grid = geometric_grid(1e-5, 1e-2, 12);
  for (double nu : {3.0, 5.0, 10.0}) {
    CAPTURE(nu);
    const SigmaAsymptotics em = sigma_asymptotics(euler_maruyama(nu), grid);
    const double target = (nu * nu - 4.0) / (2.0 * nu);
    CHECK(em.target_diag == doctest::Approx(target).epsilon(1e-15));
    CHECK(std::abs(em.limit11 - target) <= 1e-3 * target);
    CHECK(std::abs(em.limit22 - target) <= 1e-3 * target);
    CHECK(std::abs(em.limit12) <= 1e-6);
    // decay toward the limit: the smallest-h value is within 10x of the next
    CHECK(std::abs(em.ratio11[0] - target) <=
          10.0 * std::abs(em.ratio11[1] - target) + 1e-14);
  }
}

TEST_CASE("nu below 2 flips the component signs but sigma stays psd") {
  const LinearScheme s = theta_method(0.5, 1.0);
  const auto grid = geometric_grid(1e-5, 1e-2, 12);
  const SigmaAsymptotics asym = sigma_asymptotics(s, grid);
  CHECK(asym.limit22 == doctest::Approx(-1.5).epsilon(1e-3));
  const StationaryCovariance sc = closed_form_sigma(s, 1.0, 1e-3);
  CHECK(sc.s22 < 0.0);
  CHECK(sc.prefactor < 0.0);
  CHECK(is_psd(sc.sigma));
}

TEST_CASE("sigma_asymptotics rejects nu = 2") {
  const auto grid = geometric_grid(1e-4, 1e-2, 8);
  CHECK_THROWS_AS(sigma_asymptotics(euler_maruyama(2.0), grid), DomainError);
}

}  // TEST_SUITE
