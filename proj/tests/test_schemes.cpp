#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"
#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"
#include "langevin/rng.hpp"
#include "langevin/schemes.hpp"

using namespace langevin;

TEST_SUITE("schemes") {

TEST_CASE("euler-maruyama coefficients") {
  const LinearScheme em = euler_maruyama(3.0);
  const Eigen::Matrix2d a = em.A(0.1);
  CHECK(a(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(a(0, 1) == -0.1);
  CHECK(a(1, 0) == 0.1);
  CHECK(a(1, 1) == 1.0);
  CHECK(em.b(0.1) == Eigen::Vector2d(1.0, 0.0));

  const StabilityReport rep = stability(em, 0.1);
  CHECK(rep.tr == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(rep.det == doctest::Approx(0.71).epsilon(1e-15));
}

TEST_CASE("theta-method coefficients") {
  // theta = 1/2, nu = 3, h = 0.1: D = 0.1525, a11 = 0.8475/1.1525
  const LinearScheme mid = theta_method(0.5, 3.0);
  const Eigen::Matrix2d a = mid.A(0.1);
  CHECK(std::abs(a(0, 0) - 0.8475 / 1.1525) < 1e-15);
  CHECK(std::abs(a(0, 0) - 0.7353579) < 1e-7);

  // theta = 1: the (1,1) numerator collapses to 1
  const LinearScheme imp = theta_method(1.0, 3.0);
  for (double h : {0.01, 0.1, 1.0}) {
    const double delta = 1.0 * (1.0 * h * h + 3.0 * h);
    CHECK(std::abs(imp.A(h)(0, 0) - 1.0 / (1.0 + delta)) < 1e-15);
  }

  // theta = 0 coincides with Euler-Maruyama exactly
  const LinearScheme zero = theta_method(0.0, 3.0);
  const LinearScheme em = euler_maruyama(3.0);
  for (double h : {0.01, 0.1, 0.5}) {
    CHECK(zero.A(h) == em.A(h));
    CHECK(zero.b(h) == em.b(h));
  }
}

TEST_CASE("assumption 2 residual orders") {
  const auto grid = geometric_grid(1e-4, 1e-1, 13);

  const Assumption2Orders em = assumption2_orders(euler_maruyama(3.0), grid);
  CHECK(std::isinf(em.order_a));
  CHECK(std::isinf(em.order_b));
  CHECK(em.satisfied);

  const Assumption2Orders mid =
      assumption2_orders(theta_method(0.5, 3.0), grid);
  CHECK(mid.order_a == doctest::Approx(2.0).epsilon(0.06));
  CHECK(mid.order_b == doctest::Approx(1.0).epsilon(0.06));
  CHECK(mid.satisfied);

  const Assumption2Orders imp =
      assumption2_orders(theta_method(1.0, 3.0), grid);
  CHECK(imp.order_a == doctest::Approx(2.0).epsilon(0.06));
  CHECK(imp.order_b == doctest::Approx(1.0).epsilon(0.06));
  CHECK(imp.satisfied);

  CHECK_THROWS_AS(
      assumption2_orders(euler_maruyama(3.0), std::vector<double>{0.1, 0.05,
                                                                  0.03, 0.02}),
      ConfigError);
}

TEST_CASE("stability verdicts") {
  // Lemma 5.2 regime: any h > 0, nu > 2
  CHECK(stability(theta_method(0.5, 3.0), 1.0).stable);
  CHECK(stability(theta_method(0.75, 50.0), 5.0).stable);

  // explicit EM at nu=3, h=1: tr = -1, det = -1, 1+det = 0 -> unstable
  const StabilityReport em = stability(euler_maruyama(3.0), 1.0);
  CHECK(em.tr == -1.0);
  CHECK(em.det == -1.0);
  CHECK_FALSE(em.stable);
}

TEST_CASE("root-coefficient identities and the verdict-radius equivalence") {
  Rng rng(42u);
  for (int i = 0; i < 500; ++i) {
    const double theta = rng.uniform();
    const double nu = std::pow(10.0, -0.5 + 3.0 * rng.uniform());
    const double h = std::pow(10.0, -4.0 + 5.0 * rng.uniform());
    const LinearScheme s = theta_method(theta, nu);
    const StabilityReport rep = stability(s, h);
    const std::complex<double> sum = rep.lambda1 + rep.lambda2;
    const std::complex<double> prod = rep.lambda1 * rep.lambda2;
    const double scale = std::max(1.0, std::abs(rep.tr));
    CHECK(std::abs(sum - rep.tr) <= 1e-12 * scale);
    CHECK(std::abs(prod - rep.det) <= 1e-12 * scale);
    // Lemma 4.2(2): |tr| < 1+det < 2 iff both eigenvalues inside the unit disk
    if (std::abs(rep.spectral_radius - 1.0) > 1e-9) {
      CHECK(rep.stable == (rep.spectral_radius < 1.0));
    }
  }
}

TEST_CASE("theta-method eigenvalues match the closed form for nu > 2") {
  Rng rng(43u);
  for (int i = 0; i < 200; ++i) {
    const double theta = 0.5 + 0.5 * rng.uniform();
    const double nu = 2.0 + 100.0 * rng.uniform();
    const double h = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
    const StabilityReport rep = stability(theta_method(theta, nu), h);
    const double delta = theta * (theta * h * h + nu * h);
    const double core = 2.0 + nu * h * (2.0 * theta - 1.0) -
                        2.0 * theta * (1.0 - theta) * h * h;
    const double root = std::sqrt(nu * nu - 4.0) * h;
    const double l1 = (core + root) / (2.0 * (1.0 + delta));
    const double l2 = (core - root) / (2.0 * (1.0 + delta));
    CHECK(std::abs(rep.lambda1 - l1) <= 1e-10);
    CHECK(std::abs(rep.lambda2 - l2) <= 1e-10);
  }
}

TEST_CASE("discriminant expansion") {
  const auto grid = geometric_grid(1e-4, 1e-1, 13);
  // EM: disc = (nu^2-4) h^2 exactly, so the h^3-scaled defect is fp noise
  CHECK(discriminant_expansion_check(euler_maruyama(3.0), grid) <= 1e-6);
  // midpoint: disc = (nu^2-4) h^2 / (1+D)^2; defect ~ 2 theta nu (nu^2-4) h^3
  const double mid = discriminant_expansion_check(theta_method(0.5, 3.0), grid);
  CHECK(mid <= 100.0);
  CHECK(mid >= 1.0);

  // nu < 2: complex eigenvalues for small h
  const StabilityReport rep = stability(theta_method(1.0, 1.0), 1e-3);
  CHECK(rep.discriminant < 0.0);
  CHECK(rep.lambda1.imag() != 0.0);
}

TEST_CASE("instability witness below theta = 1/2") {
  const auto witness = find_unstable_witness(0.25, 1000, 7u);
  REQUIRE(witness.has_value());
  const auto [h, nu] = *witness;
  CHECK_FALSE(stability(theta_method(0.25, nu), h).stable);

  // theta = 1/2 yields no witness even with many trials
  CHECK_FALSE(find_unstable_witness(0.5, 2000, 7u).has_value());
}

TEST_CASE("tabulated schemes") {
  Eigen::Matrix2d a;
  a << 0.5, 0.0, 0.0, 0.5;
  const LinearScheme tab =
      tabulated_scheme("half", 1.0, {{0.25, a, Eigen::Vector2d(1.0, 1.0)}});
  CHECK(tab.A(0.25) == a);
  CHECK_THROWS_AS(tab.A(0.3), ConfigError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(theta_method(1.5, 3.0), ConfigError);
  CHECK_THROWS_AS(theta_method(-0.1, 3.0), ConfigError);
  CHECK_THROWS_AS(euler_maruyama(0.0), ConfigError);
  CHECK_THROWS_AS(euler_maruyama(3.0).A(0.0), ConfigError);
  CHECK_THROWS_AS(euler_maruyama(3.0).A(-0.1), ConfigError);
}

}  // TEST_SUITE
