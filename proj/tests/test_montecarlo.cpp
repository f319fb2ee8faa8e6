#include <cmath>
#include <vector>

#include "doctest.h"
#include "langevin/errors.hpp"
#include "langevin/ldp.hpp"
#include "langevin/montecarlo.hpp"
#include "langevin/numerics.hpp"
#include "langevin/stationary.hpp"

using namespace langevin;

namespace {

SimulationConfig base_config() {
  SimulationConfig cfg{euler_maruyama(3.0), 1.0, 1e-2, 0, 0, 1, 0, Eigen::Vector2d::Zero(), {}};
  cfg.eps = 1.0;
  cfg.h = 1e-2;
  cfg.n_steps = 200000;
  cfg.burn_in = default_burn_in(cfg.h, 3.0);
  cfg.seed = 12345;
  cfg.init = {1.0, -1.0};
  return cfg;
}

bool summaries_identical(const EmpiricalSummary& a, const EmpiricalSummary& b) {
  return a.n_samples == b.n_samples && a.mean == b.mean &&
         a.covariance == b.covariance;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("identical seed and chain index reproduce bit-identical summaries") {
  const SimulationConfig cfg = base_config();
  const EmpiricalSummary a = simulate_chain(cfg, 3);
  const EmpiricalSummary b = simulate_chain(cfg, 3);
  CHECK(summaries_identical(a, b));

  // a different chain index decorrelates the stream
  const EmpiricalSummary c = simulate_chain(cfg, 4);
  CHECK_FALSE(summaries_identical(a, c));
}

TEST_CASE("noiseless dynamics contract to zero") {
  SimulationConfig cfg = base_config();
  cfg.eps = 0.0;
  cfg.n_steps = 100000;
  cfg.burn_in = 50000;
  const EmpiricalSummary s = simulate_chain(cfg, 0);
  CHECK(s.mean.norm() <= 1e-50);
  CHECK(s.covariance.norm() == 0.0);
}

TEST_CASE("empirical covariance approaches the stationary covariance") {
  SimulationConfig cfg = base_config();
  cfg.h = 1e-3;
  cfg.n_steps = 2000000 + default_burn_in(cfg.h, 3.0);
  cfg.burn_in = default_burn_in(cfg.h, 3.0);
  const EmpiricalSummary s = simulate_chain(cfg, 0);
  const StationaryCovariance exact = closed_form_sigma(cfg.scheme, 1.0, cfg.h);
  CHECK((s.covariance - exact.sigma).norm() <= 0.10 * exact.sigma.norm());
  CHECK(s.mean.norm() <= 0.05);
}

TEST_CASE("chain merging is order-exact and thread-count independent") {
  SimulationConfig cfg = base_config();
  cfg.n_steps = 50000;
  cfg.burn_in = 10000;
  cfg.n_chains = 6;
  const EmpiricalSummary serial = run_chains(cfg, 1);
  const EmpiricalSummary parallel = run_chains(cfg, 4);
  CHECK(summaries_identical(serial, parallel));
  CHECK(serial.n_samples == 6u * 40000u);

  // merge agrees with a direct accumulation over both chains
  const EmpiricalSummary a = simulate_chain(cfg, 0);
  const EmpiricalSummary b = simulate_chain(cfg, 1);
  const EmpiricalSummary ab = merge_summaries(a, b);
  const EmpiricalSummary ba = merge_summaries(b, a);
  CHECK((ab.mean - ba.mean).norm() <= 1e-14);
  CHECK((ab.covariance - ba.covariance).norm() <= 1e-14);
}

TEST_CASE("weak convergence: distinct starts share the invariant law") {
  SimulationConfig cfg = base_config();
  cfg.h = 1e-2;
  cfg.n_steps = 400000;
  cfg.burn_in = default_burn_in(cfg.h, 3.0);
  cfg.init = {5.0, -5.0};
  const EmpiricalSummary a = simulate_chain(cfg, 0);
  cfg.init = {-3.0, 7.0};
  cfg.seed = 999;  // different randomness as well as different start
  const EmpiricalSummary b = simulate_chain(cfg, 0);
  CHECK((a.mean - b.mean).norm() <= 0.05);
  CHECK((a.covariance - b.covariance).norm() <= 0.10 * a.covariance.norm());
}

TEST_CASE("exact stationary sampling") {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  const EmpiricalSummary s = exact_stationary_sample(id, 1000000, 42);
  CHECK((s.covariance - id).norm() <= 0.01 * id.norm());
  CHECK(s.mean.norm() <= 0.01);
}

TEST_CASE("exact sampling hit fractions follow the chi-square tail") {
  // isotropic gaussian: P(|X| >= r) = exp(-r^2 / (2 s))
  const double s = 0.25, r = 1.0;
  const std::vector<SetDescriptor> sets = {SetDescriptor::ball_complement(r)};
  const EmpiricalSummary sum =
      exact_stationary_sample(s * Eigen::Matrix2d::Identity(), 400000, 7, sets);
  const double expect = std::exp(-r * r / (2.0 * s));
  REQUIRE(sum.set_hits.size() == 1);
  CHECK(sum.set_hits[0].p_hat == doctest::Approx(expect).epsilon(0.05));
  CHECK(sum.set_hits[0].ci_low <= expect);
  CHECK(sum.set_hits[0].ci_high >= expect);
}

TEST_CASE("singular sigma samples lie on its range line") {
  Eigen::Matrix2d rank1;
  rank1 << 1.0, 1.0, 1.0, 1.0;
  const EmpiricalSummary s = exact_stationary_sample(rank1, 20000, 3);
  // p = q for every sample, so all covariance entries coincide
  CHECK(std::abs(s.covariance(0, 0) - s.covariance(0, 1)) <= 1e-12);
  CHECK(std::abs(s.covariance(1, 1) - s.covariance(0, 1)) <= 1e-12);

  Eigen::Matrix2d not_psd;
  not_psd << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(exact_stationary_sample(not_psd, 10, 1), DomainError);
}

TEST_CASE("decay rate estimate recovers the small-noise slope") {
  // continuous invariant law of the quadratic potential: N(0, eps/(2 nu) I)
  const double nu = 3.0;
  const SetDescriptor set = SetDescriptor::ball_complement(1.0);
  const QuadraticRate rate(nu * Eigen::Matrix2d::Identity());
  const double infimum = rate_infimum_over_set(rate, set);
  CHECK(infimum == doctest::Approx(3.0));

  const auto grid = geometric_grid(0.05, 0.5, 10);
  const ProbabilityEstimator estimator = exact_sampling_estimator(
      [nu](double eps) {
        return Eigen::Matrix2d(eps / (2.0 * nu) *
                               Eigen::Matrix2d::Identity());
      },
      set, 400000, 2024);
  const DecayEstimate est = decay_rate_estimate(
      estimator, DecayAxis::small_noise, grid, set, infimum);
  CHECK(est.target == doctest::Approx(-3.0));
  CHECK(std::abs(est.slope - est.target) <= 0.10 * std::abs(est.target));
  // deep small-eps grid values produce no hits and are excluded, not fit
  CHECK_FALSE(est.table.front().included);
  CHECK(est.table.back().included);
}

TEST_CASE("decay with no hits anywhere reports insufficient resolution") {
  const SetDescriptor set = SetDescriptor::ball_complement(50.0);
  const auto grid = geometric_grid(0.05, 0.5, 5);
  const ProbabilityEstimator estimator = exact_sampling_estimator(
      [](double eps) {
        return Eigen::Matrix2d(eps * Eigen::Matrix2d::Identity());
      },
      set, 1000, 1);
  CHECK_THROWS_AS(decay_rate_estimate(estimator, DecayAxis::small_noise, grid,
                                      set, 100.0),
                  InsufficientResolutionError);
}

TEST_CASE("decay grid must span a decade") {
  const SetDescriptor set = SetDescriptor::ball_complement(1.0);
  const std::vector<double> narrow = {0.2, 0.3, 0.4};
  const ProbabilityEstimator estimator = exact_sampling_estimator(
      [](double eps) {
        return Eigen::Matrix2d(eps * Eigen::Matrix2d::Identity());
      },
      set, 1000, 1);
  CHECK_THROWS_AS(decay_rate_estimate(estimator, DecayAxis::small_noise,
                                      narrow, set, 1.0),
                  ConfigError);
}

TEST_CASE("configuration validation") {
  SimulationConfig cfg = base_config();
  cfg.burn_in = cfg.n_steps;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = base_config();
  cfg.h = 1.0;  // EM unstable at nu h = 3
  CHECK_THROWS_AS(cfg.validate(), StabilityError);

  cfg = base_config();
  cfg.n_chains = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("state blow-up raises a divergence error naming the step") {
  SimulationConfig cfg = base_config();
  cfg.eps = 1e220;  // stable dynamics, but the noise floor exceeds 1e100
  cfg.n_steps = 1000;
  cfg.burn_in = 10;
  bool threw = false;
  try {
    simulate_chain(cfg, 0);
  } catch (const DivergenceError& e) {
    threw = true;
    CHECK(e.step() < 1000);
  }
  CHECK(threw);
}

TEST_CASE("default burn-in follows the spectral-gap heuristic") {
  CHECK(default_burn_in(1e-3, 3.0) == 20000);
  CHECK(default_burn_in(1e-2, 0.5) == 4000);
}

}  // TEST_SUITE
