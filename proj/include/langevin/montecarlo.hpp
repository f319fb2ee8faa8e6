#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "langevin/schemes.hpp"
#include "langevin/sets.hpp"

namespace langevin {

std::uint64_t default_burn_in(double h, double nu);  // ceil(20/(h*min(nu,1)))

struct SimulationConfig {
  LinearScheme scheme;
  double eps = 1.0;
  double h = 1e-3;
  std::uint64_t n_steps = 0;   // total steps; samples = n_steps - burn_in
  std::uint64_t burn_in = 0;
  int n_chains = 1;
  std::uint64_t seed = 0;
  Eigen::Vector2d init = Eigen::Vector2d::Zero();
  std::vector<SetDescriptor> target_sets;

  // ConfigError on malformed fields; StabilityError if the scheme is
  // unstable at h.
  void validate() const;
};

// Welford/Chan streaming moments; merge is exact, so chain results combine
// identically regardless of scheduling.
class MomentAccumulator {
 public:
  void add(const Eigen::Vector2d& x);
  void merge(const MomentAccumulator& other);
  std::uint64_t count() const { return n_; }
  Eigen::Vector2d mean() const;
  Eigen::Matrix2d covariance() const;  // population normalization (1/n)

 private:
  std::uint64_t n_ = 0;
  Eigen::Vector2d mean_ = Eigen::Vector2d::Zero();
  Eigen::Matrix2d m2_ = Eigen::Matrix2d::Zero();
};

struct SetHitStats {
  std::uint64_t hits = 0;
  std::uint64_t n = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval
  double ci_high = 0.0;
};

SetHitStats make_hit_stats(std::uint64_t hits, std::uint64_t n);

struct EmpiricalSummary {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  std::uint64_t n_samples = 0;
  std::vector<SetHitStats> set_hits;  // one entry per target set
};

// Runs one chain of the affine-Gaussian recursion with dW ~ N(0, h) from a
// generator seeded by (seed, chain_index); statistics start after burn_in.
// DivergenceError (naming the step) if the state exceeds 1e100.
EmpiricalSummary simulate_chain(const SimulationConfig& config, int chain_index);

EmpiricalSummary merge_summaries(const EmpiricalSummary& a,
                                 const EmpiricalSummary& b);

// All chains, merged in chain order; results are independent of n_threads
// (0 = hardware concurrency).
EmpiricalSummary run_chains(const SimulationConfig& config, int n_threads = 0);

// n independent draws from N(0, sigma) via the symmetric square root.
// DomainError if sigma is not PSD (eigenvalue below -1e-12 of scale).
EmpiricalSummary exact_stationary_sample(const Eigen::Matrix2d& sigma,
                                         std::uint64_t n, std::uint64_t seed,
                                         std::span<const SetDescriptor> sets = {});

enum class DecayAxis { small_noise, strong_dissipation };

struct DecayPoint {
  double axis_value = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t n = 0;
  double p_hat = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  double log_p_scaled = 0.0;  // eps ln p (small noise) or ln(p)/nu
  bool included = false;      // zero-hit grid values are recorded, not fit
};

struct DecayEstimate {
  double slope = 0.0;   // regression of ln p against 1/eps or nu
  double target = 0.0;  // -inf of the rate over the set
  double rel_error = 0.0;
  std::vector<DecayPoint> table;
};

using ProbabilityEstimator = std::function<SetHitStats(double axis_value)>;

// Estimates mu(A) along the grid and regresses ln p against 1/eps
// (small-noise axis) or nu (dissipation axis). Grid must span at least one
// decade. InsufficientResolutionError when no grid value produced hits.
DecayEstimate decay_rate_estimate(const ProbabilityEstimator& estimator,
                                  DecayAxis axis, std::span<const double> grid,
                                  const SetDescriptor& set,
                                  double rate_infimum);

// Estimator drawing n exact stationary samples per grid value from the
// covariance the provider returns at that axis value.
ProbabilityEstimator exact_sampling_estimator(
    std::function<Eigen::Matrix2d(double)> sigma_of, SetDescriptor set,
    std::uint64_t n, std::uint64_t seed);

}  // namespace langevin
