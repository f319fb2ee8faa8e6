#include "langevin/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <future>
#include <limits>
#include <mutex>
#include <thread>

#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"
#include "langevin/rng.hpp"

namespace langevin {

std::uint64_t default_burn_in(double h, double nu) {
  // The spectral gap of A(h) is O(nu h) at small h; 20 relaxation times.
  return static_cast<std::uint64_t>(std::ceil(20.0 / (h * std::min(nu, 1.0))));
}

void SimulationConfig::validate() const {
  if (!(eps >= 0.0)) throw ConfigError("simulation: eps must be >= 0");
  if (!(h > 0.0)) throw ConfigError("simulation: h must be > 0");
  if (n_chains < 1) throw ConfigError("simulation: need at least one chain");
  if (!(burn_in < n_steps)) {
    throw ConfigError("simulation: burn_in must be smaller than n_steps");
  }
  if (!init.allFinite()) throw ConfigError("simulation: non-finite init");
  for (const SetDescriptor& s : target_sets) s.validate();
  const StabilityReport rep = stability(scheme, h);
  if (!rep.stable) {
    throw StabilityError("simulation: scheme '" + scheme.name() +
                         "' is unstable at h = " + std::to_string(h));
  }
}

void MomentAccumulator::add(const Eigen::Vector2d& x) {
  n_ += 1;
  const Eigen::Vector2d delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_).transpose();
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const Eigen::Vector2d delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * (nb / n);
  m2_ += other.m2_ + delta * delta.transpose() * (na * nb / n);
  n_ += other.n_;
}

Eigen::Vector2d MomentAccumulator::mean() const { return mean_; }

Eigen::Matrix2d MomentAccumulator::covariance() const {
  if (n_ == 0) return Eigen::Matrix2d::Zero();
  Eigen::Matrix2d cov = m2_ / static_cast<double>(n_);
  cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
  return cov;
}

SetHitStats make_hit_stats(std::uint64_t hits, std::uint64_t n) {
  SetHitStats s;
  s.hits = hits;
  s.n = n;
  if (n == 0) return s;
  const double nn = static_cast<double>(n);
  s.p_hat = static_cast<double>(hits) / nn;
  constexpr double z = 1.959963984540054;  // 95%
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (s.p_hat + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(s.p_hat * (1.0 - s.p_hat) / nn + z2 / (4.0 * nn * nn)) /
      denom;
  s.ci_low = std::max(0.0, center - half);
  s.ci_high = std::min(1.0, center + half);
  return s;
}

EmpiricalSummary simulate_chain(const SimulationConfig& config,
                                int chain_index) {
  config.validate();
  const Eigen::Matrix2d a = config.scheme.A(config.h);
  const Eigen::Vector2d b = config.scheme.b(config.h);
  const double noise_scale = std::sqrt(config.eps * config.h);

  Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(chain_index)));
  Eigen::Vector2d x = config.init;
  MomentAccumulator acc;
  std::vector<std::uint64_t> hits(config.target_sets.size(), 0);

  for (std::uint64_t step = 0; step < config.n_steps; ++step) {
    x = a * x + (noise_scale * rng.gauss()) * b;
    if (std::abs(x(0)) > 1e100 || std::abs(x(1)) > 1e100) {
      throw DivergenceError("simulate_chain: state exceeded 1e100 at step " +
                                std::to_string(step) +
                                " (scheme unstable in practice)",
                            step);
    }
    if (step < config.burn_in) continue;
    acc.add(x);
    for (std::size_t k = 0; k < config.target_sets.size(); ++k) {
      if (config.target_sets[k].contains(x(0), x(1))) ++hits[k];
    }
  }

  EmpiricalSummary out;
  out.mean = acc.mean();
  out.covariance = acc.covariance();
  out.n_samples = acc.count();
  for (std::uint64_t hk : hits) {
    out.set_hits.push_back(make_hit_stats(hk, out.n_samples));
  }
  return out;
}

EmpiricalSummary merge_summaries(const EmpiricalSummary& a,
                                 const EmpiricalSummary& b) {
  if (a.set_hits.size() != b.set_hits.size()) {
    throw ConfigError("merge_summaries: mismatched target sets");
  }
  if (a.n_samples == 0) return b;
  if (b.n_samples == 0) return a;
  const double na = static_cast<double>(a.n_samples);
  const double nb = static_cast<double>(b.n_samples);
  const double n = na + nb;
  EmpiricalSummary out;
  out.n_samples = a.n_samples + b.n_samples;
  const Eigen::Vector2d delta = b.mean - a.mean;
  out.mean = a.mean + delta * (nb / n);
  const Eigen::Matrix2d m2 = a.covariance * na + b.covariance * nb +
                             delta * delta.transpose() * (na * nb / n);
  out.covariance = m2 / n;
  for (std::size_t k = 0; k < a.set_hits.size(); ++k) {
    out.set_hits.push_back(
        make_hit_stats(a.set_hits[k].hits + b.set_hits[k].hits,
                       out.n_samples));
  }
  return out;
}

EmpiricalSummary run_chains(const SimulationConfig& config, int n_threads) {
  config.validate();
  if (n_threads <= 0) {
    n_threads = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
  }
  n_threads = std::min(n_threads, config.n_chains);

  std::vector<EmpiricalSummary> results(config.n_chains);
  if (n_threads == 1) {
    for (int i = 0; i < config.n_chains; ++i) {
      results[i] = simulate_chain(config, i);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::future<void>> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < n_threads; ++t) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (int i = next.fetch_add(1); i < config.n_chains;
             i = next.fetch_add(1)) {
          try {
            results[i] = simulate_chain(config, i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            return;
          }
        }
      }));
    }
    for (auto& w : workers) w.get();
    if (error) std::rethrow_exception(error);
  }

  // Merge in chain order: the result is independent of thread count.
  EmpiricalSummary merged = results[0];
  for (int i = 1; i < config.n_chains; ++i) {
    merged = merge_summaries(merged, results[i]);
  }
  return merged;
}

EmpiricalSummary exact_stationary_sample(const Eigen::Matrix2d& sigma,
                                         std::uint64_t n, std::uint64_t seed,
                                         std::span<const SetDescriptor> sets) {
  Eigen::Matrix2d sym = 0.5 * (sigma + sigma.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sym);
  const double scale = std::max(std::abs(es.eigenvalues()(0)),
                                std::abs(es.eigenvalues()(1)));
  if (es.eigenvalues()(0) < -1e-12 * std::max(scale, 1e-300)) {
    throw DomainError("exact_stationary_sample: sigma is not PSD");
  }
  const Eigen::Matrix2d root =
      es.eigenvectors() *
      Eigen::Vector2d(std::sqrt(std::max(es.eigenvalues()(0), 0.0)),
                      std::sqrt(std::max(es.eigenvalues()(1), 0.0)))
          .asDiagonal() *
      es.eigenvectors().transpose();

  Rng rng(mix_seed(seed, 0xE5A7u));
  MomentAccumulator acc;
  std::vector<std::uint64_t> hits(sets.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Eigen::Vector2d g(rng.gauss(), rng.gauss());
    const Eigen::Vector2d x = root * g;
    acc.add(x);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (sets[k].contains(x(0), x(1))) ++hits[k];
    }
  }
  EmpiricalSummary out;
  out.mean = acc.mean();
  out.covariance = acc.covariance();
  out.n_samples = acc.count();
  for (std::uint64_t hk : hits) out.set_hits.push_back(make_hit_stats(hk, n));
  return out;
}

DecayEstimate decay_rate_estimate(const ProbabilityEstimator& estimator,
                                  DecayAxis axis, std::span<const double> grid,
                                  const SetDescriptor& set,
                                  double rate_infimum) {
  set.validate();
  if (grid.size() < 2) {
    throw ConfigError("decay_rate_estimate: need at least 2 grid values");
  }
  double lo = grid[0], hi = grid[0];
  for (double g : grid) {
    if (!(g > 0.0)) throw ConfigError("decay_rate_estimate: grid must be > 0");
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  if (hi / lo < 10.0 * (1.0 - 1e-9)) {
    throw ConfigError("decay_rate_estimate: grid must span >= 1 decade");
  }

  DecayEstimate est;
  est.target = -rate_infimum;
  std::vector<double> xs, ys;
  for (double g : grid) {
    const SetHitStats stats = estimator(g);
    DecayPoint pt;
    pt.axis_value = g;
    pt.hits = stats.hits;
    pt.n = stats.n;
    pt.p_hat = stats.p_hat;
    pt.ci_low = stats.ci_low;
    pt.ci_high = stats.ci_high;
    pt.included = stats.hits > 0;
    if (pt.included) {
      const double logp = std::log(pt.p_hat);
      pt.log_p_scaled =
          axis == DecayAxis::small_noise ? g * logp : logp / g;
      xs.push_back(axis == DecayAxis::small_noise ? 1.0 / g : g);
      ys.push_back(logp);
    }
    est.table.push_back(pt);
  }
  if (xs.size() < 2) {
    throw InsufficientResolutionError(
        "decay_rate_estimate: fewer than two grid values produced hits; "
        "enlarge eps, shrink the set radius or raise the sample count");
  }
  est.slope = ls_slope(xs, ys);
  est.rel_error = est.target != 0.0
                      ? std::abs(est.slope - est.target) / std::abs(est.target)
                      : std::abs(est.slope);
  return est;
}

ProbabilityEstimator exact_sampling_estimator(
    std::function<Eigen::Matrix2d(double)> sigma_of, SetDescriptor set,
    std::uint64_t n, std::uint64_t seed) {
  return [sigma_of = std::move(sigma_of), set = std::move(set), n,
          seed](double axis_value) {
    const Eigen::Matrix2d sigma = sigma_of(axis_value);
    // derive a per-grid-value substream from the axis value bits
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(axis_value));
    std::memcpy(&bits, &axis_value, sizeof(bits));
    const SetDescriptor sets[] = {set};
    const EmpiricalSummary s =
        exact_stationary_sample(sigma, n, mix_seed(seed, bits), sets);
    return s.set_hits.at(0);
  };
}

}  // namespace langevin
