#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "langevin/potentials.hpp"
#include "langevin/quadrature.hpp"

namespace langevin {

// Partition function Z = sqrt(pi*eps/nu) * ∫ exp(-(2 nu/eps) V(q)) dq, the
// q-integral truncated to [-L, L] with L chosen from the growth certificate
// so the discarded tail is below rel_tol (with a fixed safety margin).
double partition_function(double nu, double eps, const Potential& potential,
                          double rel_tol = 1e-10);

// Exact invariant law of the Langevin dynamics:
//   density(p,q) = exp(-(2 nu/eps)(p^2/2 + V(q))) / Z.
// All exponentials are computed relative to the potential minimum, so the
// density stays evaluable deep into the small-noise / strong-dissipation
// regimes. Z is computed on first use and cached; copies share the cache.
class GibbsMeasure {
 public:
  GibbsMeasure(double nu, double eps, Potential potential,
               double rel_tol = 1e-10);

  double nu() const { return nu_; }
  double eps() const { return eps_; }
  const Potential& potential() const { return pot_; }
  double rel_tol() const { return rel_tol_; }

  double z() const;            // partition function
  double log_z() const;
  double z0() const { return -2.0 * v_star_; }
  double v_star() const { return v_star_; }
  double q_star() const { return q_star_; }
  double truncation_radius() const;  // L used by the q-quadrature

  double density(double p, double q) const;
  double log_density(double p, double q) const;

 private:
  struct Cache;
  void ensure_z() const;

  double nu_, eps_, rel_tol_;
  Potential pot_;
  double q_star_ = 0.0, v_star_ = 0.0;
  std::shared_ptr<Cache> cache_;
};

// max over the points of |density_{nu,eps}(p,q) - density_{nu/eps,1}(p,q)|.
double scaling_identity_check(double nu, double eps, const Potential& potential,
                              std::span<const Eigen::Vector2d> points,
                              double rel_tol = 1e-10);

struct LimitCurve {
  std::vector<double> x;      // the nu grid
  std::vector<double> value;  // per-nu value
};

// value(nu) = (1/nu) ln ∫ exp(-2 nu V(q)) dq; approaches Z0 = -2 inf V.
LimitCurve laplace_limit_curve(const Potential& potential,
                               std::span<const double> nu_grid,
                               double rel_tol = 1e-10);

// value(nu) = (1/nu) ln ∫_{|q|>=L} exp(-nu V(q)) dq; limsup <= -eta L^alpha/2.
LimitCurve tail_bound_check(const Potential& potential, double L,
                            std::span<const double> nu_grid,
                            double rel_tol = 1e-10);

// Default grid for limit curves: 16 geometric points on [1, 1e3].
std::vector<double> default_laplace_nu_grid();

struct LimitVerdict {
  double last = 0.0;          // curve value at the largest nu
  double extrapolated = 0.0;  // Richardson extrapolation in 1/nu
  double target = 0.0;
  double tol = 0.05;
  bool pass = false;
};

LimitVerdict limit_verdict(const LimitCurve& curve, double target,
                           double tol = 0.05);

enum class RateKind { small_noise, strong_dissipation };

// Rate function of the continuous invariant measure:
//   small_noise:        (p,q) -> nu * (p^2 + 2 V(q) + Z0)
//   strong_dissipation: (p,q) -> (p^2 + 2 V(q) + Z0) / eps
// Nonnegative, zero exactly at (0, argmin V).
class ContinuousRate {
 public:
  ContinuousRate(RateKind kind, double fixed_param, Potential potential);

  double operator()(double p, double q) const;
  RateKind kind() const { return kind_; }
  double fixed_param() const { return fixed_param_; }
  double z0() const { return z0_; }

 private:
  RateKind kind_;
  double fixed_param_;
  Potential pot_;
  double z0_;
};

ContinuousRate continuous_rate(RateKind kind, double fixed_param,
                               const Potential& potential);

}  // namespace langevin
