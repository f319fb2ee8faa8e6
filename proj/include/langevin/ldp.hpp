#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "langevin/schemes.hpp"
#include "langevin/sets.hpp"
#include "langevin/stationary.hpp"

namespace langevin {

// Finite quadratic rate x -> x^T R x with R symmetric positive definite.
class QuadraticRate {
 public:
  explicit QuadraticRate(const Eigen::Matrix2d& r);  // DomainError unless SPD

  double operator()(double p, double q) const;
  double operator()(const Eigen::Vector2d& x) const { return (*this)(x(0), x(1)); }
  const Eigen::Matrix2d& matrix() const { return r_; }

 private:
  Eigen::Matrix2d r_;
};

// Rate function on the plane that may be +infinity off a linear subspace:
// the Legendre transform of a PSD quadratic form is finite exactly on the
// form's range. domain_dim 2 is a plain quadratic; 1 is quadratic along a
// line through the origin (+inf elsewhere); 0 is zero at the origin and
// +inf elsewhere. Lower semicontinuous by construction. Membership uses the
// stored unit normal with tolerance 1e-12.
class ExtendedRate {
 public:
  static ExtendedRate full(QuadraticRate rate);
  static ExtendedRate on_line(const Eigen::Vector2d& direction, double coef);
  static ExtendedRate origin_only();

  int domain_dim() const { return dim_; }
  double operator()(double p, double q) const;
  double operator()(const Eigen::Vector2d& x) const { return (*this)(x(0), x(1)); }

  QuadraticRate quadratic() const;               // dim 2 only
  const Eigen::Vector2d& direction() const { return direction_; }
  const Eigen::Vector2d& normal() const { return normal_; }
  double line_coef() const { return coef_; }

 private:
  ExtendedRate() = default;
  int dim_ = 2;
  Eigen::Matrix2d r_ = Eigen::Matrix2d::Identity();
  Eigen::Vector2d direction_ = Eigen::Vector2d::UnitX();
  Eigen::Vector2d normal_ = Eigen::Vector2d::UnitY();
  double coef_ = 0.0;
};

// Logarithmic moment generating function as a quadratic form theta^T m theta.
struct LogMgf {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  double operator()(const Eigen::Vector2d& theta) const {
    return theta.dot(m * theta);
  }
};

// Small-noise log-MGF of the scheme's invariant measure:
//   Lambda^h(theta) = h (s11 t1^2 + s22 t2^2 + 2 s12 t1 t2) / (2 disc)
// with disc = tr(A)^2 - 4 det(A). Equals theta^T Sigma theta / (2 eps) for
// every eps (the components are eps-free). Requires stability and nu != 2.
LogMgf lmgf_small_noise(const LinearScheme& scheme, double h);

// Legendre-Fenchel conjugate of theta -> theta^T m theta for symmetric PSD m:
// positive definite m gives the quadratic x -> x^T m^{-1} x / 4; singular m
// gives the conjugate of the restriction to its range, +inf off the range.
// DomainError if m is asymmetric or has an eigenvalue < 0.
ExtendedRate legendre_quadratic(const Eigen::Matrix2d& m);

// Closed-form small-noise rate of the scheme's invariant measure:
//   I^h(p,q) = disc * (s22 p^2 + s11 q^2 - 2 s12 p q) / (2 h (s11 s22 - s12^2)).
// Cross-checked against legendre_quadratic(lmgf matrix) at 20 points to
// 1e-10 relative before returning. DegenerateRateError when the component
// determinant is not positive (h too large).
QuadraticRate rate_small_noise(const LinearScheme& scheme, double h);

struct PreservationRow {
  std::string label;
  Eigen::Vector2d point = Eigen::Vector2d::Zero();
  std::vector<double> curve;  // rate values along the grid; may be empty
  double limit = 0.0;         // extrapolated (or analytic) value
  double target = 0.0;
  double order = 0.0;         // estimated convergence order (+inf when exact)
  bool pass = false;
};

struct PreservationReport {
  std::string axis;  // "h" (small noise) or "nu" (strong dissipation)
  std::vector<double> grid;
  std::vector<PreservationRow> rows;
  double tol = 0.0;
  bool verdict = false;       // asymptotically preserves the LDP
  bool cross_check_ok = true; // internal limit-vs-analytic consistency
};

// Evaluates I^h at each point along the h grid, extrapolates h -> 0 and
// compares with the continuous target nu (p^2 + q^2).
PreservationReport preservation_small_noise(const LinearScheme& scheme,
                                            std::span<const Eigen::Vector2d> points,
                                            std::span<const double> h_grid,
                                            double tol);

struct DissipationCurve {
  std::vector<double> nu;
  std::vector<double> value;  // (nu/2) y^T Sigma_theta(nu) y
  double limit = 0.0;         // 1/nu extrapolation
};

// Strong-dissipation log-MGF curve of the theta-method along a nu grid at a
// fixed direction y, with its extrapolated limit. Analytic limits:
// (eps/4)(y1^2+y2^2) for theta = 1/2 and (eps/4) y2^2 for theta in (1/2,1].
// Requires theta in [1/2,1] and every nu > 2.
DissipationCurve dissipation_limit_curve(double theta, double eps, double h,
                                         std::span<const double> nu_grid,
                                         const Eigen::Vector2d& y);

// Strong-dissipation rate of the theta-method invariant measures:
// (p^2+q^2)/eps for theta = 1/2; q^2/eps on {p = 0}, +inf elsewhere, for
// theta in (1/2,1]. DomainError outside [1/2,1].
ExtendedRate rate_strong_dissipation(double theta, double eps, double h);

// Compares rate_strong_dissipation against the continuous rate (p^2+q^2)/eps
// at the points and cross-validates the analytic log-MGF against
// dissipation_limit_curve extrapolations at basis directions. The verdict is
// true exactly for the midpoint scheme.
PreservationReport preservation_strong_dissipation(
    double theta, double eps, double h, std::span<const Eigen::Vector2d> points,
    double tol, std::span<const double> nu_grid = {});

// inf of the rate over the set. Annuli and ball complements of quadratic
// rates have the analytic value r^2 lambda_min(R); boxes are minimized
// exactly over interior and edges. +infinity when the effective domain
// misses the set. DomainError on malformed sets.
double rate_infimum_over_set(const ExtendedRate& rate, const SetDescriptor& set);
double rate_infimum_over_set(const QuadraticRate& rate, const SetDescriptor& set);

// Default dissipation grid: 12 geometric points on [10, 1e6].
std::vector<double> default_dissipation_nu_grid();

}  // namespace langevin
