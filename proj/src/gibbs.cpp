#include "langevin/gibbs.hpp"

#include <cmath>
#include <numbers>

#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"

namespace langevin {

namespace {

constexpr double kTailSafety = 20.0;  // extra decades beyond rel_tol

// Truncation radius: eta L^alpha >= max(V*,0) + (ln(1/tol)+safety)/s keeps
// the discarded tail mass of exp(-s(V - V*)) below tol, clipped to >= l0.
double truncation_radius(const GrowthCertificate& g, double v_star, double s,
                         double rel_tol) {
  const double need =
      std::max(v_star, 0.0) + (std::log(1.0 / rel_tol) + kTailSafety) / s;
  return std::max(g.l0, std::pow(need / g.eta, 1.0 / g.alpha));
}

void check_params(double nu, double eps, double rel_tol) {
  if (!(nu > 0.0) || !(eps > 0.0)) {
    throw ConfigError("gibbs: nu and eps must be positive");
  }
  if (!(rel_tol > 0.0)) throw ConfigError("gibbs: rel_tol must be positive");
}

}  // namespace

struct GibbsMeasure::Cache {
  std::once_flag flag;
  double log_q_integral = 0.0;  // ln ∫ exp(-s (V - V*)) over [-L, L]
};

GibbsMeasure::GibbsMeasure(double nu, double eps, Potential potential,
                           double rel_tol)
    : nu_(nu), eps_(eps), rel_tol_(rel_tol), pot_(std::move(potential)),
      cache_(std::make_shared<Cache>()) {
  check_params(nu, eps, rel_tol);
  auto [q_star, v_star] = potential_infimum(pot_);
  q_star_ = q_star;
  v_star_ = v_star;
}

double GibbsMeasure::truncation_radius() const {
  const double s = 2.0 * nu_ / eps_;
  return langevin::truncation_radius(pot_.growth, v_star_, s, rel_tol_);
}

void GibbsMeasure::ensure_z() const {
  std::call_once(cache_->flag, [this] {
    const double s = 2.0 * nu_ / eps_;
    const double L = truncation_radius();
    QuadratureOptions opts;
    opts.rel_tol = rel_tol_;
    cache_->log_q_integral = log_integrate_exp(
        [&](double q) { return -s * (pot_.value(q) - v_star_); }, -L, L, opts);
  });
}

double GibbsMeasure::log_z() const {
  ensure_z();
  const double s = 2.0 * nu_ / eps_;
  return 0.5 * std::log(std::numbers::pi * eps_ / nu_) - s * v_star_ +
         cache_->log_q_integral;
}

double GibbsMeasure::z() const { return std::exp(log_z()); }

double GibbsMeasure::log_density(double p, double q) const {
  ensure_z();
  const double s = 2.0 * nu_ / eps_;
  const double shifted_energy = 0.5 * p * p + (pot_.value(q) - v_star_);
  return -s * shifted_energy -
         (0.5 * std::log(std::numbers::pi * eps_ / nu_) +
          cache_->log_q_integral);
}

double GibbsMeasure::density(double p, double q) const {
  return std::exp(log_density(p, q));
}

double partition_function(double nu, double eps, const Potential& potential,
                          double rel_tol) {
  GibbsMeasure m(nu, eps, potential, rel_tol);
  return m.z();
}

double scaling_identity_check(double nu, double eps, const Potential& potential,
                              std::span<const Eigen::Vector2d> points,
                              double rel_tol) {
  GibbsMeasure lhs(nu, eps, potential, rel_tol);
  GibbsMeasure rhs(nu / eps, 1.0, potential, rel_tol);
  double worst = 0.0;
  for (const Eigen::Vector2d& x : points) {
    worst = std::max(worst, std::abs(lhs.density(x(0), x(1)) -
                                     rhs.density(x(0), x(1))));
  }
  return worst;
}

LimitCurve laplace_limit_curve(const Potential& potential,
                               std::span<const double> nu_grid,
                               double rel_tol) {
  LimitCurve curve;
  const auto [q_star, v_star] = potential_infimum(potential);
  (void)q_star;
  for (double nu : nu_grid) {
    if (!(nu > 0.0)) throw ConfigError("laplace_limit_curve: nu must be > 0");
    const double s = 2.0 * nu;
    const double L = truncation_radius(potential.growth, v_star, s, rel_tol);
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    const double log_int = log_integrate_exp(
        [&](double q) { return -s * potential.value(q); }, -L, L, opts);
    curve.x.push_back(nu);
    curve.value.push_back(log_int / nu);
  }
  return curve;
}

LimitCurve tail_bound_check(const Potential& potential, double L,
                            std::span<const double> nu_grid, double rel_tol) {
  const GrowthCertificate& g = potential.growth;
  if (!(L >= g.l0)) {
    throw ConfigError("tail_bound_check: L must be >= the certificate l0");
  }
  LimitCurve curve;
  for (double nu : nu_grid) {
    if (!(nu > 0.0)) throw ConfigError("tail_bound_check: nu must be > 0");
    const double v_at_l = potential.value(L);
    const double outer = std::max(
        2.0 * L, truncation_radius(g, std::max(v_at_l, 0.0), nu, rel_tol));
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    const double right = log_integrate_exp(
        [&](double q) { return -nu * potential.value(q); }, L, outer, opts);
    const double left = log_integrate_exp(
        [&](double q) { return -nu * potential.value(q); }, -outer, -L, opts);
    const double hi = std::max(left, right), lo = std::min(left, right);
    const double log_total = hi + std::log1p(std::exp(lo - hi));
    curve.x.push_back(nu);
    curve.value.push_back(log_total / nu);
  }
  return curve;
}

std::vector<double> default_laplace_nu_grid() {
  return geometric_grid(1.0, 1e3, 16);
}

LimitVerdict limit_verdict(const LimitCurve& curve, double target, double tol) {
  if (curve.x.empty()) throw ConfigError("limit_verdict: empty curve");
  LimitVerdict v;
  v.target = target;
  v.tol = tol;
  std::size_t last = 0;
  for (std::size_t i = 1; i < curve.x.size(); ++i) {
    if (curve.x[i] > curve.x[last]) last = i;
  }
  v.last = curve.value[last];
  std::vector<double> inv(curve.x.size());
  for (std::size_t i = 0; i < curve.x.size(); ++i) inv[i] = 1.0 / curve.x[i];
  v.extrapolated = extrapolate_to_zero(inv, curve.value);
  v.pass = std::abs(v.last - target) <= tol &&
           std::abs(v.extrapolated - target) <= tol;
  return v;
}

ContinuousRate::ContinuousRate(RateKind kind, double fixed_param,
                               Potential potential)
    : kind_(kind), fixed_param_(fixed_param), pot_(std::move(potential)) {
  if (!(fixed_param > 0.0)) {
    throw ConfigError("continuous_rate: fixed parameter must be > 0");
  }
  z0_ = -2.0 * potential_infimum(pot_).second;
}

double ContinuousRate::operator()(double p, double q) const {
  const double base = p * p + 2.0 * pot_.value(q) + z0_;
  return kind_ == RateKind::small_noise ? fixed_param_ * base
                                        : base / fixed_param_;
}

ContinuousRate continuous_rate(RateKind kind, double fixed_param,
                               const Potential& potential) {
  return ContinuousRate(kind, fixed_param, potential);
}

}  // namespace langevin
