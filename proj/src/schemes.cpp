#include "langevin/schemes.hpp"

#include <cmath>
#include <limits>

#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"
#include "langevin/rng.hpp"

namespace langevin {

LinearScheme::LinearScheme(std::string name, double nu, CoeffA a_fn, CoeffB b_fn)
    : name_(std::move(name)), nu_(nu), a_fn_(std::move(a_fn)),
      b_fn_(std::move(b_fn)) {
  if (!(nu > 0.0)) throw ConfigError("LinearScheme: nu must be > 0");
  if (!a_fn_ || !b_fn_) throw ConfigError("LinearScheme: missing coefficients");
}

Eigen::Matrix2d LinearScheme::A(double h) const {
  if (!(h > 0.0)) throw ConfigError("scheme A(h): h must be > 0");
  Eigen::Matrix2d a = a_fn_(h);
  if (!a.allFinite()) {
    throw EvaluationError("scheme '" + name_ + "': A(h) not finite");
  }
  return a;
}

Eigen::Vector2d LinearScheme::b(double h) const {
  if (!(h > 0.0)) throw ConfigError("scheme b(h): h must be > 0");
  Eigen::Vector2d b = b_fn_(h);
  if (!b.allFinite()) {
    throw EvaluationError("scheme '" + name_ + "': b(h) not finite");
  }
  return b;
}

LinearScheme euler_maruyama(double nu) {
  return LinearScheme(
      "euler_maruyama", nu,
      [nu](double h) {
        Eigen::Matrix2d a;
        a << 1.0 - nu * h, -h, h, 1.0;
        return a;
      },
      [](double) { return Eigen::Vector2d(1.0, 0.0); });
}

LinearScheme theta_method(double theta, double nu) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ConfigError("theta_method: theta must lie in [0,1]");
  }
  return LinearScheme(
      "theta_method(" + std::to_string(theta) + ")", nu,
      [theta, nu](double h) {
        const double delta = theta * (theta * h * h + nu * h);
        Eigen::Matrix2d a;
        a << 1.0 - (theta * h * h + nu * h) * (1.0 - theta), -h, h,
            1.0 - theta * (1.0 - theta) * h * h + nu * theta * h;
        return Eigen::Matrix2d(a / (1.0 + delta));
      },
      [theta, nu](double h) {
        const double delta = theta * (theta * h * h + nu * h);
        return Eigen::Vector2d(1.0 / (1.0 + delta),
                               theta * h / (1.0 + delta));
      });
}

LinearScheme tabulated_scheme(std::string name, double nu,
                              std::vector<SchemeTableEntry> table) {
  if (table.empty()) throw ConfigError("tabulated_scheme: empty table");
  auto lookup = [table = std::move(table), name](double h) {
    for (const SchemeTableEntry& e : table) {
      if (std::abs(e.h - h) <= 1e-12 * std::max(1.0, std::abs(h))) return e;
    }
    throw ConfigError("tabulated_scheme '" + name +
                      "': h not present in the coefficient table");
  };
  return LinearScheme(
      name, nu,
      [lookup](double h) { return lookup(h).A; },
      [lookup](double h) { return lookup(h).b; });
}

StabilityReport stability(const LinearScheme& scheme, double h) {
  const Eigen::Matrix2d a = scheme.A(h);
  StabilityReport rep;
  rep.h = h;
  rep.tr = a(0, 0) + a(1, 1);
  rep.det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  // disc = (tr-2)^2 - 4 (1+det-tr); both pieces are O(h)-sized differences,
  // unlike tr^2 - 4 det whose operands are O(1) at small h.
  const double u = (a(0, 0) - 1.0) + (a(1, 1) - 1.0);
  const double w = (1.0 - a(0, 0)) * (1.0 - a(1, 1)) - a(0, 1) * a(1, 0);
  rep.discriminant = u * u - 4.0 * w;
  const std::complex<double> sq =
      std::sqrt(std::complex<double>(rep.discriminant, 0.0));
  rep.lambda1 = (rep.tr + sq) / 2.0;
  rep.lambda2 = (rep.tr - sq) / 2.0;
  rep.spectral_radius = std::max(std::abs(rep.lambda1), std::abs(rep.lambda2));
  rep.stable = std::abs(rep.tr) < 1.0 + rep.det && 1.0 + rep.det < 2.0;
  return rep;
}

Assumption2Orders assumption2_orders(const LinearScheme& scheme,
                                     std::span<const double> h_grid) {
  if (h_grid.size() < 4) {
    throw ConfigError("assumption2_orders: need at least 4 grid points");
  }
  double lo = h_grid[0], hi = h_grid[0];
  for (double h : h_grid) {
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    if (!(h > 0.0 && h < 1.0)) {
      throw ConfigError("assumption2_orders: every h must lie in (0,1)");
    }
  }
  if (hi / lo < 100.0 * (1.0 - 1e-9)) {
    throw ConfigError("assumption2_orders: grid must span >= 2 decades");
  }

  const double nu = scheme.nu();
  std::vector<double> hs, ra, rb;
  for (double h : h_grid) {
    const Eigen::Matrix2d a = scheme.A(h);
    const Eigen::Vector2d b = scheme.b(h);
    hs.push_back(h);
    ra.push_back(std::abs(a(0, 0) - 1.0 + nu * h) + std::abs(a(0, 1) + h) +
                 std::abs(a(1, 0) - h) + std::abs(a(1, 1) - 1.0));
    rb.push_back(std::abs(b(0) - 1.0) + std::abs(b(1)));
  }
  Assumption2Orders out;
  out.order_a = order_estimate(hs, ra);
  out.order_b = order_estimate(hs, rb);
  out.satisfied = out.order_a >= 2.0 - 0.1 && out.order_b >= 1.0 - 0.1;
  return out;
}

double discriminant_expansion_check(const LinearScheme& scheme,
                                    std::span<const double> h_grid) {
  const double nu = scheme.nu();
  const double lead = nu * nu - 4.0;
  double sup = 0.0;
  for (double h : h_grid) {
    const StabilityReport rep = stability(scheme, h);
    sup = std::max(sup,
                   std::abs(rep.discriminant - lead * h * h) / (h * h * h));
  }
  return sup;
}

std::optional<std::pair<double, double>> find_unstable_witness(
    double theta, int max_trials, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x5748u));
  for (int i = 0; i < max_trials; ++i) {
    // log-uniform h in (1e-4, 10], uniform nu in (2, 1e3]
    const double h = std::pow(10.0, -4.0 + 5.0 * rng.uniform());
    const double nu = 2.0 + 998.0 * rng.uniform();
    const LinearScheme s = theta_method(theta, nu);
    if (!stability(s, h).stable) return std::make_pair(h, nu);
  }
  return std::nullopt;
}

}  // namespace langevin
