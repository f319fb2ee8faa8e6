#include "langevin/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"

namespace langevin {

namespace {

void require_finite_param(double p, const char* what) {
  if (!std::isfinite(p)) {
    throw ConfigError(std::string("builtin_potential: ") + what +
                      " must be finite");
  }
}

double default_param(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::quadratic:
    case PotentialKind::quartic:
    case PotentialKind::double_well:
      return 1.0;
    case PotentialKind::shifted_quartic:
      return 0.0;
  }
  throw ConfigError("builtin_potential: unknown kind");
}

}  // namespace

PotentialKind parse_potential_kind(const std::string& name) {
  if (name == "quadratic") return PotentialKind::quadratic;
  if (name == "quartic") return PotentialKind::quartic;
  if (name == "double_well" || name == "double-well") {
    return PotentialKind::double_well;
  }
  if (name == "shifted_quartic" || name == "shifted-quartic") {
    return PotentialKind::shifted_quartic;
  }
  throw ConfigError("unknown potential kind: " + name);
}

Potential builtin_potential(PotentialKind kind) {
  return builtin_potential(kind, default_param(kind));
}

Potential builtin_potential(PotentialKind kind, double param) {
  Potential pot;
  switch (kind) {
    case PotentialKind::quadratic: {
      const double k = param;
      require_finite_param(k, "stiffness");
      if (!(k > 0.0)) throw ConfigError("quadratic potential needs stiffness > 0");
      pot.name = "quadratic";
      pot.value_fn = [k](double q) { return 0.5 * k * q * q; };
      pot.grad_fn = [k](double q) { return k * q; };
      pot.growth = {0.5 * k, 2.0, 1.0};
      pot.infimum_hint = InfimumHint{0.0, 0.0};
      return pot;
    }
    case PotentialKind::quartic: {
      const double a = param;
      require_finite_param(a, "coefficient");
      if (!(a > 0.0)) throw ConfigError("quartic potential needs coefficient > 0");
      pot.name = "quartic";
      pot.value_fn = [a](double q) { return a * q * q * q * q; };
      pot.grad_fn = [a](double q) { return 4.0 * a * q * q * q; };
      pot.growth = {a, 4.0, 1.0};
      pot.infimum_hint = InfimumHint{0.0, 0.0};
      return pot;
    }
    case PotentialKind::double_well: {
      const double a = param;
      require_finite_param(a, "well position");
      const double a2 = a * a;
      pot.name = "double_well";
      pot.value_fn = [a2](double q) {
        const double d = q * q - a2;
        return d * d;
      };
      pot.grad_fn = [a2](double q) { return 4.0 * q * (q * q - a2); };
      // (q^2-a^2)^2 >= q^4 (1 - a^2/q^2)^2 >= q^4 (3/4)^2 > q^4/2 on |q| >= 2|a|.
      pot.growth = {0.5, 4.0, std::max(1.0, 2.0 * std::abs(a))};
      pot.infimum_hint = InfimumHint{-std::abs(a), 0.0};
      return pot;
    }
    case PotentialKind::shifted_quartic: {
      const double c = param;
      require_finite_param(c, "offset");
      pot.name = "shifted_quartic";
      pot.value_fn = [c](double q) { return q * q * q * q + c; };
      pot.grad_fn = [](double q) { return 4.0 * q * q * q; };
      if (c >= 0.0) {
        pot.growth = {1.0, 4.0, 1.0};
      } else {
        // q^4 + c >= q^4/2 once q^4 >= 2|c|.
        pot.growth = {0.5, 4.0,
                      std::max(1.0, std::pow(2.0 * std::abs(c), 0.25))};
      }
      pot.infimum_hint = InfimumHint{0.0, c};
      return pot;
    }
  }
  throw ConfigError("builtin_potential: unknown kind");
}

std::pair<double, double> locate_infimum(const Potential& potential,
                                         double search_radius, double tol) {
  if (!(tol > 0.0)) throw ConfigError("locate_infimum: tol must be > 0");
  if (!(search_radius >= potential.growth.l0)) {
    throw ConfigError("locate_infimum: search_radius must be >= the growth "
                      "certificate l0");
  }

  constexpr int kGrid = 10000;
  const double lo = -search_radius, hi = search_radius;
  double best_q = lo;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double q = lo + (hi - lo) * i / kGrid;
    const double v = potential.value(q);
    if (!std::isfinite(v)) {
      throw EvaluationError("locate_infimum: potential not finite on grid");
    }
    if (v < best_v) {  // strict: ties keep the smallest q
      best_v = v;
      best_q = q;
    }
  }
  const double cell = (hi - lo) / kGrid;
  const double a = std::max(lo, best_q - cell);
  const double b = std::min(hi, best_q + cell);
  auto [q_star, v_star] =
      golden_section([&](double q) { return potential.value(q); }, a, b, tol);
  if (v_star > best_v) {  // grid point was already optimal within tol
    q_star = best_q;
    v_star = best_v;
  }
  return {q_star, v_star};
}

std::pair<double, double> potential_infimum(const Potential& potential) {
  if (potential.infimum_hint) {
    return {potential.infimum_hint->q, potential.infimum_hint->value};
  }
  const GrowthCertificate& g = potential.growth;
  const double v0 = potential.value(0.0);
  const double bound =
      std::pow(std::max(v0, 0.0) / g.eta + 1.0, 1.0 / g.alpha);
  const double radius = 2.0 * std::max(g.l0, bound);
  return locate_infimum(potential, radius, 1e-10);
}

double growth_certificate_violation(const Potential& potential,
                                    int samples_per_side) {
  const GrowthCertificate& g = potential.growth;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples_per_side; ++i) {
    const double mag =
        g.l0 * std::pow(1e3, static_cast<double>(i) / (samples_per_side - 1));
    for (double sign : {-1.0, 1.0}) {
      const double q = sign * mag;
      const double bound = g.eta * std::pow(std::abs(q), g.alpha);
      // relative to the bound, so ulp noise at |q| ~ 1e3 does not register
      worst = std::max(worst,
                       (bound - potential.value(q)) / std::max(1.0, bound));
    }
  }
  return worst;
}

double gradient_max_rel_error(const Potential& potential,
                              std::span<const double> grid, double step) {
  double worst = 0.0;
  for (double q : grid) {
    const double fd =
        (potential.value(q + step) - potential.value(q - step)) / (2.0 * step);
    const double g = potential.grad(q);
    worst = std::max(worst, std::abs(fd - g) / std::max(1.0, std::abs(g)));
  }
  return worst;
}

}  // namespace langevin
