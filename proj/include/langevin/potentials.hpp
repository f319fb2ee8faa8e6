#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace langevin {

// Certificate for the tail growth bound V(q) >= eta*|q|^alpha on |q| >= l0.
// Machine-checked by sampling for the builtins; user-asserted for custom
// potentials.
struct GrowthCertificate {
  double eta = 0.0;    // > 0
  double alpha = 0.0;  // > 0
  double l0 = 1.0;     // >= 1
};

struct InfimumHint {
  double q = 0.0;
  double value = 0.0;
};

// Confining potential on the line with user-supplied gradient. Immutable
// after construction; evaluations are pure and thread-safe.
struct Potential {
  std::string name;
  std::function<double(double)> value_fn;
  std::function<double(double)> grad_fn;
  GrowthCertificate growth;
  std::optional<InfimumHint> infimum_hint;

  double value(double q) const { return value_fn(q); }
  double grad(double q) const { return grad_fn(q); }
};

enum class PotentialKind { quadratic, quartic, double_well, shifted_quartic };

// Parses "quadratic", "quartic", "double_well"/"double-well",
// "shifted_quartic"/"shifted-quartic"; anything else is a ConfigError.
PotentialKind parse_potential_kind(const std::string& name);

// Builtins, one numeric parameter each:
//   quadratic k        : V(q) = k q^2 / 2            (k > 0, default 1)
//   quartic a          : V(q) = a q^4                (a > 0, default 1)
//   double_well a      : V(q) = (q^2 - a^2)^2        (finite a, default 1)
//   shifted_quartic c  : V(q) = q^4 + c              (finite c, default 0)
// Each carries an exact gradient, a valid growth certificate and an
// analytic infimum hint.
Potential builtin_potential(PotentialKind kind);
Potential builtin_potential(PotentialKind kind, double param);

// Global minimum by a 10^4-point scan of [-R, R] followed by golden-section
// refinement. Ties resolve to the smallest q. The growth certificate
// guarantees the minimizer lies within max(l0, (max(V(0),0)/eta)^(1/alpha)).
// Throws ConfigError if R < l0 or tol <= 0, EvaluationError on non-finite V.
std::pair<double, double> locate_infimum(const Potential& potential,
                                         double search_radius, double tol);

// (q*, V*) using the analytic hint when present, locate_infimum otherwise.
std::pair<double, double> potential_infimum(const Potential& potential);

// Max of (eta*|q|^alpha - V(q)) / max(1, eta*|q|^alpha) over a log-spaced
// sample of [l0, l0*10^3] (both signs). Nonpositive means the certificate
// held on the sample.
double growth_certificate_violation(const Potential& potential,
                                    int samples_per_side = 256);

// Max over the grid of |grad - central difference| / max(1, |grad|) at the
// given step.
double gradient_max_rel_error(const Potential& potential,
                              std::span<const double> grid,
                              double step = 1e-5);

}  // namespace langevin
