#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace langevin {

// One-step method (P,Q)_{n+1} = A(h) (P,Q)_n + sqrt(eps) b(h) dW_n for the
// linear Langevin equation. Coefficients depend on nu and h only, never on
// eps. Immutable; all operations are pure.
class LinearScheme {
 public:
  using CoeffA = std::function<Eigen::Matrix2d(double)>;
  using CoeffB = std::function<Eigen::Vector2d(double)>;

  LinearScheme(std::string name, double nu, CoeffA a_fn, CoeffB b_fn);

  const std::string& name() const { return name_; }
  double nu() const { return nu_; }

  Eigen::Matrix2d A(double h) const;  // ConfigError if h <= 0; checks finiteness
  Eigen::Vector2d b(double h) const;

 private:
  std::string name_;
  double nu_;
  CoeffA a_fn_;
  CoeffB b_fn_;
};

// Explicit Euler-Maruyama: A = [[1-nu h, -h],[h, 1]], b = (1, 0).
LinearScheme euler_maruyama(double nu);

// Stochastic theta-method, theta in [0,1]. With D = theta(theta h^2 + nu h):
//   A = [[1-(theta h^2+nu h)(1-theta), -h],[h, 1-theta(1-theta)h^2+nu theta h]] / (1+D)
//   b = (1, theta h) / (1+D)
// theta = 0 coincides with Euler-Maruyama; theta = 1/2 is the midpoint scheme.
LinearScheme theta_method(double theta, double nu);

// Custom scheme given as a coefficient table; h must match a tabulated entry
// to relative 1e-12 (no interpolation).
struct SchemeTableEntry {
  double h;
  Eigen::Matrix2d A;
  Eigen::Vector2d b;
};
LinearScheme tabulated_scheme(std::string name, double nu,
                              std::vector<SchemeTableEntry> table);

struct StabilityReport {
  double h = 0.0;
  double tr = 0.0;
  double det = 0.0;
  std::complex<double> lambda1;  // (tr + sqrt(disc))/2
  std::complex<double> lambda2;  // (tr - sqrt(disc))/2
  double spectral_radius = 0.0;
  bool stable = false;           // |tr| < 1 + det  and  1 + det < 2
  double discriminant = 0.0;     // tr^2 - 4 det
};

// Trace, determinant, both eigenvalues (complex quadratic formula) and the
// root-location stability verdict. The discriminant is evaluated through
// (tr-2)^2 - 4(1+det-tr) with 1+det-tr = (1-a11)(1-a22) - a12 a21, which
// avoids the O(1) cancellation of tr^2 - 4 det at small h.
StabilityReport stability(const LinearScheme& scheme, double h);

struct Assumption2Orders {
  double order_a = 0.0;  // slope of |a11-1+nu h|+|a12+h|+|a21-h|+|a22-1| vs h
  double order_b = 0.0;  // slope of |b1-1|+|b2| vs h
  bool satisfied = false;  // order_a >= 2-0.1 and order_b >= 1-0.1
};

// Log-log regression of the residuals over the smaller-h half of the grid;
// residuals below 1e-14 everywhere give order +infinity (exact).
// ConfigError unless the grid spans >= 2 decades with every h < 1.
Assumption2Orders assumption2_orders(const LinearScheme& scheme,
                                     std::span<const double> h_grid);

// sup over the grid of |disc(h) - (nu^2-4) h^2| / h^3; bounded as h -> 0
// confirms the second-order discriminant expansion.
double discriminant_expansion_check(const LinearScheme& scheme,
                                    std::span<const double> h_grid);

// Random search for an unstable (h, nu) of the theta-method, h in (0,10],
// nu in (2,1e3]. Empty when all trials were stable (expected for
// theta >= 1/2).
std::optional<std::pair<double, double>> find_unstable_witness(
    double theta, int max_trials, std::uint64_t seed);

}  // namespace langevin
