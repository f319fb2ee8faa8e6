#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace langevin {

// n points from lo to hi, geometrically spaced, ascending.
std::vector<double> geometric_grid(double lo, double hi, int n);

// Richardson extrapolation of v(x) to x = 0 assuming v = L + c*x + O(x^2),
// using the two smallest x in the grid. With a single point, returns it.
double extrapolate_to_zero(std::span<const double> x, std::span<const double> v);

// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

// Log-log regression slope of residual r against grid variable x, restricted
// to the smaller-x half of the grid (asymptotic regime). Residuals below
// `floor` are treated as exactly converged: if all points are below the
// floor, or fewer than two usable points remain, returns +infinity.
double order_estimate(std::span<const double> x, std::span<const double> r,
                      double floor = 1e-14);

// Golden-section minimization of a unimodal f on [a,b]; returns (x, f(x)).
std::pair<double, double> golden_section(const std::function<double(double)>& f,
                                         double a, double b, double tol);

}  // namespace langevin
