#include "langevin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "langevin/errors.hpp"

namespace langevin {

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw ConfigError("geometric_grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> g(n);
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(ratio * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> v) {
  if (x.size() != v.size() || x.empty()) {
    throw ConfigError("extrapolate_to_zero: mismatched or empty grids");
  }
  if (x.size() == 1) return v[0];
  // indices of the two smallest x
  std::size_t ia = 0, ib = 1;
  if (x[ib] < x[ia]) std::swap(ia, ib);
  for (std::size_t i = 2; i < x.size(); ++i) {
    if (x[i] < x[ia]) {
      ib = ia;
      ia = i;
    } else if (x[i] < x[ib]) {
      ib = i;
    }
  }
  const double xa = x[ia], xb = x[ib];
  return (v[ia] * xb - v[ib] * xa) / (xb - xa);
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("ls_slope: need at least two points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("ls_slope: degenerate abscissae");
  return sxy / sxx;
}

double order_estimate(std::span<const double> x, std::span<const double> r,
                      double floor) {
  if (x.size() != r.size() || x.empty()) {
    throw ConfigError("order_estimate: mismatched or empty grids");
  }
  bool all_converged = true;
  for (double ri : r) {
    if (std::abs(ri) >= floor) all_converged = false;
  }
  if (all_converged) return std::numeric_limits<double>::infinity();

  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  const std::size_t half = std::max<std::size_t>(2, idx.size() / 2);

  std::vector<double> lx, lr;
  for (std::size_t k = 0; k < half && k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    if (std::abs(r[i]) < floor) continue;  // exactly converged point
    lx.push_back(std::log(x[i]));
    lr.push_back(std::log(std::abs(r[i])));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::infinity();
  return ls_slope(lx, lr);
}

std::pair<double, double> golden_section(const std::function<double(double)>& f,
                                         double a, double b, double tol) {
  if (!(b > a) || !(tol > 0.0)) {
    throw ConfigError("golden_section: need a < b and tol > 0");
  }
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace langevin
