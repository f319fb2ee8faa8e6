#include "langevin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "langevin/errors.hpp"

namespace langevin {

namespace {

struct Worst {
  double err = 0.0;    // worst unresolved panel error
  double total = 0.0;  // running integral magnitude for the error report
};

double simpson(double fa, double fc, double fb, double width) {
  return (fa + 4.0 * fc + fb) * width / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fc, double fb, double whole, double tol,
             int depth, const QuadratureOptions& opts, Worst& worst) {
  const double c = 0.5 * (a + b);
  const double l = 0.5 * (a + c), r = 0.5 * (c + b);
  const double fl = f(l), fr = f(r);
  if (!std::isfinite(fl) || !std::isfinite(fr)) {
    throw EvaluationError("integrate: non-finite integrand value");
  }
  const double sl = simpson(fa, fl, fc, c - a);
  const double sr = simpson(fc, fr, fb, b - c);
  const double err = (sl + sr - whole) / 15.0;
  if (depth >= opts.min_depth &&
      (std::abs(err) <= tol || depth >= opts.max_depth)) {
    if (std::abs(err) > tol) worst.err = std::max(worst.err, std::abs(err));
    return sl + sr + err;
  }
  return adapt(f, a, c, fa, fl, fc, sl, 0.5 * tol, depth + 1, opts, worst) +
         adapt(f, c, b, fc, fr, fb, sr, 0.5 * tol, depth + 1, opts, worst);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (!(b > a)) throw ConfigError("integrate: need a < b");
  if (!(opts.rel_tol > 0.0)) throw ConfigError("integrate: rel_tol must be > 0");

  const int n = std::max(1, opts.n_panels);
  std::vector<double> xs(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = a + (b - a) * i / n;

  struct Panel {
    double a, b, fa, fc, fb, s;
  };
  std::vector<Panel> panels;
  panels.reserve(n);
  double coarse = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pa = xs[i], pb = xs[i + 1], pc = 0.5 * (pa + pb);
    const double fa = f(pa), fc = f(pc), fb = f(pb);
    if (!std::isfinite(fa) || !std::isfinite(fc) || !std::isfinite(fb)) {
      throw EvaluationError("integrate: non-finite integrand value");
    }
    const double s = simpson(fa, fc, fb, pb - pa);
    panels.push_back({pa, pb, fa, fc, fb, s});
    coarse += s;
  }

  const double scale = std::max(std::abs(coarse), 1e-300);
  const double tol0 = opts.rel_tol * scale / n;

  Worst worst;
  double total = 0.0;
  for (const Panel& p : panels) {
    total += adapt(f, p.a, p.b, p.fa, p.fc, p.fb, p.s, tol0, 0, opts, worst);
  }
  if (worst.err > 0.0) {
    const double achieved =
        worst.err * n / std::max(std::abs(total), 1e-300);
    throw QuadratureError("integrate: max subdivision depth reached before "
                          "the requested tolerance",
                          achieved);
  }
  return total;
}

double log_integrate_exp(const std::function<double(double)>& g, double a,
                         double b, const QuadratureOptions& opts) {
  if (!(b > a)) throw ConfigError("log_integrate_exp: need a < b");
  // Shift by the max of g over a dense sample so exp neither overflows nor
  // flushes the whole integrand to zero.
  constexpr int kProbe = 512;
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kProbe; ++i) {
    const double x = a + (b - a) * i / kProbe;
    const double gx = g(x);
    if (!std::isfinite(gx) && gx > 0) {
      throw EvaluationError("log_integrate_exp: non-finite exponent");
    }
    m = std::max(m, gx);
  }
  if (!std::isfinite(m)) {
    throw EvaluationError("log_integrate_exp: exponent is -inf everywhere");
  }
  const double shift = m;
  const double value = integrate(
      [&](double x) { return std::exp(g(x) - shift); }, a, b, opts);
  if (!(value > 0.0)) {
    throw EvaluationError("log_integrate_exp: shifted integral vanished");
  }
  return shift + std::log(value);
}

}  // namespace langevin
