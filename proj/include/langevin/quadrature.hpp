#pragma once

#include <functional>

namespace langevin {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  int max_depth = 60;
  // The interval is pre-split into n_panels and each panel is bisected at
  // least min_depth times before the error test may stop the recursion.
  // This keeps narrow Laplace peaks from slipping between coarse nodes.
  int n_panels = 64;
  int min_depth = 3;
};

// Adaptive Simpson integration of f over [a,b]. The tolerance is relative to
// a coarse whole-interval estimate. Throws QuadratureError (carrying the
// achieved relative tolerance) if any panel hits max_depth with its error
// estimate still above budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// log of ∫_a^b exp(g(q)) dq. The integrand is shifted by the maximum of g
// over a dense sample grid before integration, so moderate |g| up to ~1e4
// neither overflows nor flushes to zero.
double log_integrate_exp(const std::function<double(double)>& g, double a,
                         double b, const QuadratureOptions& opts = {});

}  // namespace langevin
