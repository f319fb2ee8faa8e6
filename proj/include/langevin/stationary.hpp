#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "langevin/schemes.hpp"

namespace langevin {

// Covariance of the scheme's Gaussian invariant measure N(0, sigma), i.e.
// the fixed point of sigma = A sigma A^T + eps h b b^T.
struct StationaryCovariance {
  Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
  // Unscaled components: sigma = prefactor * [[s11, s12],[s12, s22]] with
  // prefactor = eps h / (lambda2 - lambda1)^2. The prefactor and the
  // components are individually real for real A (conjugate eigenvalue pairs
  // produce conjugate terms); both flip sign together when the discriminant
  // is negative, keeping sigma PSD.
  double s11 = 0.0, s22 = 0.0, s12 = 0.0;
  double prefactor = 0.0;
  double nu = 0.0, eps = 0.0, h = 0.0;
  std::string scheme_name;
  double lyapunov_residual = 0.0;  // relative Frobenius residual
  // Set when lambda1 ~= lambda2 (nu = 2 regime): sigma is still a valid
  // covariance but the component decomposition and the closed-form rate
  // theory behind it do not apply.
  bool degenerate_spectrum = false;
};

// Closed-form stationary covariance via the eigenvalue decomposition of A:
// three-term sums with denominators 1-lambda1^2, 1-lambda2^2, 1-lambda1*lambda2,
// evaluated in complex arithmetic; imaginary parts are asserted to be below
// 1e-10 of scale and discarded. StabilityError if unstable at h,
// DegenerateSpectrumError when the eigenvalues coincide (use lyapunov_sigma).
StationaryCovariance closed_form_sigma(const LinearScheme& scheme, double eps,
                                       double h);

// Independent route: solves sigma = A sigma A^T + eps h b b^T as a linear
// 3x3 system in (s11, s12, s22) (one iterative-refinement step), falling
// back to fixed-point iteration when the system's condition number exceeds
// 1e12. StabilityError if unstable; ConvergenceError (with the achieved
// residual) if the fallback fails to reach 1e-14 in 1e6 iterations.
StationaryCovariance lyapunov_sigma(const LinearScheme& scheme, double eps,
                                    double h);

struct SigmaAsymptotics {
  std::vector<double> h;
  std::vector<double> ratio11, ratio22, ratio12;  // s11/h, s22/h, s12/h
  double limit11 = 0.0, limit22 = 0.0, limit12 = 0.0;  // h->0 extrapolations
  double target_diag = 0.0;  // (nu^2-4)/(2 nu); ratio12 target is 0
};

// Ratio curves of the unscaled components against h with Richardson
// extrapolations. Requires nu != 2.
SigmaAsymptotics sigma_asymptotics(const LinearScheme& scheme,
                                   std::span<const double> h_grid);

}  // namespace langevin
