#include "langevin/stationary.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "langevin/errors.hpp"
#include "langevin/numerics.hpp"

namespace langevin {

namespace {

using Complex = std::complex<double>;

double lyapunov_residual(const Eigen::Matrix2d& a, const Eigen::Vector2d& b,
                         double eps, double h, const Eigen::Matrix2d& sigma) {
  const Eigen::Matrix2d res =
      a * sigma * a.transpose() + eps * h * b * b.transpose() - sigma;
  return res.norm() / std::max(sigma.norm(), 1e-300);
}

// |lambda1 - lambda2| = sqrt(|disc|) with disc = u^2 - 4w. The rounding noise
// of disc is at the eps_mach * (u^2 + |4w|) level, so an eigenvalue gap below
// a few times sqrt of that is indistinguishable from a repeated root.
bool spectrum_degenerate(double u, double w, double gap) {
  const double noise =
      std::numeric_limits<double>::epsilon() * (u * u + 4.0 * std::abs(w));
  return gap <= 32.0 * std::sqrt(noise) + 1e-300;
}

void require_stable(const LinearScheme& scheme, const StabilityReport& rep) {
  if (!rep.stable) {
    throw StabilityError("scheme '" + scheme.name() + "' is unstable at h = " +
                         std::to_string(rep.h) +
                         " (spectral radius >= 1); no stationary law exists");
  }
}

}  // namespace

StationaryCovariance closed_form_sigma(const LinearScheme& scheme, double eps,
                                       double h) {
  if (!(eps > 0.0)) throw ConfigError("closed_form_sigma: eps must be > 0");
  const StabilityReport rep = stability(scheme, h);
  require_stable(scheme, rep);

  const Eigen::Matrix2d a = scheme.A(h);
  const Eigen::Vector2d bv = scheme.b(h);
  const double a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
  const double b1 = bv(0), b2 = bv(1);

  // Differences that vanish as h -> 0, assembled without O(1) cancellation:
  //   u = tr - 2, w = 1 + det - tr, disc = u^2 - 4w, 1 - det = -u - w.
  const double u = (a11 - 1.0) + (a22 - 1.0);
  const double w = (1.0 - a11) * (1.0 - a22) - a12 * a21;
  const double disc = u * u - 4.0 * w;
  const Complex sq = std::sqrt(Complex(disc, 0.0));
  if (spectrum_degenerate(u, w, std::abs(sq))) {
    throw DegenerateSpectrumError(
        "closed_form_sigma: coincident eigenvalues (nu = 2 regime); "
        "use lyapunov_sigma");
  }

  const double dlt = a11 - a22;  // -(a22 - a11) = -nu h / (1+D) for builtins
  const Complex a11_m_l2 = (dlt + sq) / 2.0;  // a11 - lambda2
  const Complex a11_m_l1 = (dlt - sq) / 2.0;  // a11 - lambda1
  const Complex d1 = (-u - sq) / 2.0 * ((4.0 + u + sq) / 2.0);  // 1 - l1^2
  const Complex d2 = (-u + sq) / 2.0 * ((4.0 + u - sq) / 2.0);  // 1 - l2^2
  const double d3 = -u - w;                                     // 1 - l1 l2

  const Complex t1 = (a12 * b2 + b1 * a11_m_l2) * (a12 * b2 + b1 * a11_m_l2);
  const Complex t2 = (a12 * b2 + b1 * a11_m_l1) * (a12 * b2 + b1 * a11_m_l1);
  const double t3 = 2.0 * a12 * a21 * b1 * b1 - 2.0 * a12 * a12 * b2 * b2 -
                    2.0 * a12 * b1 * b2 * dlt;
  const Complex s11 = t1 / d1 + t2 / d2 + t3 / d3;

  const Complex u1 = (a21 * b1 - b2 * a11_m_l1) * (a21 * b1 - b2 * a11_m_l1);
  const Complex u2 = (a21 * b1 - b2 * a11_m_l2) * (a21 * b1 - b2 * a11_m_l2);
  const double u3 = 2.0 * a12 * a21 * b2 * b2 - 2.0 * a21 * a21 * b1 * b1 +
                    2.0 * a21 * b1 * b2 * dlt;
  const Complex s22 = u1 / d1 + u2 / d2 + u3 / d3;

  const Complex w1 = a21 * a11_m_l2 * b1 * b1 - a12 * a11_m_l1 * b2 * b2 +
                     2.0 * a12 * a21 * b1 * b2;
  const Complex w2 = a21 * a11_m_l1 * b1 * b1 - a12 * a11_m_l2 * b2 * b2 +
                     2.0 * a12 * a21 * b1 * b2;
  const double w3 = -dlt * (a21 * b1 * b1 - a12 * b2 * b2 - b1 * b2 * dlt);
  const Complex s12 = w1 / d1 + w2 / d2 + w3 / d3;

  const double scale = std::max({std::abs(s11), std::abs(s22), std::abs(s12),
                                 1e-300});
  const double imag = std::max({std::abs(s11.imag()), std::abs(s22.imag()),
                                std::abs(s12.imag())});
  if (imag > 1e-10 * scale) {
    throw NumericalError("closed_form_sigma: residual imaginary part " +
                         std::to_string(imag / scale) +
                         " of scale; eigenvalue pairing is inconsistent");
  }

  StationaryCovariance out;
  out.s11 = s11.real();
  out.s22 = s22.real();
  out.s12 = s12.real();
  out.prefactor = eps * h / disc;  // (lambda2 - lambda1)^2 = disc
  out.nu = scheme.nu();
  out.eps = eps;
  out.h = h;
  out.scheme_name = scheme.name();
  out.sigma << out.prefactor * out.s11, out.prefactor * out.s12,
      out.prefactor * out.s12, out.prefactor * out.s22;
  out.lyapunov_residual = lyapunov_residual(a, bv, eps, h, out.sigma);
  return out;
}

StationaryCovariance lyapunov_sigma(const LinearScheme& scheme, double eps,
                                    double h) {
  if (!(eps > 0.0)) throw ConfigError("lyapunov_sigma: eps must be > 0");
  const StabilityReport rep = stability(scheme, h);
  require_stable(scheme, rep);

  const Eigen::Matrix2d a = scheme.A(h);
  const Eigen::Vector2d bv = scheme.b(h);
  const double a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);

  // sigma = A sigma A^T + eps h b b^T as a linear system in (s11, s12, s22);
  // diagonal entries of the system matrix are formed from (1 - a_ii) factors
  // to avoid cancellation at small h.
  Eigen::Matrix3d m;
  m << (1.0 - a11) * (1.0 + a11), -2.0 * a11 * a12, -a12 * a12,
      -a11 * a21, (1.0 - a11) + a11 * (1.0 - a22) - a12 * a21, -a12 * a22,
      -a21 * a21, -2.0 * a21 * a22, (1.0 - a22) * (1.0 + a22);
  const Eigen::Vector3d c =
      eps * h * Eigen::Vector3d(bv(0) * bv(0), bv(0) * bv(1), bv(1) * bv(1));

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  const double cond = svd.singularValues()(0) /
                      std::max(svd.singularValues()(2), 1e-300);

  Eigen::Matrix2d sigma;
  if (cond <= 1e12) {
    Eigen::Vector3d s = m.colPivHouseholderQr().solve(c);
    s += m.colPivHouseholderQr().solve(Eigen::Vector3d(c - m * s));
    sigma << s(0), s(1), s(1), s(2);
  } else {
    // Near the stability boundary the direct solve is untrustworthy; fall
    // back to iterating the covariance recursion itself.
    const Eigen::Matrix2d q = eps * h * bv * bv.transpose();
    sigma = Eigen::Matrix2d::Zero();
    constexpr std::uint64_t kMaxIters = 1000000;
    double delta = std::numeric_limits<double>::infinity();
    for (std::uint64_t it = 0; it < kMaxIters; ++it) {
      const Eigen::Matrix2d next = a * sigma * a.transpose() + q;
      delta = (next - sigma).norm();
      sigma = next;
      if (delta <= 1e-14 * std::max(1.0, sigma.norm())) break;
    }
    if (!(delta <= 1e-14 * std::max(1.0, sigma.norm()))) {
      throw ConvergenceError(
          "lyapunov_sigma: fixed-point iteration did not converge",
          delta / std::max(1.0, sigma.norm()));
    }
  }

  StationaryCovariance out;
  out.sigma = sigma;
  out.nu = scheme.nu();
  out.eps = eps;
  out.h = h;
  out.scheme_name = scheme.name();
  out.lyapunov_residual = lyapunov_residual(a, bv, eps, h, sigma);

  const double diff = std::abs(rep.lambda1 - rep.lambda2);
  const double u = (a11 - 1.0) + (a22 - 1.0);
  const double w = (1.0 - a11) * (1.0 - a22) - a12 * a21;
  if (spectrum_degenerate(u, w, diff)) {
    // nu = 2 regime: sigma is still the stationary covariance but the
    // component/prefactor decomposition of the closed form is undefined.
    out.degenerate_spectrum = true;
    out.prefactor = std::numeric_limits<double>::quiet_NaN();
    out.s11 = out.s22 = out.s12 = std::numeric_limits<double>::quiet_NaN();
  } else {
    out.prefactor = eps * h / rep.discriminant;
    out.s11 = sigma(0, 0) / out.prefactor;
    out.s22 = sigma(1, 1) / out.prefactor;
    out.s12 = sigma(0, 1) / out.prefactor;
  }
  return out;
}

SigmaAsymptotics sigma_asymptotics(const LinearScheme& scheme,
                                   std::span<const double> h_grid) {
  if (h_grid.empty()) throw ConfigError("sigma_asymptotics: empty grid");
  if (scheme.nu() == 2.0) {
    throw DomainError("sigma_asymptotics: nu = 2 is excluded (coincident "
                      "eigenvalues at leading order)");
  }
  SigmaAsymptotics out;
  for (double h : h_grid) {
    const StationaryCovariance sc = closed_form_sigma(scheme, 1.0, h);
    out.h.push_back(h);
    out.ratio11.push_back(sc.s11 / h);
    out.ratio22.push_back(sc.s22 / h);
    out.ratio12.push_back(sc.s12 / h);
  }
  out.limit11 = extrapolate_to_zero(out.h, out.ratio11);
  out.limit22 = extrapolate_to_zero(out.h, out.ratio22);
  out.limit12 = extrapolate_to_zero(out.h, out.ratio12);
  const double nu = scheme.nu();
  out.target_diag = (nu * nu - 4.0) / (2.0 * nu);
  return out;
}

}  // namespace langevin
