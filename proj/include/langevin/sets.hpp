#pragma once

#include <Eigen/Dense>
#include <string>

namespace langevin {

// Measurable target sets shared by the rate-infimum and Monte Carlo hit
// counting paths. All radii are Euclidean in the (p,q) plane, centered at
// the origin except for boxes.
struct SetDescriptor {
  enum class Kind { box, annulus, ball_complement };

  Kind kind = Kind::ball_complement;
  // box: [p_lo, p_hi] x [q_lo, q_hi]
  double p_lo = 0.0, p_hi = 0.0, q_lo = 0.0, q_hi = 0.0;
  // annulus: r_inner <= |(p,q)| <= r_outer; ball_complement: |(p,q)| >= radius
  double r_inner = 0.0, r_outer = 0.0;
  double radius = 0.0;

  static SetDescriptor box(double p_lo, double p_hi, double q_lo, double q_hi);
  static SetDescriptor annulus(double r_inner, double r_outer);
  static SetDescriptor ball_complement(double radius);

  bool contains(double p, double q) const;
  bool contains(const Eigen::Vector2d& x) const { return contains(x(0), x(1)); }
  bool contains_origin() const { return contains(0.0, 0.0); }

  // DomainError when malformed (inverted box, r_inner > r_outer, radius < 0).
  void validate() const;

  // "box:p_lo:p_hi:q_lo:q_hi" | "annulus:r_in:r_out" | "ball-complement:r"
  static SetDescriptor parse(const std::string& text);
  std::string to_string() const;
};

}  // namespace langevin
