#include "langevin/sets.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "langevin/errors.hpp"

namespace langevin {

SetDescriptor SetDescriptor::box(double p_lo, double p_hi, double q_lo,
                                 double q_hi) {
  SetDescriptor s;
  s.kind = Kind::box;
  s.p_lo = p_lo;
  s.p_hi = p_hi;
  s.q_lo = q_lo;
  s.q_hi = q_hi;
  s.validate();
  return s;
}

SetDescriptor SetDescriptor::annulus(double r_inner, double r_outer) {
  SetDescriptor s;
  s.kind = Kind::annulus;
  s.r_inner = r_inner;
  s.r_outer = r_outer;
  s.validate();
  return s;
}

SetDescriptor SetDescriptor::ball_complement(double radius) {
  SetDescriptor s;
  s.kind = Kind::ball_complement;
  s.radius = radius;
  s.validate();
  return s;
}

bool SetDescriptor::contains(double p, double q) const {
  switch (kind) {
    case Kind::box:
      return p >= p_lo && p <= p_hi && q >= q_lo && q <= q_hi;
    case Kind::annulus: {
      const double r2 = p * p + q * q;
      return r2 >= r_inner * r_inner && r2 <= r_outer * r_outer;
    }
    case Kind::ball_complement:
      return p * p + q * q >= radius * radius;
  }
  return false;
}

void SetDescriptor::validate() const {
  switch (kind) {
    case Kind::box:
      if (!(p_lo <= p_hi) || !(q_lo <= q_hi)) {
        throw DomainError("set: empty box (lo > hi)");
      }
      if (!std::isfinite(p_lo) || !std::isfinite(p_hi) ||
          !std::isfinite(q_lo) || !std::isfinite(q_hi)) {
        throw DomainError("set: box bounds must be finite");
      }
      return;
    case Kind::annulus:
      if (!(r_inner >= 0.0) || !(r_outer >= r_inner)) {
        throw DomainError("set: annulus needs 0 <= r_inner <= r_outer");
      }
      if (!std::isfinite(r_outer)) {
        throw DomainError("set: annulus radii must be finite");
      }
      return;
    case Kind::ball_complement:
      if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw DomainError("set: ball complement needs a finite radius >= 0");
      }
      return;
  }
  throw DomainError("set: unknown kind");
}

SetDescriptor SetDescriptor::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  auto num = [&](std::size_t i) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(parts.at(i), &pos);
      if (pos != parts[i].size()) throw std::invalid_argument(parts[i]);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("set: bad number in '" + text + "'");
    }
  };
  if (parts.empty()) throw ConfigError("set: empty descriptor");
  if (parts[0] == "box" && parts.size() == 5) {
    return box(num(1), num(2), num(3), num(4));
  }
  if (parts[0] == "annulus" && parts.size() == 3) {
    return annulus(num(1), num(2));
  }
  if ((parts[0] == "ball-complement" || parts[0] == "ball_complement") &&
      parts.size() == 2) {
    return ball_complement(num(1));
  }
  throw ConfigError(
      "set: expected 'box:p_lo:p_hi:q_lo:q_hi', 'annulus:r_in:r_out' or "
      "'ball-complement:r', got '" + text + "'");
}

std::string SetDescriptor::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::box:
      os << "box:" << p_lo << ":" << p_hi << ":" << q_lo << ":" << q_hi;
      break;
    case Kind::annulus:
      os << "annulus:" << r_inner << ":" << r_outer;
      break;
    case Kind::ball_complement:
      os << "ball-complement:" << radius;
      break;
  }
  return os.str();
}

}  // namespace langevin
