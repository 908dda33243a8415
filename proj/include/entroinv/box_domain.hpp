#pragma once

#include "entroinv/errors.hpp"
#include "entroinv/types.hpp"

namespace entroinv {

// Open box Omega = prod_j (a_j, b_j) with finite bounds a_j < b_j.
//
// Per-coordinate derived quantities are precomputed: width D = b - a,
// midpoint m = (a + b)/2, half-width d = D/2.  Interior checks use the
// relative margin `margin_rel`: a point passes when min(x - a, b - x) >
// margin_rel * D componentwise.  The default 1e-12 suits data at unit scale;
// suites probing deeply saturated duals construct boxes with a smaller margin.
class BoxDomain {
 public:
  BoxDomain(Vector lower, Vector upper, double margin_rel = 1e-12);

  // [0,1]^n.
  static BoxDomain unit(Index n, double margin_rel = 1e-12);

  Index size() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Vector& width() const { return width_; }
  const Vector& midpoint() const { return midpoint_; }
  const Vector& half_width() const { return half_width_; }
  double margin_rel() const { return margin_rel_; }

  bool is_interior(const RefConstVec& x) const;
  bool contains_closed(const RefConstVec& x) const;

  // Throw InvalidInput / DomainViolation with `what` and the offending
  // coordinate in the message.
  void require_size(const RefConstVec& x, const char* what) const;
  void require_interior(const RefConstVec& x, const char* what) const;

 private:
  Vector lower_, upper_, width_, midpoint_, half_width_;
  double margin_rel_;
};

}  // namespace entroinv
