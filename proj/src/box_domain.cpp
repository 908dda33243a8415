#include "entroinv/box_domain.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace entroinv {

BoxDomain::BoxDomain(Vector lower, Vector upper, double margin_rel)
    : lower_(std::move(lower)), upper_(std::move(upper)), margin_rel_(margin_rel) {
  if (lower_.size() == 0) throw InvalidInput("BoxDomain: empty bounds");
  if (lower_.size() != upper_.size())
    throw InvalidInput("BoxDomain: lower has " + std::to_string(lower_.size()) +
                       " entries, upper has " + std::to_string(upper_.size()));
  if (!lower_.allFinite() || !upper_.allFinite())
    throw InvalidInput("BoxDomain: bounds must be finite");
  if (!(margin_rel_ >= 0.0) || margin_rel_ >= 0.5)
    throw InvalidInput("BoxDomain: margin_rel must lie in [0, 0.5)");
  for (Index j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] < upper_[j]))
      throw InvalidInput("BoxDomain: need lower < upper, got [" + std::to_string(lower_[j]) +
                         ", " + std::to_string(upper_[j]) + "] at coordinate " +
                         std::to_string(j));
  }
  width_ = upper_ - lower_;
  half_width_ = 0.5 * width_;
  midpoint_ = lower_ + half_width_;
}

BoxDomain BoxDomain::unit(Index n, double margin_rel) {
  return BoxDomain(Vector::Zero(n), Vector::Ones(n), margin_rel);
}

bool BoxDomain::is_interior(const RefConstVec& x) const {
  if (x.size() != size()) return false;
  for (Index j = 0; j < size(); ++j) {
    const double eps = margin_rel_ * width_[j];
    if (!(x[j] - lower_[j] > eps) || !(upper_[j] - x[j] > eps)) return false;
  }
  return true;
}

bool BoxDomain::contains_closed(const RefConstVec& x) const {
  if (x.size() != size()) return false;
  for (Index j = 0; j < size(); ++j)
    if (!(x[j] >= lower_[j]) || !(x[j] <= upper_[j])) return false;
  return true;
}

void BoxDomain::require_size(const RefConstVec& x, const char* what) const {
  if (x.size() != size())
    throw InvalidInput(std::string(what) + ": expected " + std::to_string(size()) +
                       " coordinates, got " + std::to_string(x.size()));
  if (!x.allFinite()) throw InvalidInput(std::string(what) + ": non-finite coordinate");
}

void BoxDomain::require_interior(const RefConstVec& x, const char* what) const {
  require_size(x, what);
  for (Index j = 0; j < size(); ++j) {
    const double eps = margin_rel_ * width_[j];
    if (!(x[j] - lower_[j] > eps) || !(upper_[j] - x[j] > eps))
      throw DomainViolation(std::string(what) + ": coordinate " + std::to_string(j) + " = " +
                            std::to_string(x[j]) + " is not interior to (" +
                            std::to_string(lower_[j]) + ", " + std::to_string(upper_[j]) +
                            ") at margin " + std::to_string(eps));
  }
}

}  // namespace entroinv
