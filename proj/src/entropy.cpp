#include "entroinv/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "entroinv/scalar_kernels.hpp"

namespace entroinv {

using kernels::log_two_cosh;
using kernels::logistic;
using kernels::softplus;

double log_partition(const RefConstVec& tau, const BoxDomain& box) {
  box.require_size(tau, "log_partition");
  double sum = 0.0;
  for (Index j = 0; j < box.size(); ++j) {
    const double at = box.lower()[j] * tau[j];
    const double bt = box.upper()[j] * tau[j];
    sum += std::max(at, bt) + std::log1p(std::exp(-std::abs(at - bt)));
  }
  return sum;
}

double partition_value(const RefConstVec& tau, const BoxDomain& box) {
  return std::exp(log_partition(tau, box));
}

double fermi_dirac_entropy(const RefConstVec& xi, const BoxDomain& box) {
  box.require_interior(xi, "fermi_dirac_entropy");
  double sum = 0.0;
  for (Index j = 0; j < box.size(); ++j) {
    const double p = (xi[j] - box.lower()[j]) / box.width()[j];
    const double q = (box.upper()[j] - xi[j]) / box.width()[j];
    sum += p * std::log(p) + q * std::log(q);
  }
  return sum;
}

double fermi_dirac_entropy_limit(const RefConstVec& xi, const BoxDomain& box) {
  box.require_size(xi, "fermi_dirac_entropy_limit");
  if (!box.contains_closed(xi))
    throw DomainViolation("fermi_dirac_entropy_limit: point outside the closed box");
  double sum = 0.0;
  for (Index j = 0; j < box.size(); ++j) {
    const double p = (xi[j] - box.lower()[j]) / box.width()[j];
    const double q = (box.upper()[j] - xi[j]) / box.width()[j];
    if (p > 0.0) sum += p * std::log(p);
    if (q > 0.0) sum += q * std::log(q);
  }
  return sum;
}

Vector box_logistic(const RefConstVec& tau, const BoxDomain& box) {
  box.require_size(tau, "box_logistic");
  Vector xi(box.size());
  for (Index j = 0; j < box.size(); ++j)
    xi[j] = box.lower()[j] + box.width()[j] * logistic(box.width()[j] * tau[j]);
  return xi;
}

Vector log_partition_gradient(const RefConstVec& tau, const BoxDomain& box) {
  return box_logistic(tau, box);
}

Vector box_logit(const RefConstVec& xi, const BoxDomain& box) {
  box.require_interior(xi, "box_logit");
  Vector tau(box.size());
  for (Index j = 0; j < box.size(); ++j)
    tau[j] = std::log((xi[j] - box.lower()[j]) / (box.upper()[j] - xi[j])) / box.width()[j];
  return tau;
}

Vector log_partition_hessian(const RefConstVec& tau, const BoxDomain& box) {
  box.require_size(tau, "log_partition_hessian");
  Vector h(box.size());
  for (Index j = 0; j < box.size(); ++j) {
    // (D / (2 cosh(d tau)))^2, in log form so saturated duals underflow cleanly.
    const double s = std::log(box.width()[j]) - log_two_cosh(box.half_width()[j] * tau[j]);
    h[j] = std::exp(2.0 * s);
  }
  return h;
}

Vector entropy_hessian(const RefConstVec& xi, const BoxDomain& box) {
  box.require_interior(xi, "entropy_hessian");
  Vector g(box.size());
  for (Index j = 0; j < box.size(); ++j)
    g[j] = 1.0 / ((xi[j] - box.lower()[j]) * (box.upper()[j] - xi[j]));
  return g;
}

Vector entropy_hessian_dual(const RefConstVec& tau, const BoxDomain& box) {
  box.require_size(tau, "entropy_hessian_dual");
  Vector g(box.size());
  for (Index j = 0; j < box.size(); ++j) {
    const double x = box.width()[j] * tau[j];
    g[j] = std::exp(softplus(x) + softplus(-x) - 2.0 * std::log(box.width()[j]));
  }
  return g;
}

double bregman_divergence(const RefConstVec& xi, const RefConstVec& eta, const BoxDomain& box) {
  box.require_interior(xi, "bregman_divergence (first argument)");
  box.require_interior(eta, "bregman_divergence (second argument)");
  double sum = 0.0;
  for (Index j = 0; j < box.size(); ++j) {
    const double a = box.lower()[j], b = box.upper()[j], D = box.width()[j];
    sum += (xi[j] - a) / D * std::log((xi[j] - a) / (eta[j] - a)) +
           (b - xi[j]) / D * std::log((b - xi[j]) / (b - eta[j]));
  }
  return sum;
}

}  // namespace entroinv
