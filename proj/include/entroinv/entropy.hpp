#pragma once

#include "entroinv/box_domain.hpp"
#include "entroinv/types.hpp"

// Box-constrained Fermi-Dirac entropy
//
//   Psi(xi) = sum_j [ (xi_j-a_j)/D_j ln((xi_j-a_j)/D_j)
//                   + (b_j-xi_j)/D_j ln((b_j-xi_j)/D_j) ],
//
// its convex conjugate, the log-partition
//
//   M(tau) = sum_j ln(e^{a_j tau_j} + e^{b_j tau_j}),
//
// and the mutually inverse gradient pair between R^N and the open box.
namespace entroinv {

// M(tau); each term evaluated as max(a t, b t) + ln(1 + e^{-D |t|}).
double log_partition(const RefConstVec& tau, const BoxDomain& box);

// exp(M(tau)); diagnostics only, overflows once M exceeds ~709.
double partition_value(const RefConstVec& tau, const BoxDomain& box);

// Psi(xi) on the margin-interior box.  Range [N ln(1/2), 0).
double fermi_dirac_entropy(const RefConstVec& xi, const BoxDomain& box);

// Psi extended to the closed box with the x ln x -> 0 limit at the bounds.
double fermi_dirac_entropy_limit(const RefConstVec& xi, const BoxDomain& box);

// grad M: tau -> a + D * logistic(D tau), componentwise, strictly inside the
// box wherever the gap is representable.
Vector box_logistic(const RefConstVec& tau, const BoxDomain& box);

// Alias of box_logistic: the gradient of the log-partition.
Vector log_partition_gradient(const RefConstVec& tau, const BoxDomain& box);

// grad Psi: xi -> (1/D) ln((xi-a)/(b-xi)), componentwise.  Inverse of
// box_logistic on the open box.
Vector box_logit(const RefConstVec& xi, const BoxDomain& box);

// Diagonal of Hess M: h_j(tau) = (D_j / (e^{d_j tau_j} + e^{-d_j tau_j}))^2
//                              = D_j^2 sigma(D_j tau_j)(1 - sigma(D_j tau_j)) > 0.
Vector log_partition_hessian(const RefConstVec& tau, const BoxDomain& box);

// Diagonal of Hess Psi: g_j(xi) = 1 / ((xi_j - a_j)(b_j - xi_j)) > 0.
Vector entropy_hessian(const RefConstVec& xi, const BoxDomain& box);

// g evaluated at box_logistic(tau) without materialising the point:
//   g_j = exp(softplus(D tau) + softplus(-D tau) - 2 ln D).
// Exact reciprocal of log_partition_hessian in exact arithmetic; stays finite
// where the image point is no longer representable away from the bounds
// (|D_j tau_j| beyond ~36).
Vector entropy_hessian_dual(const RefConstVec& tau, const BoxDomain& box);

// Bregman divergence of Psi:
//   sum_j [ (xi-a)/D ln((xi-a)/(eta-a)) + (b-xi)/D ln((b-xi)/(b-eta)) ].
// Nonnegative, zero iff xi == eta.
double bregman_divergence(const RefConstVec& xi, const RefConstVec& eta, const BoxDomain& box);

}  // namespace entroinv
