#pragma once

#include <cmath>

// Per-coordinate kernels shared by the entropy and geometry modules.  All are
// overflow-free on the full double range and templated on the scalar so test
// oracles can instantiate them in extended precision.
namespace entroinv::kernels {

// logistic(x) = 1 / (1 + e^{-x}).
template <typename Scalar>
Scalar logistic(Scalar x) {
  if (x >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-x));
  const Scalar e = std::exp(x);
  return e / (Scalar(1) + e);
}

// softplus(x) = ln(1 + e^x).
template <typename Scalar>
Scalar softplus(Scalar x) {
  if (x > Scalar(0)) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// ln(2 cosh x) = |x| + ln(1 + e^{-2|x|}).
template <typename Scalar>
Scalar log_two_cosh(Scalar x) {
  const Scalar ax = std::abs(x);
  return ax + std::log1p(std::exp(Scalar(-2) * ax));
}

}  // namespace entroinv::kernels
