#include "entroinv/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "entroinv/entropy.hpp"

namespace entroinv {

namespace {

constexpr double kPi = std::numbers::pi;

void require_angles(const RefConstVec& w, const BoxDomain& box, const char* what) {
  box.require_size(w, what);
  for (Index j = 0; j < w.size(); ++j)
    if (!(w[j] > 0.0) || !(w[j] < kPi))
      throw DomainViolation(std::string(what) + ": chart coordinate " + std::to_string(j) +
                            " = " + std::to_string(w[j]) + " outside (0, pi)");
}

double angle_of_tau(double d, double t) {
  const double x = d * t;
  // 2 atan(e^x), folded so the exponent never overflows.
  return x <= 0.0 ? 2.0 * std::atan(std::exp(x)) : kPi - 2.0 * std::atan(std::exp(-x));
}

double tau_of_angle(double d, double w) {
  // ln(tan(w/2)) / d, folded about pi/2 so the tangent argument stays small
  // and w near pi keeps full relative accuracy.
  const double half = 0.5 * (w <= 0.5 * kPi ? w : kPi - w);
  const double lt = std::log(std::tan(half));
  return (w <= 0.5 * kPi ? lt : -lt) / d;
}

}  // namespace

Vector tau_angle(const RefConstVec& tau, const BoxDomain& box) {
  box.require_size(tau, "tau_angle");
  Vector w(box.size());
  for (Index j = 0; j < box.size(); ++j) w[j] = angle_of_tau(box.half_width()[j], tau[j]);
  return w;
}

Vector tau_from_angle(const RefConstVec& w, const BoxDomain& box) {
  require_angles(w, box, "tau_from_angle");
  Vector tau(box.size());
  for (Index j = 0; j < box.size(); ++j) tau[j] = tau_of_angle(box.half_width()[j], w[j]);
  return tau;
}

Vector xi_angle(const RefConstVec& xi, const BoxDomain& box) {
  box.require_interior(xi, "xi_angle");
  Vector s(box.size());
  for (Index j = 0; j < box.size(); ++j) {
    const double z =
        ((xi[j] - box.lower()[j]) - (box.upper()[j] - xi[j])) / box.width()[j];
    s[j] = std::asin(std::clamp(z, -1.0, 1.0)) + 0.5 * kPi;
  }
  return s;
}

Vector xi_from_angle(const RefConstVec& s, const BoxDomain& box) {
  require_angles(s, box, "xi_from_angle");
  Vector xi(box.size());
  for (Index j = 0; j < box.size(); ++j)
    xi[j] = box.midpoint()[j] - box.half_width()[j] * std::cos(s[j]);
  return xi;
}

Vector xi_angle_at_dual(const RefConstVec& tau, const BoxDomain& box) {
  box.require_size(tau, "xi_angle_at_dual");
  Vector s(box.size());
  for (Index j = 0; j < box.size(); ++j) {
    const double x = box.half_width()[j] * tau[j];
    if (std::abs(x) <= 350.0) {
      s[j] = 0.5 * kPi + std::atan(std::sinh(x));
    } else {
      // atan(sinh x) = sign(x) (pi/2 - atan(1/sinh x)); 1/sinh ~ 2 e^{-|x|}.
      const double tail = 2.0 * std::exp(-std::abs(x));
      s[j] = x > 0.0 ? kPi - tail : tail;
    }
  }
  return s;
}

double tau_distance(const RefConstVec& tau0, const RefConstVec& tau1, const BoxDomain& box) {
  return (tau_angle(tau1, box) - tau_angle(tau0, box)).norm();
}

double xi_distance(const RefConstVec& xi0, const RefConstVec& xi1, const BoxDomain& box) {
  return (xi_angle(xi1, box) - xi_angle(xi0, box)).norm();
}

GeodesicPath::GeodesicPath(GeodesicSpace space, BoxDomain box, Vector start, Vector end, Vector w0,
                           Vector w1)
    : space_(space),
      box_(std::move(box)),
      start_(std::move(start)),
      end_(std::move(end)),
      w0_(std::move(w0)),
      w1_(std::move(w1)) {}

GeodesicPath GeodesicPath::between_tau(const RefConstVec& tau0, const RefConstVec& tau1,
                                       const BoxDomain& box) {
  Vector w0 = tau_angle(tau0, box);
  Vector w1 = tau_angle(tau1, box);
  return GeodesicPath(GeodesicSpace::Tau, box, tau0, tau1, std::move(w0), std::move(w1));
}

GeodesicPath GeodesicPath::between_xi(const RefConstVec& xi0, const RefConstVec& xi1,
                                      const BoxDomain& box) {
  Vector w0 = xi_angle(xi0, box);
  Vector w1 = xi_angle(xi1, box);
  return GeodesicPath(GeodesicSpace::Xi, box, xi0, xi1, std::move(w0), std::move(w1));
}

GeodesicPath GeodesicPath::between_multipliers(const RefConstVec& lambda0,
                                               const RefConstVec& lambda1, const Matrix& A,
                                               const BoxDomain& box) {
  if (A.rows() < 1 || A.cols() != box.size())
    throw InvalidInput("between_multipliers: operator is " + std::to_string(A.rows()) + "x" +
                       std::to_string(A.cols()) + ", box has " + std::to_string(box.size()) +
                       " coordinates");
  if (lambda0.size() != A.rows() || lambda1.size() != A.rows())
    throw InvalidInput("between_multipliers: multiplier size does not match operator rows");
  if (!A.allFinite() || !lambda0.allFinite() || !lambda1.allFinite())
    throw InvalidInput("between_multipliers: non-finite input");
  Matrix At = A.transpose();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(At);
  if (cod.rank() < A.rows())
    throw RankDeficientError("between_multipliers: operator has row rank " +
                             std::to_string(cod.rank()) + " < " + std::to_string(A.rows()));
  Vector w0 = tau_angle(At * lambda0, box);
  Vector w1 = tau_angle(At * lambda1, box);
  GeodesicPath path(GeodesicSpace::Multiplier, box, lambda0, lambda1, std::move(w0),
                    std::move(w1));
  path.At_ = std::move(At);
  path.At_cod_ = std::move(cod);
  return path;
}

GeodesicPath GeodesicPath::on_surface(const RefConstVec& xi0, const RefConstVec& xi1,
                                      const Matrix& A, const BoxDomain& box, double surface_tol) {
  if (A.rows() < 1 || A.cols() != box.size())
    throw InvalidInput("on_surface: operator is " + std::to_string(A.rows()) + "x" +
                       std::to_string(A.cols()) + ", box has " + std::to_string(box.size()) +
                       " coordinates");
  if (!A.allFinite()) throw InvalidInput("on_surface: non-finite operator");
  Matrix At = A.transpose();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(At);
  for (const auto* endpoint : {&xi0, &xi1}) {
    const Vector chi = box_logit(*endpoint, box);
    const double res = (At * cod.solve(chi) - chi).norm();
    if (res > surface_tol * (1.0 + chi.norm()))
      throw NotOnSurface("on_surface: endpoint dual image is " + std::to_string(res) +
                         " away from range(A^T), tolerance " +
                         std::to_string(surface_tol * (1.0 + chi.norm())));
  }
  Vector w0 = xi_angle(xi0, box);
  Vector w1 = xi_angle(xi1, box);
  GeodesicPath path(GeodesicSpace::Surface, box, xi0, xi1, std::move(w0), std::move(w1));
  path.At_ = std::move(At);
  path.At_cod_ = std::move(cod);
  return path;
}

Vector GeodesicPath::chart_point(double t) const {
  if (!std::isfinite(t)) throw InvalidInput("GeodesicPath: non-finite parameter");
  return w0_ + t * (w1_ - w0_);
}

Vector GeodesicPath::evaluate(double t) const {
  const Vector w = chart_point(t);
  switch (space_) {
    case GeodesicSpace::Tau:
      return tau_from_angle(w, box_);
    case GeodesicSpace::Xi:
    case GeodesicSpace::Surface:
      return xi_from_angle(w, box_);
    case GeodesicSpace::Multiplier:
      return At_cod_.solve(tau_from_angle(w, box_));
  }
  throw Error("GeodesicPath: unreachable");
}

double GeodesicPath::range_residual(double t) const {
  switch (space_) {
    case GeodesicSpace::Tau:
    case GeodesicSpace::Xi:
      return 0.0;
    case GeodesicSpace::Multiplier: {
      const Vector tau = tau_from_angle(chart_point(t), box_);
      return (At_ * At_cod_.solve(tau) - tau).norm();
    }
    case GeodesicSpace::Surface: {
      const Vector chi = box_logit(evaluate(t), box_);
      return (At_ * At_cod_.solve(chi) - chi).norm();
    }
  }
  throw Error("GeodesicPath: unreachable");
}

double GeodesicPath::chart_affinity_deviation(int grid_points) const {
  if (grid_points < 2) throw InvalidInput("chart_affinity_deviation: need at least 2 grid points");
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / (grid_points - 1);
    const Vector point = evaluate(t);
    Vector w;
    switch (space_) {
      case GeodesicSpace::Tau:
        w = tau_angle(point, box_);
        break;
      case GeodesicSpace::Xi:
      case GeodesicSpace::Surface:
        w = xi_angle(point, box_);
        break;
      case GeodesicSpace::Multiplier:
        w = tau_angle(At_ * point, box_);
        break;
    }
    worst = std::max(worst, (w - chart_point(t)).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

Vector tau_exp_map(const RefConstVec& tau, const RefConstVec& X, const BoxDomain& box) {
  box.require_size(tau, "tau_exp_map (base point)");
  box.require_size(X, "tau_exp_map (tangent)");
  const Vector w = tau_angle(tau, box) + X;
  for (Index j = 0; j < w.size(); ++j)
    if (!(w[j] > 0.0) || !(w[j] < kPi))
      throw TangentOutOfRange("tau_exp_map: tangent reaches chart coordinate " +
                              std::to_string(w[j]) + " at " + std::to_string(j) +
                              ", outside (0, pi)");
  return tau_from_angle(w, box);
}

double transport_deviation(const RefConstVec& tau0, const RefConstVec& tau1, const BoxDomain& box,
                           int grid_points) {
  if (grid_points < 2) throw InvalidInput("transport_deviation: need at least 2 grid points");
  const GeodesicPath dual = GeodesicPath::between_tau(tau0, tau1, box);
  const GeodesicPath primal =
      GeodesicPath::between_xi(box_logistic(tau0, box), box_logistic(tau1, box), box);
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / (grid_points - 1);
    const Vector via_tau = box_logistic(dual.evaluate(t), box);
    worst = std::max(worst, (primal.evaluate(t) - via_tau).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

Matrix induced_metric(const RefConstVec& lambda, const Matrix& A, const BoxDomain& box) {
  if (A.cols() != box.size())
    throw InvalidInput("induced_metric: operator has " + std::to_string(A.cols()) +
                       " columns, box has " + std::to_string(box.size()));
  if (lambda.size() != A.rows())
    throw InvalidInput("induced_metric: multiplier size does not match operator rows");
  if (!A.allFinite() || !lambda.allFinite()) throw InvalidInput("induced_metric: non-finite input");
  const Vector h = log_partition_hessian(A.transpose() * lambda, box);
  Matrix G = A * h.asDiagonal() * A.transpose();
  // Assembled from products; symmetrise away the rounding skew.
  return 0.5 * (G + G.transpose());
}

double orthogonality_defect(const Matrix& A, const BoxDomain& box,
                            const std::vector<CurveSample>& samples) {
  if (A.cols() != box.size())
    throw InvalidInput("orthogonality_defect: operator has " + std::to_string(A.cols()) +
                       " columns, box has " + std::to_string(box.size()));
  if (!A.allFinite()) throw InvalidInput("orthogonality_defect: non-finite operator");
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  const double tol =
      static_cast<double>(std::max(A.rows(), A.cols())) * std::numeric_limits<double>::epsilon() * smax;
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  if (rank == A.cols()) return 0.0;  // trivial kernel
  const Matrix kernel = svd.matrixV().rightCols(A.cols() - rank);

  double worst = 0.0;
  for (const CurveSample& sample : samples) {
    if (sample.lambda.size() != A.rows() || sample.velocity.size() != A.rows())
      throw InvalidInput("orthogonality_defect: sample size does not match operator rows");
    const Vector tau = A.transpose() * sample.lambda;
    const Vector h = log_partition_hessian(tau, box);
    const Vector g = entropy_hessian(box_logistic(tau, box), box);
    const Vector dxi = h.cwiseProduct(A.transpose() * sample.velocity);
    const Vector inner = kernel.transpose() * g.cwiseProduct(dxi).matrix();
    worst = std::max(worst, inner.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

UpperBoundCheck logit_upper_bound(const RefConstVec& xi, const RefConstVec& eta,
                                  const BoxDomain& box) {
  box.require_interior(xi, "logit_upper_bound (first argument)");
  box.require_interior(eta, "logit_upper_bound (second argument)");
  double sq = 0.0;
  for (Index j = 0; j < box.size(); ++j) {
    const double a = box.lower()[j], b = box.upper()[j];
    const double diff =
        std::log((eta[j] - a) / (b - eta[j])) - std::log((xi[j] - a) / (b - xi[j]));
    sq += diff * diff;
  }
  UpperBoundCheck check;
  check.bound = std::sqrt(sq);
  check.distance = xi_distance(xi, eta, box);
  check.holds = check.distance <= check.bound * (1.0 + 1e-12) + 1e-12;
  return check;
}

LowerBoundCheck lower_bound_check(const RefConstVec& xi, const RefConstVec& eta,
                                  const BoxDomain& box, LowerBoundKind kind) {
  box.require_interior(xi, "lower_bound_check (first argument)");
  box.require_interior(eta, "lower_bound_check (second argument)");
  LowerBoundCheck check;
  check.kind = kind;
  check.distance = xi_distance(xi, eta, box);
  const double slack = 1e-12;
  if (kind == LowerBoundKind::Euclidean) {
    double lit = 0.0, corr = 0.0;
    for (Index j = 0; j < box.size(); ++j) {
      const double diff = eta[j] - xi[j];
      const double scaled = 2.0 / box.width()[j] * diff;
      lit += diff * diff;
      corr += scaled * scaled;
    }
    check.literal_bound = std::sqrt(lit);
    check.corrected_bound = std::sqrt(corr);
    check.literal_holds = check.distance >= check.literal_bound * (1.0 - 1e-12) - slack;
    check.corrected_holds = check.distance >= check.corrected_bound * (1.0 - 1e-12) - slack;
  } else {
    double lit = 0.0;
    for (Index j = 0; j < box.size(); ++j) {
      const double zx = (2.0 * (xi[j] - box.midpoint()[j])) / box.width()[j];
      const double ze = (2.0 * (eta[j] - box.midpoint()[j])) / box.width()[j];
      const double diff = std::sinh(ze) - std::sinh(zx);
      lit += 2.0 / box.width()[j] * diff * diff;
    }
    check.literal_bound = std::sqrt(lit);
    check.corrected_bound = std::numeric_limits<double>::quiet_NaN();
    check.literal_holds = check.distance >= check.literal_bound * (1.0 - 1e-12) - slack;
    check.corrected_holds = false;
  }
  return check;
}

}  // namespace entroinv
