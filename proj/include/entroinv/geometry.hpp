#pragma once

#include <Eigen/QR>
#include <vector>

#include "entroinv/box_domain.hpp"
#include "entroinv/errors.hpp"
#include "entroinv/types.hpp"

// Hessian-Riemannian geometry of the entropy pair.  Per coordinate the two
// diagonal metrics are flattened by angular charts with range (0, pi):
//
//   tau side:  v(tau) = 2 atan(e^{d tau}),            v' = sqrt(h),
//   box side:  u(xi)  = asin(2 (xi - m)/D) + pi/2,    u' = sqrt(g),
//
// and u(box_logistic(tau)) = v(tau).  Straight lines in the charts are the
// geodesics; chart Euclidean distance is geodesic distance.
namespace entroinv {

// v(tau), componentwise in (0, pi).
Vector tau_angle(const RefConstVec& tau, const BoxDomain& box);

// v^{-1}(w) = ln(tan(w/2)) / d for w in (0, pi)^N.
Vector tau_from_angle(const RefConstVec& w, const BoxDomain& box);

// u(xi), componentwise in (0, pi); requires a margin-interior point.
Vector xi_angle(const RefConstVec& xi, const BoxDomain& box);

// u^{-1}(s) = m - d cos(s) for s in (0, pi)^N.
Vector xi_from_angle(const RefConstVec& s, const BoxDomain& box);

// u(box_logistic(tau)) evaluated in tau coordinates: pi/2 + atan(sinh(d tau)).
// Equals tau_angle analytically; computed along an independent route and
// stable under dual saturation.
Vector xi_angle_at_dual(const RefConstVec& tau, const BoxDomain& box);

// Geodesic distances: chart Euclidean norms.
double tau_distance(const RefConstVec& tau0, const RefConstVec& tau1, const BoxDomain& box);
double xi_distance(const RefConstVec& xi0, const RefConstVec& xi1, const BoxDomain& box);

enum class GeodesicSpace { Tau, Xi, Multiplier, Surface };

// Closed-form geodesic: affine interpolation in the angular chart.
//
// Multiplier paths interpolate v(A^T lambda) and recover points by minimum-norm
// least squares; the interpolated dual coordinate generally leaves range(A^T),
// which range_residual(t) quantifies.  Surface paths run between solution
// points xi whose box_logit images lie in range(A^T); chart-affine
// interpolation leaves the surface by range_residual(t) as well.
class GeodesicPath {
 public:
  static GeodesicPath between_tau(const RefConstVec& tau0, const RefConstVec& tau1,
                                  const BoxDomain& box);
  static GeodesicPath between_xi(const RefConstVec& xi0, const RefConstVec& xi1,
                                 const BoxDomain& box);
  // Throws RankDeficientError unless A has full row rank.
  static GeodesicPath between_multipliers(const RefConstVec& lambda0, const RefConstVec& lambda1,
                                          const Matrix& A, const BoxDomain& box);
  // Throws NotOnSurface when an endpoint's box_logit image is farther than
  // surface_tol * (1 + ||box_logit||) from range(A^T).
  static GeodesicPath on_surface(const RefConstVec& xi0, const RefConstVec& xi1, const Matrix& A,
                                 const BoxDomain& box, double surface_tol = 1e-8);

  GeodesicSpace space() const { return space_; }
  const BoxDomain& box() const { return box_; }
  const Vector& start() const { return start_; }
  const Vector& end() const { return end_; }
  const Vector& chart_start() const { return w0_; }
  const Vector& chart_end() const { return w1_; }

  // Geodesic length between the endpoints: ||chart_end - chart_start||_2.
  double length() const { return (w1_ - w0_).norm(); }

  // Point at parameter t; [0,1] interpolates, outside extrapolates as long as
  // the chart stays in (0, pi)^N (DomainViolation otherwise).
  Vector evaluate(double t) const;

  // Distance of the dual coordinate at t from range(A^T); exactly 0.0 for
  // Tau/Xi paths.
  double range_residual(double t) const;

  // Audit: max over a uniform t-grid of |chart(evaluate(t)) - affine|_inf.
  double chart_affinity_deviation(int grid_points = 65) const;

 private:
  GeodesicPath(GeodesicSpace space, BoxDomain box, Vector start, Vector end, Vector w0, Vector w1);

  Vector chart_point(double t) const;

  GeodesicSpace space_;
  BoxDomain box_;
  Vector start_, end_, w0_, w1_;
  Matrix At_;  // Multiplier/Surface only
  Eigen::CompleteOrthogonalDecomposition<Matrix> At_cod_;
};

// Geodesic exponential in tau space: shoots from tau with chart velocity X.
// Throws TangentOutOfRange when v(tau) + X leaves (0, pi)^N (the chart is a
// strict subset of R^N, so long tangents have no image).
Vector tau_exp_map(const RefConstVec& tau, const RefConstVec& X, const BoxDomain& box);

// max_t || xi-geodesic between images  -  image of tau-geodesic ||_inf on a
// uniform t-grid; zero in exact arithmetic.
double transport_deviation(const RefConstVec& tau0, const RefConstVec& tau1, const BoxDomain& box,
                           int grid_points = 33);

// Induced metric on multiplier space: G(lambda) = A h(A^T lambda) A^T,
// symmetric positive semidefinite, positive definite for full-row-rank A.
Matrix induced_metric(const RefConstVec& lambda, const Matrix& A, const BoxDomain& box);

// One sample of a differentiable multiplier curve.
struct CurveSample {
  Vector lambda;
  Vector velocity;  // d lambda / dt
};

// max over samples and an orthonormal basis {k} of ker A of
//   |< k, g(xi) .* dxi/dt >|,   xi = box_logistic(A^T lambda),
//   dxi/dt = h(A^T lambda) .* (A^T dlambda/dt).
// Zero in exact arithmetic: solution motion is g-orthogonal to ker A.
double orthogonality_defect(const Matrix& A, const BoxDomain& box,
                            const std::vector<CurveSample>& samples);

// Upper bound on geodesic distance by the unscaled logit differences:
//   xi_distance(xi, eta)^2 <= sum_j [ ln((eta-a)/(b-eta)) - ln((xi-a)/(b-xi)) ]^2,
// valid on every box since sqrt(g) <= D g per coordinate.
struct UpperBoundCheck {
  double bound;
  double distance;
  bool holds;
};
UpperBoundCheck logit_upper_bound(const RefConstVec& xi, const RefConstVec& eta,
                                  const BoxDomain& box);

enum class LowerBoundKind { Euclidean, Sinh };

struct LowerBoundCheck {
  LowerBoundKind kind;
  // The bound exactly as stated.
  double literal_bound;
  // Euclidean only: per-coordinate factor 2/D_j applied (NaN for Sinh).
  double corrected_bound;
  double distance;
  bool literal_holds;
  bool corrected_holds;
};

// Euclidean: literal ||eta - xi||_2; since u' >= 2/D per coordinate the
// width-scaled form sqrt(sum (2/D_j)^2 (eta_j-xi_j)^2) holds on every box and
// the literal form only once all D_j <= 2.  Sinh: the literal form
// sqrt(sum_j (2/D_j) [sinh(z_j(eta)) - sinh(z_j(xi))]^2), z = 2(x-m)/D,
// evaluated for audit only; its stated antiderivative does not match u' and
// the bound fails on wide boxes, so callers must not assert it.
LowerBoundCheck lower_bound_check(const RefConstVec& xi, const RefConstVec& eta,
                                  const BoxDomain& box, LowerBoundKind kind);

}  // namespace entroinv
