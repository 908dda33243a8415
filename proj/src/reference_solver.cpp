#include "entroinv/reference_solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "entroinv/errors.hpp"

namespace entroinv {

namespace {

// Literal entropy formulas.  These intentionally do not reuse the entropy
// module so the reference path is an independent implementation.
double entropy_literal(const Vector& xi, const Vector& a, const Vector& b) {
  double sum = 0.0;
  for (Index j = 0; j < xi.size(); ++j) {
    const double D = b[j] - a[j];
    const double p = (xi[j] - a[j]) / D;
    const double q = (b[j] - xi[j]) / D;
    sum += p * std::log(p) + q * std::log(q);
  }
  return sum;
}

Vector gradient_literal(const Vector& xi, const Vector& a, const Vector& b) {
  Vector g(xi.size());
  for (Index j = 0; j < xi.size(); ++j) {
    const double D = b[j] - a[j];
    g[j] = (std::log((xi[j] - a[j]) / D) - std::log((b[j] - xi[j]) / D)) / D;
  }
  return g;
}

Vector curvature_literal(const Vector& xi, const Vector& a, const Vector& b) {
  Vector c(xi.size());
  for (Index j = 0; j < xi.size(); ++j) c[j] = 1.0 / ((xi[j] - a[j]) * (b[j] - xi[j]));
  return c;
}

bool interior_at(const Vector& xi, const Vector& a, const Vector& b, const Vector& margin) {
  for (Index j = 0; j < xi.size(); ++j)
    if (!(xi[j] - a[j] > margin[j]) || !(b[j] - xi[j] > margin[j])) return false;
  return true;
}

// Largest stride in [0, cap] keeping xi + stride * dir interior at `margin`.
double stride_to_margin(const Vector& xi, const Vector& dir, const Vector& a, const Vector& b,
                        const Vector& margin, double cap) {
  double s = cap;
  for (Index j = 0; j < xi.size(); ++j) {
    if (dir[j] > 0.0) s = std::min(s, (b[j] - margin[j] - xi[j]) / dir[j]);
    if (dir[j] < 0.0) s = std::min(s, (a[j] + margin[j] - xi[j]) / dir[j]);
  }
  return std::max(s, 0.0);
}

}  // namespace

ReferenceSolution reference_solve(const InverseProblem& p) {
  p.validate();
  const Vector& a = p.box.lower();
  const Vector& b = p.box.upper();
  const Index N = p.A.cols();

  Eigen::JacobiSVD<Matrix> svd(p.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  const double rank_tol =
      static_cast<double>(std::max(p.A.rows(), p.A.cols())) *
      std::numeric_limits<double>::epsilon() * smax;
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rank_tol) ++rank;
  const Matrix kernel = svd.matrixV().rightCols(N - rank);  // N x (N - rank)

  const auto project_feasible = [&](const Vector& z) -> Vector {
    // Least-norm correction onto {A xi = y} through the truncated SVD.
    const Vector r = p.y - p.A * z;
    const Vector coef =
        svd.singularValues().head(rank).cwiseInverse().cwiseProduct(
            (svd.matrixU().leftCols(rank).transpose() * r).eval());
    return z + svd.matrixV().leftCols(rank) * coef;
  };

  const Vector margin = 1e-9 * p.box.width();
  Vector xi = project_feasible(p.box.midpoint());
  if ((p.A * xi - p.y).norm() > 1e-9 * (1.0 + p.y.norm()))
    throw OracleInfeasible("reference_solve: datum has no preimage (residual " +
                           std::to_string((p.A * xi - p.y).norm()) + ")");

  if (!interior_at(xi, a, b, margin)) {
    // Alternating projections between a margin-shrunk box and the manifold.
    const Vector clip_margin = 1e-3 * p.box.width();
    bool found = false;
    for (int round = 0; round < 2000; ++round) {
      Vector clipped(N);
      for (Index j = 0; j < N; ++j)
        clipped[j] = std::clamp(xi[j], a[j] + clip_margin[j], b[j] - clip_margin[j]);
      xi = project_feasible(clipped);
      if (interior_at(xi, a, b, margin)) {
        found = true;
        break;
      }
    }
    if (!found)
      throw OracleInfeasible("reference_solve: no strictly interior feasible point found");
  }

  ReferenceSolution out;
  out.method = ReferenceMethod::ProjectedGradient;

  if (kernel.cols() == 0) {
    // The feasible point is unique; nothing to minimise over.
    out.xi = xi;
    out.objective = entropy_literal(xi, a, b);
    out.kkt_residual = 0.0;
    return out;
  }

  double value = entropy_literal(xi, a, b);

  // Projected gradient with decreasing steps and interior backtracking.
  for (int iter = 0; iter < 25; ++iter) {
    const Vector grad = gradient_literal(xi, a, b);
    const Vector dir = -(kernel * (kernel.transpose() * grad).eval()).eval();
    const double dnorm = dir.norm();
    if (dnorm < 1e-14 * (1.0 + grad.norm())) break;
    double stride =
        stride_to_margin(xi, dir, a, b, margin, 1.0 / (dnorm * (1.0 + 0.25 * iter)));
    stride *= 0.9;
    bool improved = false;
    for (int bt = 0; bt < 40 && stride > 0.0; ++bt) {
      const Vector cand = xi + stride * dir;
      const double cand_value = entropy_literal(cand, a, b);
      if (cand_value < value - 1e-4 * stride * dnorm * dnorm) {
        xi = cand;
        value = cand_value;
        improved = true;
        break;
      }
      stride *= 0.5;
    }
    if (!improved) break;
  }

  // Newton polish in kernel coordinates: H = Z^T diag(curvature) Z.
  bool newton_progress = false;
  for (int iter = 0; iter < 60; ++iter) {
    xi = project_feasible(xi);  // absorb roundoff drift off the manifold
    const Vector grad = gradient_literal(xi, a, b);
    const Vector reduced_grad = kernel.transpose() * grad;
    if (reduced_grad.lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + grad.lpNorm<Eigen::Infinity>()))
      break;
    const Vector curv = curvature_literal(xi, a, b);
    const Matrix H = kernel.transpose() * curv.asDiagonal() * kernel;
    Eigen::LLT<Matrix> llt(H);
    Vector dir;
    if (llt.info() == Eigen::Success) {
      dir = kernel * (-llt.solve(reduced_grad)).eval();
    } else {
      dir = -(kernel * reduced_grad).eval();
    }
    const double slope = grad.dot(dir);
    if (!(slope < 0.0)) break;
    double stride = std::min(1.0, 0.995 * stride_to_margin(xi, dir, a, b, margin,
                                                           std::numeric_limits<double>::max()));
    bool improved = false;
    for (int bt = 0; bt < 50 && stride > 0.0; ++bt) {
      const Vector cand = xi + stride * dir;
      const double cand_value = entropy_literal(cand, a, b);
      if (cand_value <= value + 1e-4 * stride * slope) {
        xi = cand;
        value = cand_value;
        improved = true;
        newton_progress = true;
        break;
      }
      stride *= 0.5;
    }
    if (!improved) break;
  }

  xi = project_feasible(xi);
  out.xi = xi;
  out.objective = entropy_literal(xi, a, b);
  out.kkt_residual =
      (kernel.transpose() * gradient_literal(xi, a, b)).lpNorm<Eigen::Infinity>();
  if (newton_progress) out.method = ReferenceMethod::BarrierNewton;
  return out;
}

}  // namespace entroinv
