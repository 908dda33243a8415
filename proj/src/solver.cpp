#include "entroinv/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "entroinv/entropy.hpp"
#include "entroinv/errors.hpp"
#include "entroinv/geometry.hpp"

namespace entroinv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Fills the non-iterative fields from the current multiplier.
void package(DualSolution& s, const InverseProblem& p) {
  const Vector tau = p.A.transpose() * s.lambda;
  s.xi = box_logistic(tau, p.box);
  s.dual_value = s.lambda.dot(p.y) - log_partition(tau, p.box);
  s.psi_value = fermi_dirac_entropy_limit(s.xi, p.box);
  s.gap = s.psi_value - s.dual_value;
  s.residual_inf = (p.A * s.xi - p.y).lpNorm<Eigen::Infinity>();
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::InfeasibleDatum:
      return "InfeasibleDatum";
    case SolveStatus::RankDeficient:
      return "RankDeficient";
    case SolveStatus::IterationLimit:
      return "IterationLimit";
  }
  return "Unknown";
}

InverseProblem::InverseProblem(Matrix A_in, Vector y_in, BoxDomain box_in, SolverOptions options_in)
    : A(std::move(A_in)), y(std::move(y_in)), box(std::move(box_in)), options(options_in) {
  validate();
}

void InverseProblem::validate() const {
  if (A.rows() < 1 || A.cols() < 1) throw InvalidInput("InverseProblem: empty operator");
  if (A.cols() != box.size())
    throw InvalidInput("InverseProblem: operator has " + std::to_string(A.cols()) +
                       " columns, box has " + std::to_string(box.size()) + " coordinates");
  if (y.size() != A.rows())
    throw InvalidInput("InverseProblem: datum has " + std::to_string(y.size()) +
                       " entries, operator has " + std::to_string(A.rows()) + " rows");
  if (!A.allFinite() || !y.allFinite()) throw InvalidInput("InverseProblem: non-finite entries");
  if (!(options.grad_tol > 0.0) || options.max_iter < 1 || !(options.damping_floor > 0.0) ||
      !(options.divergence_norm > 0.0) || !(options.armijo_c > 0.0) ||
      !(options.armijo_backtrack > 0.0) || !(options.armijo_backtrack < 1.0) ||
      options.max_backtracks < 1 || options.stall_window < 1)
    throw InvalidInput("InverseProblem: invalid solver options");
}

std::pair<double, Vector> dual_objective(const RefConstVec& lambda, const InverseProblem& p) {
  if (lambda.size() != p.A.rows())
    throw InvalidInput("dual_objective: multiplier has " + std::to_string(lambda.size()) +
                       " entries, operator has " + std::to_string(p.A.rows()) + " rows");
  if (!lambda.allFinite()) throw InvalidInput("dual_objective: non-finite multiplier");
  const Vector tau = p.A.transpose() * lambda;
  const double value = lambda.dot(p.y) - log_partition(tau, p.box);
  Vector grad = p.y - p.A * box_logistic(tau, p.box);
  return {value, std::move(grad)};
}

DualSolution solve_dual(const InverseProblem& p) {
  p.validate();
  const Index K = p.A.rows();
  const SolverOptions& opt = p.options;

  DualSolution s;
  s.lambda = Vector::Zero(K);

  // Rank of A decides whether the Newton system lives in a proper subspace.
  Eigen::JacobiSVD<Matrix> svd(p.A, Eigen::ComputeThinU);
  const double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  const double rank_tol =
      static_cast<double>(std::max(p.A.rows(), p.A.cols())) * kEps * smax;
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rank_tol) ++rank;
  const bool deficient = rank < K;

  Matrix range_basis, A_red;
  if (deficient) {
    range_basis = svd.matrixU().leftCols(rank);  // K x r
    // The gradient component outside range(A) is constant in lambda; if the
    // datum carries one, no multiplier can remove it.
    const Vector y_out = p.y - range_basis * (range_basis.transpose() * p.y);
    if (y_out.norm() > 1e-12 * (1.0 + p.y.norm())) {
      s.status = SolveStatus::InfeasibleDatum;
      package(s, p);
      return s;
    }
    A_red = range_basis.transpose() * p.A;  // r x N
  }

  auto [value, grad] = dual_objective(s.lambda, p);
  s.dual_trace.push_back(value);
  s.grad_trace.push_back(grad.lpNorm<Eigen::Infinity>());
  s.status = SolveStatus::IterationLimit;

  const double step_cap = 10.0 * opt.divergence_norm;

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm <= opt.grad_tol) {
      s.status = SolveStatus::Converged;
      break;
    }
    if (s.lambda.norm() > opt.divergence_norm &&
        static_cast<int>(s.grad_trace.size()) > opt.stall_window) {
      const double past = s.grad_trace[s.grad_trace.size() - 1 - opt.stall_window];
      if (gnorm > 0.5 * past) {
        s.status = SolveStatus::InfeasibleDatum;
        break;
      }
    }

    const Vector tau = p.A.transpose() * s.lambda;
    const Vector h = log_partition_hessian(tau, p.box);
    const Matrix G = deficient
                         ? Matrix(A_red * h.asDiagonal() * A_red.transpose())
                         : Matrix(p.A * h.asDiagonal() * p.A.transpose());
    const Vector g_red = deficient ? Vector(range_basis.transpose() * grad) : grad;

    // Newton direction, with escalating Tikhonov shifts until the factorisation
    // yields an ascent-compatible step.
    Vector step_red;
    bool have_step = false;
    double mu = 0.0;
    const double mu_scale =
        std::max(opt.damping_floor, opt.damping_floor * G.diagonal().maxCoeff());
    for (int attempt = 0; attempt < 30 && !have_step; ++attempt) {
      Matrix Gd = G;
      if (mu > 0.0) Gd.diagonal().array() += mu;
      Eigen::LDLT<Matrix> ldlt(Gd);
      if (ldlt.info() == Eigen::Success) {
        step_red = ldlt.solve(g_red);
        have_step = step_red.allFinite() && step_red.dot(g_red) > 0.0;
      }
      if (!have_step) mu = (mu == 0.0) ? mu_scale : mu * 1e3;
    }
    if (!have_step) {
      s.status = SolveStatus::RankDeficient;
      break;
    }

    Vector step = deficient ? Vector(range_basis * step_red) : step_red;
    // stableNorm, not norm: on a recession ray the Hessian underflows and the
    // raw Newton step can exceed sqrt(DBL_MAX); an infinite squared norm here
    // would scale the step to zero and freeze the iterate below the
    // divergence gate.
    const double step_norm = step.stableNorm();
    if (step_norm > step_cap) step *= step_cap / step_norm;
    const double slope = grad.dot(step);
    // Without a strictly positive slope the Armijo threshold is vacuous and
    // the line search could accept a do-nothing candidate; stop loudly.
    if (!(slope > 0.0)) {
      s.status = SolveStatus::RankDeficient;
      break;
    }

    // Near the maximum the dual value is flat at double resolution while the
    // expected Newton increase (~slope) is far below one ulp of the value;
    // Armijo on the value alone would reject every stride and freeze the
    // iterate.  Inside that flat zone, accept on gradient-norm contraction
    // instead (Newton on grad Sigma = 0), which retains full relative
    // precision to the end.
    const double flat_tol = 4.0 * kEps * (1.0 + std::abs(value));
    double stride = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < opt.max_backtracks; ++bt) {
      const Vector candidate = s.lambda + stride * step;
      auto [cand_value, cand_grad] = dual_objective(candidate, p);
      const bool ascent = cand_value >= value + opt.armijo_c * stride * slope;
      const bool flat_contraction =
          cand_value >= value - flat_tol &&
          cand_grad.lpNorm<Eigen::Infinity>() < (1.0 - opt.armijo_c * stride) * gnorm;
      if (std::isfinite(cand_value) && (ascent || flat_contraction)) {
        s.lambda = candidate;
        value = std::max(value, cand_value);  // keep the trace nondecreasing
        grad = std::move(cand_grad);
        accepted = true;
        break;
      }
      stride *= opt.armijo_backtrack;
    }
    if (!accepted) {
      s.status = SolveStatus::RankDeficient;
      break;
    }
    s.iterations = iter + 1;
    s.dual_trace.push_back(value);
    s.grad_trace.push_back(grad.lpNorm<Eigen::Infinity>());
  }

  if (s.status == SolveStatus::IterationLimit &&
      grad.lpNorm<Eigen::Infinity>() <= opt.grad_tol)
    s.status = SolveStatus::Converged;

  package(s, p);
  return s;
}

double duality_gap(const DualSolution& s, const InverseProblem& p) {
  const Vector tau = p.A.transpose() * s.lambda;
  const double dual = s.lambda.dot(p.y) - log_partition(tau, p.box);
  return fermi_dirac_entropy(s.xi, p.box) - dual;
}

Feasibility feasibility_probe(const InverseProblem& p) {
  if (p.A.rows() != 1) return Feasibility::Unknown;
  double lo = 0.0, hi = 0.0;
  for (Index j = 0; j < p.A.cols(); ++j) {
    const double va = p.A(0, j) * p.box.lower()[j];
    const double vb = p.A(0, j) * p.box.upper()[j];
    lo += std::min(va, vb);
    hi += std::max(va, vb);
  }
  return (p.y[0] > lo && p.y[0] < hi) ? Feasibility::InteriorCertified
                                      : Feasibility::BoundaryOrExterior;
}

Feasibility feasibility_probe(const InverseProblem& p, const DualSolution& s) {
  if (s.status == SolveStatus::Converged) return Feasibility::InteriorCertified;
  return feasibility_probe(p);
}

Vector surface_point(const RefConstVec& lambda, const InverseProblem& p) {
  if (lambda.size() != p.A.rows())
    throw InvalidInput("surface_point: multiplier size does not match operator rows");
  return box_logistic(p.A.transpose() * lambda, p.box);
}

namespace {

// Shared by the sensitivity operations: LDLT of G with a rank gate.
Eigen::LDLT<Matrix> metric_factorisation(const DualSolution& s, const InverseProblem& p) {
  const Matrix G = induced_metric(s.lambda, p.A, p.box);
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  const double emin = es.eigenvalues().minCoeff();
  if (!(emin > static_cast<double>(G.rows()) * kEps * emax))
    throw RankDeficientError("sensitivity: induced metric is numerically singular (eigenvalues " +
                             std::to_string(emin) + " .. " + std::to_string(emax) + ")");
  return Eigen::LDLT<Matrix>(G);
}

}  // namespace

Matrix multiplier_sensitivity(const DualSolution& s, const InverseProblem& p) {
  const auto ldlt = metric_factorisation(s, p);
  return ldlt.solve(Matrix::Identity(p.A.rows(), p.A.rows()));
}

Vector solution_sensitivity(const DualSolution& s, const InverseProblem& p,
                            const RefConstVec& dy) {
  if (dy.size() != p.A.rows())
    throw InvalidInput("solution_sensitivity: dy has " + std::to_string(dy.size()) +
                       " entries, operator has " + std::to_string(p.A.rows()) + " rows");
  const auto ldlt = metric_factorisation(s, p);
  const Vector dlambda = ldlt.solve(dy);
  const Vector h = log_partition_hessian(p.A.transpose() * s.lambda, p.box);
  return h.cwiseProduct(p.A.transpose() * dlambda);
}

}  // namespace entroinv
