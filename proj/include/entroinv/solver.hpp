#pragma once

#include <utility>
#include <vector>

#include "entroinv/box_domain.hpp"
#include "entroinv/types.hpp"

// Maximum-entropy solution of A xi = y over the open box: minimise the
// Fermi-Dirac entropy subject to the data, solved through the concave dual
//
//   Sigma(lambda) = <lambda, y> - M(A^T lambda),
//
// whose maximiser labels the solution xi* = box_logistic(A^T lambda*).
namespace entroinv {

struct SolverOptions {
  double grad_tol = 1e-10;       // stop once ||grad Sigma||_inf <= grad_tol
  int max_iter = 200;
  double damping_floor = 1e-12;  // first Tikhonov shift when the Newton system fails
  double divergence_norm = 1e4;  // ||lambda||_2 past which a stalled gradient means infeasible data
  double armijo_c = 1e-4;
  double armijo_backtrack = 0.5;
  int max_backtracks = 60;
  int stall_window = 10;  // gradient must halve over this many accepted steps
};

enum class SolveStatus { Converged, InfeasibleDatum, RankDeficient, IterationLimit };

const char* to_string(SolveStatus status);

struct InverseProblem {
  Matrix A;
  Vector y;
  BoxDomain box;
  SolverOptions options;

  InverseProblem(Matrix A, Vector y, BoxDomain box, SolverOptions options = {});

  Index observations() const { return A.rows(); }
  Index unknowns() const { return A.cols(); }
  void validate() const;
};

struct DualSolution {
  SolveStatus status = SolveStatus::IterationLimit;
  Vector lambda;  // minimum-norm multiplier when A is rank deficient
  Vector xi;      // box_logistic(A^T lambda)
  double dual_value = 0.0;    // <lambda, y> - M(A^T lambda)
  double psi_value = 0.0;     // entropy at xi (limit form; exact for interior xi)
  double gap = 0.0;           // psi_value - dual_value
  double residual_inf = 0.0;  // ||A xi - y||_inf
  int iterations = 0;
  std::vector<double> dual_trace;  // accepted ascent values, nondecreasing
  std::vector<double> grad_trace;  // ||grad||_inf at accepted iterates
};

// Value and gradient of Sigma: grad = y - A box_logistic(A^T lambda).
std::pair<double, Vector> dual_objective(const RefConstVec& lambda, const InverseProblem& p);

// Damped Newton ascent from lambda = 0 with Armijo backtracking.  The Newton
// system is solved in the numerical range of A (rank-revealing SVD once per
// solve), so consistent rank-deficient data converges to the minimum-norm
// multiplier; data with a component outside range(A) is InfeasibleDatum
// immediately.  A gradient stalled above tolerance while ||lambda|| exceeds
// divergence_norm is the recession certificate for an infeasible datum.
DualSolution solve_dual(const InverseProblem& p);

// Fresh recomputation of psi(xi*) - Sigma(lambda*); near zero at optimality.
double duality_gap(const DualSolution& s, const InverseProblem& p);

enum class Feasibility { InteriorCertified, BoundaryOrExterior, Unknown };

// Exact open-interval certificate for single-row problems; Unknown otherwise.
Feasibility feasibility_probe(const InverseProblem& p);
// A converged solve certifies the datum interior.
Feasibility feasibility_probe(const InverseProblem& p, const DualSolution& s);

// box_logistic(A^T lambda): the solution-surface point labelled by lambda.
Vector surface_point(const RefConstVec& lambda, const InverseProblem& p);

// d lambda*/d y = G(lambda*)^{-1} with G the induced metric at the optimum.
// Throws RankDeficientError when G is numerically singular.
Matrix multiplier_sensitivity(const DualSolution& s, const InverseProblem& p);

// First-order solution response: dxi = h .* (A^T G^{-1} dy).
Vector solution_sensitivity(const DualSolution& s, const InverseProblem& p, const RefConstVec& dy);

}  // namespace entroinv
