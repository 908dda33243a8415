#pragma once

#include "entroinv/solver.hpp"
#include "entroinv/types.hpp"

namespace entroinv {

enum class ReferenceMethod { ProjectedGradient, BarrierNewton };

struct ReferenceSolution {
  Vector xi;
  double objective;     // entropy at xi, evaluated from the literal formula
  double kkt_residual;  // ||Z^T grad||_inf with Z an orthonormal basis of ker A
  ReferenceMethod method;
};

// Primal-side reference minimiser: parametrises {A xi = y} through a kernel
// basis, finds a strictly interior feasible start (least-norm projection of
// the box midpoint, then alternating projections onto a margin-shrunk box and
// the affine manifold), runs projected gradient with decreasing steps and
// interior backtracking, and polishes with Newton in the kernel coordinates.
//
// Deliberately independent of the dual machinery: the entropy, its gradient
// and its curvature are evaluated from their literal formulas here, and
// nothing from the dual objective or the coordinate maps is called.  Intended
// for cross-validation at modest sizes (N <= 64).
//
// Throws OracleInfeasible when no strictly interior feasible point is found.
ReferenceSolution reference_solve(const InverseProblem& p);

}  // namespace entroinv
