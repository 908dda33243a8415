#pragma once

#include <optional>
#include <vector>

#include "entroinv/box_domain.hpp"
#include "entroinv/solver.hpp"
#include "entroinv/types.hpp"

// Ready-made problem builders on top of the dual solver: probability vectors
// constrained by observable averages, banded priors, and contingency tables
// reconstructed from their two marginals.
namespace entroinv {

// Recover a probability vector p in [0,1]^N from moments: the normalisation
// row (sum p = 1) is synthesised internally and must not appear in B.
struct MomentProblem {
  Matrix B;        // observable rows, (K-1) x N; zero rows allowed
  Vector moments;  // one target per row of B
  BoxDomain box;
  SolverOptions options;

  MomentProblem(Matrix B, Vector moments);
  MomentProblem(Matrix B, Vector moments, BoxDomain box, SolverOptions options = {});
};

struct MomentSolution {
  Vector p;
  DualSolution dual;
};

MomentSolution solve_moment_problem(const MomentProblem& mp);

// Band constraint around a prior guess: the box (p0 - delta^-, p0 + delta^+).
struct PriorBand {
  Vector p0;
  Vector lower_width;  // delta^-, strictly positive
  Vector upper_width;  // delta^+, strictly positive

  // Symmetric band.  Unless allow_negative_lower, requires p0 - delta >= 0.
  PriorBand(Vector p0, const Vector& delta, bool allow_negative_lower = false);
  PriorBand(Vector p0, Vector lower_width, Vector upper_width,
            bool allow_negative_lower = false);
};

struct BandSolution {
  Vector p;
  DualSolution dual;
};

// Solve B p = y over the band box.  Throws BandViolation when some y_k lies
// outside the attainable open interval of its row (an exact per-row
// certificate of infeasibility); jointly infeasible data that passes the
// per-row check surfaces as solver status InfeasibleDatum.  An optional
// normalisation row (sum p = 1) is appended when add_normalization is set.
BandSolution solve_banded_problem(const PriorBand& band, const Matrix& B, const Vector& y,
                                  bool add_normalization = false, SolverOptions options = {});

// Marginal-sum operator for an n_rows x n_cols table vectorised
// lexicographically (cell (i,j) at column i*n_cols + j): the first n_rows rows
// sum table rows, the last n_cols rows sum table columns.  Rank is
// n_rows + n_cols - 1.
Matrix build_marginal_operator(Index n_rows, Index n_cols);

struct MarginalProblem {
  Vector row_marginals;
  Vector col_marginals;
  std::optional<Vector> cost;  // per-cell cost, lexicographic; enables the cost row
  double cost_target = 0.0;
  std::optional<BoxDomain> cell_box;  // defaults to [0,1]^{N*M}
  SolverOptions options;
};

struct MarginalSolution {
  Matrix table;  // rows x cols; empty unless the solve converged
  DualSolution dual;
};

// Reconstructs the table; status InfeasibleDatum (and an empty table) when the
// marginal sums disagree beyond 1e-10 relative, or when the cost target is not
// attainable.
MarginalSolution solve_marginal_problem(const MarginalProblem& mp);

struct CostSweepEntry {
  double cost_target;
  SolveStatus status;
  Matrix table;
  double psi = 0.0;
  double residual_inf = 0.0;
  double cost_multiplier = 0.0;  // multiplier of the cost row
};

// Re-solves with the cost row pinned to each w in turn (intended descending)
// and stops after recording the first entry that fails to converge; per-step
// failures are recorded, not thrown.  Approximates the least attainable cost
// from above.
std::vector<CostSweepEntry> cost_sweep(const MarginalProblem& mp,
                                       const std::vector<double>& w_values);

}  // namespace entroinv
