#include "entroinv/applications.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "entroinv/errors.hpp"

namespace entroinv {
namespace {

// Stack the synthesized normalisation row (all ones, target 1) on top of B.
std::pair<Matrix, Vector> with_normalization_row(const Matrix& B, const Vector& y) {
  Matrix A(B.rows() + 1, B.cols());
  A.row(0).setOnes();
  if (B.rows() > 0) A.bottomRows(B.rows()) = B;
  Vector rhs(y.size() + 1);
  rhs(0) = 1.0;
  if (y.size() > 0) rhs.tail(y.size()) = y;
  return {std::move(A), std::move(rhs)};
}

}  // namespace

MomentProblem::MomentProblem(Matrix B_, Vector moments_)
    : B(std::move(B_)),
      moments(std::move(moments_)),
      box(BoxDomain::unit(B.cols())) {}

MomentProblem::MomentProblem(Matrix B_, Vector moments_, BoxDomain box_, SolverOptions options_)
    : B(std::move(B_)), moments(std::move(moments_)), box(std::move(box_)), options(options_) {}

MomentSolution solve_moment_problem(const MomentProblem& mp) {
  if (mp.B.cols() != mp.box.size())
    throw InvalidInput("moment problem: B has " + std::to_string(mp.B.cols()) +
                       " columns but the box has size " + std::to_string(mp.box.size()));
  if (mp.B.rows() != mp.moments.size())
    throw InvalidInput("moment problem: " + std::to_string(mp.B.rows()) + " observable rows vs " +
                       std::to_string(mp.moments.size()) + " moments");
  auto [A, y] = with_normalization_row(mp.B, mp.moments);
  InverseProblem problem(std::move(A), std::move(y), mp.box, mp.options);
  MomentSolution out;
  out.dual = solve_dual(problem);
  out.p = out.dual.xi;
  return out;
}

PriorBand::PriorBand(Vector p0_, const Vector& delta, bool allow_negative_lower)
    : PriorBand(std::move(p0_), delta, delta, allow_negative_lower) {}

PriorBand::PriorBand(Vector p0_, Vector lower_width_, Vector upper_width_,
                     bool allow_negative_lower)
    : p0(std::move(p0_)), lower_width(std::move(lower_width_)), upper_width(std::move(upper_width_)) {
  if (lower_width.size() != p0.size() || upper_width.size() != p0.size())
    throw InvalidInput("prior band: width sizes must match the prior");
  if (!(p0.allFinite() && lower_width.allFinite() && upper_width.allFinite()))
    throw InvalidInput("prior band: entries must be finite");
  if ((lower_width.array() <= 0.0).any() || (upper_width.array() <= 0.0).any())
    throw InvalidInput("prior band: widths must be strictly positive");
  if (!allow_negative_lower && ((p0 - lower_width).array() < 0.0).any())
    throw InvalidInput(
        "prior band: lower edge dips below zero; pass allow_negative_lower to permit signed "
        "solutions");
}

BandSolution solve_banded_problem(const PriorBand& band, const Matrix& B, const Vector& y,
                                  bool add_normalization, SolverOptions options) {
  if (B.cols() != band.p0.size())
    throw InvalidInput("banded problem: B has " + std::to_string(B.cols()) +
                       " columns but the band has size " + std::to_string(band.p0.size()));
  if (B.rows() != y.size())
    throw InvalidInput("banded problem: " + std::to_string(B.rows()) + " rows vs " +
                       std::to_string(y.size()) + " data entries");

  const Vector lower = band.p0 - band.lower_width;
  const Vector upper = band.p0 + band.upper_width;

  // Exact attainable interval of each row over the closed box; a target on or
  // outside the edge can only be met by a boundary table, which the interior
  // solution never is.
  for (Index k = 0; k < B.rows(); ++k) {
    double lo = 0.0, hi = 0.0;
    for (Index j = 0; j < B.cols(); ++j) {
      const double c = B(k, j);
      lo += std::min(c * lower(j), c * upper(j));
      hi += std::max(c * lower(j), c * upper(j));
    }
    if (!(y(k) > lo && y(k) < hi)) {
      std::ostringstream msg;
      msg << "banded problem: datum " << k << " = " << y(k)
          << " is outside the attainable open interval (" << lo << ", " << hi << ")";
      throw BandViolation(msg.str());
    }
  }

  Matrix A = B;
  Vector rhs = y;
  if (add_normalization) {
    auto stacked = with_normalization_row(B, y);
    A = std::move(stacked.first);
    rhs = std::move(stacked.second);
  }
  InverseProblem problem(std::move(A), std::move(rhs), BoxDomain(lower, upper), options);
  BandSolution out;
  out.dual = solve_dual(problem);
  out.p = out.dual.xi;
  return out;
}

Matrix build_marginal_operator(Index n_rows, Index n_cols) {
  if (n_rows < 1 || n_cols < 1)
    throw InvalidInput("marginal operator: table dimensions must be positive");
  Matrix A = Matrix::Zero(n_rows + n_cols, n_rows * n_cols);
  for (Index i = 0; i < n_rows; ++i)
    for (Index j = 0; j < n_cols; ++j) {
      A(i, i * n_cols + j) = 1.0;           // row sum i
      A(n_rows + j, i * n_cols + j) = 1.0;  // column sum j
    }
  return A;
}

MarginalSolution solve_marginal_problem(const MarginalProblem& mp) {
  const Index n_rows = mp.row_marginals.size();
  const Index n_cols = mp.col_marginals.size();
  if (n_rows < 1 || n_cols < 1)
    throw InvalidInput("marginal problem: both marginals must be non-empty");
  if ((mp.row_marginals.array() < 0.0).any() || (mp.col_marginals.array() < 0.0).any())
    throw InvalidInput("marginal problem: marginals must be nonnegative");
  const Index cells = n_rows * n_cols;

  BoxDomain box = mp.cell_box ? *mp.cell_box : BoxDomain::unit(cells);
  if (box.size() != cells)
    throw InvalidInput("marginal problem: cell box has size " + std::to_string(box.size()) +
                       ", expected " + std::to_string(cells));
  if (mp.cost && mp.cost->size() != cells)
    throw InvalidInput("marginal problem: cost has " + std::to_string(mp.cost->size()) +
                       " entries, expected " + std::to_string(cells));

  MarginalSolution out;

  // Both marginals estimate the same total mass; a disagreement makes the
  // stacked system inconsistent before any optimisation happens.
  const double row_sum = mp.row_marginals.sum();
  const double col_sum = mp.col_marginals.sum();
  if (std::abs(row_sum - col_sum) >
      1e-10 * std::max(1.0, std::max(std::abs(row_sum), std::abs(col_sum)))) {
    out.dual.status = SolveStatus::InfeasibleDatum;
    out.dual.lambda = Vector::Zero(n_rows + n_cols + (mp.cost ? 1 : 0));
    return out;
  }

  Matrix A = build_marginal_operator(n_rows, n_cols);
  Vector y(n_rows + n_cols);
  y.head(n_rows) = mp.row_marginals;
  y.tail(n_cols) = mp.col_marginals;
  if (mp.cost) {
    A.conservativeResize(A.rows() + 1, Eigen::NoChange);
    A.row(A.rows() - 1) = mp.cost->transpose();
    y.conservativeResize(y.size() + 1);
    y(y.size() - 1) = mp.cost_target;
  }

  InverseProblem problem(std::move(A), std::move(y), std::move(box), mp.options);
  out.dual = solve_dual(problem);
  if (out.dual.status == SolveStatus::Converged)
    out.table = Eigen::Map<const Matrix>(out.dual.xi.data(), n_cols, n_rows).transpose();
  return out;
}

std::vector<CostSweepEntry> cost_sweep(const MarginalProblem& mp,
                                       const std::vector<double>& w_values) {
  if (!mp.cost) throw InvalidInput("cost sweep: the problem carries no cost vector");
  std::vector<CostSweepEntry> entries;
  entries.reserve(w_values.size());
  for (double w : w_values) {
    MarginalProblem step = mp;
    step.cost_target = w;
    MarginalSolution sol = solve_marginal_problem(step);
    CostSweepEntry entry;
    entry.cost_target = w;
    entry.status = sol.dual.status;
    entry.table = sol.table;
    entry.psi = sol.dual.psi_value;
    entry.residual_inf = sol.dual.residual_inf;
    if (sol.dual.lambda.size() > 0) entry.cost_multiplier = sol.dual.lambda(sol.dual.lambda.size() - 1);
    entries.push_back(std::move(entry));
    if (entries.back().status != SolveStatus::Converged) break;
  }
  return entries;
}

}  // namespace entroinv
