#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "entroinv/solver.hpp"
#include "entroinv/types.hpp"

// File formats for the command-line surface: JSON for problems and results,
// CSV for tables and marginals.  All serialisation is deterministic (sorted
// keys, fixed layout) with reals at 17 significant digits, so equal inputs
// produce byte-identical files.
namespace entroinv {

// One real at 17 significant digits ("%.17g"); non-finite values become
// "null" since JSON has no representation for them.
std::string format_real(double x);

// Deterministic dump: object keys sorted, scalar arrays on one line, nested
// structures indented two spaces, reals through format_real.  Ends in '\n'.
std::string dump_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const RefConstVec& v);
nlohmann::json matrix_to_json(const RefConstMat& m);

// Problem document: {"A": K rows of N reals, "y": K reals,
// "box": {"lower": N reals, "upper": N reals}, "options": {...} (optional)}.
// Unknown keys anywhere are rejected.  Errors are InvalidInput with the path
// (and the line, for parse errors) in the message.
InverseProblem load_problem(const std::string& path);
InverseProblem problem_from_json(const nlohmann::json& j, const std::string& where);

// Result document keys: status, xi, lambda, psi, dual, gap, residual_inf,
// iterations.  Geometry commands extend this with path_samples, distance and
// audit_residuals.
nlohmann::json solution_to_json(const DualSolution& s);

// One line of comma-separated reals; `where` qualifies error messages.
Vector parse_reals_line(const std::string& line, const std::string& where);

// If `source` names a readable file, parse its first non-empty line;
// otherwise parse `source` itself as an inline comma-separated list.
Vector load_csv_vector(const std::string& source, const std::string& what);

// Rows as comma-separated reals at 17 significant digits, one line per row.
void write_csv_matrix(std::ostream& os, const RefConstMat& m);

// Exit-code contract: Converged 0, InfeasibleDatum 2, RankDeficient 3,
// IterationLimit 4.  Input errors exit 1 (handled by the CLI).
int exit_code(SolveStatus status);

}  // namespace entroinv
