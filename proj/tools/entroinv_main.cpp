#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entroinv/applications.hpp"
#include "entroinv/errors.hpp"
#include "entroinv/geometry.hpp"
#include "entroinv/io.hpp"
#include "entroinv/solver.hpp"
#include "entroinv/verify.hpp"

namespace {

using namespace entroinv;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1729;

// --seed wins, then ENTROINV_SEED, then the documented default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ENTROINV_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("ENTROINV_SEED is not an unsigned integer: \"") + env + "\"");
    }
  }
  return kDefaultSeed;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput(out_path + ": cannot open for writing");
  out << text;
}

int run_solve(const std::string& problem_path, const std::string& out_path) {
  InverseProblem problem = load_problem(problem_path);
  const DualSolution solution = solve_dual(problem);
  write_text(dump_json(solution_to_json(solution)), out_path);
  return exit_code(solution.status);
}

int run_geodesic(const std::string& space, const std::string& from_csv, const std::string& to_csv,
                 const std::string& problem_path, const std::string& lower_csv,
                 const std::string& upper_csv, int samples, const std::string& out_path) {
  const Vector from = parse_reals_line(from_csv, "--from");
  const Vector to = parse_reals_line(to_csv, "--to");
  if (from.size() != to.size())
    throw InvalidInput("--from has " + std::to_string(from.size()) + " entries but --to has " +
                       std::to_string(to.size()));
  if (samples < 2) throw InvalidInput("--samples must be at least 2");

  std::optional<InverseProblem> problem;
  if (!problem_path.empty()) problem.emplace(load_problem(problem_path));

  const bool needs_problem = space == "lambda" || space == "surface";
  if (needs_problem && !problem)
    throw InvalidInput("--space " + space + " requires --problem (the operator defines the space)");

  std::optional<BoxDomain> box;
  if (problem)
    box.emplace(problem->box);
  else if (!lower_csv.empty() || !upper_csv.empty()) {
    if (lower_csv.empty() || upper_csv.empty())
      throw InvalidInput("--lower and --upper must be given together");
    box.emplace(parse_reals_line(lower_csv, "--lower"), parse_reals_line(upper_csv, "--upper"));
  } else {
    box.emplace(BoxDomain::unit(from.size()));  // tau/xi only; lambda/surface have a problem
  }

  std::optional<GeodesicPath> path;
  if (space == "tau")
    path.emplace(GeodesicPath::between_tau(from, to, *box));
  else if (space == "xi")
    path.emplace(GeodesicPath::between_xi(from, to, *box));
  else if (space == "lambda")
    path.emplace(GeodesicPath::between_multipliers(from, to, problem->A, *box));
  else
    path.emplace(GeodesicPath::on_surface(from, to, problem->A, *box));

  json samples_json = json::array();
  double range_residual_max = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    json sample;
    sample["t"] = t;
    sample["point"] = vector_to_json(path->evaluate(t));
    samples_json.push_back(std::move(sample));
    range_residual_max = std::max(range_residual_max, path->range_residual(t));
  }

  json result;
  result["space"] = space;
  result["distance"] = path->length();
  result["path_samples"] = std::move(samples_json);
  result["audit_residuals"] = {{"chart_affinity_deviation", path->chart_affinity_deviation(65)},
                               {"range_residual_max", range_residual_max}};
  write_text(dump_json(result), out_path);
  return 0;
}

int run_sensitivity(const std::string& problem_path, const std::string& dy_csv, bool check,
                    const std::string& out_path) {
  InverseProblem problem = load_problem(problem_path);
  const Vector dy = parse_reals_line(dy_csv, "--dy");
  if (dy.size() != problem.observations())
    throw InvalidInput("--dy has " + std::to_string(dy.size()) + " entries but the problem has " +
                       std::to_string(problem.observations()) + " data rows");

  const DualSolution solution = solve_dual(problem);
  if (solution.status != SolveStatus::Converged) {
    std::cerr << "sensitivity requires a convergent instance; solver status: "
              << to_string(solution.status) << "\n";
    return exit_code(solution.status);
  }

  const Matrix jacobian = multiplier_sensitivity(solution, problem);
  const Vector dxi = solution_sensitivity(solution, problem, dy);

  json result = solution_to_json(solution);
  result["jacobian"] = matrix_to_json(jacobian);
  result["dy"] = vector_to_json(dy);
  result["dxi"] = vector_to_json(dxi);

  if (check) {
    auto resolve_error = [&](const Vector& step) {
      InverseProblem shifted(problem.A, problem.y + step, problem.box, problem.options);
      const DualSolution s = solve_dual(shifted);
      if (s.status != SolveStatus::Converged)
        throw InvalidInput("--check re-solve did not converge: " + std::string(to_string(s.status)));
      return (s.xi - solution.xi - solution_sensitivity(solution, problem, step)).norm();
    };
    const double e_full = resolve_error(dy);
    const double e_half = resolve_error(0.5 * dy);
    result["check"] = {{"error", e_full},
                       {"error_half", e_half},
                       {"ratio", e_half > 0.0 ? e_full / e_half : 0.0}};
  }
  write_text(dump_json(result), out_path);
  return 0;
}

json marginal_diag(const DualSolution& dual) {
  json j;
  j["status"] = to_string(dual.status);
  j["lambda"] = vector_to_json(dual.lambda);
  j["psi"] = dual.psi_value;
  j["dual"] = dual.dual_value;
  j["gap"] = dual.gap;
  j["residual_inf"] = dual.residual_inf;
  j["iterations"] = dual.iterations;
  return j;
}

int run_marginals(const std::string& rows_csv, const std::string& cols_csv,
                  const std::string& cost_csv, const std::optional<double>& w,
                  const std::string& sweep_csv, const std::string& lower_csv,
                  const std::string& upper_csv, const std::string& out_path) {
  MarginalProblem mp;
  mp.row_marginals = load_csv_vector(rows_csv, "--rows");
  mp.col_marginals = load_csv_vector(cols_csv, "--cols");
  if (!lower_csv.empty() || !upper_csv.empty()) {
    if (lower_csv.empty() || upper_csv.empty())
      throw InvalidInput("--lower and --upper must be given together");
    mp.cell_box.emplace(load_csv_vector(lower_csv, "--lower"), load_csv_vector(upper_csv, "--upper"));
  }

  const double row_sum = mp.row_marginals.sum();
  const double col_sum = mp.col_marginals.sum();
  if (std::abs(row_sum - col_sum) >
      1e-10 * std::max(1.0, std::max(std::abs(row_sum), std::abs(col_sum)))) {
    std::cerr << "marginal sums disagree: rows total " << format_real(row_sum)
              << " but columns total " << format_real(col_sum) << "\n";
    return 2;
  }

  if (!cost_csv.empty()) mp.cost = load_csv_vector(cost_csv, "--cost");

  if (!sweep_csv.empty()) {
    const Vector w_values = parse_reals_line(sweep_csv, "--sweep");
    std::vector<double> ws(w_values.data(), w_values.data() + w_values.size());
    const std::vector<CostSweepEntry> entries = cost_sweep(mp, ws);
    std::ostringstream blocks;
    json diag = json::array();
    for (const CostSweepEntry& entry : entries) {
      blocks << "# w=" << format_real(entry.cost_target) << " status=" << to_string(entry.status)
             << "\n";
      if (entry.table.size() > 0) write_csv_matrix(blocks, entry.table);
      json step;
      step["w"] = entry.cost_target;
      step["status"] = to_string(entry.status);
      step["psi"] = entry.psi;
      step["residual_inf"] = entry.residual_inf;
      step["cost_multiplier"] = entry.cost_multiplier;
      if (entry.table.size() > 0) step["table"] = matrix_to_json(entry.table);
      diag.push_back(std::move(step));
    }
    std::cout << blocks.str();
    if (!out_path.empty()) write_text(dump_json(diag), out_path);
    return entries.empty() ? 0 : exit_code(entries.back().status);
  }

  if (w) mp.cost_target = *w;
  const MarginalSolution solution = solve_marginal_problem(mp);
  if (solution.table.size() > 0) write_csv_matrix(std::cout, solution.table);
  json diag = marginal_diag(solution.dual);
  if (solution.table.size() > 0) diag["table"] = matrix_to_json(solution.table);
  if (!out_path.empty())
    write_text(dump_json(diag), out_path);
  else
    std::cout << dump_json(diag);
  return exit_code(solution.dual.status);
}

int run_verify(const std::string& suite, const std::optional<std::uint64_t>& seed_flag,
               const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  const std::vector<CheckResult> results = verify_suite(suite, seed);
  std::ostringstream report;
  print_verify_report(report, suite, seed, results);
  write_text(report.str(), out_path);
  return all_asserted_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Box-constrained maximum-entropy linear inverse problems: dual solver, "
      "closed-form geodesics, sensitivity, marginal reconstruction, invariant suites"};
  app.require_subcommand(1);

  std::string problem_path, out_path;
  auto* solve = app.add_subcommand("solve", "Solve a problem file and emit the result as JSON");
  solve->add_option("problem", problem_path, "problem JSON file")->required();
  solve->add_option("--out", out_path, "write the result here instead of stdout");

  std::string space, from_csv, to_csv, geo_problem, lower_csv, upper_csv;
  int samples = 9;
  auto* geodesic =
      app.add_subcommand("geodesic", "Closed-form geodesic between two points of a chosen space");
  geodesic->add_option("--space", space, "tau | xi | lambda | surface")
      ->required()
      ->check(CLI::IsMember({"tau", "xi", "lambda", "surface"}));
  geodesic->add_option("--from", from_csv, "start point, comma-separated reals")->required();
  geodesic->add_option("--to", to_csv, "end point, comma-separated reals")->required();
  geodesic->add_option("--problem", geo_problem,
                       "problem JSON file (required for lambda/surface; supplies the box)");
  geodesic->add_option("--lower", lower_csv, "box lower bounds (when no --problem)");
  geodesic->add_option("--upper", upper_csv, "box upper bounds (when no --problem)");
  geodesic->add_option("--samples", samples, "number of path samples (default 9)");
  geodesic->add_option("--out", out_path, "write the result here instead of stdout");

  std::string dy_csv;
  bool check = false;
  auto* sensitivity = app.add_subcommand(
      "sensitivity", "Multiplier Jacobian and first-order solution response to a data shift");
  sensitivity->add_option("problem", problem_path, "problem JSON file")->required();
  sensitivity->add_option("--dy", dy_csv, "data shift, comma-separated reals")->required();
  sensitivity->add_flag("--check", check, "re-solve at y+dy and y+dy/2 and report the errors");
  sensitivity->add_option("--out", out_path, "write the result here instead of stdout");

  std::string rows_csv, cols_csv, cost_csv, sweep_csv;
  std::optional<double> w;
  auto* marginals = app.add_subcommand(
      "marginals", "Reconstruct a joint table from row/column sums (optional cost constraint)");
  marginals->add_option("--rows", rows_csv, "row sums: inline CSV or a file")->required();
  marginals->add_option("--cols", cols_csv, "column sums: inline CSV or a file")->required();
  auto* cost_opt = marginals->add_option("--cost", cost_csv, "per-cell cost, lexicographic");
  auto* w_opt = marginals->add_option("--w", w, "cost target")->needs(cost_opt);
  auto* sweep_opt =
      marginals->add_option("--sweep", sweep_csv, "cost targets to visit in order")->needs(cost_opt);
  w_opt->excludes(sweep_opt);
  marginals->add_option("--lower", lower_csv, "cell box lower bounds (default 0)");
  marginals->add_option("--upper", upper_csv, "cell box upper bounds (default 1)");
  marginals->add_option("--out", out_path, "write JSON diagnostics here");

  std::string suite;
  std::optional<std::uint64_t> seed_flag;
  auto* verify = app.add_subcommand("verify", "Run the randomized invariant suites");
  verify->add_option("--suite", suite, "entropy | geometry | solver | bounds | all")->required();
  verify->add_option("--seed", seed_flag, "seed (overrides ENTROINV_SEED; default 1729)");
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(problem_path, out_path);
    if (geodesic->parsed())
      return run_geodesic(space, from_csv, to_csv, geo_problem, lower_csv, upper_csv, samples,
                          out_path);
    if (sensitivity->parsed()) return run_sensitivity(problem_path, dy_csv, check, out_path);
    if (marginals->parsed())
      return run_marginals(rows_csv, cols_csv, cost_csv, w, sweep_csv, lower_csv, upper_csv,
                           out_path);
    if (verify->parsed()) return run_verify(suite, seed_flag, out_path);
  } catch (const RankDeficientError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
