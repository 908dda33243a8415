#include "entroinv/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "entroinv/errors.hpp"

namespace entroinv {
namespace {

using nlohmann::json;

std::string line_qualified(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  const std::size_t stop = std::min(byte, text.size());
  for (std::size_t i = 0; i < stop; ++i)
    if (text[i] == '\n') ++line;
  return std::to_string(line);
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known) throw InvalidInput(where + ": unknown key \"" + item.key() + "\"");
  }
}

const json& require_key(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + ": missing key \"" + key + "\"");
  return *it;
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidInput(where + ": expected a number");
  return j.get<double>();
}

Vector as_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array of reals");
  Vector v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& entry : j) v[i++] = as_real(entry, where);
  return v;
}

Matrix as_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InvalidInput(where + ": expected an array of rows");
  const auto& first = j.front();
  if (!first.is_array() || first.empty())
    throw InvalidInput(where + ": rows must be non-empty arrays of reals");
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(first.size()));
  Index r = 0;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<Index>(row.size()) != m.cols())
      throw InvalidInput(where + ": row " + std::to_string(r) + " has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(m.cols()));
    Index c = 0;
    for (const auto& entry : row) m(r, c++) = as_real(entry, where);
    ++r;
  }
  return m;
}

SolverOptions options_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": \"options\" must be an object");
  reject_unknown_keys(j,
                      {"grad_tol", "max_iter", "damping_floor", "divergence_norm", "armijo_c",
                       "armijo_backtrack", "max_backtracks", "stall_window"},
                      where + ": options");
  SolverOptions o;
  if (j.contains("grad_tol")) o.grad_tol = as_real(j["grad_tol"], where + ": grad_tol");
  if (j.contains("max_iter")) o.max_iter = static_cast<int>(as_real(j["max_iter"], where + ": max_iter"));
  if (j.contains("damping_floor"))
    o.damping_floor = as_real(j["damping_floor"], where + ": damping_floor");
  if (j.contains("divergence_norm"))
    o.divergence_norm = as_real(j["divergence_norm"], where + ": divergence_norm");
  if (j.contains("armijo_c")) o.armijo_c = as_real(j["armijo_c"], where + ": armijo_c");
  if (j.contains("armijo_backtrack"))
    o.armijo_backtrack = as_real(j["armijo_backtrack"], where + ": armijo_backtrack");
  if (j.contains("max_backtracks"))
    o.max_backtracks = static_cast<int>(as_real(j["max_backtracks"], where + ": max_backtracks"));
  if (j.contains("stall_window"))
    o.stall_window = static_cast<int>(as_real(j["stall_window"], where + ": stall_window"));
  return o;
}

void dump_impl(const json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& item : j.items()) {
        out += pad_in + '"' + item.key() + "\": ";
        dump_impl(item.value(), out, depth + 1);
        if (++i < j.size()) out += ',';
        out += '\n';
      }
      out += pad + '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& entry : j)
        if (entry.is_array() || entry.is_object()) scalars = false;
      if (scalars) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_impl(j[i], out, depth);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_impl(j[i], out, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + ']';
      return;
    }
    case json::value_t::string:
      out += json(j.get<std::string>()).dump();  // escaping
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump_impl(j, out, 0);
  out += '\n';
  return out;
}

nlohmann::json vector_to_json(const RefConstVec& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

nlohmann::json matrix_to_json(const RefConstMat& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

InverseProblem problem_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": top level must be an object");
  reject_unknown_keys(j, {"A", "y", "box", "options"}, where);
  Matrix A = as_matrix(require_key(j, "A", where), where + ": A");
  Vector y = as_vector(require_key(j, "y", where), where + ": y");
  const json& jbox = require_key(j, "box", where);
  if (!jbox.is_object()) throw InvalidInput(where + ": \"box\" must be an object");
  reject_unknown_keys(jbox, {"lower", "upper"}, where + ": box");
  Vector lower = as_vector(require_key(jbox, "lower", where + ": box"), where + ": box.lower");
  Vector upper = as_vector(require_key(jbox, "upper", where + ": box"), where + ": box.upper");

  if (y.size() != A.rows())
    throw InvalidInput(where + ": y has " + std::to_string(y.size()) + " entries but A has " +
                       std::to_string(A.rows()) + " rows");
  if (lower.size() != A.cols() || upper.size() != A.cols())
    throw InvalidInput(where + ": box size " + std::to_string(lower.size()) + "/" +
                       std::to_string(upper.size()) + " does not match the " +
                       std::to_string(A.cols()) + " columns of A");

  SolverOptions options;
  if (j.contains("options")) options = options_from_json(j["options"], where);
  try {
    return InverseProblem(std::move(A), std::move(y), BoxDomain(std::move(lower), std::move(upper)),
                          options);
  } catch (const Error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

InverseProblem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ":" + line_qualified(text, e.byte) + ": " + e.what());
  }
  return problem_from_json(j, path);
}

nlohmann::json solution_to_json(const DualSolution& s) {
  json j;
  j["status"] = to_string(s.status);
  j["xi"] = vector_to_json(s.xi);
  j["lambda"] = vector_to_json(s.lambda);
  j["psi"] = s.psi_value;
  j["dual"] = s.dual_value;
  j["gap"] = s.gap;
  j["residual_inf"] = s.residual_inf;
  j["iterations"] = s.iterations;
  return j;
}

Vector parse_reals_line(const std::string& line, const std::string& where) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    std::string field = line.substr(pos, comma - pos);
    const auto first = field.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      throw InvalidInput(where + ": empty field at position " + std::to_string(values.size()));
    const auto last = field.find_last_not_of(" \t\r");
    field = field.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      values.push_back(v);
    } catch (const std::exception&) {
      throw InvalidInput(where + ": cannot parse \"" + field + "\" as a real");
    }
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  if (values.empty()) throw InvalidInput(where + ": no values found");
  Vector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
  return v;
}

Vector load_csv_vector(const std::string& source, const std::string& what) {
  std::ifstream in(source, std::ios::binary);
  if (!in) return parse_reals_line(source, what);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      return parse_reals_line(line, what + " (" + source + ")");
  }
  throw InvalidInput(what + " (" + source + "): file holds no data line");
}

void write_csv_matrix(std::ostream& os, const RefConstMat& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << format_real(m(r, c));
    }
    os << '\n';
  }
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return 0;
    case SolveStatus::InfeasibleDatum:
      return 2;
    case SolveStatus::RankDeficient:
      return 3;
    case SolveStatus::IterationLimit:
      return 4;
  }
  return 4;
}

}  // namespace entroinv
