#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "entroinv/io.hpp"
#include "entroinv/solver.hpp"

using namespace entroinv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "entroinv_io_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << body;
  return p;
}

}  // namespace

TEST_CASE("reals print at seventeen significant digits") {
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(-2.5) == "-2.5");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "null");
  CHECK(format_real(std::nan("")) == "null");
}

TEST_CASE("json dumps are deterministic and layout-stable") {
  nlohmann::json j;
  j["zeta"] = 1.0;
  j["alpha"] = nlohmann::json::array({1.0, 2.0});
  j["mid"]["inner"] = 0.5;

  const std::string expected =
      "{\n"
      "  \"alpha\": [1, 2],\n"
      "  \"mid\": {\n"
      "    \"inner\": 0.5\n"
      "  },\n"
      "  \"zeta\": 1\n"
      "}\n";
  CHECK(dump_json(j) == expected);

  // Insertion order must not matter.
  nlohmann::json k;
  k["mid"]["inner"] = 0.5;
  k["alpha"] = nlohmann::json::array({1.0, 2.0});
  k["zeta"] = 1.0;
  CHECK(dump_json(k) == expected);
}

TEST_CASE("vectors and matrices round-trip through json") {
  Vector v{{0.1, -2.0, 3.5}};
  const nlohmann::json jv = vector_to_json(v);
  REQUIRE(jv.is_array());
  REQUIRE(jv.size() == 3);
  CHECK(jv[0].get<double>() == 0.1);
  CHECK(jv[2].get<double>() == 3.5);

  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const nlohmann::json jm = matrix_to_json(m);
  REQUIRE(jm.size() == 2);
  CHECK(jm[1][0].get<double>() == 3.0);
}

TEST_CASE("problem documents parse with strict keys") {
  nlohmann::json j;
  j["A"] = {{1.0, 1.0}};
  j["y"] = {1.0};
  j["box"]["lower"] = {0.0, 0.0};
  j["box"]["upper"] = {1.0, 1.0};

  const InverseProblem p = problem_from_json(j, "doc");
  CHECK(p.A.rows() == 1);
  CHECK(p.A.cols() == 2);
  CHECK(p.y[0] == 1.0);
  CHECK(p.box.upper()[1] == 1.0);
  CHECK(p.options.grad_tol == 1e-10);  // defaults apply without an options block

  j["options"]["grad_tol"] = 1e-8;
  j["options"]["max_iter"] = 50;
  const InverseProblem q = problem_from_json(j, "doc");
  CHECK(q.options.grad_tol == 1e-8);
  CHECK(q.options.max_iter == 50);
}

TEST_CASE("unknown or missing keys are named in the error") {
  nlohmann::json j;
  j["A"] = {{1.0, 1.0}};
  j["y"] = {1.0};
  j["box"]["lower"] = {0.0, 0.0};
  j["box"]["upper"] = {1.0, 1.0};

  nlohmann::json extra = j;
  extra["typo"] = 1;
  CHECK_THROWS_WITH_AS(problem_from_json(extra, "doc"), "doc: unknown key \"typo\"",
                       InvalidInput);

  nlohmann::json in_box = j;
  in_box["box"]["margin"] = 0.1;
  CHECK_THROWS_WITH_AS(problem_from_json(in_box, "doc"), "doc: box: unknown key \"margin\"",
                       InvalidInput);

  nlohmann::json no_box = j;
  no_box.erase("box");
  CHECK_THROWS_WITH_AS(problem_from_json(no_box, "doc"), "doc: missing key \"box\"",
                       InvalidInput);

  nlohmann::json bad_dim = j;
  bad_dim["y"] = {1.0, 2.0};
  try {
    problem_from_json(bad_dim, "doc");
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2 entries") != std::string::npos);
    CHECK(msg.find("1 rows") != std::string::npos);
  }
}

TEST_CASE("problem files load and fail with located errors") {
  const fs::path good = write_file("good.json",
                                   "{\"A\": [[1, 1]], \"y\": [1.0],"
                                   " \"box\": {\"lower\": [0, 0], \"upper\": [1, 1]}}\n");
  const InverseProblem p = load_problem(good.string());
  CHECK(p.unknowns() == 2);

  try {
    load_problem((scratch_dir() / "absent.json").string());
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("absent.json") != std::string::npos);
    CHECK(msg.find("cannot open") != std::string::npos);
  }

  const fs::path broken = write_file("broken.json", "{\n  \"A\": [[1, 1]],\n  !!\n}\n");
  try {
    load_problem(broken.string());
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("broken.json:3") != std::string::npos);
  }
}

TEST_CASE("solution documents carry the full certificate") {
  Matrix A(1, 2);
  A << 1.0, 1.0;
  const InverseProblem p(A, Vector{{1.0}}, BoxDomain::unit(2));
  const DualSolution s = solve_dual(p);
  const nlohmann::json j = solution_to_json(s);
  CHECK(j["status"].get<std::string>() == "Converged");
  CHECK(j["xi"].size() == 2);
  CHECK(j["lambda"].size() == 1);
  CHECK(j.contains("psi"));
  CHECK(j.contains("dual"));
  CHECK(j.contains("gap"));
  CHECK(j.contains("residual_inf"));
  CHECK(j.contains("iterations"));
}

TEST_CASE("csv lines parse strictly") {
  const Vector v = parse_reals_line(" 1, 2.5 ,3e-1", "row");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == 2.5);
  CHECK(v[2] == 0.3);
  CHECK_THROWS_AS(parse_reals_line("1,,2", "row"), InvalidInput);
  CHECK_THROWS_AS(parse_reals_line("1,two", "row"), InvalidInput);
  CHECK_THROWS_AS(parse_reals_line("1 2", "row"), InvalidInput);
  CHECK_THROWS_AS(parse_reals_line("", "row"), InvalidInput);
}

TEST_CASE("csv vectors come from files or inline text") {
  const fs::path csv = write_file("marg.csv", "\n0.5, 0.5\n0.9, 0.1\n");
  const Vector from_file = load_csv_vector(csv.string(), "rows");
  REQUIRE(from_file.size() == 2);  // first non-empty line only
  CHECK(from_file[0] == 0.5);

  const Vector inline_vec = load_csv_vector("1,2,3", "rows");
  REQUIRE(inline_vec.size() == 3);
  CHECK(inline_vec[2] == 3.0);
}

TEST_CASE("csv matrices print full precision rows") {
  Matrix m(2, 2);
  m << 0.1, 1.0, 2.0, 3.0;
  std::ostringstream os;
  write_csv_matrix(os, m);
  CHECK(os.str() == "0.10000000000000001,1\n2,3\n");
}

TEST_CASE("exit codes follow the status contract") {
  CHECK(exit_code(SolveStatus::Converged) == 0);
  CHECK(exit_code(SolveStatus::InfeasibleDatum) == 2);
  CHECK(exit_code(SolveStatus::RankDeficient) == 3);
  CHECK(exit_code(SolveStatus::IterationLimit) == 4);
}
