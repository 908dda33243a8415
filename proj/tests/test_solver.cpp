#include <cmath>
#include <string>

#include "doctest.h"
#include "entroinv/entropy.hpp"
#include "entroinv/rng.hpp"
#include "entroinv/solver.hpp"
#include "oracles.hpp"

using namespace entroinv;

namespace {

BoxDomain random_box(Rng& rng, Index n) {
  Vector lower = rng.vector(n, -2.0, 2.0);
  Vector upper = lower + rng.vector(n, 0.5, 3.0);
  return BoxDomain(std::move(lower), std::move(upper));
}

// Feasible by construction: y is the image of an interior seed point.
InverseProblem random_feasible(Rng& rng, Index max_n, Index max_k) {
  const Index k = rng.uniform_int(1, static_cast<int>(max_k));
  const Index n = rng.uniform_int(std::max<int>(static_cast<int>(k), 2), static_cast<int>(max_n));
  Matrix A(k, n);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
  BoxDomain box = random_box(rng, n);
  Vector seed(n);
  for (Index j = 0; j < n; ++j)
    seed[j] = box.lower()[j] + box.width()[j] * rng.uniform(0.15, 0.85);
  Vector y = A * seed;
  return InverseProblem(std::move(A), std::move(y), std::move(box));
}

}  // namespace

TEST_CASE("fully symmetric instance solves in closed form") {
  Matrix A(1, 2);
  A << 1.0, 1.0;
  const InverseProblem p(A, Vector{{1.0}}, BoxDomain::unit(2));
  const DualSolution s = solve_dual(p);
  CHECK(s.status == SolveStatus::Converged);
  CHECK(s.lambda[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.xi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.xi[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(s.gap) <= 1e-10);
  CHECK(s.residual_inf <= 1e-10);
}

TEST_CASE("identity operator reproduces the datum with logit multipliers") {
  const InverseProblem p(Matrix::Identity(2, 2), Vector{{0.3, 0.7}}, BoxDomain::unit(2));
  const DualSolution s = solve_dual(p);
  CHECK(s.status == SolveStatus::Converged);
  CHECK(s.xi[0] == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(s.xi[1] == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(s.lambda[0] == doctest::Approx(oracle::frozen::log_three_sevenths).epsilon(1e-9));
  CHECK(s.lambda[1] == doctest::Approx(-oracle::frozen::log_three_sevenths).epsilon(1e-9));
}

TEST_CASE("single-row instance has a closed-form multiplier") {
  Matrix A(1, 1);
  A << 2.0;
  const InverseProblem p(A, Vector{{1.2}}, BoxDomain::unit(1));
  const DualSolution s = solve_dual(p);
  CHECK(s.status == SolveStatus::Converged);
  CHECK(s.xi[0] == doctest::Approx(0.6).epsilon(1e-11));
  // 2 logistic(2 lambda) = 1.2  =>  lambda = ln(3/2) / 2.
  CHECK(s.lambda[0] == doctest::Approx(oracle::frozen::half_log_three_halves).epsilon(1e-9));
}

TEST_CASE("random feasible instances converge with certificates") {
  Rng rng(211);
  for (int trial = 0; trial < 25; ++trial) {
    const InverseProblem p = random_feasible(rng, 8, 4);
    const DualSolution s = solve_dual(p);
    REQUIRE(s.status == SolveStatus::Converged);
    CHECK(std::abs(s.gap) <= 1e-8);
    CHECK(s.residual_inf <= 1e-8);
    CHECK(std::abs(duality_gap(s, p)) <= 1e-8);
    CHECK(p.box.is_interior(s.xi));

    // The accepted trace is a nondecreasing ascent ending at the optimum.
    for (size_t i = 1; i < s.dual_trace.size(); ++i)
      CHECK(s.dual_trace[i] >= s.dual_trace[i - 1] - 1e-12);
    CHECK(s.grad_trace.back() <= p.options.grad_tol);

    // Solution and value recompute from the multiplier alone.
    CHECK((surface_point(s.lambda, p) - s.xi).lpNorm<Eigen::Infinity>() <= 1e-15);
    const auto [value, grad] = dual_objective(s.lambda, p);
    CHECK(value == doctest::Approx(s.dual_value).epsilon(1e-12));
    CHECK(grad.lpNorm<Eigen::Infinity>() <= p.options.grad_tol);
  }
}

TEST_CASE("dual objective matches its definition") {
  Rng rng(223);
  const InverseProblem p = random_feasible(rng, 5, 3);
  const Vector lambda = rng.vector(p.observations(), -0.5, 0.5);
  const auto [value, grad] = dual_objective(lambda, p);
  const double naive = lambda.dot(p.y) -
                       oracle::naive_log_partition(p.A.transpose() * lambda, p.box.lower(),
                                                   p.box.upper());
  CHECK(value == doctest::Approx(naive).epsilon(1e-12));
  const oracle::Vector fd = oracle::fd_gradient(
      [&](const oracle::Vector& l) { return dual_objective(l, p).first; }, lambda);
  CHECK((grad - fd).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("datum outside the attainable set is flagged, not fitted") {
  Matrix A(1, 2);
  A << 1.0, 1.0;
  SUBCASE("above the box image") {
    const InverseProblem p(A, Vector{{3.0}}, BoxDomain::unit(2));
    const DualSolution s = solve_dual(p);
    CHECK(s.status == SolveStatus::InfeasibleDatum);
  }
  SUBCASE("below the box image") {
    const InverseProblem p(A, Vector{{-0.5}}, BoxDomain::unit(2));
    const DualSolution s = solve_dual(p);
    CHECK(s.status == SolveStatus::InfeasibleDatum);
  }
  SUBCASE("inconsistent duplicated rows never converge") {
    Matrix dup(2, 2);
    dup << 1.0, 1.0, 1.0, 1.0;
    const InverseProblem p(dup, Vector{{1.0, 1.5}}, BoxDomain::unit(2));
    const DualSolution s = solve_dual(p);
    CHECK(s.status == SolveStatus::InfeasibleDatum);
    CHECK(s.iterations == 0);  // range test fires before any ascent step
  }
}

TEST_CASE("consistent duplicated rows give the minimum-norm multiplier") {
  Matrix dup(2, 2);
  dup << 1.0, 1.0, 1.0, 1.0;
  const InverseProblem p(dup, Vector{{1.2, 1.2}}, BoxDomain::unit(2));
  const DualSolution s = solve_dual(p);
  CHECK(s.status == SolveStatus::Converged);
  CHECK(s.residual_inf <= 1e-9);
  // ker(A^T) = span{(1,-1)}: the minimum-norm multiplier has equal entries.
  CHECK(s.lambda[0] == doctest::Approx(s.lambda[1]).epsilon(1e-10));
}

TEST_CASE("feasibility probe certifies single-row instances exactly") {
  Matrix A(1, 2);
  A << 2.0, -1.0;
  const BoxDomain box = BoxDomain::unit(2);
  // Attainable open interval of 2 x1 - x2 on (0,1)^2 is (-1, 2).
  CHECK(feasibility_probe(InverseProblem(A, Vector{{0.5}}, box)) ==
        Feasibility::InteriorCertified);
  CHECK(feasibility_probe(InverseProblem(A, Vector{{2.0}}, box)) ==
        Feasibility::BoundaryOrExterior);
  CHECK(feasibility_probe(InverseProblem(A, Vector{{-1.3}}, box)) ==
        Feasibility::BoundaryOrExterior);

  Matrix two(2, 2);
  two << 1.0, 0.0, 0.0, 1.0;
  const InverseProblem multi(two, Vector{{0.5, 0.5}}, box);
  CHECK(feasibility_probe(multi) == Feasibility::Unknown);
  const DualSolution s = solve_dual(multi);
  CHECK(feasibility_probe(multi, s) == Feasibility::InteriorCertified);
}

TEST_CASE("row scaling leaves the solution invariant and rescales multipliers") {
  Rng rng(227);
  const InverseProblem p = random_feasible(rng, 6, 3);
  const double c = 3.7;
  const InverseProblem scaled(c * p.A, c * p.y, p.box);
  const DualSolution s = solve_dual(p);
  const DualSolution t = solve_dual(scaled);
  REQUIRE(s.status == SolveStatus::Converged);
  REQUIRE(t.status == SolveStatus::Converged);
  CHECK((s.xi - t.xi).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK((c * t.lambda - s.lambda).lpNorm<Eigen::Infinity>() <=
        1e-7 * (1.0 + s.lambda.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("multiplier sensitivity matches re-solve differences") {
  Rng rng(229);
  SolverOptions tight;
  tight.grad_tol = 1e-13;
  InverseProblem p = random_feasible(rng, 5, 3);
  p.options = tight;
  const DualSolution s = solve_dual(p);
  REQUIRE(s.status == SolveStatus::Converged);

  const Matrix jac = multiplier_sensitivity(s, p);
  const oracle::Matrix fd = oracle::fd_jacobian(
      [&](const oracle::Vector& y) -> oracle::Vector {
        return solve_dual(InverseProblem(p.A, y, p.box, tight)).lambda;
      },
      p.y);
  CHECK((jac - fd).lpNorm<Eigen::Infinity>() <= 1e-4 * (1.0 + jac.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("first-order solution response has quadratic error decay") {
  Rng rng(233);
  const InverseProblem p = random_feasible(rng, 6, 3);
  const DualSolution s = solve_dual(p);
  REQUIRE(s.status == SolveStatus::Converged);

  Vector dy = rng.vector(p.observations(), -1.0, 1.0);
  dy *= 1e-3 / dy.lpNorm<Eigen::Infinity>();

  auto resolve_error = [&](const Vector& step) {
    const DualSolution moved = solve_dual(InverseProblem(p.A, p.y + step, p.box));
    REQUIRE(moved.status == SolveStatus::Converged);
    return (moved.xi - s.xi - solution_sensitivity(s, p, step)).norm();
  };
  const double e1 = resolve_error(dy);
  const double e2 = resolve_error(0.5 * dy);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("sensitivity refuses rank-deficient operators") {
  Matrix dup(2, 2);
  dup << 1.0, 1.0, 1.0, 1.0;
  const InverseProblem p(dup, Vector{{1.2, 1.2}}, BoxDomain::unit(2));
  const DualSolution s = solve_dual(p);
  REQUIRE(s.status == SolveStatus::Converged);
  CHECK_THROWS_AS(multiplier_sensitivity(s, p), RankDeficientError);
}

TEST_CASE("iteration budget is honoured") {
  Rng rng(239);
  SolverOptions one;
  one.max_iter = 1;
  Matrix A(2, 4);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 4; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
  Vector seed{{0.2, 0.8, 0.3, 0.7}};
  const InverseProblem p(A, A * seed, BoxDomain::unit(4), one);
  const DualSolution s = solve_dual(p);
  CHECK(s.status == SolveStatus::IterationLimit);
  CHECK(s.iterations <= 1);
}

TEST_CASE("problem validation rejects malformed inputs") {
  Matrix A(1, 2);
  A << 1.0, 1.0;
  CHECK_THROWS_AS(InverseProblem(A, Vector::Zero(2), BoxDomain::unit(2)), InvalidInput);
  CHECK_THROWS_AS(InverseProblem(A, Vector{{1.0}}, BoxDomain::unit(3)), InvalidInput);
  Vector bad(1);
  bad << std::nan("");
  CHECK_THROWS_AS(InverseProblem(A, bad, BoxDomain::unit(2)), InvalidInput);
}

TEST_CASE("status names are stable") {
  CHECK(std::string(to_string(SolveStatus::Converged)) == "Converged");
  CHECK(std::string(to_string(SolveStatus::InfeasibleDatum)) == "InfeasibleDatum");
  CHECK(std::string(to_string(SolveStatus::RankDeficient)) == "RankDeficient");
  CHECK(std::string(to_string(SolveStatus::IterationLimit)) == "IterationLimit");
}
