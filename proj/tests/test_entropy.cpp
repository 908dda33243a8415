#include <cmath>

#include "doctest.h"
#include "entroinv/entropy.hpp"
#include "entroinv/rng.hpp"
#include "oracles.hpp"

using namespace entroinv;

namespace {

BoxDomain random_box(Rng& rng, Index n) {
  Vector lower = rng.vector(n, -2.0, 2.0);
  Vector upper = lower + rng.vector(n, 0.5, 3.0);
  return BoxDomain(std::move(lower), std::move(upper));
}

Vector random_interior(Rng& rng, const BoxDomain& box, double margin = 0.05) {
  Vector xi(box.size());
  for (Index j = 0; j < box.size(); ++j)
    xi[j] = box.lower()[j] + box.width()[j] * rng.uniform(margin, 1.0 - margin);
  return xi;
}

}  // namespace

TEST_CASE("log-partition pinned values") {
  const BoxDomain unit = BoxDomain::unit(1);
  CHECK(log_partition(Vector::Zero(1), unit) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  BoxDomain box(Vector{{-1.0, 0.0}}, Vector{{1.0, 2.0}});
  CHECK(log_partition(Vector{{1.0, -2.0}}, box) ==
        doctest::Approx(oracle::frozen::log_partition_1_m2).epsilon(1e-15));
  CHECK(partition_value(Vector{{1.0, -2.0}}, box) ==
        doctest::Approx(std::exp(oracle::frozen::log_partition_1_m2)).epsilon(1e-14));
}

TEST_CASE("log-partition matches the literal formula") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
    const Vector tau = rng.vector(box.size(), -8.0, 8.0);
    const double naive = oracle::naive_log_partition(tau, box.lower(), box.upper());
    CHECK(log_partition(tau, box) == doctest::Approx(naive).epsilon(1e-13));
  }
}

TEST_CASE("log-partition is finite where the literal formula overflows") {
  const BoxDomain unit = BoxDomain::unit(2);
  const Vector tau{{800.0, -800.0}};
  const double value = log_partition(tau, unit);
  CHECK(std::isfinite(value));
  CHECK(value == doctest::Approx(800.0).epsilon(1e-12));  // max(a t, b t) dominates
}

TEST_CASE("entropy pinned values") {
  const BoxDomain unit = BoxDomain::unit(1);
  CHECK(fermi_dirac_entropy(Vector{{0.25}}, unit) ==
        doctest::Approx(oracle::frozen::psi_quarter).epsilon(1e-15));

  const BoxDomain unit3 = BoxDomain::unit(3);
  CHECK(fermi_dirac_entropy(unit3.midpoint(), unit3) ==
        doctest::Approx(-oracle::frozen::three_log_two).epsilon(1e-15));
}

TEST_CASE("entropy minimum sits at the midpoint with value N ln(1/2)") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const BoxDomain box = random_box(rng, n);
    const double at_mid = fermi_dirac_entropy(box.midpoint(), box);
    CHECK(at_mid == doctest::Approx(n * oracle::frozen::log_half).epsilon(1e-13));
    const Vector xi = random_interior(rng, box);
    CHECK(fermi_dirac_entropy(xi, box) >= at_mid - 1e-14);
    CHECK(fermi_dirac_entropy(xi, box) < 0.0);
  }
}

TEST_CASE("entropy matches the literal formula") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
    const Vector xi = random_interior(rng, box, 0.01);
    const double naive = oracle::naive_entropy(xi, box.lower(), box.upper());
    CHECK(fermi_dirac_entropy(xi, box) == doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("limit form vanishes at vertices and increases along a ray to one") {
  Rng rng(37);
  const BoxDomain box = random_box(rng, 4);
  Vector vertex(4);
  for (Index j = 0; j < 4; ++j)
    vertex[j] = rng.uniform() < 0.5 ? box.lower()[j] : box.upper()[j];
  CHECK(fermi_dirac_entropy_limit(vertex, box) == doctest::Approx(0.0).epsilon(1e-15));

  double previous = fermi_dirac_entropy_limit(box.midpoint(), box);
  for (int i = 1; i <= 64; ++i) {
    const double t = static_cast<double>(i) / 64.0;
    const Vector xi = (1.0 - t) * box.midpoint() + t * vertex;
    const double value = fermi_dirac_entropy_limit(xi, box);
    CHECK(value > previous - 1e-15);
    previous = value;
  }
  CHECK(previous == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("limit and interior forms agree inside") {
  Rng rng(41);
  const BoxDomain box = random_box(rng, 5);
  const Vector xi = random_interior(rng, box, 0.02);
  CHECK(fermi_dirac_entropy_limit(xi, box) ==
        doctest::Approx(fermi_dirac_entropy(xi, box)).epsilon(1e-15));
}

TEST_CASE("gradient maps are mutually inverse") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
    Vector tau(box.size());
    for (Index j = 0; j < box.size(); ++j)
      tau[j] = rng.uniform(-8.0, 8.0) / box.half_width()[j];
    const Vector back = box_logit(box_logistic(tau, box), box);
    CHECK((back - tau).lpNorm<Eigen::Infinity>() <=
          1e-9 * (1.0 + tau.lpNorm<Eigen::Infinity>()));

    const Vector xi = random_interior(rng, box, 0.01);
    const Vector forth = box_logistic(box_logit(xi, box), box);
    CHECK((forth - xi).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("gradients match central differences") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const BoxDomain box = random_box(rng, rng.uniform_int(2, 5));
    const Vector tau = rng.vector(box.size(), -2.0, 2.0);
    const Vector fd_m = oracle::fd_gradient(
        [&](const oracle::Vector& t) { return log_partition(t, box); }, tau);
    CHECK((log_partition_gradient(tau, box) - fd_m).lpNorm<Eigen::Infinity>() <= 1e-7);
    CHECK(log_partition_gradient(tau, box) == box_logistic(tau, box));

    const Vector xi = random_interior(rng, box, 0.1);
    const Vector fd_psi = oracle::fd_gradient(
        [&](const oracle::Vector& x) { return fermi_dirac_entropy(x, box); }, xi);
    CHECK((box_logit(xi, box) - fd_psi).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("hessian diagonals match differentiated gradients") {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const BoxDomain box = random_box(rng, 3);
    const Vector tau = rng.vector(3, -2.0, 2.0);
    const oracle::Matrix jac_m = oracle::fd_jacobian(
        [&](const oracle::Vector& t) -> oracle::Vector { return box_logistic(t, box); }, tau);
    const Vector h = log_partition_hessian(tau, box);
    for (Index j = 0; j < 3; ++j) {
      CHECK(jac_m(j, j) == doctest::Approx(h[j]).epsilon(1e-6));
      for (Index k = 0; k < 3; ++k)
        if (k != j) CHECK(std::abs(jac_m(j, k)) <= 1e-8);  // coordinatewise map
    }

    const Vector xi = random_interior(rng, box, 0.1);
    const oracle::Matrix jac_psi = oracle::fd_jacobian(
        [&](const oracle::Vector& x) -> oracle::Vector { return box_logit(x, box); }, xi);
    const Vector g = entropy_hessian(xi, box);
    for (Index j = 0; j < 3; ++j) CHECK(jac_psi(j, j) == doctest::Approx(g[j]).epsilon(1e-5));
  }
}

TEST_CASE("hessians are exact reciprocals along conjugate pairs") {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const BoxDomain box = random_box(rng, 4);
    Vector tau(4);
    // |d tau| <= 4 keeps b - xi far enough from the rounding floor for the
    // direct route; the dual route is exercised under saturation below.
    for (Index j = 0; j < 4; ++j) tau[j] = rng.uniform(-4.0, 4.0) / box.half_width()[j];
    const Vector h = log_partition_hessian(tau, box);
    const Vector g = entropy_hessian(box_logistic(tau, box), box);
    const Vector g_dual = entropy_hessian_dual(tau, box);
    for (Index j = 0; j < 4; ++j) {
      CHECK(h[j] * g[j] == doctest::Approx(1.0).epsilon(1e-11));
      CHECK(h[j] * g_dual[j] == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("dual-route hessian stays on the identity under saturation") {
  // At |D tau| ~ 60 the image point rounds onto the boundary and the direct
  // route divides by zero; the dual route must not.
  const BoxDomain unit = BoxDomain::unit(2);
  const Vector tau{{60.0, -60.0}};
  const Vector h = log_partition_hessian(tau, unit);
  const Vector g_dual = entropy_hessian_dual(tau, unit);
  for (Index j = 0; j < 2; ++j) {
    CHECK(std::isfinite(g_dual[j]));
    CHECK(h[j] * g_dual[j] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("conjugacy: Fenchel-Young with equality on gradient pairs") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
    const Vector tau = rng.vector(box.size(), -4.0, 4.0);
    const Vector xi = random_interior(rng, box, 0.02);

    // Psi(xi) + M(tau) >= <tau, xi> always ...
    const double slack =
        fermi_dirac_entropy(xi, box) + log_partition(tau, box) - tau.dot(xi);
    CHECK(slack >= -1e-12);

    // ... with equality at xi = grad M(tau).
    const Vector paired = box_logistic(tau, box);
    const double at_pair =
        fermi_dirac_entropy(paired, box) + log_partition(tau, box) - tau.dot(paired);
    CHECK(std::abs(at_pair) <= 1e-11);
  }
}

TEST_CASE("bregman divergence: pinned value, positivity, identity of indiscernibles") {
  const BoxDomain unit = BoxDomain::unit(1);
  CHECK(bregman_divergence(Vector{{0.5}}, Vector{{0.25}}, unit) ==
        doctest::Approx(oracle::frozen::bregman_half_quarter).epsilon(1e-14));

  Rng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
    const Vector xi = random_interior(rng, box, 0.02);
    const Vector eta = random_interior(rng, box, 0.02);
    const double div = bregman_divergence(xi, eta, box);
    CHECK(div >= 0.0);
    CHECK(div == doctest::Approx(oracle::naive_bregman(xi, eta, box.lower(), box.upper()))
                     .epsilon(1e-10));
    CHECK(bregman_divergence(xi, xi, box) == doctest::Approx(0.0).epsilon(1e-15));
    if ((xi - eta).lpNorm<Eigen::Infinity>() > 1e-3) CHECK(div > 0.0);
  }
}

TEST_CASE("input validation") {
  const BoxDomain unit = BoxDomain::unit(2);
  CHECK_THROWS_AS(fermi_dirac_entropy(Vector::Zero(3), unit), InvalidInput);
  CHECK_THROWS_AS(fermi_dirac_entropy(Vector{{0.5, 1.0}}, unit), DomainViolation);
  CHECK_THROWS_AS(box_logit(Vector{{-0.1, 0.5}}, unit), DomainViolation);
  CHECK_THROWS_AS(BoxDomain(Vector{{0.0, 1.0}}, Vector{{1.0, 1.0}}), InvalidInput);
  CHECK_NOTHROW(fermi_dirac_entropy_limit(Vector{{0.0, 1.0}}, unit));
}
