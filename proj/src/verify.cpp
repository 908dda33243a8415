#include "entroinv/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <ostream>

#include "entroinv/entropy.hpp"
#include "entroinv/errors.hpp"
#include "entroinv/geometry.hpp"
#include "entroinv/reference_solver.hpp"
#include "entroinv/rng.hpp"
#include "entroinv/solver.hpp"

namespace entroinv {
namespace {

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, false, std::move(detail)};
}

CheckResult audit(std::string name, std::string detail) {
  return CheckResult{std::move(name), true, true, std::move(detail)};
}

BoxDomain random_box(Rng& rng, Index n, double margin_rel = 1e-12) {
  Vector lower = rng.vector(n, -2.0, 2.0);
  Vector width = rng.vector(n, 0.5, 3.0);
  return BoxDomain(lower, lower + width, margin_rel);
}

// tau with |d_j tau_j| <= bound componentwise.
Vector random_tau(Rng& rng, const BoxDomain& box, double bound) {
  Vector tau(box.size());
  for (Index j = 0; j < box.size(); ++j)
    tau[j] = rng.uniform(-bound, bound) / box.half_width()[j];
  return tau;
}

// a + r * D with r uniform in [margin, 1 - margin].
Vector random_interior(Rng& rng, const BoxDomain& box, double margin = 0.1) {
  Vector xi(box.size());
  for (Index j = 0; j < box.size(); ++j)
    xi[j] = box.lower()[j] + rng.uniform(margin, 1.0 - margin) * box.width()[j];
  return xi;
}

// Feasible by construction: y is the image of an interior point.
InverseProblem random_instance(Rng& rng, int k_max, int n_max) {
  const int k = rng.uniform_int(1, k_max);
  const int n = rng.uniform_int(std::max(k, 2), n_max);
  Matrix A(k, n);
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < n; ++c) A(r, c) = rng.uniform(-1.0, 1.0);
  BoxDomain box = random_box(rng, n);
  const Vector xi_seed = random_interior(rng, box, 0.15);
  Vector y = A * xi_seed;
  return InverseProblem(std::move(A), std::move(y), std::move(box));
}

// Full-row-rank random operator (resampled until comfortably conditioned).
Matrix random_full_rank(Rng& rng, Index k, Index n) {
  for (;;) {
    Matrix A(k, n);
    for (Index r = 0; r < k; ++r)
      for (Index c = 0; c < n; ++c) A(r, c) = rng.uniform(-1.0, 1.0);
    Eigen::JacobiSVD<Matrix> svd(A);
    if (svd.singularValues()(k - 1) > 1e-3 * svd.singularValues()(0)) return A;
  }
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  // panels must be even
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// ---------------------------------------------------------------- entropy --

std::vector<CheckResult> entropy_checks(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  {  // M(0) = N ln 2 and the entropy minimum at the midpoint, any box
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 8));
      const double n = static_cast<double>(box.size());
      dev = std::max(dev, std::abs(log_partition(Vector::Zero(box.size()), box) - n * std::log(2.0)));
      dev = std::max(dev, std::abs(fermi_dirac_entropy(box.midpoint(), box) + n * std::log(2.0)));
    }
    out.push_back(check("entropy/log-partition-at-zero", dev <= 1e-12, fmt("max_dev=%.3e", dev)));
  }

  {  // gradient maps invert each other on the open box
    double dev = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector tau = random_tau(rng, box, 7.0);
      const Vector xi = random_interior(rng, box, 0.05);
      dev = std::max(dev, (box_logit(box_logistic(tau, box), box) - tau).cwiseAbs().maxCoeff() /
                              (1.0 + tau.cwiseAbs().maxCoeff()));
      dev = std::max(dev, (box_logistic(box_logit(xi, box), box) - xi).cwiseAbs().maxCoeff() /
                              (1.0 + xi.cwiseAbs().maxCoeff()));
    }
    out.push_back(check("entropy/gradient-pair-inverse", dev <= 1e-10, fmt("max_dev=%.3e", dev)));
  }

  {  // grad M against central differences of M
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
      const Vector tau = random_tau(rng, box, 4.0);
      const Vector phi = box_logistic(tau, box);
      for (Index j = 0; j < box.size(); ++j) {
        const double h = 1e-6;
        Vector tp = tau, tm = tau;
        tp[j] += h;
        tm[j] -= h;
        const double fd = (log_partition(tp, box) - log_partition(tm, box)) / (2 * h);
        dev = std::max(dev, std::abs(fd - phi[j]) / (1.0 + std::abs(phi[j])));
      }
    }
    out.push_back(check("entropy/log-partition-gradient-fd", dev <= 1e-6, fmt("max_dev=%.3e", dev)));
  }

  {  // grad Psi against central differences of Psi
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
      const Vector xi = random_interior(rng, box, 0.1);
      const Vector chi = box_logit(xi, box);
      for (Index j = 0; j < box.size(); ++j) {
        const double h = 1e-6 * box.width()[j];
        Vector xp = xi, xm = xi;
        xp[j] += h;
        xm[j] -= h;
        const double fd =
            (fermi_dirac_entropy(xp, box) - fermi_dirac_entropy(xm, box)) / (2 * h);
        dev = std::max(dev, std::abs(fd - chi[j]) / (1.0 + std::abs(chi[j])));
      }
    }
    out.push_back(check("entropy/entropy-gradient-fd", dev <= 1e-6, fmt("max_dev=%.3e", dev)));
  }

  {  // curvatures against central differences of the gradients
    double dev = 0.0;
    for (int rep = 0; rep < 15; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
      const Vector tau = random_tau(rng, box, 4.0);
      const Vector h_diag = log_partition_hessian(tau, box);
      const Vector xi = random_interior(rng, box, 0.1);
      const Vector g_diag = entropy_hessian(xi, box);
      for (Index j = 0; j < box.size(); ++j) {
        const double ht = 1e-6;
        Vector tp = tau, tm = tau;
        tp[j] += ht;
        tm[j] -= ht;
        const double fd_h =
            (box_logistic(tp, box)[j] - box_logistic(tm, box)[j]) / (2 * ht);
        dev = std::max(dev, std::abs(fd_h - h_diag[j]) / (1.0 + std::abs(h_diag[j])));
        const double hx = 1e-6 * box.width()[j];
        Vector xp = xi, xm = xi;
        xp[j] += hx;
        xm[j] -= hx;
        const double fd_g = (box_logit(xp, box)[j] - box_logit(xm, box)[j]) / (2 * hx);
        dev = std::max(dev, std::abs(fd_g - g_diag[j]) / (1.0 + std::abs(g_diag[j])));
      }
    }
    out.push_back(check("entropy/hessian-fd", dev <= 1e-5, fmt("max_dev=%.3e", dev)));
  }

  {  // h(tau) * g(phi(tau)) = 1 through the saturation-stable route
    double dev = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector tau = random_tau(rng, box, 20.0);
      const Vector prod =
          log_partition_hessian(tau, box).cwiseProduct(entropy_hessian_dual(tau, box));
      dev = std::max(dev, (prod.array() - 1.0).abs().maxCoeff());
    }
    out.push_back(check("entropy/hessian-reciprocal", dev <= 1e-9, fmt("max_dev=%.3e", dev)));
  }

  {  // conjugacy: Psi(xi) + M(tau) >= <tau, xi>, equality at xi = phi(tau)
    double worst_slack = 0.0;  // most negative slack seen
    double eq_dev = 0.0;
    for (int rep = 0; rep < 60; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector tau = random_tau(rng, box, 5.0);
      const Vector xi = random_interior(rng, box, 0.05);
      const double m = log_partition(tau, box);
      const double slack = fermi_dirac_entropy(xi, box) + m - tau.dot(xi);
      worst_slack = std::min(worst_slack, slack);
      const Vector phi = box_logistic(tau, box);
      eq_dev = std::max(eq_dev, std::abs(fermi_dirac_entropy(phi, box) + m - tau.dot(phi)) /
                                    (1.0 + std::abs(m)));
    }
    out.push_back(check("entropy/fenchel-young", worst_slack >= -1e-12 && eq_dev <= 1e-10,
                        fmt("min_slack=%.3e eq_dev=%.3e", worst_slack, eq_dev)));
  }

  {  // Bregman divergence: nonnegative, zero only on the diagonal
    double min_val = 0.0, diag_dev = 0.0;
    bool separated = true;
    for (int rep = 0; rep < 60; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector xi = random_interior(rng, box, 0.05);
      const Vector eta = random_interior(rng, box, 0.05);
      const double b = bregman_divergence(xi, eta, box);
      min_val = std::min(min_val, b);
      diag_dev = std::max(diag_dev, std::abs(bregman_divergence(xi, xi, box)));
      if ((xi - eta).cwiseAbs().maxCoeff() > 1e-3 * box.width().minCoeff() && b <= 0.0)
        separated = false;
    }
    out.push_back(check("entropy/bregman-nonnegative",
                        min_val >= -1e-15 && diag_dev <= 1e-14 && separated,
                        fmt("min=%.3e diag_dev=%.3e", min_val, diag_dev)));
  }

  {  // range [N ln(1/2), 0); vertices reach 0 in the limit form
    bool ok = true;
    double vertex_dev = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const double floor = static_cast<double>(box.size()) * std::log(0.5);
      const double psi = fermi_dirac_entropy(random_interior(rng, box, 0.02), box);
      if (!(psi >= floor - 1e-12 && psi < 0.0)) ok = false;
      Vector vertex(box.size());
      for (Index j = 0; j < box.size(); ++j)
        vertex[j] = rng.uniform() < 0.5 ? box.lower()[j] : box.upper()[j];
      vertex_dev = std::max(vertex_dev, std::abs(fermi_dirac_entropy_limit(vertex, box)));
    }
    out.push_back(
        check("entropy/value-range", ok && vertex_dev <= 1e-12, fmt("vertex_dev=%.3e", vertex_dev)));
  }

  return out;
}

// --------------------------------------------------------------- geometry --

std::vector<CheckResult> geometry_checks(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  {  // chart round trips
    double dev = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector tau = random_tau(rng, box, 15.0);
      dev = std::max(dev, (tau_from_angle(tau_angle(tau, box), box) - tau).cwiseAbs().maxCoeff() /
                              (1.0 + tau.cwiseAbs().maxCoeff()));
      const Vector xi = random_interior(rng, box, 0.02);
      dev = std::max(dev, (xi_from_angle(xi_angle(xi, box), box) - xi).cwiseAbs().maxCoeff() /
                              (1.0 + xi.cwiseAbs().maxCoeff()));
    }
    out.push_back(check("geometry/chart-roundtrip", dev <= 1e-10, fmt("max_dev=%.3e", dev)));
  }

  {  // chart derivatives are the metric square roots
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
      const Vector tau = random_tau(rng, box, 4.0);
      const Vector root_h = log_partition_hessian(tau, box).cwiseSqrt();
      const Vector xi = random_interior(rng, box, 0.1);
      const Vector root_g = entropy_hessian(xi, box).cwiseSqrt();
      for (Index j = 0; j < box.size(); ++j) {
        const double ht = 1e-6;
        Vector tp = tau, tm = tau;
        tp[j] += ht;
        tm[j] -= ht;
        const double fd_v = (tau_angle(tp, box)[j] - tau_angle(tm, box)[j]) / (2 * ht);
        dev = std::max(dev, std::abs(fd_v - root_h[j]) / (1.0 + root_h[j]));
        const double hx = 1e-6 * box.width()[j];
        Vector xp = xi, xm = xi;
        xp[j] += hx;
        xm[j] -= hx;
        const double fd_u = (xi_angle(xp, box)[j] - xi_angle(xm, box)[j]) / (2 * hx);
        dev = std::max(dev, std::abs(fd_u - root_g[j]) / (1.0 + root_g[j]));
      }
    }
    out.push_back(check("geometry/chart-derivative-fd", dev <= 1e-6, fmt("max_dev=%.3e", dev)));
  }

  {  // the two charts agree through the gradient map
    double dev_fused = 0.0, dev_direct = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector tau_wide = random_tau(rng, box, 20.0);
      dev_fused = std::max(dev_fused, (xi_angle_at_dual(tau_wide, box) - tau_angle(tau_wide, box))
                                          .cwiseAbs()
                                          .maxCoeff());
      const Vector tau = random_tau(rng, box, 8.0);
      dev_direct = std::max(dev_direct, (xi_angle(box_logistic(tau, box), box) -
                                         tau_angle(tau, box))
                                            .cwiseAbs()
                                            .maxCoeff());
    }
    out.push_back(check("geometry/chart-transport-pointwise",
                        dev_fused <= 1e-10 && dev_direct <= 1e-10,
                        fmt("fused=%.3e direct=%.3e", dev_fused, dev_direct)));
  }

  {  // geodesic endpoints and chart affinity
    double end_dev = 0.0, affine_dev = 0.0;
    for (int rep = 0; rep < 25; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const GeodesicPath tg =
          GeodesicPath::between_tau(random_tau(rng, box, 6.0), random_tau(rng, box, 6.0), box);
      const GeodesicPath xg = GeodesicPath::between_xi(random_interior(rng, box, 0.05),
                                                       random_interior(rng, box, 0.05), box);
      for (const GeodesicPath* path : {&tg, &xg}) {
        end_dev = std::max(end_dev, (path->evaluate(0.0) - path->start()).cwiseAbs().maxCoeff());
        end_dev = std::max(end_dev, (path->evaluate(1.0) - path->end()).cwiseAbs().maxCoeff());
        affine_dev = std::max(affine_dev, path->chart_affinity_deviation(65));
      }
    }
    out.push_back(check("geometry/geodesic-endpoints", end_dev <= 1e-10, fmt("max_dev=%.3e", end_dev)));
    out.push_back(
        check("geometry/chart-affinity", affine_dev <= 1e-10, fmt("max_dev=%.3e", affine_dev)));
  }

  {  // quadrature arc length equals the chart-norm distance
    double dev = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 4));
      const GeodesicPath tg =
          GeodesicPath::between_tau(random_tau(rng, box, 5.0), random_tau(rng, box, 5.0), box);
      const GeodesicPath xg = GeodesicPath::between_xi(random_interior(rng, box, 0.1),
                                                       random_interior(rng, box, 0.1), box);
      const double dt = 1e-6;
      auto tau_speed = [&](double t) {
        const Vector vel = (tg.evaluate(t + dt) - tg.evaluate(t - dt)) / (2 * dt);
        return std::sqrt(
            log_partition_hessian(tg.evaluate(t), box).cwiseProduct(vel.cwiseAbs2()).sum());
      };
      auto xi_speed = [&](double t) {
        const Vector vel = (xg.evaluate(t + dt) - xg.evaluate(t - dt)) / (2 * dt);
        return std::sqrt(entropy_hessian(xg.evaluate(t), box).cwiseProduct(vel.cwiseAbs2()).sum());
      };
      dev = std::max(dev, std::abs(simpson(tau_speed, 0.0, 1.0, 256) - tg.length()) /
                              (1.0 + tg.length()));
      dev = std::max(dev, std::abs(simpson(xi_speed, 0.0, 1.0, 256) - xg.length()) /
                              (1.0 + xg.length()));
    }
    out.push_back(check("geometry/arc-length-quadrature", dev <= 1e-6, fmt("max_dev=%.3e", dev)));
  }

  {  // closed form against RK4 on the Euler-Lagrange equation
    double dev = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 4));
      const GeodesicPath path = GeodesicPath::between_xi(random_interior(rng, box, 0.15),
                                                         random_interior(rng, box, 0.15), box);
      // exact initial velocity of the closed form: d/dt u^{-1}(w0 + t dw)
      const Vector dw = path.chart_end() - path.chart_start();
      Vector pos = path.start();
      Vector vel =
          box.half_width().cwiseProduct(path.chart_start().array().sin().matrix()).cwiseProduct(dw);
      auto accel = [&](const Vector& x, const Vector& v) -> Vector {
        Vector a(x.size());
        for (Index j = 0; j < x.size(); ++j) {
          const double pa = x[j] - box.lower()[j];
          const double pb = box.upper()[j] - x[j];
          a[j] = -0.5 * (pa - pb) / (pa * pb) * v[j] * v[j];
        }
        return a;
      };
      const int steps = 800;
      const double h = 1.0 / steps;
      for (int i = 0; i < steps; ++i) {
        const Vector k1p = vel, k1v = accel(pos, vel);
        const Vector k2p = vel + 0.5 * h * k1v, k2v = accel(pos + 0.5 * h * k1p, vel + 0.5 * h * k1v);
        const Vector k3p = vel + 0.5 * h * k2v, k3v = accel(pos + 0.5 * h * k2p, vel + 0.5 * h * k2v);
        const Vector k4p = vel + h * k3v, k4v = accel(pos + h * k3p, vel + h * k3v);
        pos += (h / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p);
        vel += (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v);
        if ((i + 1) % (steps / 4) == 0) {
          const double t = static_cast<double>(i + 1) * h;
          dev = std::max(dev, (pos - path.evaluate(t)).cwiseAbs().maxCoeff());
        }
      }
    }
    out.push_back(check("geometry/geodesic-ode-rk4", dev <= 1e-6, fmt("max_dev=%.3e", dev)));
  }

  {  // the gradient map carries tau-geodesics onto xi-geodesics
    double dev = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      dev = std::max(dev, transport_deviation(random_tau(rng, box, 6.0),
                                              random_tau(rng, box, 6.0), box, 33));
    }
    out.push_back(check("geometry/gradient-map-transport", dev <= 1e-9, fmt("max_dev=%.3e", dev)));
  }

  {  // the same interval length measured in either chart
    double dev = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const Vector t0 = random_tau(rng, box, 8.0), t1 = random_tau(rng, box, 8.0);
      dev = std::max(dev, std::abs(tau_distance(t0, t1, box) -
                                   xi_distance(box_logistic(t0, box), box_logistic(t1, box), box)));
    }
    out.push_back(check("geometry/distance-isometry", dev <= 1e-10, fmt("max_dev=%.3e", dev)));
  }

  {  // exponential map: endpoint recovery and chart-range rejection
    double dev = 0.0;
    bool rejects = true;
    for (int rep = 0; rep < 25; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
      const Vector t0 = random_tau(rng, box, 6.0), t1 = random_tau(rng, box, 6.0);
      const Vector X = tau_angle(t1, box) - tau_angle(t0, box);
      dev = std::max(dev, (tau_exp_map(t0, X, box) - t1).cwiseAbs().maxCoeff() /
                              (1.0 + t1.cwiseAbs().maxCoeff()));
      try {
        Vector big = Vector::Constant(box.size(), 4.0);  // pi + slack, certainly out of range
        tau_exp_map(t0, big, box);
        rejects = false;
      } catch (const TangentOutOfRange&) {
      }
    }
    out.push_back(check("geometry/exp-map", dev <= 1e-9 && rejects,
                        fmt("max_dev=%.3e rejects=%d", dev, rejects ? 1 : 0)));
  }

  {  // triangle inequality of the chart distance
    double worst = 0.0;  // most negative slack
    for (int rep = 0; rep < 500; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 5));
      const Vector x = random_interior(rng, box, 0.02);
      const Vector y = random_interior(rng, box, 0.02);
      const Vector z = random_interior(rng, box, 0.02);
      worst = std::min(worst, xi_distance(x, y, box) + xi_distance(y, z, box) -
                                  xi_distance(x, z, box));
    }
    out.push_back(check("geometry/triangle-inequality", worst >= -1e-12, fmt("min_slack=%.3e", worst)));
  }

  {  // pinned values on the unit interval
    const BoxDomain unit = BoxDomain::unit(1);
    const double third = M_PI / 3.0;
    Vector x(1), y(1);
    x << 0.25, y << 0.75;
    const double d1 = std::abs(xi_distance(x, y, unit) - third);
    const double d2 = std::abs(xi_angle(x, unit)[0] - third);
    const double d3 = std::abs(xi_angle(y, unit)[0] - 2.0 * third);
    // v-images pi/2 and 2pi/3: chart midpoint of the geodesic sits at 7pi/12
    Vector w1(1);
    w1 << 2.0 * third;
    const GeodesicPath tg =
        GeodesicPath::between_tau(Vector::Zero(1), tau_from_angle(w1, unit), unit);
    const double d4 = std::abs(tau_angle(tg.evaluate(0.5), unit)[0] - 7.0 * M_PI / 12.0);
    const double dev = std::max(std::max(d1, d2), std::max(d3, d4));
    out.push_back(check("geometry/pinned-chart-values", dev <= 1e-12, fmt("max_dev=%.3e", dev)));
  }

  {  // induced metric: finite differences of the dual gradient, and SPD
    double fd_dev = 0.0;
    double min_eig = 1e300;
    for (int rep = 0; rep < 8; ++rep) {
      const Index k = rng.uniform_int(1, 3), n = rng.uniform_int(k + 1, 6);
      const Matrix A = random_full_rank(rng, k, n);
      BoxDomain box = random_box(rng, n);
      const Vector xi_seed = random_interior(rng, box, 0.15);
      InverseProblem p(A, A * xi_seed, box);
      const Vector lambda = rng.vector(k, -1.0, 1.0);
      const Matrix G = induced_metric(lambda, A, box);
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Matrix>(G).eigenvalues()(0));
      const double h = 1e-6;
      for (Index j = 0; j < k; ++j) {
        Vector lp = lambda, lm = lambda;
        lp[j] += h;
        lm[j] -= h;
        // G = -Hess Sigma, so column j of G is -(grad(lp) - grad(lm))/2h
        const Vector col =
            (dual_objective(lm, p).second - dual_objective(lp, p).second) / (2 * h);
        fd_dev = std::max(fd_dev,
                          (col - G.col(j)).cwiseAbs().maxCoeff() / (1.0 + G.cwiseAbs().maxCoeff()));
      }
    }
    // A = [1 1] at lambda = 0 on the unit square: G = h(0) + h(0) = 1/2
    Matrix A12(1, 2);
    A12 << 1.0, 1.0;
    const double g_dev =
        std::abs(induced_metric(Vector::Zero(1), A12, BoxDomain::unit(2))(0, 0) - 0.5);
    out.push_back(check("geometry/induced-metric-fd", fd_dev <= 1e-5 && g_dev <= 1e-14,
                        fmt("fd_dev=%.3e pinned_dev=%.3e", fd_dev, g_dev)));
    out.push_back(check("geometry/induced-metric-spd", min_eig > 0.0, fmt("min_eig=%.3e", min_eig)));
  }

  {  // solution motion is g-orthogonal to ker A along any multiplier curve
    double defect = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const Index k = rng.uniform_int(1, 3), n = rng.uniform_int(k + 1, 7);
      const Matrix A = random_full_rank(rng, k, n);
      BoxDomain box = random_box(rng, n);
      const Vector p0 = rng.vector(k, -1.0, 1.0);
      const Vector q = rng.vector(k, -1.0, 1.0);
      const Vector r = rng.vector(k, -0.5, 0.5);
      std::vector<CurveSample> samples;
      for (int i = 0; i <= 8; ++i) {
        const double t = i / 8.0;
        samples.push_back({p0 + t * q + std::sin(t) * r, q + std::cos(t) * r});
      }
      defect = std::max(defect, orthogonality_defect(A, box, samples));
    }
    out.push_back(check("geometry/orthogonality-defect", defect <= 1e-8, fmt("max=%.3e", defect)));
  }

  {  // symmetric single-row instances stay in range(A^T) exactly
    Matrix A12(1, 2);
    A12 << 1.0, 1.0;
    const BoxDomain unit = BoxDomain::unit(2);
    Vector l0(1), l1(1);
    l0 << -0.7, l1 << 1.1;
    const GeodesicPath lg = GeodesicPath::between_multipliers(l0, l1, A12, unit);
    double rho = 0.0;
    for (int i = 0; i <= 32; ++i) rho = std::max(rho, lg.range_residual(i / 32.0));
    out.push_back(check("geometry/multiplier-path-symmetric", rho <= 1e-10, fmt("max_rho=%.3e", rho)));

    InverseProblem p1(A12, Vector::Constant(1, 0.8), unit);
    InverseProblem p2(A12, Vector::Constant(1, 1.3), unit);
    const DualSolution s1 = solve_dual(p1), s2 = solve_dual(p2);
    const GeodesicPath sg = GeodesicPath::on_surface(s1.xi, s2.xi, A12, unit);
    double r_res = 0.0;
    for (int i = 0; i <= 32; ++i) r_res = std::max(r_res, sg.range_residual(i / 32.0));
    out.push_back(check("geometry/surface-path-symmetric", r_res <= 1e-9, fmt("max_r=%.3e", r_res)));
  }

  {  // general instances: interpolants can leave range(A^T); measured, not asserted
    double rho = 0.0, r_res = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      const Index k = rng.uniform_int(1, 3), n = rng.uniform_int(k + 1, 6);
      const Matrix A = random_full_rank(rng, k, n);
      BoxDomain box = random_box(rng, n);
      const GeodesicPath lg = GeodesicPath::between_multipliers(rng.vector(k, -1.0, 1.0),
                                                                rng.vector(k, -1.0, 1.0), A, box);
      for (int i = 0; i <= 32; ++i) rho = std::max(rho, lg.range_residual(i / 32.0));

      InverseProblem pa(A, A * random_interior(rng, box, 0.2), box);
      InverseProblem pb(A, A * random_interior(rng, box, 0.2), box);
      const DualSolution sa = solve_dual(pa), sb = solve_dual(pb);
      if (sa.status == SolveStatus::Converged && sb.status == SolveStatus::Converged) {
        const GeodesicPath sg = GeodesicPath::on_surface(sa.xi, sb.xi, A, box);
        for (int i = 0; i <= 32; ++i) r_res = std::max(r_res, sg.range_residual(i / 32.0));
      }
    }
    out.push_back(audit("geometry/multiplier-path-range-residual", fmt("max_rho=%.3e", rho)));
    out.push_back(audit("geometry/surface-path-residual", fmt("max_r=%.3e", r_res)));
  }

  return out;
}

// ----------------------------------------------------------------- solver --

std::vector<CheckResult> solver_checks(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  {  // fully symmetric instance solved at the midpoint with zero multiplier
    Matrix A(1, 2);
    A << 1.0, 1.0;
    InverseProblem p(A, Vector::Constant(1, 1.0), BoxDomain::unit(2));
    const DualSolution s = solve_dual(p);
    const double dev = std::max((s.xi.array() - 0.5).abs().maxCoeff(), s.lambda.cwiseAbs().maxCoeff());
    out.push_back(check("solver/symmetric-instance",
                        s.status == SolveStatus::Converged && dev <= 1e-10 && std::abs(s.gap) <= 1e-12,
                        fmt("max_dev=%.3e gap=%.3e", dev, s.gap)));
  }

  {  // identity operator: multiplier equals the entropy gradient of the datum
    Matrix A = Matrix::Identity(2, 2);
    Vector y(2);
    y << 0.3, 0.7;
    InverseProblem p(A, y, BoxDomain::unit(2));
    const DualSolution s = solve_dual(p);
    Vector expect(2);
    expect << std::log(0.3 / 0.7), std::log(0.7 / 0.3);
    const double dev =
        std::max((s.xi - y).cwiseAbs().maxCoeff(), (s.lambda - expect).cwiseAbs().maxCoeff());
    out.push_back(check("solver/identity-closed-form",
                        s.status == SolveStatus::Converged && dev <= 1e-8 && std::abs(s.gap) <= 1e-12,
                        fmt("max_dev=%.3e gap=%.3e", dev, s.gap)));
  }

  {  // random feasible instances: convergence, duality certificate, ascent
    double gap = 0.0, residual = 0.0;
    bool converged = true, monotone = true;
    for (int rep = 0; rep < 30; ++rep) {
      InverseProblem p = random_instance(rng, 4, 8);
      const DualSolution s = solve_dual(p);
      if (s.status != SolveStatus::Converged) converged = false;
      gap = std::max(gap, std::abs(s.gap));
      residual = std::max(residual, s.residual_inf);
      for (std::size_t i = 1; i < s.dual_trace.size(); ++i)
        if (s.dual_trace[i] < s.dual_trace[i - 1] - 1e-12) monotone = false;
    }
    out.push_back(check("solver/random-feasible-converges",
                        converged && gap <= 1e-8 && residual <= 1e-8,
                        fmt("max_gap=%.3e max_residual=%.3e", gap, residual)));
    out.push_back(check("solver/monotone-dual-ascent", monotone, fmt("monotone=%d", monotone ? 1 : 0)));
  }

  {  // concavity of the dual objective along random chords
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      InverseProblem p = random_instance(rng, 3, 6);
      const Vector l0 = rng.vector(p.observations(), -2.0, 2.0);
      const Vector l1 = rng.vector(p.observations(), -2.0, 2.0);
      const double mid = dual_objective(0.5 * (l0 + l1), p).first;
      const double chord = 0.5 * (dual_objective(l0, p).first + dual_objective(l1, p).first);
      worst = std::min(worst, mid - chord);
    }
    out.push_back(check("solver/midpoint-concavity", worst >= -1e-12, fmt("min_slack=%.3e", worst)));
  }

  {  // weak duality: every dual value under every feasible entropy value
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      InverseProblem p = random_instance(rng, 3, 6);
      const double psi = fermi_dirac_entropy(
          reference_solve(p).xi, p.box);  // a feasible interior point's entropy
      const double sigma = dual_objective(rng.vector(p.observations(), -3.0, 3.0), p).first;
      worst = std::min(worst, psi - sigma);
    }
    out.push_back(check("solver/weak-duality", worst >= -1e-10, fmt("min_slack=%.3e", worst)));
  }

  {  // primal reference and dual solver meet on the same point
    double xi_dev = 0.0, psi_dev = 0.0;
    bool all_ok = true;
    for (int rep = 0; rep < 12; ++rep) {
      InverseProblem p = random_instance(rng, 3, 6);
      const DualSolution s = solve_dual(p);
      const ReferenceSolution ref = reference_solve(p);
      if (s.status != SolveStatus::Converged) all_ok = false;
      xi_dev = std::max(xi_dev, (s.xi - ref.xi).cwiseAbs().maxCoeff());
      psi_dev = std::max(psi_dev, std::abs(s.psi_value - ref.objective));
    }
    out.push_back(check("solver/oracle-agreement", all_ok && xi_dev <= 1e-6 && psi_dev <= 1e-9,
                        fmt("xi_dev=%.3e psi_dev=%.3e", xi_dev, psi_dev)));
  }

  {  // reference solutions are feasible and interior on their own
    double res = 0.0;
    bool interior = true;
    for (int rep = 0; rep < 10; ++rep) {
      InverseProblem p = random_instance(rng, 3, 6);
      const ReferenceSolution ref = reference_solve(p);
      res = std::max(res, (p.A * ref.xi - p.y).cwiseAbs().maxCoeff());
      if (!p.box.is_interior(ref.xi)) interior = false;
    }
    out.push_back(check("solver/reference-feasibility", res <= 1e-9 && interior,
                        fmt("max_residual=%.3e interior=%d", res, interior ? 1 : 0)));
  }

  {  // data outside the attainable interval must be flagged, never "solved"
    bool ok = true;
    Matrix A(1, 2);
    A << 1.0, 1.0;
    InverseProblem p3(A, Vector::Constant(1, 3.0), BoxDomain::unit(2));
    ok = ok && solve_dual(p3).status == SolveStatus::InfeasibleDatum;
    for (int rep = 0; rep < 8; ++rep) {
      const Index n = rng.uniform_int(2, 6);
      Matrix row(1, n);
      for (Index j = 0; j < n; ++j) row(0, j) = rng.uniform(-1.0, 1.0);
      BoxDomain box = random_box(rng, n);
      double hi = 0.0;
      for (Index j = 0; j < n; ++j)
        hi += std::max(row(0, j) * box.lower()[j], row(0, j) * box.upper()[j]);
      InverseProblem bad(row, Vector::Constant(1, hi + 0.25), box);
      const SolveStatus status = solve_dual(bad).status;
      if (status != SolveStatus::InfeasibleDatum) ok = false;
    }
    out.push_back(check("solver/infeasible-detected", ok, fmt("ok=%d", ok ? 1 : 0)));
  }

  {  // scaling (cA, cy) keeps xi and divides the multiplier by c
    double xi_dev = 0.0, lambda_dev = 0.0;
    const double c = 3.7;
    for (int rep = 0; rep < 8; ++rep) {
      InverseProblem p = random_instance(rng, 3, 6);
      InverseProblem scaled(c * p.A, c * p.y, p.box);
      const DualSolution s = solve_dual(p), sc = solve_dual(scaled);
      xi_dev = std::max(xi_dev, (s.xi - sc.xi).cwiseAbs().maxCoeff());
      lambda_dev = std::max(lambda_dev, (s.lambda - c * sc.lambda).cwiseAbs().maxCoeff() /
                                            (1.0 + s.lambda.cwiseAbs().maxCoeff()));
    }
    out.push_back(check("solver/scale-coherence", xi_dev <= 1e-9 && lambda_dev <= 1e-7,
                        fmt("xi_dev=%.3e lambda_dev=%.3e", xi_dev, lambda_dev)));
  }

  {  // multiplier sensitivity against re-solve finite differences
    double dev = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      SolverOptions tight;
      tight.grad_tol = 1e-13;
      const Index k = 2, n = rng.uniform_int(3, 5);
      const Matrix A = random_full_rank(rng, k, n);
      BoxDomain box = random_box(rng, n);
      const Vector xi_seed = random_interior(rng, box, 0.25);
      InverseProblem p(A, A * xi_seed, box, tight);
      const DualSolution s = solve_dual(p);
      const Matrix jac = multiplier_sensitivity(s, p);
      const double h = 1e-6;
      for (Index j = 0; j < k; ++j) {
        Vector yp = p.y, ym = p.y;
        yp[j] += h;
        ym[j] -= h;
        const DualSolution sp = solve_dual(InverseProblem(A, yp, box, tight));
        const DualSolution sm = solve_dual(InverseProblem(A, ym, box, tight));
        const Vector col = (sp.lambda - sm.lambda) / (2 * h);
        dev = std::max(dev,
                       (col - jac.col(j)).cwiseAbs().maxCoeff() / (1.0 + jac.cwiseAbs().maxCoeff()));
      }
    }
    out.push_back(check("solver/multiplier-sensitivity-fd", dev <= 1e-4, fmt("max_dev=%.3e", dev)));
  }

  {  // first-order solution response: error contracts by ~4 per halving
    bool ok = true;
    double ratio_lo = 1e300, ratio_hi = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      SolverOptions tight;
      tight.grad_tol = 1e-13;
      const Index k = 2, n = 4;
      const Matrix A = random_full_rank(rng, k, n);
      BoxDomain box = random_box(rng, n);
      const Vector xi_seed = random_interior(rng, box, 0.3);
      InverseProblem p(A, A * xi_seed, box, tight);
      const DualSolution s = solve_dual(p);
      Vector dy = rng.vector(k, -1.0, 1.0);
      dy *= 1e-3 / dy.norm();
      double prev_err = 0.0;
      for (int level = 0; level < 3; ++level) {
        const Vector step = dy / (1 << level);
        const Vector predicted = solution_sensitivity(s, p, step);
        const DualSolution st = solve_dual(InverseProblem(A, p.y + step, box, tight));
        const double err = (st.xi - s.xi - predicted).norm();
        if (level > 0) {
          const double ratio = prev_err / err;
          ratio_lo = std::min(ratio_lo, ratio);
          ratio_hi = std::max(ratio_hi, ratio);
          if (ratio < 3.5 || ratio > 4.5) ok = false;
        }
        prev_err = err;
      }
    }
    out.push_back(check("solver/solution-sensitivity-dyadic", ok,
                        fmt("ratio_range=[%.2f, %.2f]", ratio_lo, ratio_hi)));
  }

  {  // duplicated rows: still converges, multiplier is the minimum-norm one
    double range_dev = 0.0, xi_dev = 0.0;
    bool converged = true;
    for (int rep = 0; rep < 5; ++rep) {
      const Index k = 2, n = rng.uniform_int(3, 6);
      const Matrix A = random_full_rank(rng, k, n);
      Matrix A_dup(k + 1, n);
      A_dup.topRows(k) = A;
      A_dup.row(k) = A.row(0);
      BoxDomain box = random_box(rng, n);
      const Vector xi_seed = random_interior(rng, box, 0.2);
      Vector y_dup(k + 1);
      y_dup.head(k) = A * xi_seed;
      y_dup(k) = y_dup(0);
      InverseProblem p_dup(A_dup, y_dup, box);
      const DualSolution s_dup = solve_dual(p_dup);
      if (s_dup.status != SolveStatus::Converged) converged = false;
      // minimum-norm multiplier lies in range(A_dup) = (ker A_dup^T)^perp
      Eigen::JacobiSVD<Matrix> svd(A_dup, Eigen::ComputeFullU);
      const Matrix null_dir = svd.matrixU().rightCols(1);
      range_dev = std::max(range_dev, (null_dir.transpose() * s_dup.lambda).cwiseAbs().maxCoeff());
      const DualSolution s = solve_dual(InverseProblem(A, A * xi_seed, box));
      xi_dev = std::max(xi_dev, (s.xi - s_dup.xi).cwiseAbs().maxCoeff());
    }
    out.push_back(check("solver/rank-deficient-min-norm",
                        converged && range_dev <= 1e-9 && xi_dev <= 1e-8,
                        fmt("range_dev=%.3e xi_dev=%.3e", range_dev, xi_dev)));
  }

  {  // single-row interval certificate and the post-solve upgrade
    Matrix A(1, 2);
    A << 1.0, 1.0;
    const BoxDomain unit = BoxDomain::unit(2);
    InverseProblem mid(A, Vector::Constant(1, 1.0), unit);
    InverseProblem edge(A, Vector::Constant(1, 2.0), unit);
    const bool interior_ok = feasibility_probe(mid) == Feasibility::InteriorCertified;
    const bool edge_ok = feasibility_probe(edge) == Feasibility::BoundaryOrExterior;
    InverseProblem two = random_instance(rng, 2, 5);
    while (two.observations() < 2) two = random_instance(rng, 2, 5);
    const bool pre_ok = feasibility_probe(two) == Feasibility::Unknown;
    const DualSolution s = solve_dual(two);
    const bool post_ok = feasibility_probe(two, s) == Feasibility::InteriorCertified;
    out.push_back(check("solver/feasibility-probe",
                        interior_ok && edge_ok && pre_ok && post_ok,
                        fmt("interior=%d edge=%d pre=%d post=%d status=%s", interior_ok ? 1 : 0,
                            edge_ok ? 1 : 0, pre_ok ? 1 : 0, post_ok ? 1 : 0,
                            to_string(s.status))));
  }

  {  // surface chart: midpoint at zero, single-row image strictly increasing
    double mid_dev = 0.0;
    bool increasing = true;
    InverseProblem p = random_instance(rng, 1, 6);
    mid_dev = (surface_point(Vector::Zero(1), p) - p.box.midpoint()).cwiseAbs().maxCoeff();
    double prev = -1e300;
    for (int i = -5; i <= 5; ++i) {
      const double image = (p.A * surface_point(Vector::Constant(1, 0.4 * i), p))(0);
      if (image <= prev) increasing = false;
      prev = image;
    }
    out.push_back(check("solver/surface-chart", mid_dev <= 1e-12 && increasing,
                        fmt("mid_dev=%.3e increasing=%d", mid_dev, increasing ? 1 : 0)));
  }

  return out;
}

// ----------------------------------------------------------------- bounds --

std::vector<CheckResult> bounds_checks(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  {  // logit upper bound on arbitrary boxes
    int violations = 0;
    double min_slack = 1e300;
    for (int rep = 0; rep < 1000; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const UpperBoundCheck c = logit_upper_bound(random_interior(rng, box, 0.02),
                                                  random_interior(rng, box, 0.02), box);
      if (!c.holds) ++violations;
      min_slack = std::min(min_slack, c.bound - c.distance);
    }
    out.push_back(check("bounds/logit-upper", violations == 0,
                        fmt("violations=%d/1000 min_slack=%.3e", violations, min_slack)));
  }

  {  // width-corrected Euclidean lower bound on arbitrary boxes
    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const LowerBoundCheck c = lower_bound_check(random_interior(rng, box, 0.02),
                                                  random_interior(rng, box, 0.02), box,
                                                  LowerBoundKind::Euclidean);
      if (!c.corrected_holds) ++violations;
    }
    out.push_back(
        check("bounds/euclidean-corrected-lower", violations == 0, fmt("violations=%d/1000", violations)));
  }

  {  // literal Euclidean lower bound on narrow boxes (every width <= 2)
    int violations = 0;
    for (int rep = 0; rep < 500; ++rep) {
      const Index n = rng.uniform_int(1, 6);
      Vector lower = rng.vector(n, -2.0, 2.0);
      Vector width = rng.vector(n, 0.3, 2.0);
      BoxDomain box(lower, lower + width);
      const LowerBoundCheck c = lower_bound_check(random_interior(rng, box, 0.02),
                                                  random_interior(rng, box, 0.02), box,
                                                  LowerBoundKind::Euclidean);
      if (!c.literal_holds) ++violations;
    }
    out.push_back(
        check("bounds/euclidean-literal-narrow", violations == 0, fmt("violations=%d/500", violations)));
  }

  {  // bound ordering on unit boxes: logit >= distance >= Euclidean
    int violations = 0;
    for (int rep = 0; rep < 500; ++rep) {
      const BoxDomain unit = BoxDomain::unit(rng.uniform_int(1, 6));
      const Vector xi = random_interior(rng, unit, 0.02);
      const Vector eta = random_interior(rng, unit, 0.02);
      const UpperBoundCheck up = logit_upper_bound(xi, eta, unit);
      const LowerBoundCheck lo = lower_bound_check(xi, eta, unit, LowerBoundKind::Euclidean);
      if (!(up.bound >= up.distance - 1e-12 && lo.distance >= lo.literal_bound - 1e-12))
        ++violations;
    }
    out.push_back(check("bounds/ordering-unit-box", violations == 0, fmt("violations=%d/500", violations)));
  }

  {  // pinned values: 0.25 <-> 0.75 on the unit interval
    const BoxDomain unit = BoxDomain::unit(1);
    Vector x(1), y(1);
    x << 0.25, y << 0.75;
    const UpperBoundCheck up = logit_upper_bound(x, y, unit);
    const LowerBoundCheck lo = lower_bound_check(x, y, unit, LowerBoundKind::Euclidean);
    const double dev = std::max({std::abs(up.distance - M_PI / 3.0),
                                 std::abs(up.bound - 2.0 * std::log(3.0)),
                                 std::abs(lo.literal_bound - 0.5)});
    out.push_back(check("bounds/pinned-values",
                        dev <= 1e-12 && up.holds && lo.literal_holds && lo.corrected_holds,
                        fmt("max_dev=%.3e", dev)));
  }

  {  // literal Euclidean bound on wide boxes: known not to hold; measured
    int violations = 0;
    double max_excess = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
      const Index n = rng.uniform_int(1, 6);
      Vector lower = rng.vector(n, -2.0, 2.0);
      Vector width = rng.vector(n, 2.0, 6.0);
      BoxDomain box(lower, lower + width);
      const LowerBoundCheck c = lower_bound_check(random_interior(rng, box, 0.02),
                                                  random_interior(rng, box, 0.02), box,
                                                  LowerBoundKind::Euclidean);
      if (!c.literal_holds) {
        ++violations;
        max_excess = std::max(max_excess, c.literal_bound - c.distance);
      }
    }
    out.push_back(audit("bounds/euclidean-literal-wide-audit",
                        fmt("violations=%d/1000 max_excess=%.3e", violations, max_excess)));
  }

  {  // sinh-form lower bound: stated antiderivative fails desk checks; measured
    int violations = 0;
    double max_excess = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
      BoxDomain box = random_box(rng, rng.uniform_int(1, 6));
      const LowerBoundCheck c = lower_bound_check(random_interior(rng, box, 0.02),
                                                  random_interior(rng, box, 0.02), box,
                                                  LowerBoundKind::Sinh);
      if (!c.literal_holds) {
        ++violations;
        max_excess = std::max(max_excess, c.literal_bound - c.distance);
      }
    }
    out.push_back(audit("bounds/sinh-lower-audit",
                        fmt("violations=%d/1000 max_excess=%.3e", violations, max_excess)));
  }

  return out;
}

}  // namespace

std::vector<CheckResult> verify_entropy(std::uint64_t seed) { return entropy_checks(seed); }
std::vector<CheckResult> verify_geometry(std::uint64_t seed) { return geometry_checks(seed); }
std::vector<CheckResult> verify_solver(std::uint64_t seed) { return solver_checks(seed); }
std::vector<CheckResult> verify_bounds(std::uint64_t seed) { return bounds_checks(seed); }

std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "entropy") return verify_entropy(seed);
  if (suite == "geometry") return verify_geometry(seed);
  if (suite == "solver") return verify_solver(seed);
  if (suite == "bounds") return verify_bounds(seed);
  if (suite == "all") {
    std::vector<CheckResult> all = verify_entropy(seed);
    for (auto* part : {&verify_geometry, &verify_solver, &verify_bounds}) {
      std::vector<CheckResult> chunk = (*part)(seed);
      all.insert(all.end(), std::make_move_iterator(chunk.begin()),
                 std::make_move_iterator(chunk.end()));
    }
    return all;
  }
  throw InvalidInput("unknown verify suite \"" + suite + "\" (entropy|geometry|solver|bounds|all)");
}

bool all_asserted_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.audit_only && !r.passed) return false;
  return true;
}

void print_verify_report(std::ostream& os, const std::string& suite, std::uint64_t seed,
                         const std::vector<CheckResult>& results) {
  os << "suite: " << suite << "  seed: " << seed << "\n";
  std::size_t passed = 0, failed = 0, audits = 0;
  for (const CheckResult& r : results) {
    const char* status = r.audit_only ? "AUDIT" : (r.passed ? "PASS " : "FAIL ");
    if (r.audit_only)
      ++audits;
    else if (r.passed)
      ++passed;
    else
      ++failed;
    os << "  " << status << "  ";
    os << r.name;
    for (std::size_t i = r.name.size(); i < 44; ++i) os << ' ';
    os << ' ' << r.detail << "\n";
  }
  os << "summary: " << results.size() << " checks, " << passed << " passed, " << failed
     << " failed, " << audits << " audit-only\n";
  os << "result: " << (failed == 0 ? "PASS" : "FAIL") << "\n";
}

}  // namespace entroinv
