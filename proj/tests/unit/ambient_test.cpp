#include <cmath>
#include <random>

#include <Eigen/LU>

#include "doctest.h"
#include "lbh/ambient.hpp"

using namespace lbh;

namespace {

AmbientPoint random_point(int m, std::mt19937_64& rng, double r = 0.8) {
  std::uniform_real_distribution<double> u(-r, r);
  AmbientPoint p;
  p.base = Vec(m);
  for (int i = 0; i < m; ++i) p.base(i) = u(rng);
  p.t = u(rng);
  return p;
}

Vec random_vec(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

AmbientPoint shifted(AmbientPoint p, int axis, double h) {
  if (axis < p.base.size()) p.base(axis) += h;
  else p.t += h;
  return p;
}

// Gamma^a_{bc} by centered differences of metric_at.
double fd_christoffel(const AmbientSpace& s, const AmbientPoint& p, int a, int b, int c) {
  const double h = 1e-5;
  const int n = s.dim();
  const Mat ginv = metric_at(s, p).inverse();
  double v = 0.0;
  for (int d = 0; d < n; ++d) {
    auto dg = [&](int axis, int i, int j) {
      return (metric_at(s, shifted(p, axis, h))(i, j) - metric_at(s, shifted(p, axis, -h))(i, j)) /
             (2 * h);
    };
    v += 0.5 * ginv(a, d) * (dg(b, d, c) + dg(c, d, b) - dg(d, b, c));
  }
  return v;
}

// R(X,Y)Z from centered differences of christoffel_at.
Vec fd_curvature(const AmbientSpace& s, const AmbientPoint& p, const Vec& x, const Vec& y,
                 const Vec& z) {
  const double h = 1e-5;
  const int n = s.dim();
  const Christoffel g = christoffel_at(s, p);
  auto dgam = [&](int axis, int a, int b, int c) {
    return (christoffel_at(s, shifted(p, axis, h))(a, b, c) -
            christoffel_at(s, shifted(p, axis, -h))(a, b, c)) /
           (2 * h);
  };
  Vec out = Vec::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double r = dgam(c, a, d, b) - dgam(d, a, c, b);
          for (int e = 0; e < n; ++e) r += g(a, c, e) * g(e, d, b) - g(a, d, e) * g(e, c, b);
          out(a) += r * z(b) * x(c) * y(d);
        }
  return out;
}

}  // namespace

TEST_SUITE("ambient") {
  TEST_CASE("space_form validates c and m") {
    CHECK_THROWS_AS(AmbientSpace::space_form(2, 3), ParameterError);
    CHECK_THROWS_AS(AmbientSpace::space_form(1, 1), ParameterError);
    CHECK_THROWS_AS(AmbientSpace::space_form(1, kMaxChartDim + 1), ParameterError);
    const AmbientSpace s = AmbientSpace::space_form(-1, 3);
    CHECK(s.mu == -2.0);
    CHECK(s.t_index() == 3);
  }

  TEST_CASE("metric closed forms") {
    std::mt19937_64 rng(7);
    const AmbientSpace flat = AmbientSpace::space_form(0, 3);
    CHECK(metric_at(flat, random_point(3, rng)).isApprox(Mat::Identity(4, 4)));
    const AmbientSpace sph = AmbientSpace::space_form(1, 2);
    AmbientPoint p;
    p.base = Vec::Zero(2);
    CHECK(metric_at(sph, p).isApprox(Mat::Identity(3, 3)));
    p.base << 2.0, 0.0;
    const Mat g = metric_at(sph, p);
    CHECK(g(0, 0) == doctest::Approx(0.25));
    CHECK(g(1, 1) == doctest::Approx(0.25));
    CHECK(g(2, 2) == 1.0);
  }

  TEST_CASE("hyperbolic chart boundary") {
    const AmbientSpace hyp = AmbientSpace::space_form(-1, 2);
    Vec x(2);
    x << 2.0, 0.0;
    CHECK_FALSE(in_chart(hyp, x));
    CHECK_THROWS_AS(conformal_factor(hyp, x), DomainError);
    x << 1.9, 0.0;
    CHECK(in_chart(hyp, x));
  }

  TEST_CASE("christoffel symbols match differences of the metric") {
    std::mt19937_64 rng(11);
    for (int c : {-1, 0, 1}) {
      const AmbientSpace s = AmbientSpace::space_form(c, 3);
      const AmbientPoint p = random_point(3, rng);
      const Christoffel g = christoffel_at(s, p);
      double err = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int cc = 0; cc < 4; ++cc)
            err = std::max(err, std::abs(g(a, b, cc) - fd_christoffel(s, p, a, b, cc)));
      CHECK(err <= 1e-7);
    }
  }

  TEST_CASE("contraction agrees with the full sum") {
    std::mt19937_64 rng(3);
    const AmbientSpace s = AmbientSpace::space_form(1, 3);
    const AmbientPoint p = random_point(3, rng);
    const Christoffel g = christoffel_at(s, p);
    const Vec u = random_vec(4, rng), v = random_vec(4, rng);
    Vec ref = Vec::Zero(4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) ref(a) += g(a, b, c) * u(b) * v(c);
    CHECK((g.contract(u, v) - ref).norm() <= 1e-15);
  }

  TEST_CASE("curvature operator") {
    std::mt19937_64 rng(5);
    const AmbientSpace flat = AmbientSpace::space_form(0, 2);
    const AmbientPoint p0 = random_point(2, rng);
    CHECK(curvature_op(flat, p0, random_vec(3, rng), random_vec(3, rng), random_vec(3, rng))
              .norm() == 0.0);

    // Orthonormal horizontal X, Y at the origin: R(X,Y)Y = X.
    const AmbientSpace sph = AmbientSpace::space_form(1, 3);
    AmbientPoint o;
    o.base = Vec::Zero(3);
    Vec x = Vec::Zero(4), y = Vec::Zero(4);
    x(0) = 1.0;
    y(1) = 1.0;
    CHECK((curvature_op(sph, o, x, y, y) - x).norm() <= 1e-15);

    for (int c : {-1, 1}) {
      const AmbientSpace s = AmbientSpace::space_form(c, 3);
      const AmbientPoint p = random_point(3, rng);
      const Vec a = random_vec(4, rng), b = random_vec(4, rng), z = random_vec(4, rng);
      CHECK((curvature_op(s, p, a, b, z) - fd_curvature(s, p, a, b, z)).norm() <= 1e-6);
    }
  }

  TEST_CASE("ricci along the normal") {
    const AmbientSpace s13 = AmbientSpace::space_form(1, 3);
    CHECK(ricci_normal_scalar(s13, 1.0) == 0.0);
    CHECK(ricci_normal_scalar(s13, -1.0) == 0.0);
    CHECK(ricci_normal_scalar(s13, 0.0) == 2.0);
    CHECK(ricci_normal_scalar(AmbientSpace::space_form(-1, 2), std::sqrt(0.5)) ==
          doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(ricci_normal_tangential_coefficient(s13, 0.0) == 0.0);
    CHECK(ricci_normal_tangential_coefficient(s13, 1.0) == -2.0);
    CHECK(ricci_normal_tangential_coefficient(AmbientSpace::space_form(0, 3), 0.4) == 0.0);
    CHECK_THROWS_AS(ricci_normal_scalar(s13, 1.5), DomainError);
    CHECK(ambient_scalar_curvature(s13) == 6.0);
  }
}
