#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lbh/catalog.hpp"

using namespace lbh;

namespace {

constexpr double kPi = std::numbers::pi;

GeometryFrame center_frame(const CatalogEntry& e) {
  return frame_at(e.immersion, e.immersion.domain().center());
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("euclidean cylinders") {
    CHECK(euclidean_cylinder(2, 1, 1.0).lambda_star.value == -1.0);
    CHECK(euclidean_cylinder(3, 1, 2.0).lambda_star.value == -0.5);
    CHECK(euclidean_cylinder(4, 2, 1.0).lambda_star.value == -2.0);
    CHECK_THROWS_AS(euclidean_cylinder(3, 3, 1.0), ParameterError);
    CHECK_THROWS_AS(euclidean_cylinder(2, 1, -1.0), ParameterError);

    // lambda_star and H shrink monotonically to 0 as a grows.
    double prev_l = -1e300, prev_h = 1e300;
    for (double a : {1.0, 2.0, 4.0, 8.0, 64.0}) {
      const CatalogEntry e = euclidean_cylinder(3, 1, a);
      const double h = std::abs(center_frame(e).H);
      CHECK(e.lambda_star.value > prev_l);
      CHECK(h < prev_h);
      CHECK(h == doctest::Approx(2.0 / (3.0 * a)).epsilon(1e-12));
      prev_l = e.lambda_star.value;
      prev_h = h;
    }
    CHECK(prev_l > -1e-3);
  }

  TEST_CASE("tilted cylinders have a varying angle") {
    const CatalogEntry e = euclidean_cylinder(2, 1, 1.0, 0.4);
    const GeometryFrame a = frame_at(e.immersion, e.immersion.domain().lo);
    const GeometryFrame b = center_frame(e);
    CHECK(std::abs(a.theta - b.theta) > 1e-3);
    CHECK(a.A2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("spherical vertical cylinders") {
    const CatalogEntry q = spherical_vertical_cylinder(3, kPi / 4);
    CHECK(std::abs(q.lambda_star.value) <= 1e-15);
    CHECK(std::abs(center_frame(q).theta) <= 1e-12);
    CHECK(center_frame(q).A2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spherical_vertical_cylinder(3, kPi / 3).lambda_star.value ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    const CatalogEntry eq = spherical_vertical_cylinder(3, kPi / 2);
    CHECK(eq.lambda_star.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eq.minimal);
    CHECK(std::abs(center_frame(eq).H) <= 1e-12);
    CHECK_THROWS_AS(spherical_vertical_cylinder(3, 2.0), ParameterError);
  }

  TEST_CASE("hyperbolic vertical cylinders") {
    const CatalogEntry e = hyperbolic_vertical_cylinder(3, 1.0);
    const double coth = 1.0 / std::tanh(1.0);
    CHECK(e.lambda_star.value == doctest::Approx(-2.0 * (1.0 + coth * coth)).epsilon(1e-14));
    // lambda_star rises towards -2(m - 1) as rho grows.
    double prev = -1e300;
    for (double rho : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double l = hyperbolic_vertical_cylinder(3, rho).lambda_star.value;
      CHECK(l <= -4.0);
      CHECK(l > prev);
      prev = l;
    }
    CHECK(prev == doctest::Approx(-4.0).epsilon(1e-6));
    CHECK(std::abs(center_frame(e).theta) <= 1e-12);
  }

  TEST_CASE("slices and graphs") {
    const CatalogEntry s = slice(AmbientSpace::space_form(-1, 3));
    CHECK(s.minimal);
    CHECK(s.lambda_star.kind == LambdaStar::Kind::kAny);

    const double eps = 1e-6;
    const CatalogEntry g = graph(
        AmbientSpace::space_form(1, 2),
        [eps](std::span<const Jet2> x) { return eps * sin(x[0]); }, ChartBox::cube(2, -0.5, 0.5));
    CHECK(g.lambda_star.kind == LambdaStar::Kind::kNone);
    for (double u : {-0.4, 0.0, 0.3})
      CHECK(1.0 - frame_at(g.immersion, ChartPoint{u, 0.1, 0, 0}).theta <= 1e-11);
  }

  TEST_CASE("random graphs are reproducible") {
    const TrigPolynomial a = random_trig_polynomial(3, 42), b = random_trig_polynomial(3, 42);
    CHECK(a.offset == b.offset);
    CHECK(a.amplitude == b.amplitude);
    CHECK(random_trig_polynomial(3, 43).offset != a.offset);
    for (double amp : a.amplitude) CHECK(std::abs(amp) <= 0.25);
    for (const auto& w : a.frequency)
      for (int i = 0; i < 3; ++i) CHECK(std::abs(w[i]) <= 1.0);
  }

  TEST_CASE("embedding and chart coordinates") {
    const AmbientSpace sph = AmbientSpace::space_form(1, 2);
    Vec north(3), equator(3);
    north << 1.0, 0.0, 0.0;
    equator << 0.0, 0.0, 1.0;
    CHECK(embedding_chart_convert(sph, north, 0.0).base.norm() == 0.0);
    CHECK(embedding_chart_convert(sph, equator, 0.0).base.norm() == doctest::Approx(2.0));
    Vec off(3);
    off << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(embedding_chart_convert(sph, off, 0.0), DomainError);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int c : {-1, 1}) {
      const AmbientSpace s = AmbientSpace::space_form(c, 3);
      for (int trial = 0; trial < 20; ++trial) {
        AmbientPoint p;
        p.base = Vec(3);
        for (int i = 0; i < 3; ++i) p.base(i) = 0.9 * u(rng);
        p.t = u(rng);
        const Vec y = chart_embedding_convert(s, p);
        const AmbientPoint back = embedding_chart_convert(s, y, p.t);
        CHECK((back.base - p.base).norm() <= 1e-12);
        CHECK(back.t == p.t);
      }
    }
  }

  TEST_CASE("standard entries carry lambda values") {
    const auto entries = standard_entries();
    CHECK(entries.size() >= 10u);
    for (const auto& e : entries) {
      CHECK_FALSE(e.name.empty());
      CHECK(e.lambda_star.kind != LambdaStar::Kind::kNone);
    }
  }
}
