#include <cmath>

#include "doctest.h"
#include "lbh/jet.hpp"

using lbh::Jet2;

namespace {

// Central differences of a scalar function of two variables.
template <class F>
double fd(F f, double x, double y, int i, double h = 1e-4) {
  if (i == 0) return (f(x + h, y) - f(x - h, y)) / (2 * h);
  return (f(x, y + h) - f(x, y - h)) / (2 * h);
}

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("product and chain rule carry exact partials") {
    const double x0 = 0.3, y0 = -0.7;
    auto f = [](auto x, auto y) {
      using std::exp;
      using std::sin;
      using std::sqrt;
      return sin(x * y) + exp(x) / (2.0 + y * y) + sqrt(1.5 + x * x);
    };
    const Jet2 x = Jet2::variable(x0, 2, 0), y = Jet2::variable(y0, 2, 1);
    const Jet2 v = f(x, y);
    CHECK(v.value() == doctest::Approx(f(x0, y0)).epsilon(1e-15));
    for (int i = 0; i < 2; ++i) {
      CHECK(v.d(i) == doctest::Approx(fd(f, x0, y0, i)).epsilon(1e-7));
      for (int j = 0; j < 2; ++j) {
        auto fi = [&](double a, double b) { return fd(f, a, b, i, 1e-4); };
        CHECK(v.dd(i, j) == doctest::Approx(fd(fi, x0, y0, j, 1e-3)).epsilon(1e-5));
      }
    }
  }

  TEST_CASE("hessian is symmetric and constants have no derivatives") {
    const Jet2 x = Jet2::variable(0.4, 3, 0), z = Jet2::variable(1.1, 3, 2);
    const Jet2 v = atan(x * z) + cosh(z) * tanh(x) + log(z) + tan(x);
    CHECK(v.dd(0, 2) == v.dd(2, 0));
    CHECK(v.d(1) == 0.0);
    const Jet2 c(2.5);
    CHECK(c.d(0) == 0.0);
    CHECK(c.dd(0, 0) == 0.0);
  }

  TEST_CASE("third-order terms are dropped") {
    const Jet2 x = Jet2::variable(0.0, 1, 0);
    const Jet2 cube = x * x * x;
    CHECK(cube.value() == 0.0);
    CHECK(cube.d(0) == 0.0);
    CHECK(cube.dd(0, 0) == 0.0);
    const Jet2 sq = x * x;
    CHECK(sq.dd(0, 0) == 2.0);
  }
}
