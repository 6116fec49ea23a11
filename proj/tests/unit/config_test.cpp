#include <cmath>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "lbh/config.hpp"
#include "lbh/expression.hpp"
#include "lbh/run.hpp"

using namespace lbh;

namespace {

std::string strip_wall_time(const std::string& s) {
  return std::regex_replace(s, std::regex("\"wall_time_seconds\": *[^,}\\n]*"), "");
}

std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST_SUITE("expression") {
  TEST_CASE("parses and differentiates") {
    const Expression e = Expression::parse("sin(x1) * y + 2^3 - exp(-x)/2", 2);
    const Jet2 x = Jet2::variable(0.3, 2, 0), y = Jet2::variable(-1.2, 2, 1);
    const Jet2 xs[] = {x, y};
    const Jet2 v = e(xs);
    CHECK(v.value() == doctest::Approx(std::sin(0.3) * -1.2 + 8 - std::exp(-0.3) / 2));
    CHECK(v.d(0) == doctest::Approx(std::cos(0.3) * -1.2 + std::exp(-0.3) / 2));
    CHECK(v.d(1) == doctest::Approx(std::sin(0.3)));
    CHECK(v.dd(0, 1) == doctest::Approx(std::cos(0.3)));
    const double plain[] = {0.3, -1.2};
    CHECK(e(plain) == doctest::Approx(v.value()).epsilon(1e-15));
  }

  TEST_CASE("precedence and constants") {
    const double z[] = {0.0, 0.0};
    CHECK(Expression::parse("1 + 2 * 3 ^ 2", 2)(z) == 19.0);
    CHECK(Expression::parse("-2^2", 2)(z) == -4.0);
    CHECK(Expression::parse("cos(pi) + log(e)", 2)(z) == doctest::Approx(0.0));
  }

  TEST_CASE("errors carry the column") {
    CHECK_THROWS_AS(Expression::parse("x1 +", 2), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("x3", 2), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("foo(x)", 2), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("x ^ y", 2), ExpressionError);
    try {
      Expression::parse("x1 + )", 2);
    } catch (const ExpressionError& err) {
      CHECK(std::string(err.what()).find("column 6") != std::string::npos);
    }
  }
}

TEST_SUITE("config") {
  TEST_CASE("auto lambda resolves from the catalog") {
    const RunConfig c = parse_config(
        R"({"ambient":{"c":1,"m":3},"surface":{"kind":"spherical_vertical_cylinder","rho":0.7853981633974483},"lambda":"auto","checks":["lambda_residual"]})");
    REQUIRE(c.lambda.has_value());
    CHECK(std::abs(*c.lambda) <= 1e-15);
    CHECK(c.lambda_source == "auto");
    CHECK(c.biharmonic);
    CHECK(c.resolution == std::vector<int>{41, 41, 41});
  }

  TEST_CASE("schema violations name the field") {
    CHECK(error_path(R"({"surface":{"kind":"slice"}})") == "$.ambient");
    CHECK(error_path(R"({"ambient":{"c":2,"m":3},"surface":{"kind":"slice"}})") == "ambient.c");
    CHECK(error_path(R"({"ambient":{"c":0,"m":2},"surface":{"kind":"slice"},"extra":1})") ==
          "$.extra");
    CHECK(error_path(R"({"ambient":{"c":0,"m":2},"surface":{"kind":"torus"}})") ==
          "surface.kind");
    CHECK(error_path(R"({"ambient":{"c":0,"m":2},"surface":{"kind":"slice"},"checks":["nope"]})")
              .rfind("checks", 0) == 0);
    CHECK(error_path(R"({"ambient":{"c":1,"m":2},"surface":{"kind":"slice"},"grid":{"resolution":5}})") ==
          "grid.resolution");
    CHECK(error_path(R"({"ambient":{"c":1,"m":2},"surface":{"kind":"euclidean_cylinder","k":1,"a":1}})") ==
          "ambient.c");
    CHECK(error_path("{not json") != "<accepted>");
  }

  TEST_CASE("seed override and defaults") {
    ParseOptions opts;
    opts.seed = 17;
    const RunConfig c =
        parse_config(R"({"ambient":{"c":-1,"m":2},"surface":{"kind":"graph"},"seed":3})", opts);
    CHECK(c.seed == 17u);
    CHECK(c.resolution == std::vector<int>{81, 81});
    CHECK_FALSE(c.lambda.has_value());
    CHECK_FALSE(c.biharmonic);
    CHECK(c.echo["surface"]["max_frequency"] == 1.0);
  }
}

TEST_SUITE("report") {
  TEST_CASE("slice with the identity checks passes") {
    const RunConfig c = parse_config(
        R"({"ambient":{"c":1,"m":2},"surface":{"kind":"slice"},"grid":{"resolution":21}})");
    const RunReport r = run(c);
    CHECK(r.overall_pass);
    const std::string json = emit(r, ReportFormat::kJson);
    CHECK(json.find("\"overall_pass\": true") != std::string::npos);
  }

  TEST_CASE("cylinder lambda") {
    const std::string base =
        R"({"ambient":{"c":0,"m":2},"surface":{"kind":"euclidean_cylinder","k":1,"a":1},"checks":["lambda_residual"],"grid":{"resolution":21},)";
    const RunReport zero = run(parse_config(base + R"("lambda":0})"));
    CHECK_FALSE(zero.overall_pass);
    REQUIRE(zero.checks.size() == 1u);
    CHECK(zero.checks[0].max_residual == doctest::Approx(0.5).epsilon(1e-9));
    const RunReport aut = run(parse_config(base + R"("lambda":"auto"})"));
    CHECK(aut.overall_pass);
  }

  TEST_CASE("reports are deterministic and CSV has a fixed header") {
    const std::string text =
        R"({"ambient":{"c":1,"m":2},"surface":{"kind":"graph"},"seed":5,"grid":{"resolution":21}})";
    const std::string a = emit(run(parse_config(text), 1), ReportFormat::kJson);
    const std::string b = emit(run(parse_config(text), 3), ReportFormat::kJson);
    CHECK(strip_wall_time(a) == strip_wall_time(b));
    const std::string csv = emit(run(parse_config(text)), ReportFormat::kCsv);
    CHECK(csv.rfind("check,max_residual,tolerance,pass\n", 0) == 0);
    CHECK_THROWS_AS(report_format("xml"), ParameterError);
  }

  TEST_CASE("construction failures become error entries") {
    const RunConfig c = parse_config(
        R"({"ambient":{"c":1,"m":3},"surface":{"kind":"rotation_minimal","h_prime0":50,"s0":0.5,"s1":3.0}})");
    const RunReport r = run(c);
    CHECK_FALSE(r.overall_pass);
    REQUIRE_FALSE(r.checks.empty());
    for (const auto& ch : r.checks) CHECK(ch.status == CheckStatus::kError);
  }
}
