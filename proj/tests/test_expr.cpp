// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lmlab/errors.hpp"
#include "lmlab/expr.hpp"
#include "lmlab/sampling.hpp"
#include "test_support.hpp"

using namespace lmlab;
using lmlab::testing::xy_chart;

TEST_CASE("rational literals") {
  CHECK(Rational::from_decimal("0.25") == Rational(1, 4));
  CHECK(Rational::from_decimal("1e-3") == Rational(1, 1000));
  CHECK(Rational::from_decimal("2.5E2") == Rational(250));
  CHECK_FALSE(Rational::from_decimal("1.2.3").has_value());
  CHECK_FALSE(Rational::from_decimal("99999999999999999999").has_value());
  CHECK(Rational::from_double(2.5) == Rational(5, 2));
  CHECK(Rational::from_double(1.0 / 3.0) == Rational(1, 3));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK_FALSE(Rational(INT64_MAX).mul(Rational(2)).has_value());
}

TEST_CASE("parse_scalar builds the expected trees") {
  Chart c = xy_chart();
  Expr e = parse_scalar("x^2 + y", c);
  REQUIRE(e.op() == Op::Sum);
  CHECK(e.arg(0).op() == Op::Pow);
  CHECK(e.arg(0).exponent() == 2);
  CHECK(e.arg(1).op() == Op::Coordinate);

  Expr q = parse_scalar("1/(x*y)", c);
  REQUIRE(q.op() == Op::Div);
  CHECK(q.arg(0).is_one());
  CHECK(q.arg(1).op() == Op::Product);

  CHECK(to_string(parse_scalar("0.5*x", c)) == "1/2*x");
  // unary minus binds looser than '^'
  CHECK(evaluate(parse_scalar("-x^2", c), std::vector<double>{3.0, 0.0}) == doctest::Approx(-9.0));
  CHECK(evaluate(parse_scalar("x^-1 + y^(-2)", c), std::vector<double>{2.0, 2.0}) == doctest::Approx(0.75));
}

TEST_CASE("parse_scalar errors") {
  Chart c = xy_chart();
  try {
    parse_scalar("q", c);
    FAIL("expected UnknownIdentifierError");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.token() == "q");
    CHECK(e.position() == 0);
  }
  CHECK_THROWS_AS(parse_scalar("x +", c), ParseError);
  CHECK_THROWS_AS(parse_scalar("x^0.5", c), ParseError);
  CHECK_THROWS_AS(parse_scalar("sin x", c), ParseError);
  CHECK_THROWS_AS(parse_scalar("(x", c), ParseError);
  CHECK_THROWS_AS(parse_scalar("", c), ParseError);
  try {
    parse_scalar("x + * y", c);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("parameters are named constants") {
  Chart c({"t", "x"}, {{0, 1}, {0, 1}}, {{"c", 2.5}});
  Expr e = parse_scalar("c*x", c);
  CHECK(evaluate(e, std::vector<double>{0.0, 2.0}) == doctest::Approx(5.0));
  CHECK(simplify(partial_derivative(e, 0)).is_zero());
  CHECK(to_string(e) == "c*x");
}

TEST_CASE("evaluate") {
  Chart c = xy_chart();
  CHECK(evaluate(parse_scalar("x^2 + y", c), std::vector<double>{2, 3}) == 7.0);
  CHECK(evaluate(parse_scalar("1/(x*y)", c), std::vector<double>{1, 1}) == 1.0);
  CHECK_THROWS_AS(evaluate(parse_scalar("ln(x)", c), std::vector<double>{-1, 0}), DomainError);
  CHECK_THROWS_AS(evaluate(parse_scalar("sqrt(x)", c), std::vector<double>{-1, 0}), DomainError);
  CHECK_THROWS_AS(evaluate(parse_scalar("1/(x - y)", c), std::vector<double>{1, 1}), DomainError);
  try {
    evaluate(parse_scalar("y + ln(x)", c), std::vector<double>{-1, 0});
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("ln(x)") != std::string::npos);
  }
}

TEST_CASE("partial_derivative examples") {
  Chart c = xy_chart();
  Expr x = Expr::coordinate(c, 0);
  Expr y = Expr::coordinate(c, 1);
  CHECK(structurally_equal(simplify(partial_derivative(parse_scalar("x*y", c), 0)), y));
  CHECK(structurally_equal(simplify(partial_derivative(parse_scalar("sin(x)", c), 0)), cos(x)));
  Expr q = parse_scalar("1/(x*y)", c);
  std::vector<double> one{1.0, 1.0};
  double fd = lmlab::testing::central_difference(q, one, 0);
  CHECK(fd == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(evaluate(partial_derivative(q, 0), one) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("partial_derivative matches central differences on random expressions") {
  Chart c = lmlab::testing::xyz_chart();
  Sampler s;
  s.count = 8;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    lmlab::testing::ExprGen gen(c, seed);
    Expr e = gen.smooth(3);
    for (int i = 0; i < c.dim(); ++i) {
      Expr d = partial_derivative(e, i);
      for (const auto& p : s.points(c)) {
        double fd = lmlab::testing::central_difference(e, p, i);
        double exact = evaluate(d, p);
        INFO("seed " << seed << " expr " << to_string(e) << " index " << i);
        CHECK(std::fabs(exact - fd) <= 1e-6 * std::max(1.0, std::fabs(exact)));
      }
    }
  }
}

TEST_CASE("derivative linearity and Clairaut") {
  Chart c = lmlab::testing::xyz_chart();
  Sampler s;
  s.count = 16;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    lmlab::testing::ExprGen gen(c, seed);
    Expr e1 = gen.smooth(3);
    Expr e2 = gen.smooth(3);
    Expr a = gen.small_constant();
    int i = gen.uniform(0, 2);
    int j = gen.uniform(0, 2);
    Expr lhs = partial_derivative(a * e1 + e2, i);
    Expr rhs = a * partial_derivative(e1, i) + partial_derivative(e2, i);
    Expr dij = partial_derivative(partial_derivative(e1, i), j);
    Expr dji = partial_derivative(partial_derivative(e1, j), i);
    for (const auto& p : s.points(c)) {
      CHECK(lmlab::testing::close_rel(evaluate(lhs, p), evaluate(rhs, p), 1e-12));
      CHECK(lmlab::testing::close_rel(evaluate(dij, p), evaluate(dji, p), 1e-9));
    }
  }
}

TEST_CASE("simplify examples") {
  Chart c = xy_chart();
  Expr x = Expr::coordinate(c, 0);
  Expr y = Expr::coordinate(c, 1);
  CHECK(structurally_equal(simplify(parse_scalar("x + 0", c)), x));
  CHECK(simplify(Expr::binary(Op::Product, y, partial_derivative(x, 1))).is_zero());
  CHECK(simplify(parse_scalar("(x*1) - x", c)).is_zero());
  CHECK(simplify(parse_scalar("x*y - y*x", c)).is_zero());
  CHECK(simplify(parse_scalar("2*x + 3*x - 5*x", c)).is_zero());
  CHECK(to_string(simplify(parse_scalar("x*x*x", c))) == "x^3");
  CHECK(simplify(parse_scalar("(x^2/x^2) - 1", c)).is_zero());
  CHECK(simplify(parse_scalar("sqrt(4/9) - 2/3", c)).is_zero());
}

TEST_CASE("simplify preserves semantics") {
  Chart c = lmlab::testing::xyz_chart();
  Sampler s;
  s.count = 16;
  for (std::uint64_t seed = 200; seed < 300; ++seed) {
    lmlab::testing::ExprGen gen(c, seed);
    Expr e = gen.smooth(4);
    Expr se = simplify(e);
    for (const auto& p : s.points(c)) {
      INFO(to_string(e) << "  ->  " << to_string(se));
      CHECK(lmlab::testing::close_rel(evaluate(e, p), evaluate(se, p), 1e-12));
    }
  }
}

TEST_CASE("printing round-trips through the parser") {
  Chart c = lmlab::testing::xyz_chart();
  for (std::uint64_t seed = 300; seed < 400; ++seed) {
    lmlab::testing::ExprGen gen(c, seed);
    Expr e = gen.smooth(4);
    for (const Expr& candidate : {e, simplify(e), partial_derivative(e, 0)}) {
      std::string printed = to_string(candidate);
      Expr back = parse_scalar(printed, c);
      CHECK(to_string(back) == printed);
      auto p = std::vector<double>{0.7, 1.3, 1.9};
      CHECK(lmlab::testing::close_rel(evaluate(back, p), evaluate(candidate, p), 1e-12));
    }
  }
}

TEST_CASE("zero_on_domain") {
  Chart c = xy_chart();
  Sampler s;
  auto v = zero_on_domain(parse_scalar("x - x", c), c, s, 1e-9);
  CHECK(v.passed);
  CHECK(v.max_abs_residual == 0.0);
  CHECK(v.samples_used + v.samples_skipped == s.count);

  CHECK(zero_on_domain(parse_scalar("sin(x)^2 + cos(x)^2 - 1", c), c, s, 1e-9).passed);

  auto f = zero_on_domain(parse_scalar("x*y - 1", c), c, s, 1e-9);
  CHECK_FALSE(f.passed);
  REQUIRE(f.witness.size() == 2);
  CHECK(std::fabs(f.witness[0] * f.witness[1] - 1.0) == doctest::Approx(f.max_abs_residual));

  // tie-break: first sample attaining the maximum
  auto t = zero_on_domain(Expr::constant(1), c, s, 1e-9);
  CHECK(t.witness == s.point(c, 0));

  Chart tiny({"x", "y"}, {{-1e-7, 1e-7}, {0.5, 2}});
  CHECK_THROWS_AS(zero_on_domain(parse_scalar("1/x", tiny), tiny, s, 1e-9), SamplingError);
}

TEST_CASE("sampling is deterministic") {
  Chart c = xy_chart();
  Sampler s;
  Expr e = parse_scalar("x*y - 1 + sin(x)/y", c);
  auto a = zero_on_domain(e, c, s, 1e-9);
  auto b = zero_on_domain(e, c, s, 1e-9);
  CHECK(a.max_abs_residual == b.max_abs_residual);
  CHECK(a.mean_abs_residual == b.mean_abs_residual);
  CHECK(a.witness == b.witness);
  Sampler other = s;
  other.seed = 7;
  CHECK(other.point(c, 0) != s.point(c, 0));
  for (int k = 0; k < s.count; ++k) CHECK(c.contains(s.point(c, k)));
}
