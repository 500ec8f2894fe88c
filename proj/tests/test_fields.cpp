// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "instances.hpp"
#include "lmlab/errors.hpp"
#include "lmlab/fields.hpp"
#include "test_support.hpp"

using namespace lmlab;
using lmlab::testing::xy_chart;
using lmlab::testing::xyz_chart;

namespace {

const Chart kXY = xy_chart();
const Expr kX = Expr::coordinate(kXY, 0);
const Expr kY = Expr::coordinate(kXY, 1);
const VolumeForm kV = VolumeForm::coordinate(kXY);

VectorField field(std::initializer_list<Expr> c) { return VectorField(kXY, c); }

double at(const Expr& e, double x, double y) { return evaluate(e, std::vector<double>{x, y}); }

}  // namespace

TEST_CASE("divergence examples") {
  CHECK(at(divergence(field({kX, kY}), kV), 1.3, 0.7) == doctest::Approx(2.0));
  CHECK(divergence(field({-kY, kX}), kV).is_zero());
  VolumeForm ex(kXY, exp(kX));
  CHECK(at(divergence(field({Expr::constant(1), Expr()}), ex), 1.1, 0.9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(VolumeForm(kXY, kX - Expr::constant(1)), PreconditionError);
}

TEST_CASE("multiplier residual and check_last_multiplier") {
  Expr m = Expr::constant(1) / (kX * kY);
  Sampler s;
  CHECK(std::fabs(at(multiplier_residual(field({kX, kY}), m, kV), 1.7, 0.6)) < 1e-14);
  CHECK(multiplier_residual(field({-kY, kX}), Expr::constant(1), kV).is_zero());
  CHECK(at(multiplier_residual(field({kX, kY}), Expr::constant(1), kV), 1.0, 1.0) == doctest::Approx(2.0));

  CheckVerdict ok = check_last_multiplier(field({kX, kY}), m, kV, s);
  CHECK(ok.passed);
  CHECK(ok.max_abs_residual <= 1e-12);
  CHECK(ok.samples_used == 64);
  CHECK(check_last_multiplier(field({-kY, kX}), kX * kX + kY * kY, kV, s).passed);

  CheckVerdict bad = check_last_multiplier(field({kX, kY}), kX, kV, s);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness.size() == 2);
  CHECK(bad.max_abs_residual == doctest::Approx(3.0 * bad.witness[0]));

  CheckVerdict trivial = check_last_multiplier(field({kX, kY}), Expr(), kV, s);
  CHECK(trivial.passed);
  CHECK(trivial.trivial_multiplier);

  Chart other = lmlab::testing::box_chart({"u", "v"}, 0.5, 2.0);
  CHECK_THROWS_AS(check_last_multiplier(VectorField(other, {Expr::coordinate(other, 0), Expr()}), m, kV, s),
                  ChartMismatchError);
  CHECK_THROWS_AS(VectorField(kXY, {kX}), ChartMismatchError);
}

TEST_CASE("adjoint examples and duality") {
  CHECK(at(adjoint_apply(field({kX, kY}), Expr::constant(1), kV), 1.0, 1.0) == doctest::Approx(-2.0));
  CHECK(std::fabs(at(adjoint_apply(field({kX, kY}), Expr::constant(1) / (kX * kY), kV), 0.8, 1.9)) < 1e-14);
  CHECK(at(adjoint_apply(field({-kY, kX}), kX, kV), 0.8, 1.9) == doctest::Approx(1.9));

  lmlab::testing::ExprGen gen(kXY, 7);
  Sampler s;
  for (int k = 0; k < 10; ++k) {
    VectorField a = field({gen.smooth(2), gen.smooth(2)});
    Expr m = gen.smooth(2);
    Expr sum = adjoint_apply(a, m, kV) + multiplier_residual(a, m, kV);
    for (const auto& p : s.points(kXY)) CHECK(evaluate(sum, p) == 0.0);
  }
}

TEST_CASE("lie bracket") {
  VectorField r = lie_bracket(field({Expr::constant(1), Expr()}), field({Expr(), kX}));
  CHECK(r[0].is_zero());
  CHECK(r[1].is_one());
  VectorField a = field({kX * kY, sin(kX)});
  VectorField self = lie_bracket(a, a);
  for (const auto& c : self.components()) CHECK(c.is_zero());
  VectorField z = lie_bracket(field({kX, Expr()}), field({Expr(), kY}));
  CHECK(z[0].is_zero());
  CHECK(z[1].is_zero());

  Chart c3 = xyz_chart();
  lmlab::testing::ExprGen gen(c3, 11);
  Sampler s;
  for (int k = 0; k < 5; ++k) {
    auto rnd = [&] { return VectorField(c3, {gen.smooth(2), gen.smooth(2), gen.smooth(2)}); };
    VectorField x = rnd(), y = rnd(), w = rnd();
    VectorField anti = lie_bracket(x, y) + lie_bracket(y, x);
    VectorField jac = lie_bracket(x, lie_bracket(y, w)) + lie_bracket(y, lie_bracket(w, x)) +
                      lie_bracket(w, lie_bracket(x, y));
    CHECK(zero_on_domain(anti.components(), c3, s, 1e-9).passed);
    CHECK(zero_on_domain(jac.components(), c3, s, 1e-9).passed);
  }
}

TEST_CASE("inverse multiplier and first integral") {
  Sampler s;
  CHECK(check_inverse_multiplier(field({kX, kY}), kX * kY, kV, s).passed);
  CHECK(check_inverse_multiplier(field({-kY, kX}), Expr::constant(1), kV, s).passed);
  CHECK_FALSE(check_inverse_multiplier(field({kX, kY}), kX, kV, s).passed);
  Chart around = lmlab::testing::xy_chart(-1.0, 1.0);
  Expr ax = Expr::coordinate(around, 0);
  CHECK_THROWS_AS(check_inverse_multiplier(VectorField(around, {ax, Expr()}),
                                           Expr::constant(0) * ax, VolumeForm::coordinate(around), s),
                  SamplingError);

  CHECK(check_first_integral(field({-kY, kX}), kX * kX + kY * kY, s).passed);
  CHECK(check_first_integral(field({kX, kY}), kY / kX, s).passed);
  CHECK_FALSE(check_first_integral(field({kX, kY}), kX, s).passed);
}

TEST_CASE("divergence of a product") {
  lmlab::testing::ExprGen gen(kXY, 3);
  Sampler s;
  VolumeForm sv(kXY, Expr::constant(1) + kX * kX);
  for (int k = 0; k < 12; ++k) {
    Expr f = gen.polynomial(3);
    VectorField xf = field({gen.polynomial(3), gen.polynomial(3)});
    for (const VolumeForm& v : {kV, sv}) {
      Expr lhs = divergence(f * xf, v);
      Expr rhs = apply(xf, f) + f * divergence(xf, v);
      for (const auto& p : s.points(kXY)) {
        CHECK(lmlab::testing::close_rel(evaluate(lhs, p), evaluate(rhs, p), 1e-12));
      }
    }
  }
}

TEST_CASE("ratio and product laws") {
  Sampler s;
  VectorField a = field({kX, kY});
  Expr m1 = Expr::constant(1) / (kX * kY);
  Expr m2 = m1 * (kY / kX);
  REQUIRE(check_last_multiplier(a, m1, kV, s).passed);
  REQUIRE(check_last_multiplier(a, m2, kV, s).passed);
  CHECK(check_first_integral(a, m1 / m2, s, 1e-9).passed);
  Expr f = kY / kX;
  REQUIRE(check_first_integral(a, f, s).passed);
  CHECK(check_last_multiplier(a, f * m1, kV, s, 1e-9).passed);
  CHECK(check_last_multiplier(a, f * f * m2, kV, s, 1e-9).passed);
}

TEST_CASE("multiplier fields form a subalgebra") {
  Sampler s;
  // Pairs sharing a multiplier: A = B/m with B divergence-free.
  Expr m = Expr::constant(1) + kX * kX + kY * kY;
  auto from_stream = [&](const Expr& psi) {
    return field({partial_derivative(psi, 1) / m, -partial_derivative(psi, 0) / m});
  };
  std::vector<std::pair<VectorField, VectorField>> pairs = {
      {from_stream(kX * kY), from_stream(kX * kX + kY)},
      {from_stream(sin(kX) * kY), from_stream(exp(kY) + kX * kX * kX)},
      {from_stream(kX * kX * kY * kY), from_stream(cos(kX + kY))},
  };
  for (auto& [x, y] : pairs) {
    REQUIRE(check_last_multiplier(x, m, kV, s).passed);
    REQUIRE(check_last_multiplier(y, m, kV, s).passed);
    CHECK(check_last_multiplier(lie_bracket(x, y), m, kV, s, 1e-9).passed);
  }
}

TEST_CASE("constructed instances have the expected verdict") {
  Sampler s;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    for (const Chart& c : {xy_chart(), xyz_chart()}) {
      for (bool expected : {true, false}) {
        auto inst = lmlab::testing::make_multiplier_instance(c, seed, expected);
        CHECK(check_last_multiplier(inst.a, inst.m, inst.v, s).passed == expected);
      }
    }
  }
}
