// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lmlab/errors.hpp"
#include "lmlab/poisson.hpp"
#include "test_support.hpp"

using namespace lmlab;
using lmlab::testing::xy_chart;
using lmlab::testing::xyz_chart;

namespace {

const Chart kXY = xy_chart();
const Expr kX = Expr::coordinate(kXY, 0);
const Expr kY = Expr::coordinate(kXY, 1);
const Expr kH = Expr::constant(1) + kX * kX + kY * kY;

PoissonStructure planar(const Expr& h) { return PoissonStructure(Bivector(kXY, {{{0, 1}, h}})); }

double at(const Expr& e, double x, double y) { return evaluate(e, std::vector<double>{x, y}); }

StructureConstants two_dim(double c1, double c2) {
  return StructureConstants(2, {{0, 1, 0, c1}, {0, 1, 1, c2}});
}

}  // namespace

TEST_CASE("bracket examples") {
  PoissonStructure canon = planar(Expr::constant(1));
  CHECK(bracket(canon, kX, kY).is_one());
  Expr f = kX * kX * kY;
  CHECK(bracket(canon, f, f).is_zero());
  PoissonStructure ph = planar(kH);
  CHECK(at(bracket(ph, kX, kY), 1.2, 0.4) == doctest::Approx(at(kH, 1.2, 0.4)));
  CHECK(at(bracket(ph, kY, kX), 1.2, 0.4) == doctest::Approx(-at(kH, 1.2, 0.4)));
  Chart other = lmlab::testing::box_chart({"u", "v"}, 0.5, 2.0);
  CHECK_THROWS_AS(bracket(canon, Expr::coordinate(other, 0), kY), ChartMismatchError);
}

TEST_CASE("hamiltonian field examples") {
  PoissonStructure canon = planar(Expr::constant(1));
  VectorField a = hamiltonian_field(canon, (kX * kX + kY * kY) / Expr::constant(2));
  CHECK(structurally_equal(simplify(a[0] + kY), Expr()));
  CHECK(structurally_equal(a[1], kX));
  VectorField zero = hamiltonian_field(canon, Expr::constant(5));
  CHECK(zero[0].is_zero());
  CHECK(zero[1].is_zero());
  PoissonStructure ph = planar(kH);
  VectorField ah = hamiltonian_field(ph, kH);
  for (double x : {0.6, 1.3}) {
    for (double y : {0.7, 1.9}) {
      double h = 1 + x * x + y * y;
      CHECK(at(ah[0], x, y) == doctest::Approx(-h * 2 * y));
      CHECK(at(ah[1], x, y) == doctest::Approx(h * 2 * x));
    }
  }
}

TEST_CASE("modular field examples and convention lock") {
  PoissonStructure canon = planar(Expr::constant(3));
  VectorField canon_xv = modular_field(canon);
  for (const auto& c : canon_xv.components()) CHECK(c.is_zero());
  VectorField xv = modular_field(planar(kH));
  CHECK(zero_on_domain(simplify(xv[0] - partial_derivative(kH, 1)), kXY, Sampler{}, 1e-12).passed);
  CHECK(zero_on_domain(simplify(xv[1] + partial_derivative(kH, 0)), kXY, Sampler{}, 1e-12).passed);

  Chart c3 = xyz_chart();
  StructureConstants c(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}});
  PoissonStructure so3 = lie_poisson(c3, c);
  CHECK(structurally_equal(so3.entry(0, 1), Expr::coordinate(c3, 2)));
  CHECK(structurally_equal(so3.entry(1, 2), Expr::coordinate(c3, 0)));
  CHECK(structurally_equal(so3.entry(2, 0), Expr::coordinate(c3, 1)));
  VectorField so3_xv = modular_field(so3);
  for (const auto& comp : so3_xv.components()) CHECK(comp.is_zero());

  StructureConstants c2 = two_dim(2.0, 3.0);
  PoissonStructure lp = lie_poisson(kXY, c2);
  VectorField lxv = modular_field(lp);
  CHECK(at(lxv[0], 1, 1) == 3.0);
  CHECK(at(lxv[1], 1, 1) == -2.0);
  CHECK(lie_poisson(kXY, StructureConstants(2, {})).bivector().upper().empty());

  // div A_f = X_V(f) for random planar structures and 3-D Lie-Poisson ones.
  lmlab::testing::ExprGen gen(kXY, 31);
  VolumeForm v = VolumeForm::coordinate(kXY);
  for (int k = 0; k < 10; ++k) {
    PoissonStructure p = planar(gen.smooth(2));
    Expr f = gen.smooth(2);
    Expr lhs = divergence(hamiltonian_field(p, f), v);
    Expr rhs = apply(modular_field(p), f);
    CHECK(agree_on_domain(lhs, rhs, kXY, Sampler{}, 1e-9).passed);
  }
  StructureConstants solvable(3, {{0, 1, 1, 1.0}, {0, 2, 2, 2.0}});
  PoissonStructure ps = lie_poisson(c3, solvable);
  lmlab::testing::ExprGen gen3(c3, 37);
  for (int k = 0; k < 4; ++k) {
    Expr f = gen3.smooth(2);
    CHECK(agree_on_domain(divergence(hamiltonian_field(ps, f), VolumeForm::coordinate(c3)),
                          apply(modular_field(ps), f), c3, Sampler{}, 1e-9)
              .passed);
  }
}

TEST_CASE("jacobi check") {
  lmlab::testing::ExprGen gen(kXY, 41);
  CHECK(check_jacobi(Bivector(kXY, {{{0, 1}, gen.smooth(3)}}), Sampler{}).passed);
  Chart c3 = xyz_chart();
  Expr x = Expr::coordinate(c3, 0), y = Expr::coordinate(c3, 1);
  Bivector candidate(c3, {{{0, 1}, x}, {{0, 2}, y}});
  CheckVerdict v = check_jacobi(candidate, Sampler{});
  CHECK_FALSE(v.passed);
  // Jacobiator {x1,{x2,x3}} + cyclic = -x2 for this candidate.
  CHECK(v.max_abs_residual == doctest::Approx(v.witness[1]));
  CHECK_THROWS_AS(PoissonStructure{candidate}, PreconditionError);
  CHECK_THROWS_AS(Bivector(c3, {{{1, 0}, x}}), ValidationError);
  CHECK_THROWS_AS(StructureConstants(3, {{0, 1, 1, 1.0}, {1, 2, 0, 1.0}}), ValidationError);
  CHECK(check_jacobi(lie_poisson(c3, StructureConstants(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}}))
                         .bivector(),
                     Sampler{})
            .passed);
}

TEST_CASE("ham multiplier examples") {
  Sampler s;
  PoissonStructure canon = planar(Expr::constant(1));
  Expr f = (kX * kX + kY * kY) / Expr::constant(2);
  CHECK(check_ham_multiplier(canon, f, f, s).passed);
  CHECK_FALSE(check_ham_multiplier(canon, f, kX, s).passed);
  PoissonStructure ph = planar(kH);
  CHECK(check_ham_multiplier(ph, kH, kH, s).passed);
}

TEST_CASE("self multiplier examples") {
  Sampler s;
  PoissonStructure ph = planar(kH);
  CheckVerdict v = check_self_multiplier(ph, kH, s);
  CHECK(v.passed);
  CHECK(v.max_abs_residual <= 1e-12);
  lmlab::testing::ExprGen gen(kXY, 43);
  CHECK(check_self_multiplier(planar(Expr::constant(2)), gen.smooth(3), s).passed);
  PoissonStructure lp = lie_poisson(kXY, two_dim(2.0, 3.0));
  CheckVerdict bad = check_self_multiplier(lp, kX, s);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_abs_residual == doctest::Approx(3.0));
}

TEST_CASE("affine family on the 2-D Lie-Poisson structure") {
  Sampler s;
  PoissonStructure lp = lie_poisson(kXY, two_dim(2.0, 3.0));
  Expr f = affine_self_multiplier_2d(kXY, 2.0, 3.0, 1.0, 0.0);
  CHECK(at(f, 1.0, 0.0) == 2.0);
  CHECK(at(f, 0.0, 1.0) == 3.0);
  CheckVerdict ok = check_self_multiplier(lp, f, s);
  CHECK(ok.passed);
  CHECK(ok.max_abs_residual == 0.0);
  for (double a : {-1.5, 0.5, 4.0}) {
    CHECK(check_self_multiplier(lp, affine_self_multiplier_2d(kXY, 2.0, 3.0, a, 7.0), s).max_abs_residual == 0.0);
  }
  Expr constant = affine_self_multiplier_2d(kXY, 2.0, 3.0, 0.0, 2.5);
  CHECK(constant.is_constant());
  CHECK(check_self_multiplier(lp, constant, s).passed);
  CHECK_THROWS_AS(affine_self_multiplier_2d(kXY, 0.0, 0.0, 1.0, 0.0), std::invalid_argument);

  Expr literal = kX / Expr::constant(2) + kY / Expr::constant(3);
  CheckVerdict printed = check_self_multiplier(lp, literal, s);
  CHECK_FALSE(printed.passed);
  CHECK(printed.max_abs_residual == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("modular-field identity for multipliers") {
  // m is a last multiplier of A_f iff f is a first integral of m X_V - A_m.
  Sampler s;
  VolumeForm v = VolumeForm::coordinate(kXY);
  std::vector<PoissonStructure> structures = {planar(kH), lie_poisson(kXY, two_dim(2.0, 3.0)),
                                              planar(Expr::constant(1))};
  std::vector<std::pair<Expr, Expr>> pairs = {
      {kH, kH}, {kX, kY}, {kX * kY, kH}, {kH * kH, sin(kX)}, {kX + kY, kX + kY}, {exp(kX), Expr::constant(1)}};
  int agreed = 0;
  for (const auto& p : structures) {
    for (const auto& [f, m] : pairs) {
      VectorField combo = m * modular_field(p) - hamiltonian_field(p, m);
      bool a = check_ham_multiplier(p, f, m, s).passed;
      bool b = check_first_integral(combo, f, s).passed;
      bool c = check_last_multiplier(hamiltonian_field(p, f), m, v, s).passed;
      CHECK(a == b);
      CHECK(a == c);
      agreed += a == b;
    }
  }
  CHECK(agreed == 18);
}

TEST_CASE("self multipliers form a Poisson subalgebra") {
  Sampler s;
  PoissonStructure ph = planar(kH);
  std::vector<Expr> pool = {kH, kH * kH, exp(kH), Expr::constant(2) * kH + Expr::constant(1)};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < pool.size(); ++j) {
      REQUIRE(check_self_multiplier(ph, pool[i], s).passed);
      CHECK(check_self_multiplier(ph, pool[i] * pool[j], s, 1e-9).passed);
      CHECK(check_self_multiplier(ph, bracket(ph, pool[i], pool[j]), s, 1e-9).passed);
    }
  }
  PoissonStructure lp = lie_poisson(kXY, two_dim(2.0, 3.0));
  Expr f = affine_self_multiplier_2d(kXY, 2.0, 3.0, 1.0, 1.0);
  Expr g = affine_self_multiplier_2d(kXY, 2.0, 3.0, -2.0, 0.5);
  CHECK(check_self_multiplier(lp, f * g, s, 1e-9).passed);
  CHECK(check_self_multiplier(lp, bracket(lp, f, g), s, 1e-9).passed);
  CHECK(check_self_multiplier(lp, f * f * f, s, 1e-9).passed);
}

TEST_CASE("multipliers of products of Hamiltonians") {
  Sampler s;
  PoissonStructure ph = planar(kH);
  std::vector<std::tuple<Expr, Expr, Expr>> cases = {
      {kH, kH * kH, kH}, {kH, exp(kH), kH * kH}, {kH * kH, kH, Expr::constant(1) / kH}};
  for (const auto& [f, g, m] : cases) {
    REQUIRE(check_ham_multiplier(ph, f, m, s).passed);
    REQUIRE(check_ham_multiplier(ph, g, m, s).passed);
    CHECK(check_ham_multiplier(ph, f * g, m, s, 1e-9).passed);
    CHECK(check_ham_multiplier(ph, Expr::power(f, 2), m, s, 1e-9).passed);
    CHECK(check_ham_multiplier(ph, Expr::power(f, 3), m, s, 1e-9).passed);
  }
}

TEST_CASE("bracket Leibniz rule") {
  lmlab::testing::ExprGen gen(kXY, 53);
  PoissonStructure ph = planar(kH);
  for (int k = 0; k < 8; ++k) {
    Expr f = gen.smooth(2), g = gen.smooth(2), h = gen.smooth(2);
    Expr lhs = bracket(ph, f, g * h);
    Expr rhs = g * bracket(ph, f, h) + h * bracket(ph, f, g);
    CHECK(agree_on_domain(lhs, rhs, kXY, Sampler{}, 1e-9).passed);
  }
}

TEST_CASE("unimodular form") {
  Sampler s;
  // pi^{12} = e^x: X_V = (0, -e^x) = A_rho for rho = -x.
  PoissonStructure pe = planar(exp(kX));
  CheckVerdict ok = check_unimodular_multiplier(pe, -kX, kY, exp(-kX), s);
  CHECK(ok.passed);
  CHECK(check_ham_multiplier(pe, kY, exp(-kX), s).passed);
  CHECK_FALSE(check_unimodular_multiplier(pe, -kX, kY, exp(kX), s).passed);
  CheckVerdict wrong_rho = check_unimodular_multiplier(pe, kY, kY, exp(-kX), s);
  CHECK_FALSE(wrong_rho.passed);
  CHECK(wrong_rho.hypothesis_failed);
}
