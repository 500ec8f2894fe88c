// SPDX-License-Identifier: Apache-2.0
//
// Randomized (A, m, V) instances with a known answer. Passing instances are
// built as A = B/m with B divergence-free for V (a rotated gradient in 2-D,
// a curl in 3-D); failing ones rescale m by (2 + x^1).
#pragma once

#include <cstdint>

#include "lmlab/fields.hpp"
#include "test_support.hpp"

namespace lmlab::testing {

struct MultiplierInstance {
  VectorField a;
  Expr m;
  VolumeForm v;
  bool expected;
};

inline MultiplierInstance make_multiplier_instance(const Chart& chart, std::uint64_t seed, bool expected) {
  ExprGen gen(chart, seed);
  int n = chart.dim();
  Expr x0 = Expr::coordinate(chart, 0);
  Expr x1 = Expr::coordinate(chart, 1);
  Expr sigma = gen.uniform(0, 1) == 0 ? Expr::constant(1) : Expr::constant(1) + x0 * x0;
  Expr m = Expr::constant(1) + Expr::power(gen.polynomial(2, 3), 2);
  std::vector<Expr> b;
  if (n == 2) {
    Expr psi = gen.polynomial(3) + x0 * x0 * x0 * x1;
    b = {partial_derivative(psi, 1) / sigma, -partial_derivative(psi, 0) / sigma};
  } else {
    Expr x2 = Expr::coordinate(chart, 2);
    Expr p0 = gen.polynomial(2) + x1 * x2;
    Expr p1 = gen.polynomial(2) + x0 * x2;
    Expr p2 = gen.polynomial(2) + x0 * x0 * x1;
    b = {(partial_derivative(p2, 1) - partial_derivative(p1, 2)) / sigma,
         (partial_derivative(p0, 2) - partial_derivative(p2, 0)) / sigma,
         (partial_derivative(p1, 0) - partial_derivative(p0, 1)) / sigma};
  }
  std::vector<Expr> comps;
  for (auto& bi : b) comps.push_back(simplify(bi / m));
  if (!expected) m = simplify((Expr::constant(2) + x0) * m);
  return {VectorField(chart, comps), m, VolumeForm(chart, sigma), expected};
}

}  // namespace lmlab::testing
