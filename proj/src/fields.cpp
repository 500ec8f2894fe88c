// SPDX-License-Identifier: Apache-2.0
#include "lmlab/fields.hpp"

#include "lmlab/errors.hpp"

namespace lmlab {

namespace {
constexpr double kRouteAgreement = 1e-12;
}

VolumeForm VolumeForm::coordinate(const Chart& chart) { return VolumeForm(chart, Expr::constant(1), true); }

VolumeForm::VolumeForm(Chart chart, Expr density, const Sampler& s)
    : chart_(std::move(chart)), density_(simplify(density)) {
  require_on_chart(density_, chart_);
  if (!density_.is_one()) require_positive(density_, chart_, s, "volume density '" + to_string(density_) + "'");
}

VectorField::VectorField(Chart chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != chart_.dim()) {
    throw ChartMismatchError("vector field has " + std::to_string(components_.size()) +
                             " components on a chart of dimension " + std::to_string(chart_.dim()));
  }
  for (const auto& c : components_) require_on_chart(c, chart_);
}

VectorField VectorField::zero(const Chart& chart) {
  return VectorField(chart, std::vector<Expr>(static_cast<std::size_t>(chart.dim())));
}

VectorField VectorField::basis(const Chart& chart, int i) {
  std::vector<Expr> c(static_cast<std::size_t>(chart.dim()));
  c.at(static_cast<std::size_t>(i)) = Expr::constant(1);
  return VectorField(chart, std::move(c));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart(), b.chart());
  std::vector<Expr> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(simplify(a[i] + b[i]));
  return VectorField(a.chart(), std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart(), b.chart());
  std::vector<Expr> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(simplify(a[i] - b[i]));
  return VectorField(a.chart(), std::move(c));
}

VectorField operator*(const Expr& f, const VectorField& a) {
  std::vector<Expr> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(simplify(f * a[i]));
  return VectorField(a.chart(), std::move(c));
}

Expr apply(const VectorField& a, const Expr& f) {
  require_on_chart(f, a.chart());
  Expr acc;
  for (int i = 0; i < a.dim(); ++i) acc = acc + a[i] * partial_derivative(f, i);
  return simplify(acc);
}

Expr divergence(const VectorField& a, const VolumeForm& v) {
  require_same_chart(a.chart(), v.chart());
  const Expr& sigma = v.density();
  Expr acc;
  for (int i = 0; i < a.dim(); ++i) acc = acc + partial_derivative(sigma * a[i], i);
  return simplify(v.is_coordinate() ? acc : acc / sigma);
}

Expr multiplier_residual(const VectorField& a, const Expr& m, const VolumeForm& v) {
  return simplify(apply(a, m) + m * divergence(a, v));
}

CheckVerdict check_last_multiplier(const VectorField& a, const Expr& m, const VolumeForm& v, const Sampler& s,
                                   double tol) {
  Expr residual = multiplier_residual(a, m, v);
  Expr div_ma = divergence(m * a, v);
  CheckVerdict out = zero_on_domain(residual, a.chart(), s, tol);
  merge_subcheck(out, zero_on_domain(div_ma, a.chart(), s, tol), "div(mA) route");
  merge_subcheck(out, agree_on_domain(residual, div_ma, a.chart(), s, kRouteAgreement),
                 "A(m) + m divA and div(mA) disagree");
  out.trivial_multiplier = vanishes_identically(m, a.chart(), s);
  if (out.trivial_multiplier) out.notes.emplace_back("multiplier vanishes identically (trivial solution)");
  return out;
}

Expr adjoint_apply(const VectorField& a, const Expr& m, const VolumeForm& v) {
  return simplify(-apply(a, m) - m * divergence(a, v));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  std::vector<Expr> c;
  for (int k = 0; k < x.dim(); ++k) {
    Expr acc;
    for (int i = 0; i < x.dim(); ++i) {
      acc = acc + x[i] * partial_derivative(y[k], i) - y[i] * partial_derivative(x[k], i);
    }
    c.push_back(simplify(acc));
  }
  return VectorField(x.chart(), std::move(c));
}

CheckVerdict check_inverse_multiplier(const VectorField& a, const Expr& h, const VolumeForm& v, const Sampler& s,
                                      double tol) {
  require_on_chart(h, a.chart());
  int vanishing = count_vanishing(h, a.chart(), s);
  if (2 * vanishing > s.count) {
    throw SamplingError("inverse multiplier candidate '" + to_string(h) + "' vanishes at " +
                        std::to_string(vanishing) + " of " + std::to_string(s.count) + " samples");
  }
  Expr residual = simplify(apply(a, h) - h * divergence(a, v));
  CheckVerdict out = zero_on_domain(residual, a.chart(), s, tol);
  if (out.passed) {
    merge_subcheck(out, check_last_multiplier(a, Expr::constant(1) / h, v, s, tol), "reciprocal 1/h");
  }
  return out;
}

CheckVerdict check_first_integral(const VectorField& a, const Expr& f, const Sampler& s, double tol) {
  return zero_on_domain(apply(a, f), a.chart(), s, tol);
}

}  // namespace lmlab
