// SPDX-License-Identifier: Apache-2.0
#include "lmlab/forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "lmlab/errors.hpp"

namespace lmlab {

namespace {

constexpr double kRouteAgreement = 1e-12;

// Sign of the permutation sorting the concatenation I ++ J, or 0 when the
// two share an index.
int merge_sign(const MultiIndex& i, const MultiIndex& j, MultiIndex& merged) {
  merged = i;
  merged.insert(merged.end(), j.begin(), j.end());
  int inversions = 0;
  for (int a : i) {
    for (int b : j) {
      if (a == b) return 0;
      if (a > b) ++inversions;
    }
  }
  std::sort(merged.begin(), merged.end());
  return inversions % 2 == 0 ? 1 : -1;
}

void accumulate(std::map<MultiIndex, Expr>& into, const MultiIndex& idx, const Expr& term) {
  auto it = into.find(idx);
  if (it == into.end()) {
    into.emplace(idx, term);
  } else {
    it->second = it->second + term;
  }
}

std::map<MultiIndex, Expr> simplified(std::map<MultiIndex, Expr> coeffs) {
  std::map<MultiIndex, Expr> out;
  for (auto& [idx, c] : coeffs) {
    Expr s = simplify(c);
    if (!s.is_zero()) out.emplace(idx, s);
  }
  return out;
}

}  // namespace

DifferentialForm::DifferentialForm(Chart chart, int degree, std::map<MultiIndex, Expr> coefficients)
    : chart_(std::move(chart)), degree_(degree), coefficients_(std::move(coefficients)) {
  if (degree_ < 0 || degree_ > chart_.dim() + 1) throw std::invalid_argument("form degree out of range");
  if (beyond_top() && !coefficients_.empty()) throw std::invalid_argument("forms above top degree must be zero");
  for (const auto& [idx, c] : coefficients_) {
    if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("multi-index length != degree");
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= chart_.dim()) throw std::invalid_argument("multi-index outside chart");
      if (k > 0 && idx[k] <= idx[k - 1]) throw std::invalid_argument("multi-index must be strictly increasing");
    }
    require_on_chart(c, chart_);
  }
}

DifferentialForm DifferentialForm::scalar(const Chart& chart, const Expr& f) {
  std::map<MultiIndex, Expr> c;
  if (!f.is_zero()) c.emplace(MultiIndex{}, f);
  return DifferentialForm(chart, 0, std::move(c));
}

DifferentialForm DifferentialForm::one_form(const Chart& chart, const std::vector<Expr>& components) {
  if (static_cast<int>(components.size()) != chart.dim()) {
    throw ChartMismatchError("1-form needs one component per coordinate");
  }
  std::map<MultiIndex, Expr> c;
  for (int i = 0; i < chart.dim(); ++i) {
    if (!components[static_cast<std::size_t>(i)].is_zero()) c.emplace(MultiIndex{i}, components[static_cast<std::size_t>(i)]);
  }
  return DifferentialForm(chart, 1, std::move(c));
}

DifferentialForm DifferentialForm::volume(const VolumeForm& v) {
  MultiIndex all(static_cast<std::size_t>(v.chart().dim()));
  for (int i = 0; i < v.chart().dim(); ++i) all[static_cast<std::size_t>(i)] = i;
  return DifferentialForm(v.chart(), v.chart().dim(), {{all, v.density()}});
}

Expr DifferentialForm::coefficient(const MultiIndex& index) const {
  auto it = coefficients_.find(index);
  return it == coefficients_.end() ? Expr() : it->second;
}

std::vector<Expr> DifferentialForm::coefficient_list() const {
  std::vector<Expr> out;
  for (const auto& [idx, c] : coefficients_) out.push_back(c);
  if (out.empty()) out.emplace_back();
  return out;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a.chart(), b.chart());
  if (a.degree() != b.degree()) throw std::invalid_argument("adding forms of different degree");
  auto c = a.coefficients();
  for (const auto& [idx, e] : b.coefficients()) accumulate(c, idx, e);
  return DifferentialForm(a.chart(), a.degree(), simplified(std::move(c)));
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
  return a + Expr::constant(-1) * b;
}

DifferentialForm operator*(const Expr& f, const DifferentialForm& a) {
  std::map<MultiIndex, Expr> c;
  for (const auto& [idx, e] : a.coefficients()) c.emplace(idx, f * e);
  return DifferentialForm(a.chart(), a.degree(), simplified(std::move(c)));
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a.chart(), b.chart());
  int degree = a.degree() + b.degree();
  if (degree > a.chart().dim()) {
    throw std::invalid_argument("wedge degree " + std::to_string(degree) + " exceeds chart dimension");
  }
  std::map<MultiIndex, Expr> c;
  MultiIndex merged;
  for (const auto& [i, ea] : a.coefficients()) {
    for (const auto& [j, eb] : b.coefficients()) {
      int sign = merge_sign(i, j, merged);
      if (sign == 0) continue;
      Expr term = ea * eb;
      accumulate(c, merged, sign > 0 ? term : -term);
    }
  }
  return DifferentialForm(a.chart(), degree, simplified(std::move(c)));
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  if (a.degree() >= a.chart().dim()) return DifferentialForm(a.chart(), a.chart().dim() + 1);
  std::map<MultiIndex, Expr> c;
  MultiIndex merged;
  for (const auto& [idx, coeff] : a.coefficients()) {
    for (int i = 0; i < a.chart().dim(); ++i) {
      int sign = merge_sign(MultiIndex{i}, idx, merged);
      if (sign == 0) continue;
      Expr d = partial_derivative(coeff, i);
      if (d.is_zero()) continue;
      accumulate(c, merged, sign > 0 ? d : -d);
    }
  }
  return DifferentialForm(a.chart(), a.degree() + 1, simplified(std::move(c)));
}

DifferentialForm interior_volume(const VectorField& a, const VolumeForm& v) {
  require_same_chart(a.chart(), v.chart());
  int n = a.dim();
  std::map<MultiIndex, Expr> c;
  for (int i = 0; i < n; ++i) {
    MultiIndex idx;
    for (int k = 0; k < n; ++k) {
      if (k != i) idx.push_back(k);
    }
    Expr coeff = v.density() * a[i];
    c.emplace(idx, i % 2 == 0 ? coeff : -coeff);
  }
  return DifferentialForm(a.chart(), n - 1, simplified(std::move(c)));
}

DifferentialForm witten_derivative(const Expr& f, double t, const DifferentialForm& a) {
  DifferentialForm da = exterior_derivative(a);
  if (t == 0.0 || a.degree() >= a.chart().dim()) return da;
  DifferentialForm df = exterior_derivative(DifferentialForm::scalar(a.chart(), f));
  return Expr::constant_from_double(t) * wedge(df, a) + da;
}

DifferentialForm marsden_derivative(const Expr& f, const DifferentialForm& a, const Sampler& s) {
  require_on_chart(f, a.chart());
  int vanishing = count_vanishing(f, a.chart(), s);
  if (2 * vanishing > s.count) {
    throw SamplingError("Marsden differential weight '" + to_string(f) + "' vanishes at " +
                        std::to_string(vanishing) + " of " + std::to_string(s.count) + " samples");
  }
  DifferentialForm d = exterior_derivative(f * a);
  if (f.is_one()) return d;
  return (Expr::constant(1) / f) * d;
}

CheckVerdict check_def11(const VectorField& a, const Expr& m, const VolumeForm& v, const Sampler& s, double tol) {
  DifferentialForm omega = interior_volume(a, v);
  DifferentialForm d = exterior_derivative(m * omega);
  Expr top = d.coefficient_list().front();
  CheckVerdict out = zero_on_domain(top, a.chart(), s, tol);
  Expr expected = simplify(v.density() * multiplier_residual(a, m, v));
  merge_subcheck(out, agree_on_domain(top, expected, a.chart(), s, kRouteAgreement),
                 "d(m Omega) differs from sigma*(A(m) + m divA)");
  return out;
}

CheckVerdict check_witten_characterization(const VectorField& a, const Expr& m, const VolumeForm& v,
                                           const Sampler& s, double tol) {
  DifferentialForm omega = interior_volume(a, v);
  DifferentialForm lhs = witten_derivative(m, 1.0, omega);
  DifferentialForm rhs = simplify(Expr::constant(1) - m) * exterior_derivative(omega);
  DifferentialForm residual = lhs - rhs;
  return zero_on_domain(residual.coefficient_list(), a.chart(), s, tol);
}

CheckVerdict check_marsden_closed(const VectorField& a, const Expr& m, const VolumeForm& v, const Sampler& s,
                                  double tol) {
  DifferentialForm omega = interior_volume(a, v);
  return zero_on_domain(marsden_derivative(m, omega, s).coefficient_list(), a.chart(), s, tol);
}

}  // namespace lmlab
