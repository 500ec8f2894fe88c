// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <vector>

#include "lmlab/fields.hpp"

namespace lmlab {

/// Strictly increasing list of coordinate indices, e.g. {0, 2} for dx^0 ^ dx^2.
using MultiIndex = std::vector<int>;

/// Degree-k form with one coefficient per strictly increasing multi-index;
/// absent entries are zero. Degree n+1 exists only as the zero form
/// returned when differentiating a top-degree form.
class DifferentialForm {
 public:
  DifferentialForm(Chart chart, int degree, std::map<MultiIndex, Expr> coefficients = {});

  static DifferentialForm scalar(const Chart& chart, const Expr& f);
  /// sum_i w_i dx^i
  static DifferentialForm one_form(const Chart& chart, const std::vector<Expr>& components);
  static DifferentialForm volume(const VolumeForm& v);

  const Chart& chart() const noexcept { return chart_; }
  int degree() const noexcept { return degree_; }
  /// True for the zero (n+1)-form produced by d of a top-degree form.
  bool beyond_top() const noexcept { return degree_ > chart_.dim(); }
  const std::map<MultiIndex, Expr>& coefficients() const noexcept { return coefficients_; }
  /// Coefficient of dx^I (zero when absent).
  Expr coefficient(const MultiIndex& index) const;
  /// Every stored coefficient, in multi-index order.
  std::vector<Expr> coefficient_list() const;

 private:
  Chart chart_;
  int degree_;
  std::map<MultiIndex, Expr> coefficients_;
};

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator*(const Expr& f, const DifferentialForm& a);

/// Alternating product; throws std::invalid_argument when the degrees
/// exceed the chart dimension.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// d(c dx^I) = sum_i d_i c dx^i ^ dx^I.
DifferentialForm exterior_derivative(const DifferentialForm& a);

/// Omega = i_A V, with coefficient (-1)^i sigma A^i on the multi-index
/// omitting i (0-based).
DifferentialForm interior_volume(const VectorField& a, const VolumeForm& v);

/// d_{tf}(a) = t df ^ a + da.
DifferentialForm witten_derivative(const Expr& f, double t, const DifferentialForm& a);

/// d^f(a) = (1/f) d(f a). Throws SamplingError when f vanishes at more
/// than half of the samples of `s`.
DifferentialForm marsden_derivative(const Expr& f, const DifferentialForm& a, const Sampler& s = {});

/// Checks d(m Omega) = 0 for Omega = i_A V, and that its top coefficient
/// equals sigma times the multiplier residual.
CheckVerdict check_def11(const VectorField& a, const Expr& m, const VolumeForm& v, const Sampler& s,
                         double tol = kDefaultTolerance);

/// Checks d_m Omega - (1 - m) dOmega = 0 (Witten differential with t = 1).
CheckVerdict check_witten_characterization(const VectorField& a, const Expr& m, const VolumeForm& v,
                                           const Sampler& s, double tol = kDefaultTolerance);

/// Checks that Omega is d^m-closed.
CheckVerdict check_marsden_closed(const VectorField& a, const Expr& m, const VolumeForm& v, const Sampler& s,
                                  double tol = kDefaultTolerance);

}  // namespace lmlab
