// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "lmlab/chart.hpp"
#include "lmlab/expr.hpp"
#include "lmlab/sampling.hpp"

namespace lmlab {

/// Volume form V = sigma dx^1 ^ ... ^ dx^n with a density positive on the
/// chart box.
class VolumeForm {
 public:
  /// The coordinate volume form (sigma = 1).
  static VolumeForm coordinate(const Chart& chart);
  /// Throws PreconditionError unless sigma > 0 at every sample.
  VolumeForm(Chart chart, Expr density, const Sampler& s = {});

  const Chart& chart() const noexcept { return chart_; }
  const Expr& density() const noexcept { return density_; }
  bool is_coordinate() const noexcept { return density_.is_one(); }

 private:
  VolumeForm(Chart chart, Expr density, bool) : chart_(std::move(chart)), density_(std::move(density)) {}
  Chart chart_;
  Expr density_;
};

class VectorField {
 public:
  /// Throws ChartMismatchError when the component count differs from dim.
  VectorField(Chart chart, std::vector<Expr> components);
  static VectorField zero(const Chart& chart);
  /// The coordinate field d/dx^i.
  static VectorField basis(const Chart& chart, int i);

  const Chart& chart() const noexcept { return chart_; }
  int dim() const noexcept { return chart_.dim(); }
  const std::vector<Expr>& components() const noexcept { return components_; }
  const Expr& operator[](int i) const { return components_.at(static_cast<std::size_t>(i)); }

 private:
  Chart chart_;
  std::vector<Expr> components_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
/// Pointwise scaling f*A.
VectorField operator*(const Expr& f, const VectorField& a);

/// Directional derivative A(f) = sum_i A^i d_i f.
Expr apply(const VectorField& a, const Expr& f);

/// div_V A = (1/sigma) sum_i d_i(sigma A^i).
Expr divergence(const VectorField& a, const VolumeForm& v);

/// A(m) + m div_V A; vanishes identically exactly when m is a last
/// multiplier of A.
Expr multiplier_residual(const VectorField& a, const Expr& m, const VolumeForm& v);

/// Checks the multiplier residual and div_V(mA) independently; both must
/// vanish and the two must agree pointwise to 1e-12 relative.
CheckVerdict check_last_multiplier(const VectorField& a, const Expr& m, const VolumeForm& v, const Sampler& s,
                                   double tol = kDefaultTolerance);

/// Adjoint operator A*(m) = -A(m) - m div_V A.
Expr adjoint_apply(const VectorField& a, const Expr& m, const VolumeForm& v);

/// [X,Y]^k = sum_i (X^i d_i Y^k - Y^i d_i X^k).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// h is an inverse multiplier when A(h) = h div_V A. On success 1/h is
/// cross-checked as a last multiplier. Throws SamplingError when h vanishes
/// at more than half of the samples.
CheckVerdict check_inverse_multiplier(const VectorField& a, const Expr& h, const VolumeForm& v, const Sampler& s,
                                      double tol = kDefaultTolerance);

/// f is a first integral when A(f) vanishes on the domain.
CheckVerdict check_first_integral(const VectorField& a, const Expr& f, const Sampler& s,
                                  double tol = kDefaultTolerance);

}  // namespace lmlab
