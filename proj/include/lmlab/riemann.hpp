// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "lmlab/fields.hpp"
#include "lmlab/forms.hpp"

namespace lmlab {

/// Riemannian metric g_ij on a chart with cached symbolic det g, sqrt(det g)
/// and inverse g^ij.
class Metric {
 public:
  /// Full n x n matrix. Throws ValidationError when the matrix is not
  /// symmetric or has the wrong shape, PreconditionError when det g is not
  /// positive or g g^-1 differs from the identity at a sample.
  Metric(Chart chart, std::vector<std::vector<Expr>> g, const Sampler& s = {});

  static Metric euclidean(const Chart& chart);
  /// dt^2 + phi(t)^2 dtheta^2 on a chart (t, theta); phi must depend on t
  /// only and be positive on the box.
  static Metric rotationally_symmetric(const Chart& chart, const Expr& phi, const Sampler& s = {});

  const Chart& chart() const noexcept { return chart_; }
  int dim() const noexcept { return chart_.dim(); }
  const Expr& g(int i, int j) const { return g_[idx(i, j)]; }
  const Expr& inverse(int i, int j) const { return inv_[idx(i, j)]; }
  const Expr& det() const noexcept { return det_; }
  const Expr& sqrt_det() const noexcept { return sqrt_det_; }
  bool is_diagonal() const noexcept { return diagonal_; }
  /// The Riemannian volume form sqrt(det g) dx^1 ^ ... ^ dx^n.
  const VolumeForm& volume() const noexcept { return volume_; }

 private:
  struct Parts {
    std::vector<Expr> g, inv;
    Expr det, sqrt_det;
    bool diagonal = false;
  };
  Metric(Chart chart, Parts parts, const Sampler& s);
  static Parts derive(const Chart& chart, std::vector<std::vector<Expr>> g);
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * chart_.dim() + j); }

  Chart chart_;
  std::vector<Expr> g_;
  std::vector<Expr> inv_;
  Expr det_;
  Expr sqrt_det_;
  bool diagonal_ = false;
  VolumeForm volume_;
};

Expr volume_density(const Metric& g);

/// (grad u)^i = sum_j g^ij d_j u.
VectorField gradient(const Metric& g, const Expr& u);

/// g^-1(df, dh) = sum_ij g^ij d_i f d_j h, i.e. <grad f, grad h>.
Expr cometric(const Metric& g, const Expr& f, const Expr& h);

/// Laplace-Beltrami operator (1/sqrt det g) sum_i d_i(sqrt det g g^ij d_j u).
Expr laplacian(const Metric& g, const Expr& u);

/// g-dual 1-form of a field: w_i = sum_j g_ij A^j.
DifferentialForm flat(const Metric& g, const VectorField& a);
/// g-dual field of a 1-form: A^i = sum_j g^ij w_j. Throws
/// std::invalid_argument for other degrees.
VectorField sharp(const Metric& g, const DifferentialForm& w);

/// delta w = -div_{V_g}(w^sharp) for a 1-form w.
Expr codifferential_1form(const Metric& g, const DifferentialForm& w);

/// Multiplier condition for A = X + grad u with X divergence-free:
/// X(m) + <grad u, grad m> + m Delta u = 0. Throws PreconditionError when X
/// is not divergence-free for V_g. Cross-checked against
/// check_last_multiplier(X + grad u, m, V_g).
CheckVerdict check_helmholtz_residual(const Metric& g, const VectorField& x, const Expr& u, const Expr& m,
                                      const Sampler& s, double tol = kDefaultTolerance);

/// m is a last multiplier of grad u: m Delta u + <grad u, grad m> = 0, and
/// div(m grad u) = 0, with the two residuals agreeing pointwise. Also checks
/// Delta(um) + m Delta u - u Delta m = 2 (m Delta u + <grad u, grad m>).
CheckVerdict check_gradient_multiplier(const Metric& g, const Expr& u, const Expr& m, const Sampler& s,
                                       double tol = kDefaultTolerance);

/// Fiber operators on a product metric dt^2 + g_N over coordinates
/// (t, x...): derivatives in t are excluded. Throw PreconditionError for a
/// metric that is not of product form.
VectorField fiber_gradient(const Metric& g, const Expr& u);
Expr fiber_laplacian(const Metric& g, const Expr& u);

/// u_t - Delta_N(u^2) on the product chart.
Expr porous_medium_residual(const Metric& g, const Expr& u);

/// -1/2 d/dt + grad_N u; its multiplier residual with m = u is -1/2 times
/// the porous-medium residual.
VectorField porous_transport_field(const Metric& g, const Expr& u);

/// Delta(u^2) = 0, cross-checked against check_gradient_multiplier(g, u, u).
CheckVerdict check_harmonic_square(const Metric& g, const Expr& u, const Sampler& s, double tol = kDefaultTolerance);

/// Radial u with Delta(u^2) = 0 on the Euclidean chart of dimension n:
/// sign*sqrt(C1 ln r + C2) for n = 2, sign*sqrt(C1 r^(2-n) + C2) otherwise.
/// Throws PreconditionError when the radicand is not positive at a sample.
Expr radial_harmonic_square(const Chart& chart, double c1, double c2, int sign = 1, const Sampler& s = {});

struct RotsymMultiplier {
  Metric metric;
  Expr multiplier;
};

/// Rotationally symmetric metric for phi together with m = 1/phi, the last
/// multiplier of grad t.
RotsymMultiplier rotsym_distance_multiplier(const Chart& chart, const Expr& phi, const Sampler& s = {});

struct HelmholtzPair {
  Expr multiplier;  // a^2
  Expr potential;   // b/a
  CheckVerdict verdict;
};

/// For a > 0 and b solving Delta f + k^2 f = 0, m = a^2 is a last multiplier
/// of grad(b/a). Throws PreconditionError when a is not positive or either
/// function fails the Helmholtz check. The verdict also covers
/// sqrt(m) Delta v = v Delta sqrt(m) for v = u sqrt(m).
HelmholtzPair helmholtz_pair_multiplier(const Metric& g, const Expr& a, const Expr& b, double k, const Sampler& s,
                                        double tol = kDefaultTolerance);

/// delta(m w) for a 1-form w.
Expr m_coclosed_residual(const Metric& g, const Expr& m, const DifferentialForm& w);

/// w is m-harmonic: dw = 0 and delta(m w) = 0.
CheckVerdict check_m_harmonic(const Metric& g, const Expr& m, const DifferentialForm& w, const Sampler& s,
                              double tol = kDefaultTolerance);

/// When m is a last multiplier of grad a and grad b, checks that it is a
/// first integral of [grad a, grad b]. A failed hypothesis is reported with
/// hypothesis_failed set.
CheckVerdict check_bracket_first_integral(const Metric& g, const Expr& a, const Expr& b, const Expr& m,
                                          const Sampler& s, double tol = kDefaultTolerance);

}  // namespace lmlab
