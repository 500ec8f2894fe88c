// SPDX-License-Identifier: Apache-2.0
#include "lmlab/riemann.hpp"

#include <cmath>
#include <stdexcept>

#include "lmlab/errors.hpp"

namespace lmlab {
namespace {

using Matrix = std::vector<std::vector<Expr>>;

Expr determinant(const Matrix& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Expr acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    Expr term = m[0][j] * determinant(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Expr cofactor(const Matrix& m, std::size_t i, std::size_t j) {
  std::size_t n = m.size();
  if (n == 1) return Expr::constant(1);
  Matrix minor;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == i) continue;
    std::vector<Expr> row;
    for (std::size_t c = 0; c < n; ++c) {
      if (c != j) row.push_back(m[r][c]);
    }
    minor.push_back(std::move(row));
  }
  Expr d = determinant(minor);
  return (i + j) % 2 == 0 ? d : -d;
}

void require_product_metric(const Metric& g) {
  if (g.dim() < 2) throw PreconditionError("a product metric needs a cylinder coordinate and a fiber");
  if (!g.g(0, 0).is_one()) throw PreconditionError("product metric needs g_tt = 1");
  for (int j = 1; j < g.dim(); ++j) {
    if (!g.g(0, j).is_zero()) throw PreconditionError("product metric needs g_tj = 0");
    for (int k = 1; k < g.dim(); ++k) {
      if (depends_on(g.g(j, k), 0)) throw PreconditionError("fiber metric must not depend on the cylinder coordinate");
    }
  }
}

}  // namespace

Metric::Parts Metric::derive(const Chart& chart, Matrix g) {
  int n = chart.dim();
  if (static_cast<int>(g.size()) != n) throw ValidationError("metric must have one row per coordinate");
  for (auto& row : g) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("metric rows must have one entry per coordinate");
    for (auto& e : row) {
      require_on_chart(e, chart);
      e = simplify(e);
    }
  }
  Parts p;
  p.diagonal = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      if (i < j && !simplify(g[ui][uj] - g[uj][ui]).is_zero()) {
        throw ValidationError("metric is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ")");
      }
      if (i != j && !g[ui][uj].is_zero()) p.diagonal = false;
    }
  }
  if (p.diagonal) {
    p.det = Expr::constant(1);
    Expr root = Expr::constant(1);
    for (int i = 0; i < n; ++i) {
      const Expr& gii = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      p.det = p.det * gii;
      if (!gii.is_one()) root = root * sqrt(gii);
    }
    p.det = simplify(p.det);
    p.sqrt_det = simplify(root);
  } else {
    p.det = simplify(determinant(g));
    p.sqrt_det = sqrt(p.det);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      p.g.push_back(g[ui][uj]);
      if (p.diagonal) {
        p.inv.push_back(i == j ? simplify(Expr::constant(1) / g[ui][ui]) : Expr());
      } else {
        p.inv.push_back(simplify(cofactor(g, uj, ui) / p.det));
      }
    }
  }
  return p;
}

Metric::Metric(Chart chart, Parts parts, const Sampler& s)
    : chart_(chart),
      g_(std::move(parts.g)),
      inv_(std::move(parts.inv)),
      det_(std::move(parts.det)),
      sqrt_det_(std::move(parts.sqrt_det)),
      diagonal_(parts.diagonal),
      volume_(sqrt_det_.is_one() ? VolumeForm::coordinate(chart) : VolumeForm(chart, sqrt_det_, s)) {}

Metric::Metric(Chart chart, Matrix g, const Sampler& s) : Metric(chart, derive(chart, std::move(g)), s) {
  require_positive(det_, chart_, s, "metric determinant");
  if (diagonal_) return;
  int n = dim();
  std::vector<Expr> deviations;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr acc = i == j ? Expr::constant(-1) : Expr();
      for (int k = 0; k < n; ++k) acc = acc + this->g(i, k) * inverse(k, j);
      deviations.push_back(acc);
    }
  }
  CheckVerdict v = zero_on_domain(deviations, chart_, s, 1e-9);
  if (!v.passed) throw PreconditionError("metric inverse does not reproduce the identity: " + summarize(v));
}

Metric Metric::euclidean(const Chart& chart) {
  Matrix g(static_cast<std::size_t>(chart.dim()), std::vector<Expr>(static_cast<std::size_t>(chart.dim())));
  for (std::size_t i = 0; i < g.size(); ++i) g[i][i] = Expr::constant(1);
  return Metric(chart, g);
}

Metric Metric::rotationally_symmetric(const Chart& chart, const Expr& phi, const Sampler& s) {
  if (chart.dim() != 2) throw ChartMismatchError("rotationally symmetric metrics live on a 2-D chart (t, theta)");
  require_on_chart(phi, chart);
  if (depends_on(phi, 1)) throw ValidationError("phi must depend on the radial coordinate only");
  require_positive(phi, chart, s, "phi");
  Expr f = simplify(phi);
  Parts p;
  p.diagonal = true;
  p.g = {Expr::constant(1), Expr(), Expr(), simplify(f * f)};
  p.inv = {Expr::constant(1), Expr(), Expr(), simplify(Expr::constant(1) / (f * f))};
  p.det = p.g[3];
  p.sqrt_det = f;
  return Metric(chart, std::move(p), s);
}

Expr volume_density(const Metric& g) { return g.sqrt_det(); }

VectorField gradient(const Metric& g, const Expr& u) {
  require_on_chart(u, g.chart());
  int n = g.dim();
  std::vector<Expr> du, c;
  for (int j = 0; j < n; ++j) du.push_back(partial_derivative(u, j));
  for (int i = 0; i < n; ++i) {
    Expr acc;
    for (int j = 0; j < n; ++j) acc = acc + g.inverse(i, j) * du[static_cast<std::size_t>(j)];
    c.push_back(simplify(acc));
  }
  return VectorField(g.chart(), std::move(c));
}

Expr cometric(const Metric& g, const Expr& f, const Expr& h) {
  VectorField gf = gradient(g, f);
  require_on_chart(h, g.chart());
  Expr acc;
  for (int i = 0; i < g.dim(); ++i) acc = acc + gf[i] * partial_derivative(h, i);
  return simplify(acc);
}

Expr laplacian(const Metric& g, const Expr& u) {
  VectorField grad = gradient(g, u);
  const Expr& root = g.sqrt_det();
  Expr acc;
  for (int i = 0; i < g.dim(); ++i) acc = acc + partial_derivative(root * grad[i], i);
  return simplify(root.is_one() ? acc : acc / root);
}

DifferentialForm flat(const Metric& g, const VectorField& a) {
  require_same_chart(g.chart(), a.chart());
  std::vector<Expr> w;
  for (int i = 0; i < g.dim(); ++i) {
    Expr acc;
    for (int j = 0; j < g.dim(); ++j) acc = acc + g.g(i, j) * a[j];
    w.push_back(simplify(acc));
  }
  return DifferentialForm::one_form(g.chart(), w);
}

VectorField sharp(const Metric& g, const DifferentialForm& w) {
  if (w.degree() != 1) throw std::invalid_argument("expected a 1-form, got degree " + std::to_string(w.degree()));
  require_same_chart(g.chart(), w.chart());
  std::vector<Expr> c;
  for (int i = 0; i < g.dim(); ++i) {
    Expr acc;
    for (int j = 0; j < g.dim(); ++j) acc = acc + g.inverse(i, j) * w.coefficient({j});
    c.push_back(simplify(acc));
  }
  return VectorField(g.chart(), std::move(c));
}

Expr codifferential_1form(const Metric& g, const DifferentialForm& w) {
  return simplify(-divergence(sharp(g, w), g.volume()));
}

CheckVerdict check_helmholtz_residual(const Metric& g, const VectorField& x, const Expr& u, const Expr& m,
                                      const Sampler& s, double tol) {
  require_same_chart(g.chart(), x.chart());
  CheckVerdict free = zero_on_domain(divergence(x, g.volume()), g.chart(), s, tol);
  if (!free.passed) throw PreconditionError("X is not divergence-free for the metric volume: " + summarize(free));
  Expr residual = simplify(apply(x, m) + cometric(g, u, m) + m * laplacian(g, u));
  CheckVerdict out = zero_on_domain(residual, g.chart(), s, tol);
  CheckVerdict direct = check_last_multiplier(x + gradient(g, u), m, g.volume(), s, tol);
  if (direct.passed != out.passed) {
    out.passed = false;
    out.notes.push_back("disagrees with the multiplier residual of X + grad u: " + summarize(direct));
  }
  out.trivial_multiplier = direct.trivial_multiplier;
  return out;
}

CheckVerdict check_gradient_multiplier(const Metric& g, const Expr& u, const Expr& m, const Sampler& s, double tol) {
  require_on_chart(m, g.chart());
  Expr lap_u = laplacian(g, u);
  Expr r35 = simplify(m * lap_u + cometric(g, u, m));
  Expr r37 = divergence(m * gradient(g, u), g.volume());
  CheckVerdict out = zero_on_domain(r35, g.chart(), s, tol);
  merge_subcheck(out, zero_on_domain(r37, g.chart(), s, tol), "div(m grad u)");
  merge_subcheck(out, agree_on_domain(r35, r37, g.chart(), s, 1e-12), "pointwise agreement with div(m grad u)");
  Expr r36 = simplify(laplacian(g, u * m) + m * lap_u - u * laplacian(g, m));
  merge_subcheck(out, agree_on_domain(r36, Expr::constant(2) * r35, g.chart(), s, 1e-9),
                 "Delta(um) + m Delta u - u Delta m identity");
  out.trivial_multiplier = simplify(m).is_zero();
  return out;
}

VectorField fiber_gradient(const Metric& g, const Expr& u) {
  require_product_metric(g);
  VectorField full = gradient(g, u);
  std::vector<Expr> c = full.components();
  c[0] = Expr();
  return VectorField(g.chart(), std::move(c));
}

Expr fiber_laplacian(const Metric& g, const Expr& u) {
  VectorField grad = fiber_gradient(g, u);
  const Expr& root = g.sqrt_det();
  Expr acc;
  for (int i = 1; i < g.dim(); ++i) acc = acc + partial_derivative(root * grad[i], i);
  return simplify(root.is_one() ? acc : acc / root);
}

Expr porous_medium_residual(const Metric& g, const Expr& u) {
  return simplify(partial_derivative(u, 0) - fiber_laplacian(g, u * u));
}

VectorField porous_transport_field(const Metric& g, const Expr& u) {
  VectorField grad = fiber_gradient(g, u);
  std::vector<Expr> c = grad.components();
  c[0] = Expr::constant(Rational(-1, 2));
  return VectorField(g.chart(), std::move(c));
}

CheckVerdict check_harmonic_square(const Metric& g, const Expr& u, const Sampler& s, double tol) {
  CheckVerdict out = zero_on_domain(laplacian(g, u * u), g.chart(), s, tol);
  CheckVerdict gm = check_gradient_multiplier(g, u, u, s, tol);
  if (gm.passed != out.passed) {
    out.passed = false;
    out.notes.push_back("disagrees with u as last multiplier of grad u: " + summarize(gm));
  }
  return out;
}

Expr radial_harmonic_square(const Chart& chart, double c1, double c2, int sign, const Sampler& s) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  int n = chart.dim();
  Expr r2;
  for (int i = 0; i < n; ++i) r2 = r2 + Expr::power(Expr::coordinate(chart, i), 2);
  Expr r = sqrt(r2);
  Expr radial = n == 2 ? ln(r) : Expr::power(r, 2 - n);
  Expr radicand = simplify(Expr::constant_from_double(c1) * radial + Expr::constant_from_double(c2));
  require_positive(radicand, chart, s, "radicand");
  Expr u = sqrt(radicand);
  return sign > 0 ? u : -u;
}

RotsymMultiplier rotsym_distance_multiplier(const Chart& chart, const Expr& phi, const Sampler& s) {
  Metric g = Metric::rotationally_symmetric(chart, phi, s);
  return {g, simplify(Expr::constant(1) / phi)};
}

HelmholtzPair helmholtz_pair_multiplier(const Metric& g, const Expr& a, const Expr& b, double k, const Sampler& s,
                                        double tol) {
  require_on_chart(b, g.chart());
  require_positive(a, g.chart(), s, "a");
  Expr k2 = Expr::constant_from_double(k * k);
  for (const auto& [f, name] : {std::pair{a, "a"}, std::pair{b, "b"}}) {
    CheckVerdict h = zero_on_domain(simplify(laplacian(g, f) + k2 * f), g.chart(), s, tol);
    if (!h.passed) {
      throw PreconditionError(std::string(name) + " does not solve the Helmholtz equation: " + summarize(h));
    }
  }
  HelmholtzPair out;
  out.multiplier = simplify(a * a);
  out.potential = simplify(b / a);
  out.verdict = check_gradient_multiplier(g, out.potential, out.multiplier, s, tol);
  Expr root = sqrt(out.multiplier);
  Expr v = simplify(out.potential * root);
  Expr identity = simplify(root * laplacian(g, v) - v * laplacian(g, root));
  merge_subcheck(out.verdict, zero_on_domain(identity, g.chart(), s, tol), "sqrt(m) Delta v = v Delta sqrt(m)");
  return out;
}

Expr m_coclosed_residual(const Metric& g, const Expr& m, const DifferentialForm& w) {
  return codifferential_1form(g, m * w);
}

CheckVerdict check_m_harmonic(const Metric& g, const Expr& m, const DifferentialForm& w, const Sampler& s,
                              double tol) {
  if (w.degree() != 1) throw std::invalid_argument("expected a 1-form, got degree " + std::to_string(w.degree()));
  std::vector<Expr> dw = exterior_derivative(w).coefficient_list();
  Expr coclosed = m_coclosed_residual(g, m, w);
  CheckVerdict closed_v = zero_on_domain(dw, g.chart(), s, tol);
  CheckVerdict coclosed_v = zero_on_domain(coclosed, g.chart(), s, tol);
  std::vector<Expr> all = dw;
  all.push_back(coclosed);
  CheckVerdict out = zero_on_domain(all, g.chart(), s, tol);
  if (!closed_v.passed) out.notes.push_back("not closed: " + summarize(closed_v));
  if (!coclosed_v.passed) out.notes.push_back("not m-coclosed: " + summarize(coclosed_v));
  return out;
}

CheckVerdict check_bracket_first_integral(const Metric& g, const Expr& a, const Expr& b, const Expr& m,
                                          const Sampler& s, double tol) {
  CheckVerdict ha = check_gradient_multiplier(g, a, m, s, tol);
  CheckVerdict hb = check_gradient_multiplier(g, b, m, s, tol);
  if (!ha.passed || !hb.passed) {
    CheckVerdict out = !ha.passed ? ha : hb;
    out.passed = false;
    out.hypothesis_failed = true;
    out.notes.insert(out.notes.begin(), std::string("m is not a last multiplier of grad ") + (!ha.passed ? "a" : "b"));
    return out;
  }
  VectorField br = lie_bracket(gradient(g, a), gradient(g, b));
  return zero_on_domain(apply(br, m), g.chart(), s, tol);
}

}  // namespace lmlab
