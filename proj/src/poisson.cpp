// SPDX-License-Identifier: Apache-2.0
#include "lmlab/poisson.hpp"

#include <cmath>
#include <stdexcept>

#include "lmlab/errors.hpp"

namespace lmlab {

Bivector::Bivector(Chart chart, std::map<std::pair<int, int>, Expr> upper)
    : chart_(std::move(chart)), upper_(std::move(upper)) {
  for (auto& [ij, e] : upper_) {
    auto [i, j] = ij;
    if (!(0 <= i && i < j && j < chart_.dim())) {
      throw ValidationError("bivector entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") must satisfy 1 <= i < j <= n");
    }
    require_on_chart(e, chart_);
    e = simplify(e);
  }
}

Expr Bivector::entry(int i, int j) const {
  if (i == j) return Expr();
  if (i < j) {
    auto it = upper_.find({i, j});
    return it == upper_.end() ? Expr() : it->second;
  }
  auto it = upper_.find({j, i});
  return it == upper_.end() ? Expr() : -it->second;
}

Expr bracket(const Bivector& pi, const Expr& f, const Expr& g) {
  require_on_chart(f, pi.chart());
  require_on_chart(g, pi.chart());
  int n = pi.dim();
  std::vector<Expr> df, dg;
  for (int i = 0; i < n; ++i) {
    df.push_back(partial_derivative(f, i));
    dg.push_back(partial_derivative(g, i));
  }
  Expr acc;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) acc = acc + pi.entry(i, j) * df[static_cast<std::size_t>(i)] * dg[static_cast<std::size_t>(j)];
  }
  return simplify(acc);
}

CheckVerdict check_jacobi(const Bivector& pi, const Sampler& s, double tol) {
  int n = pi.dim();
  std::vector<Expr> jacobiators;
  std::vector<Expr> x;
  for (int i = 0; i < n; ++i) x.push_back(Expr::coordinate(pi.chart(), i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Expr& f = x[static_cast<std::size_t>(i)];
        const Expr& g = x[static_cast<std::size_t>(j)];
        const Expr& h = x[static_cast<std::size_t>(k)];
        jacobiators.push_back(simplify(bracket(pi, f, bracket(pi, g, h)) + bracket(pi, g, bracket(pi, h, f)) +
                                       bracket(pi, h, bracket(pi, f, g))));
      }
    }
  }
  if (jacobiators.empty()) jacobiators.emplace_back();  // n <= 2: always Poisson
  return zero_on_domain(jacobiators, pi.chart(), s, tol);
}

PoissonStructure::PoissonStructure(Bivector pi, const Sampler& s, double tol) : pi_(std::move(pi)) {
  CheckVerdict v = check_jacobi(pi_, s, tol);
  if (!v.passed) throw PreconditionError("bivector violates the Jacobi identity: " + summarize(v));
}

VectorField hamiltonian_field(const PoissonStructure& pi, const Expr& f) {
  require_on_chart(f, pi.chart());
  int n = pi.chart().dim();
  std::vector<Expr> c;
  for (int i = 0; i < n; ++i) {
    Expr acc;
    for (int j = 0; j < n; ++j) acc = acc + pi.entry(j, i) * partial_derivative(f, j);
    c.push_back(simplify(acc));
  }
  return VectorField(pi.chart(), std::move(c));
}

VectorField modular_field(const PoissonStructure& pi) {
  int n = pi.chart().dim();
  std::vector<Expr> c;
  for (int i = 0; i < n; ++i) {
    Expr acc;
    for (int j = 0; j < n; ++j) acc = acc + partial_derivative(pi.entry(i, j), j);
    c.push_back(simplify(acc));
  }
  return VectorField(pi.chart(), std::move(c));
}

CheckVerdict check_ham_multiplier(const PoissonStructure& pi, const Expr& f, const Expr& m, const Sampler& s,
                                  double tol) {
  Expr residual = simplify(m * apply(modular_field(pi), f) - bracket(pi, m, f));
  CheckVerdict out = zero_on_domain(residual, pi.chart(), s, tol);
  CheckVerdict direct = check_last_multiplier(hamiltonian_field(pi, f), m, VolumeForm::coordinate(pi.chart()), s, tol);
  if (direct.passed != out.passed) {
    out.passed = false;
    out.notes.push_back("bracket form and A_f(m) + m divA_f disagree: " + summarize(direct));
  }
  out.trivial_multiplier = direct.trivial_multiplier;
  return out;
}

CheckVerdict check_self_multiplier(const PoissonStructure& pi, const Expr& f, const Sampler& s, double tol) {
  return zero_on_domain(apply(modular_field(pi), f), pi.chart(), s, tol);
}

CheckVerdict check_unimodular_multiplier(const PoissonStructure& pi, const Expr& rho, const Expr& f,
                                         const Expr& m, const Sampler& s, double tol) {
  VectorField xv = modular_field(pi);
  VectorField arho = hamiltonian_field(pi, rho);
  std::vector<Expr> diff;
  for (int i = 0; i < xv.dim(); ++i) diff.push_back(simplify(xv[i] - arho[i]));
  CheckVerdict hyp = zero_on_domain(diff, pi.chart(), s, tol);
  if (!hyp.passed) {
    hyp.passed = false;
    hyp.hypothesis_failed = true;
    hyp.notes.emplace_back("modular field is not the Hamiltonian field of rho");
    return hyp;
  }
  Expr residual = simplify(m * bracket(pi, rho, f) - bracket(pi, m, f));
  CheckVerdict out = zero_on_domain(residual, pi.chart(), s, tol);
  merge_subcheck(out, check_ham_multiplier(pi, f, m, s, tol), "general modular form");
  return out;
}

StructureConstants::StructureConstants(int n, const std::vector<Entry>& entries)
    : n_(n), c_(static_cast<std::size_t>(n * n * n), 0.0) {
  if (n < 1) throw ValidationError("Lie algebra dimension must be positive");
  auto at = [this](int i, int j, int k) -> double& { return c_[static_cast<std::size_t>((i * n_ + j) * n_ + k)]; };
  double scale = 0.0;
  for (const auto& e : entries) {
    if (!(0 <= e.i && e.i < e.j && e.j < n && 0 <= e.k && e.k < n)) {
      throw ValidationError("structure constant (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + "," +
                            std::to_string(e.k + 1) + ") needs 1 <= i < j <= n and 1 <= k <= n");
    }
    if (!std::isfinite(e.value)) throw ValidationError("structure constant is not finite");
    at(e.i, e.j, e.k) = e.value;
    at(e.j, e.i, e.k) = -e.value;
    scale = std::max(scale, std::fabs(e.value));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double jac = 0.0;
          for (int m = 0; m < n; ++m) {
            jac += at(i, j, m) * at(m, k, l) + at(j, k, m) * at(m, i, l) + at(k, i, m) * at(m, j, l);
          }
          if (std::fabs(jac) > 1e-12 * std::max(1.0, scale * scale)) {
            throw ValidationError("structure constants violate the Jacobi identity at (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + "; " +
                                  std::to_string(l + 1) + ")");
          }
        }
      }
    }
  }
}

PoissonStructure lie_poisson(const Chart& chart, const StructureConstants& c) {
  if (chart.dim() != c.dim()) throw ChartMismatchError("structure constants and chart differ in dimension");
  std::map<std::pair<int, int>, Expr> upper;
  for (int i = 0; i < c.dim(); ++i) {
    for (int j = i + 1; j < c.dim(); ++j) {
      Expr acc;
      for (int k = 0; k < c.dim(); ++k) {
        if (c(i, j, k) != 0.0) acc = acc + Expr::constant_from_double(c(i, j, k)) * Expr::coordinate(chart, k);
      }
      if (!acc.is_zero()) upper.emplace(std::make_pair(i, j), acc);
    }
  }
  return PoissonStructure(Bivector(chart, std::move(upper)));
}

Expr affine_self_multiplier_2d(const Chart& chart, double c1, double c2, double a, double b) {
  if (chart.dim() != 2) throw ChartMismatchError("affine self-multiplier family lives on a 2-D chart");
  if (c1 == 0.0 && c2 == 0.0) throw std::invalid_argument("structure constants c1 and c2 are both zero");
  Expr x1 = Expr::coordinate(chart, 0);
  Expr x2 = Expr::coordinate(chart, 1);
  Expr lin = Expr::constant_from_double(c1) * x1 + Expr::constant_from_double(c2) * x2;
  return simplify(Expr::constant_from_double(a) * lin + Expr::constant_from_double(b));
}

}  // namespace lmlab
