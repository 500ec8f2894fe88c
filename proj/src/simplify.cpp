// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <utility>
#include <vector>

#include "lmlab/expr.hpp"

namespace lmlab {
namespace {

const Expr kOne = Expr::constant(1);

struct Term {
  Rational coef;
  Expr core;  // kOne for the constant term
};

struct Factor {
  Expr base;
  int exponent;
};

// Splits a simplified expression into coefficient * core.
Term split_coefficient(const Expr& e, const Rational& coef) {
  if (e.is_constant()) {
    if (auto c = coef.mul(e.value())) return {*c, kOne};
    return {coef, e};
  }
  if (e.op() == Op::Product && e.arg(0).is_constant()) {
    if (auto c = coef.mul(e.arg(0).value())) {
      std::vector<Expr> rest(e.args().begin() + 1, e.args().end());
      Expr core = rest.size() == 1 ? rest.front() : Expr::nary(Op::Product, std::move(rest));
      return {*c, core};
    }
  }
  return {coef, e};
}

void gather_terms(const Expr& e, const Rational& coef, std::vector<Term>& out) {
  switch (e.op()) {
    case Op::Sum:
      for (const auto& a : e.args()) gather_terms(a, coef, out);
      return;
    case Op::Sub:
      gather_terms(e.arg(0), coef, out);
      if (auto n = coef.neg()) {
        gather_terms(e.arg(1), *n, out);
      } else {
        out.push_back({coef, Expr::unary(Op::Neg, e.arg(1))});
      }
      return;
    case Op::Neg:
      if (auto n = coef.neg()) {
        gather_terms(e.arg(0), *n, out);
        return;
      }
      break;
    default: break;
  }
  out.push_back(split_coefficient(e, coef));
}

Expr scale(const Rational& coef, const Expr& core) {
  if (coef.is_zero()) return Expr();
  if (core.is_one()) return Expr::constant(coef);
  if (coef.is_one()) return core;
  if (coef == Rational(-1)) return Expr::unary(Op::Neg, core);
  if (core.op() == Op::Product) {
    std::vector<Expr> f;
    f.push_back(Expr::constant(coef));
    f.insert(f.end(), core.args().begin(), core.args().end());
    return Expr::nary(Op::Product, std::move(f));
  }
  return Expr::nary(Op::Product, {Expr::constant(coef), core});
}

Expr collect_sum(const std::vector<Expr>& simplified_terms_with_sign, const std::vector<bool>& negate) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < simplified_terms_with_sign.size(); ++i) {
    gather_terms(simplified_terms_with_sign[i], Rational(negate[i] ? -1 : 1), terms);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return compare(a.core, b.core) < 0; });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && structurally_equal(merged.back().core, t.core)) {
      if (auto c = merged.back().coef.add(t.coef)) {
        merged.back().coef = *c;
        continue;
      }
    }
    merged.push_back(t);
  }
  std::vector<Expr> out;
  for (const auto& t : merged) {
    Expr x = scale(t.coef, t.core);
    if (!x.is_zero()) out.push_back(x);
  }
  if (out.empty()) return Expr();
  if (out.size() == 1) return out.front();
  return Expr::nary(Op::Sum, std::move(out));
}

void gather_factors(const Expr& e, Rational& coef, std::vector<Factor>& out, bool& overflow) {
  switch (e.op()) {
    case Op::Product:
      for (const auto& a : e.args()) gather_factors(a, coef, out, overflow);
      return;
    case Op::Neg:
      if (auto n = coef.neg()) {
        coef = *n;
        gather_factors(e.arg(0), coef, out, overflow);
        return;
      }
      break;
    case Op::Constant:
      if (auto c = coef.mul(e.value())) {
        coef = *c;
        return;
      }
      overflow = true;
      break;
    case Op::Pow:
      out.push_back({e.arg(0), e.exponent()});
      return;
    case Op::Div:
      if (e.arg(0).is_constant() && !e.arg(1).is_constant()) {
        if (auto c = coef.mul(e.arg(0).value())) {
          coef = *c;
          gather_factors(Expr::power(e.arg(1), -1), coef, out, overflow);
          return;
        }
      }
      break;
    default: break;
  }
  out.push_back({e, 1});
}

Expr collect_product(const std::vector<Expr>& simplified_factors) {
  Rational coef(1);
  std::vector<Factor> factors;
  bool overflow = false;
  for (const auto& f : simplified_factors) gather_factors(f, coef, factors, overflow);
  if (coef.is_zero()) return Expr();
  std::stable_sort(factors.begin(), factors.end(),
                   [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
  std::vector<Factor> merged;
  for (auto& f : factors) {
    if (!merged.empty() && structurally_equal(merged.back().base, f.base)) {
      merged.back().exponent += f.exponent;
      continue;
    }
    merged.push_back(f);
  }
  std::vector<Expr> out;
  for (const auto& f : merged) {
    if (f.exponent == 0) continue;
    if (f.base.is_constant()) {
      if (auto v = f.base.value().pow(f.exponent)) {
        if (auto c = coef.mul(*v)) {
          coef = *c;
          continue;
        }
      }
    }
    out.push_back(f.exponent == 1 ? f.base : Expr::power(f.base, f.exponent));
  }
  if (coef.is_zero()) return Expr();
  Expr core = out.empty() ? kOne : (out.size() == 1 ? out.front() : Expr::nary(Op::Product, out));
  return scale(coef, core);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.op()) {
    case Op::Constant:
    case Op::Coordinate:
    case Op::Parameter: return e;
    case Op::Neg: {
      Expr a = simplify(e.arg(0));
      if (a.op() == Op::Sum) return collect_sum({a}, {true});
      if (a.op() == Op::Product) return collect_product({Expr::constant(-1), a});
      return -a;
    }
    case Op::Sum: {
      std::vector<Expr> terms;
      for (const auto& a : e.args()) terms.push_back(simplify(a));
      return collect_sum(terms, std::vector<bool>(terms.size(), false));
    }
    case Op::Sub: return collect_sum({simplify(e.arg(0)), simplify(e.arg(1))}, {false, true});
    case Op::Product: {
      std::vector<Expr> factors;
      for (const auto& a : e.args()) factors.push_back(simplify(a));
      return collect_product(factors);
    }
    case Op::Div: {
      Expr a = simplify(e.arg(0));
      Expr b = simplify(e.arg(1));
      if (b.is_one()) return a;
      if (b.is_zero()) return Expr::binary(Op::Div, a, b);
      if (a.is_zero()) return Expr();
      if (structurally_equal(a, b)) return kOne;
      if (b.is_constant()) {
        if (auto inv = Rational(1).div(b.value())) return collect_product({a, Expr::constant(*inv)});
      }
      if (a.is_constant() || a.op() == Op::Product || a.op() == Op::Pow || b.op() == Op::Product ||
          b.op() == Op::Pow) {
        // fold into a product so shared factors cancel
        Expr r = collect_product({a, Expr::power(b, -1)});
        return r;
      }
      return Expr::binary(Op::Div, a, b);
    }
    case Op::Pow: {
      Expr b = simplify(e.arg(0));
      int n = e.exponent();
      if (b.op() == Op::Pow) {
        long long combined = static_cast<long long>(b.exponent()) * n;
        if (combined > -1000000 && combined < 1000000) return pow(b.arg(0), static_cast<int>(combined));
      }
      if (b.op() == Op::Product) {
        std::vector<Expr> f;
        for (const auto& a : b.args()) f.push_back(Expr::power(a, n));
        return collect_product(f);
      }
      return pow(b, n);
    }
    default: {
      Expr a = simplify(e.arg(0));
      switch (e.op()) {
        case Op::Sin: return sin(a);
        case Op::Cos: return cos(a);
        case Op::Exp: return exp(a);
        case Op::Ln: return ln(a);
        case Op::Sqrt: return sqrt(a);
        case Op::Cosh: return cosh(a);
        case Op::Sinh: return sinh(a);
        case Op::Tanh: return tanh(a);
        case Op::Abs: return abs(a);
        default: return e;
      }
    }
  }
}

}  // namespace lmlab
