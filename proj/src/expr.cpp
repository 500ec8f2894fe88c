// SPDX-License-Identifier: Apache-2.0
#include "lmlab/expr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmlab/errors.hpp"

namespace lmlab {

const char* op_name(Op op) {
  switch (op) {
    case Op::Constant: return "constant";
    case Op::Coordinate: return "coordinate";
    case Op::Parameter: return "parameter";
    case Op::Neg: return "neg";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sqrt: return "sqrt";
    case Op::Cosh: return "cosh";
    case Op::Sinh: return "sinh";
    case Op::Tanh: return "tanh";
    case Op::Abs: return "abs";
    case Op::Sum: return "sum";
    case Op::Product: return "product";
    case Op::Sub: return "sub";
    case Op::Div: return "div";
    case Op::Pow: return "pow";
  }
  return "?";
}

bool is_function(Op op) {
  switch (op) {
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Ln:
    case Op::Sqrt:
    case Op::Cosh:
    case Op::Sinh:
    case Op::Tanh:
    case Op::Abs: return true;
    default: return false;
  }
}

namespace {

const Expr& zero_expr() {
  static const Expr z = Expr::constant(Rational(0));
  return z;
}

std::shared_ptr<Node> new_node(Op op) {
  auto n = std::make_shared<Node>();
  n->op = op;
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

Expr::Expr() : node_(zero_expr().node_) {}

Expr Expr::constant(Rational value) {
  auto n = new_node(Op::Constant);
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::constant_from_double(double value) {
  auto r = Rational::from_double(value);
  if (!r) throw std::invalid_argument("constant " + std::to_string(value) + " has no rational form");
  return constant(*r);
}

Expr Expr::coordinate(int index, std::string name) {
  auto n = new_node(Op::Coordinate);
  n->index = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::coordinate(const Chart& chart, int index) {
  if (index < 0 || index >= chart.dim()) throw std::out_of_range("coordinate index outside chart");
  return coordinate(index, chart.coords()[static_cast<std::size_t>(index)]);
}

Expr Expr::parameter(std::string name, double value) {
  auto n = new_node(Op::Parameter);
  n->name = std::move(name);
  n->parameter = value;
  return Expr(std::move(n));
}

Expr Expr::unary(Op op, Expr arg) {
  if (!(op == Op::Neg || is_function(op))) throw std::invalid_argument("not a unary op");
  auto n = new_node(op);
  n->args.push_back(std::move(arg));
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!(op == Op::Sum || op == Op::Product || op == Op::Sub || op == Op::Div)) {
    throw std::invalid_argument("not a binary op");
  }
  auto n = new_node(op);
  n->args.push_back(std::move(lhs));
  n->args.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::nary(Op op, std::vector<Expr> args) {
  if (!(op == Op::Sum || op == Op::Product) || args.size() < 2) {
    throw std::invalid_argument("n-ary node needs Sum/Product with >= 2 operands");
  }
  auto n = new_node(op);
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = new_node(Op::Pow);
  n->exponent = exponent;
  n->args.push_back(std::move(base));
  return Expr(std::move(n));
}

Op Expr::op() const noexcept { return node_->op; }
const std::vector<Expr>& Expr::args() const noexcept { return node_->args; }
const Rational& Expr::value() const noexcept { return node_->value; }
int Expr::index() const noexcept { return node_->index; }
const std::string& Expr::name() const noexcept { return node_->name; }
double Expr::parameter_value() const noexcept { return node_->parameter; }
int Expr::exponent() const noexcept { return node_->exponent; }

// ---------------------------------------------------------------------------
// smart constructors

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) {
    if (auto r = a.value().add(b.value())) return Expr::constant(*r);
  }
  return Expr::binary(Op::Sum, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) {
    if (auto r = a.value().neg()) return Expr::constant(*r);
  }
  if (a.op() == Op::Neg) return a.arg(0);
  return Expr::unary(Op::Neg, a);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_constant() && b.is_constant()) {
    if (auto r = a.value().sub(b.value())) return Expr::constant(*r);
  }
  if (structurally_equal(a, b)) return Expr();
  return Expr::binary(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) {
    if (auto r = a.value().mul(b.value())) return Expr::constant(*r);
  }
  if (a.is_constant() && a.value() == Rational(-1)) return -b;
  if (b.is_constant() && b.value() == Rational(-1)) return -a;
  return Expr::binary(Op::Product, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one()) return a;
  if (a.is_zero() && !b.is_zero()) return Expr();
  if (a.is_constant() && b.is_constant() && !b.is_zero()) {
    if (auto r = a.value().div(b.value())) return Expr::constant(*r);
  }
  return Expr::binary(Op::Div, a, b);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::constant(1);
  if (exponent == 1) return base;
  if (base.is_constant() && !(base.is_zero() && exponent < 0)) {
    if (auto r = base.value().pow(exponent)) return Expr::constant(*r);
  }
  return Expr::power(base, exponent);
}

namespace {

Expr fold_function(Op op, const Expr& a) {
  if (a.is_constant()) {
    const Rational& v = a.value();
    switch (op) {
      case Op::Sin:
      case Op::Sinh:
      case Op::Tanh:
        if (v.is_zero()) return Expr();
        break;
      case Op::Cos:
      case Op::Cosh:
      case Op::Exp:
        if (v.is_zero()) return Expr::constant(1);
        break;
      case Op::Ln:
        if (v.is_one()) return Expr();
        break;
      case Op::Sqrt:
        if (auto r = v.exact_sqrt()) return Expr::constant(*r);
        break;
      case Op::Abs:
        if (auto r = v.is_negative() ? v.neg() : std::optional<Rational>(v)) return Expr::constant(*r);
        break;
      default: break;
    }
  }
  return Expr::unary(op, a);
}

}  // namespace

Expr sin(const Expr& a) { return fold_function(Op::Sin, a); }
Expr cos(const Expr& a) { return fold_function(Op::Cos, a); }
Expr exp(const Expr& a) { return fold_function(Op::Exp, a); }
Expr ln(const Expr& a) { return fold_function(Op::Ln, a); }
Expr sqrt(const Expr& a) { return fold_function(Op::Sqrt, a); }
Expr cosh(const Expr& a) { return fold_function(Op::Cosh, a); }
Expr sinh(const Expr& a) { return fold_function(Op::Sinh, a); }
Expr tanh(const Expr& a) { return fold_function(Op::Tanh, a); }
Expr abs(const Expr& a) { return fold_function(Op::Abs, a); }

Expr sum(const std::vector<Expr>& terms) {
  Expr acc;
  for (const auto& t : terms) acc = acc + t;
  return acc;
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

struct Singular {};

struct EvalContext {
  std::span<const double> point;
  double guard = 0.0;
  bool guarded = false;
};

[[noreturn]] void domain_fail(const EvalContext& ctx, const Expr& e, const std::string& why) {
  if (ctx.guarded) throw Singular{};
  throw DomainError(why + " in '" + to_string(e) + "'");
}

double eval(const Expr& e, const EvalContext& ctx) {
  double r = 0.0;
  switch (e.op()) {
    case Op::Constant: return e.value().to_double();
    case Op::Coordinate: {
      auto i = static_cast<std::size_t>(e.index());
      if (i >= ctx.point.size()) {
        throw ChartMismatchError("point has " + std::to_string(ctx.point.size()) +
                                 " coordinates, expression references '" + e.name() + "'");
      }
      return ctx.point[i];
    }
    case Op::Parameter: return e.parameter_value();
    case Op::Neg: return -eval(e.arg(0), ctx);
    case Op::Sin: r = std::sin(eval(e.arg(0), ctx)); break;
    case Op::Cos: r = std::cos(eval(e.arg(0), ctx)); break;
    case Op::Exp: r = std::exp(eval(e.arg(0), ctx)); break;
    case Op::Ln: {
      double a = eval(e.arg(0), ctx);
      if (!(a > 0.0) || (ctx.guarded && a < ctx.guard)) domain_fail(ctx, e, "logarithm of non-positive value");
      r = std::log(a);
      break;
    }
    case Op::Sqrt: {
      double a = eval(e.arg(0), ctx);
      if (a < 0.0) domain_fail(ctx, e, "square root of negative value");
      r = std::sqrt(a);
      break;
    }
    case Op::Cosh: r = std::cosh(eval(e.arg(0), ctx)); break;
    case Op::Sinh: r = std::sinh(eval(e.arg(0), ctx)); break;
    case Op::Tanh: r = std::tanh(eval(e.arg(0), ctx)); break;
    case Op::Abs: r = std::fabs(eval(e.arg(0), ctx)); break;
    case Op::Sum:
      for (const auto& a : e.args()) r += eval(a, ctx);
      break;
    case Op::Product:
      r = 1.0;
      for (const auto& a : e.args()) r *= eval(a, ctx);
      break;
    case Op::Sub: r = eval(e.arg(0), ctx) - eval(e.arg(1), ctx); break;
    case Op::Div: {
      double num = eval(e.arg(0), ctx);
      double den = eval(e.arg(1), ctx);
      if (den == 0.0 || (ctx.guarded && std::fabs(den) < ctx.guard)) domain_fail(ctx, e, "division by zero");
      r = num / den;
      break;
    }
    case Op::Pow: {
      double b = eval(e.arg(0), ctx);
      if (e.exponent() < 0 && (b == 0.0 || (ctx.guarded && std::fabs(b) < ctx.guard))) {
        domain_fail(ctx, e, "negative power of zero");
      }
      r = std::pow(b, e.exponent());
      break;
    }
  }
  if (!std::isfinite(r)) domain_fail(ctx, e, "non-finite value");
  return r;
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> point) {
  EvalContext ctx{point, 0.0, false};
  return eval(e, ctx);
}

std::optional<double> evaluate_guarded(const Expr& e, std::span<const double> point, double guard) {
  EvalContext ctx{point, guard, true};
  try {
    return eval(e, ctx);
  } catch (const Singular&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// differentiation

Expr partial_derivative(const Expr& e, int index) {
  auto d = [index](const Expr& x) { return partial_derivative(x, index); };
  switch (e.op()) {
    case Op::Constant:
    case Op::Parameter: return Expr();
    case Op::Coordinate: return Expr::constant(e.index() == index ? 1 : 0);
    case Op::Neg: return -d(e.arg(0));
    case Op::Sum: {
      Expr acc;
      for (const auto& a : e.args()) acc = acc + d(a);
      return acc;
    }
    case Op::Sub: return d(e.arg(0)) - d(e.arg(1));
    case Op::Product: {
      const auto& f = e.args();
      Expr acc;
      for (std::size_t j = 0; j < f.size(); ++j) {
        Expr dj = d(f[j]);
        if (dj.is_zero()) continue;
        Expr term = dj;
        for (std::size_t l = 0; l < f.size(); ++l) {
          if (l != j) term = term * f[l];
        }
        acc = acc + term;
      }
      return acc;
    }
    case Op::Div: {
      const Expr& a = e.arg(0);
      const Expr& b = e.arg(1);
      Expr da = d(a);
      Expr db = d(b);
      if (db.is_zero()) return da / b;
      return (da * b - a * db) / pow(b, 2);
    }
    case Op::Pow: {
      int n = e.exponent();
      const Expr& u = e.arg(0);
      return Expr::constant(n) * pow(u, n - 1) * d(u);
    }
    case Op::Sin: return cos(e.arg(0)) * d(e.arg(0));
    case Op::Cos: return -(sin(e.arg(0)) * d(e.arg(0)));
    case Op::Exp: return e * d(e.arg(0));
    case Op::Ln: return d(e.arg(0)) / e.arg(0);
    case Op::Sqrt: return d(e.arg(0)) / (Expr::constant(2) * e);
    case Op::Cosh: return sinh(e.arg(0)) * d(e.arg(0));
    case Op::Sinh: return cosh(e.arg(0)) * d(e.arg(0));
    case Op::Tanh: return (Expr::constant(1) - pow(e, 2)) * d(e.arg(0));
    case Op::Abs: return e.arg(0) / e * d(e.arg(0));
  }
  return Expr();
}

// ---------------------------------------------------------------------------
// structure

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  switch (a.op()) {
    case Op::Constant: {
      auto c = a.value() <=> b.value();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Op::Coordinate:
      if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
      return 0;
    case Op::Parameter:
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      return 0;
    case Op::Pow:
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      break;
    default: break;
  }
  const auto& x = a.args();
  const auto& y = b.args();
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    int c = compare(x[i], y[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

std::vector<Expr> additive_terms(const Expr& e) {
  std::vector<Expr> out;
  auto walk = [&out](auto&& self, const Expr& x, bool negate) -> void {
    switch (x.op()) {
      case Op::Sum:
        for (const auto& a : x.args()) self(self, a, negate);
        return;
      case Op::Sub:
        self(self, x.arg(0), negate);
        self(self, x.arg(1), !negate);
        return;
      case Op::Neg: self(self, x.arg(0), !negate); return;
      default: out.push_back(negate ? Expr::unary(Op::Neg, x) : x);
    }
  };
  walk(walk, e, false);
  return out;
}

int max_coordinate_index(const Expr& e) {
  if (e.op() == Op::Coordinate) return e.index();
  int m = -1;
  for (const auto& a : e.args()) m = std::max(m, max_coordinate_index(a));
  return m;
}

bool depends_on(const Expr& e, int index) {
  if (e.op() == Op::Coordinate) return e.index() == index;
  return std::any_of(e.args().begin(), e.args().end(), [index](const Expr& a) { return depends_on(a, index); });
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& a : e.args()) n += node_count(a);
  return n;
}

namespace {

bool coordinates_match(const Expr& e, const Chart& chart) {
  if (e.op() == Op::Coordinate) {
    return e.index() < chart.dim() && e.name() == chart.coords()[static_cast<std::size_t>(e.index())];
  }
  for (const auto& a : e.args()) {
    if (!coordinates_match(a, chart)) return false;
  }
  return true;
}

}  // namespace

void require_on_chart(const Expr& e, const Chart& chart) {
  if (!coordinates_match(e, chart)) {
    throw ChartMismatchError("expression '" + to_string(e) + "' references coordinates outside the chart");
  }
}

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Sum:
    case Op::Sub: return 1;
    case Op::Product:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Constant:
      if (e.value().is_negative()) return 3;
      if (!e.value().is_integer()) return 2;
      return 5;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Constant: out += e.value().to_string(); return;
    case Op::Coordinate:
    case Op::Parameter: out += e.name(); return;
    case Op::Neg:
      out += '-';
      print_wrapped(e.arg(0), precedence(e.arg(0)) < 3, out);
      return;
    case Op::Pow:
      print_wrapped(e.arg(0), precedence(e.arg(0)) < 5, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case Op::Sum: {
      bool first = true;
      for (const auto& t : e.args()) {
        if (first) {
          print(t, out);
          first = false;
          continue;
        }
        if (t.op() == Op::Neg) {
          out += " - ";
          print_wrapped(t.arg(0), precedence(t.arg(0)) <= 1, out);
        } else if (t.is_constant() && t.value().is_negative()) {
          out += " - ";
          out += t.value().neg().value_or(t.value()).to_string();
        } else {
          out += " + ";
          print_wrapped(t, precedence(t) <= 1, out);
        }
      }
      return;
    }
    case Op::Product: {
      bool first = true;
      for (const auto& f : e.args()) {
        if (!first) out += '*';
        first = false;
        print_wrapped(f, precedence(f) < 2, out);
      }
      return;
    }
    case Op::Sub:
      print_wrapped(e.arg(0), precedence(e.arg(0)) < 1, out);
      out += " - ";
      print_wrapped(e.arg(1), precedence(e.arg(1)) <= 1, out);
      return;
    case Op::Div:
      print_wrapped(e.arg(0), precedence(e.arg(0)) < 2, out);
      out += '/';
      print_wrapped(e.arg(1), precedence(e.arg(1)) <= 2, out);
      return;
    default:
      out += op_name(e.op());
      out += '(';
      print(e.arg(0), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace lmlab
