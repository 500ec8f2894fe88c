// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmlab/chart.hpp"
#include "lmlab/rational.hpp"

namespace lmlab {

enum class Op : std::uint8_t {
  Constant,
  Coordinate,
  Parameter,
  Neg,
  Sin,
  Cos,
  Exp,
  Ln,
  Sqrt,
  Cosh,
  Sinh,
  Tanh,
  Abs,
  Sum,      // n-ary, at least two terms
  Product,  // n-ary, at least two factors
  Sub,
  Div,
  Pow,  // integer exponent
};

const char* op_name(Op op);
bool is_function(Op op);

struct Node;

/// Immutable symbolic scalar expression on a chart. Cheap to copy; subtrees
/// are shared.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(Rational value);
  static Expr constant(std::int64_t value) { return constant(Rational(value)); }
  /// Throws std::invalid_argument when `value` has no short rational form.
  static Expr constant_from_double(double value);
  static Expr coordinate(int index, std::string name);
  static Expr coordinate(const Chart& chart, int index);
  static Expr parameter(std::string name, double value);

  // Raw constructors: build exactly the requested node, no simplification.
  static Expr unary(Op op, Expr arg);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr nary(Op op, std::vector<Expr> args);
  static Expr power(Expr base, int exponent);

  Op op() const noexcept;
  const std::vector<Expr>& args() const noexcept;
  const Expr& arg(std::size_t i) const { return args().at(i); }
  const Rational& value() const noexcept;  // Constant only
  int index() const noexcept;              // Coordinate only
  const std::string& name() const noexcept;
  double parameter_value() const noexcept;
  int exponent() const noexcept;

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_zero() const noexcept { return is_constant() && value().is_zero(); }
  bool is_one() const noexcept { return is_constant() && value().is_one(); }

  const Node* node() const noexcept { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::Constant;
  Rational value;
  int index = -1;
  std::string name;
  double parameter = 0.0;
  int exponent = 0;
  std::vector<Expr> args;
};

// Smart constructors: fold constants and apply 0/1 identities.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sqrt(const Expr& a);
Expr cosh(const Expr& a);
Expr sinh(const Expr& a);
Expr tanh(const Expr& a);
Expr abs(const Expr& a);

/// Sum of a list; empty list gives 0.
Expr sum(const std::vector<Expr>& terms);

/// Standard real evaluation. Throws DomainError naming the offending node
/// for ln/sqrt of a bad argument, division by zero or a non-finite result.
double evaluate(const Expr& e, std::span<const double> point);

/// Evaluation that treats |denominator| < guard (and ln arguments below the
/// guard, negative sqrt arguments) as singular and returns nullopt.
std::optional<double> evaluate_guarded(const Expr& e, std::span<const double> point, double guard);

/// Exact symbolic partial derivative with respect to coordinate `index`.
Expr partial_derivative(const Expr& e, int index);

/// Constant folding, 0/1 identities, like-term and like-factor collection,
/// flattening of nested sums and products. Semantics-preserving.
Expr simplify(const Expr& e);

/// Top-level additive terms (flattened through Sum, Sub and Neg).
std::vector<Expr> additive_terms(const Expr& e);

/// Infix rendering that `parse_scalar` accepts back.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
/// Total order on expression trees used to canonicalise sums and products.
int compare(const Expr& a, const Expr& b);

/// Highest coordinate index referenced, or -1.
int max_coordinate_index(const Expr& e);
bool depends_on(const Expr& e, int index);
std::size_t node_count(const Expr& e);

/// Throws ChartMismatchError if `e` references coordinates the chart lacks.
void require_on_chart(const Expr& e, const Chart& chart);

/// Parses the expression grammar against `chart`: coordinates and chart
/// parameters are the only identifiers. Throws ParseError /
/// UnknownIdentifierError.
Expr parse_scalar(const std::string& src, const Chart& chart);

}  // namespace lmlab
