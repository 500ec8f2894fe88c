// SPDX-License-Identifier: Apache-2.0
//
// Recursive-descent parser for the scalar expression grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' exponent)?
//   base   := number | ident | func '(' expr ')' | '(' expr ')'
//
// Unary minus binds looser than '^', so "-x^2" is -(x^2).
#include <cctype>
#include <string_view>

#include "lmlab/errors.hpp"
#include "lmlab/expr.hpp"

namespace lmlab {
namespace {

struct FunctionEntry {
  std::string_view name;
  Op op;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", Op::Sin},   {"cos", Op::Cos},   {"exp", Op::Exp},   {"ln", Op::Ln},   {"sqrt", Op::Sqrt},
    {"cosh", Op::Cosh}, {"sinh", Op::Sinh}, {"tanh", Op::Tanh}, {"abs", Op::Abs},
};

class Parser {
 public:
  Parser(const std::string& src, const Chart& chart) : src_(src), chart_(chart) {}

  Expr parse() {
    skip_space();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_space();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr expr() {
    Expr lhs = term();
    bool flat_sum = false;
    while (true) {
      if (accept('+')) {
        Expr rhs = term();
        if (flat_sum) {
          auto args = lhs.args();
          args.push_back(rhs);
          lhs = Expr::nary(Op::Sum, std::move(args));
        } else {
          lhs = Expr::binary(Op::Sum, lhs, rhs);
          flat_sum = true;
        }
      } else if (accept('-')) {
        lhs = Expr::binary(Op::Sub, lhs, term());
        flat_sum = false;
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    bool flat_product = false;
    while (true) {
      if (accept('*')) {
        Expr rhs = factor();
        if (flat_product) {
          auto args = lhs.args();
          args.push_back(rhs);
          lhs = Expr::nary(Op::Product, std::move(args));
        } else {
          lhs = Expr::binary(Op::Product, lhs, rhs);
          flat_product = true;
        }
      } else if (accept('/')) {
        lhs = Expr::binary(Op::Div, lhs, factor());
        flat_product = false;
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::unary(Op::Neg, factor());
    Expr b = base();
    if (accept('^')) return Expr::power(b, exponent());
    return b;
  }

  int exponent() {
    skip_space();
    bool paren = accept('(');
    skip_space();
    bool negative = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      negative = src_[pos_] == '-';
      ++pos_;
      skip_space();
    }
    std::size_t start = pos_;
    long long value = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      value = value * 10 + (src_[pos_] - '0');
      if (value > 1000000) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("exponent must be an integer literal", start);
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
      throw ParseError("exponent must be an integer literal", start);
    }
    if (paren) expect(')');
    return static_cast<int>(negative ? -value : value);
  }

  Expr base() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    // exponent part only when followed by digits: "2e3", "1e-5"
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '-' || src_[look] == '+')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    std::string text = src_.substr(start, pos_ - start);
    auto r = Rational::from_decimal(text);
    if (!r) throw ParseError("invalid or out-of-range number '" + text + "'", start);
    return Expr::constant(*r);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string token = src_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (f.name == token) {
        if (!accept('(')) throw ParseError("function '" + token + "' needs a parenthesised argument", pos_);
        Expr arg = expr();
        expect(')');
        return Expr::unary(f.op, arg);
      }
    }
    if (auto idx = chart_.coord_index(token)) return Expr::coordinate(*idx, token);
    if (const Parameter* p = chart_.parameter(token)) return Expr::parameter(p->name, p->value);
    throw UnknownIdentifierError(token, start);
  }

  const std::string& src_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_scalar(const std::string& src, const Chart& chart) { return Parser(src, chart).parse(); }

}  // namespace lmlab
