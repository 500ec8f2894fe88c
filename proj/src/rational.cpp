// SPDX-License-Identifier: Apache-2.0
#include "lmlab/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace lmlab {

Rational make_normalized_rational(std::int64_t n, std::int64_t d) { return Rational(Rational::Normalized{}, n, d); }

namespace {

__extension__ typedef __int128 i128;

constexpr i128 kMax = INT64_MAX;
constexpr i128 kMin = -static_cast<i128>(INT64_MAX);  // keep negation safe

std::optional<Rational> make(i128 n, i128 d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  if (n > kMax || n < kMin || d > kMax) return std::nullopt;
  return make_normalized_rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

std::optional<std::int64_t> isqrt_exact(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  for (std::int64_t c = r > 1 ? r - 1 : 0; c <= r + 1; ++c) {
    if (static_cast<i128>(c) * c == v) return c;
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  auto r = make(n, d);
  if (!r) throw std::invalid_argument("rational out of range");
  num_ = r->num_;
  den_ = r->den_;
}

std::optional<Rational> Rational::add(const Rational& o) const {
  return make(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
}

std::optional<Rational> Rational::sub(const Rational& o) const {
  return make(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
}

std::optional<Rational> Rational::mul(const Rational& o) const {
  return make(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
}

std::optional<Rational> Rational::div(const Rational& o) const {
  if (o.num_ == 0) return std::nullopt;
  return make(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
}

std::optional<Rational> Rational::neg() const { return make(-static_cast<i128>(num_), den_); }

std::optional<Rational> Rational::pow(int exponent) const {
  if (exponent < 0) {
    auto inv = Rational(1).div(*this);
    if (!inv) return std::nullopt;
    return inv->pow(-exponent);
  }
  Rational acc(1);
  Rational base = *this;
  while (exponent > 0) {
    if (exponent & 1) {
      auto next = acc.mul(base);
      if (!next) return std::nullopt;
      acc = *next;
    }
    exponent >>= 1;
    if (exponent > 0) {
      auto sq = base.mul(base);
      if (!sq) return std::nullopt;
      base = *sq;
    }
  }
  return acc;
}

std::optional<Rational> Rational::exact_sqrt() const {
  auto n = isqrt_exact(num_);
  auto d = isqrt_exact(den_);
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

std::optional<Rational> Rational::from_double(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  if (v == std::trunc(v) && std::fabs(v) < 9.0e18) {
    return Rational(static_cast<std::int64_t>(v));
  }
  // continued-fraction convergents
  double x = std::fabs(v);
  i128 h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rem);
    if (a > 1e18) break;
    auto ai = static_cast<i128>(a);
    i128 h2 = ai * h1 + h0;
    i128 k2 = ai * k1 + k0;
    if (k2 > 1000000000 || h2 > kMax) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::fabs(approx - x) <= 1e-15 * x) {
      return make(v < 0 ? -h1 : h1, k1);
    }
    double frac = rem - a;
    if (frac <= 0) break;
    rem = 1.0 / frac;
  }
  int exp = 0;
  double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  int shift = exp - 53;
  if (shift >= 0) {
    if (shift > 9) return std::nullopt;
    return make(static_cast<i128>(m) << shift, 1);
  }
  if (-shift > 62) return std::nullopt;
  return make(m, static_cast<i128>(1) << (-shift));
}

std::optional<Rational> Rational::from_decimal(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  i128 mantissa = 0;
  int scale = 0;
  bool digits = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = true;
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa > kMax) return std::nullopt;
      if (dot) ++scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) return std::nullopt;
  int exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      eneg = text[i] == '-';
      ++i;
    }
    bool edigits = false;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      edigits = true;
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 40) return std::nullopt;
    }
    if (!edigits) return std::nullopt;
    if (eneg) exponent = -exponent;
  }
  if (i != text.size()) return std::nullopt;
  int power = exponent - scale;
  i128 num = negative ? -mantissa : mantissa;
  i128 den = 1;
  for (int p = 0; p < std::abs(power); ++p) {
    if (power > 0) {
      num *= 10;
      if (num > kMax || num < kMin) return std::nullopt;
    } else {
      den *= 10;
      if (den > kMax * 1000) return std::nullopt;
    }
  }
  return make(num, den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  i128 lhs = static_cast<i128>(num_) * o.den_;
  i128 rhs = static_cast<i128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace lmlab
