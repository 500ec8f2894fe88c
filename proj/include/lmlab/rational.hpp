// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace lmlab {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always stored in lowest terms. Arithmetic that would overflow returns
/// std::nullopt instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  /// Throws std::invalid_argument for a zero denominator or an
  /// unrepresentable normalisation.
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_negative() const noexcept { return num_ < 0; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::optional<Rational> add(const Rational& o) const;
  std::optional<Rational> sub(const Rational& o) const;
  std::optional<Rational> mul(const Rational& o) const;
  std::optional<Rational> div(const Rational& o) const;
  std::optional<Rational> neg() const;
  std::optional<Rational> pow(int exponent) const;
  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const;

  /// Recovers a short rational from a double: continued fractions with
  /// denominators up to 1e9, accepted when they reproduce the value to
  /// 1e-15 relative; otherwise the exact dyadic value if it fits.
  static std::optional<Rational> from_double(double v);

  /// Parses "123", "-4", "0.25", "1e-3", "2.5E2".
  static std::optional<Rational> from_decimal(const std::string& text);

  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  std::strong_ordering operator<=>(const Rational& o) const;

 private:
  struct Normalized {};
  constexpr Rational(Normalized, std::int64_t n, std::int64_t d) : num_(n), den_(d) {}
  friend Rational make_normalized_rational(std::int64_t n, std::int64_t d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace lmlab
