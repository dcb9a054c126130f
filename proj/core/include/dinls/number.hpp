#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dinls {

using Rational = boost::multiprecision::cpp_rational;

/// Absolute tolerance used for comparisons once any operand is inexact.
inline constexpr double kRealTolerance = 1e-12;

/// A real value that remembers its exact rational form when it has one.
///
/// Values parsed from decimal or fraction text ("0.4", "1/2", "1e-3") are
/// exact; values built from a double are not. Arithmetic stays exact while
/// both operands are exact and degrades to double otherwise.
class Number {
 public:
  Number() : value_(0.0), exact_(Rational(0)) {}
  Number(int v) : value_(v), exact_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Number(const Rational& r);                         // NOLINT(google-explicit-constructor)
  explicit Number(double v) : value_(v) {}

  /// Parses "3", "-1.25", "2.5e-1", "1/2", "3/4e0". Throws Error(ParseError).
  static Number parse(std::string_view text);

  double value() const noexcept { return value_; }
  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::optional<Rational>& exact() const noexcept { return exact_; }

  /// "16/3" for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const;

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);

 private:
  double value_;
  std::optional<Rational> exact_;
};

// Comparisons are exact when both sides are exact. Otherwise two values within
// kRealTolerance count as equal, so a strict inequality on the boundary fails.
bool equal(const Number& a, const Number& b);
bool less(const Number& a, const Number& b);
bool less_equal(const Number& a, const Number& b);

inline Number min(const Number& a, const Number& b) { return less(b, a) ? b : a; }

}  // namespace dinls
