#include "dinls/number.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "dinls/error.hpp"

namespace dinls {

namespace {

Rational pow10(int k) {
  Rational r(1);
  for (int i = 0; i < std::abs(k); ++i) r *= 10;
  return k >= 0 ? r : Rational(1) / r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Exact decimal: [sign] digits [. digits] [(e|E) [sign] digits]
Rational parse_decimal(std::string_view text, std::string_view whole) {
  auto fail = [&] { throw Error(ErrorCode::ParseError, "not a number: '" + std::string(whole) + "'"); };
  text = trim(text);
  if (text.empty()) fail();
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  Rational mantissa(0);
  int scale = 0;
  int digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa = mantissa * 10 + (text[i] - '0');
    ++i;
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i] - '0');
      --scale;
      ++i;
      ++digits;
    }
  }
  if (digits == 0) fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    int exponent = 0;
    auto rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) fail();
    if (std::abs(exponent) > 400) fail();
    scale += exponent;
    i = text.size();
  }
  if (i != text.size()) fail();
  Rational r = mantissa * pow10(scale);
  return negative ? Rational(-r) : r;
}

}  // namespace

Number::Number(const Rational& r) : value_(r.convert_to<double>()), exact_(r) {}

Number Number::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Number(parse_decimal(text, text));
  Rational num = parse_decimal(text.substr(0, slash), text);
  Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Number(Rational(num / den));
}

std::string Number::to_string() const {
  if (exact_) {
    const auto& r = *exact_;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
  }
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, ptr);
}

Number Number::operator-() const {
  if (exact_) return Number(Rational(-*exact_));
  return Number(-value_);
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(Rational(*a.exact_ + *b.exact_));
  return Number(a.value_ + b.value_);
}

Number operator-(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(Rational(*a.exact_ - *b.exact_));
  return Number(a.value_ - b.value_);
}

Number operator*(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(Rational(*a.exact_ * *b.exact_));
  return Number(a.value_ * b.value_);
}

Number operator/(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    if (*b.exact_ == 0) throw Error(ErrorCode::PreconditionFailed, "division by exact zero");
    return Number(Rational(*a.exact_ / *b.exact_));
  }
  return Number(a.value_ / b.value_);
}

bool equal(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact() == *b.exact();
  return std::abs(a.value() - b.value()) <= kRealTolerance;
}

bool less(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact() < *b.exact();
  return a.value() < b.value() - kRealTolerance;
}

bool less_equal(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact() <= *b.exact();
  return a.value() <= b.value() + kRealTolerance;
}

}  // namespace dinls
