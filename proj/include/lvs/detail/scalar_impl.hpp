#pragma once

#include <array>
#include <charconv>
#include <cctype>
#include <string>

#include "lvs/error.hpp"

namespace lvs {

inline Rational parse_rational(const std::string& text) {
  if (text.empty()) raise(ErrorKind::InvalidArgument, "empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) raise(ErrorKind::InvalidArgument, "zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  Integer mantissa = 0;
  int exponent = 0;
  bool any_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (after_point) --exponent;
      any_digit = true;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) raise(ErrorKind::InvalidArgument, "malformed number '" + text + "'");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') raise(ErrorKind::InvalidArgument, "malformed number '" + text + "'");
    int exp_part = 0;
    const char* first = text.data() + pos + 1;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, exp_part);
    if (ec != std::errc{} || ptr != last) raise(ErrorKind::InvalidArgument, "malformed exponent in '" + text + "'");
    exponent += exp_part;
  }
  Rational value(mantissa);
  const Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  value = exponent < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

inline Rational decimal_rational(double v) {
  if (!std::isfinite(v)) raise(ErrorKind::InvalidArgument, "non-finite value has no rational form");
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) raise(ErrorKind::InvalidArgument, "cannot format value");
  return parse_rational(std::string(buf.data(), ptr));
}

}  // namespace lvs
