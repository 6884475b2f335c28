#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lvs {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Coefficient field of series and approximants: exact rationals or doubles.
template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Rational>;

template <Scalar S>
inline constexpr bool is_exact_v = std::same_as<S, Rational>;

template <Scalar S>
[[nodiscard]] inline double to_double(const S& v) {
  if constexpr (is_exact_v<S>) {
    return v.template convert_to<double>();
  } else {
    return v;
  }
}

template <Scalar S>
[[nodiscard]] inline S from_rational(const Rational& r) {
  if constexpr (is_exact_v<S>) {
    return r;
  } else {
    return r.convert_to<double>();
  }
}

template <Scalar S>
[[nodiscard]] inline S abs_value(const S& v) {
  if constexpr (is_exact_v<S>) {
    return boost::multiprecision::abs(v);
  } else {
    return std::abs(v);
  }
}

template <Scalar S>
[[nodiscard]] inline bool is_finite(const S& v) {
  if constexpr (is_exact_v<S>) {
    return true;
  } else {
    return std::isfinite(v);
  }
}

/// Exact rational for a finite double (binary expansion, no rounding).
[[nodiscard]] inline Rational exact_rational(double v) { return Rational(v); }

/// Rational for the shortest decimal that round-trips to v, so 0.1 becomes 1/10.
[[nodiscard]] Rational decimal_rational(double v);

/// Parses "p", "p/q" or a decimal literal such as "-0.125" or "1e-3".
[[nodiscard]] Rational parse_rational(const std::string& text);

[[nodiscard]] inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace lvs

#include "lvs/detail/scalar_impl.hpp"
