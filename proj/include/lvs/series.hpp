#pragma once

// Truncated power series over exact rationals or doubles.
//
// A series carries its truncation order explicitly: binary operations keep the
// smaller of the two orders instead of padding with zeros, so every stored
// coefficient is genuine information about the underlying function.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvs/error.hpp"
#include "lvs/scalar.hpp"

namespace lvs {

/// Expansion variable. Z stands for z = t^2 and only describes even functions of t.
enum class Var { T, Z };

[[nodiscard]] constexpr std::string_view to_string(Var v) { return v == Var::T ? "t" : "z"; }

/// Relative tolerance for "odd coefficient is zero" in double mode.
inline constexpr double kEvenTolerance = 1e-12;

template <Scalar S>
class PowerSeries {
 public:
  using scalar_type = S;

  explicit PowerSeries(std::vector<S> coeffs, Var var = Var::T) : coeffs_(std::move(coeffs)), var_(var) {
    if (coeffs_.empty()) raise(ErrorKind::InvalidArgument, "power series needs at least one coefficient");
    for (const auto& c : coeffs_) {
      if (!is_finite(c)) raise(ErrorKind::InvalidArgument, "power series coefficient is not finite");
    }
  }

  /// c + 0*var + ... to the given order.
  [[nodiscard]] static PowerSeries constant(const S& c, int order, Var var = Var::T) {
    std::vector<S> coeffs(static_cast<std::size_t>(checked_order(order)) + 1, S(0));
    coeffs[0] = c;
    return PowerSeries(std::move(coeffs), var);
  }

  [[nodiscard]] static PowerSeries zero(int order, Var var = Var::T) { return constant(S(0), order, var); }
  [[nodiscard]] static PowerSeries one(int order, Var var = Var::T) { return constant(S(1), order, var); }

  [[nodiscard]] int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] Var var() const noexcept { return var_; }
  [[nodiscard]] const std::vector<S>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const S& operator[](std::size_t j) const { return coeffs_.at(j); }

  [[nodiscard]] PowerSeries truncated(int order) const {
    if (order < 0 || order > this->order()) raise(ErrorKind::InvalidArgument, "truncation order out of range");
    return PowerSeries(std::vector<S>(coeffs_.begin(), coeffs_.begin() + order + 1), var_);
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  static int checked_order(int order) {
    if (order < 0) raise(ErrorKind::InvalidArgument, "series order must be non-negative");
    return order;
  }

 private:
  std::vector<S> coeffs_;
  Var var_;
};

namespace detail {

template <Scalar S>
void require_same_var(const PowerSeries<S>& a, const PowerSeries<S>& b, std::string_view op) {
  if (a.var() != b.var()) {
    raise(ErrorKind::VariableMismatch, std::string(op) + ": operands expanded in " + std::string(to_string(a.var())) +
                                           " and " + std::string(to_string(b.var())));
  }
}

template <Scalar S>
S factorial(int n) {
  S f(1);
  for (int i = 2; i <= n; ++i) f *= S(i);
  return f;
}

}  // namespace detail

template <Scalar S>
[[nodiscard]] PowerSeries<S> series_add(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  detail::require_same_var(a, b, "series_add");
  const int order = std::min(a.order(), b.order());
  std::vector<S> out(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) out[j] = a[j] + b[j];
  return PowerSeries<S>(std::move(out), a.var());
}

template <Scalar S>
[[nodiscard]] PowerSeries<S> series_scale(const PowerSeries<S>& a, const S& factor) {
  std::vector<S> out = a.coeffs();
  for (auto& c : out) c *= factor;
  return PowerSeries<S>(std::move(out), a.var());
}

template <Scalar S>
[[nodiscard]] PowerSeries<S> series_sub(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  return series_add(a, series_scale(b, S(-1)));
}

/// Truncated Cauchy product.
template <Scalar S>
[[nodiscard]] PowerSeries<S> series_mul(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  detail::require_same_var(a, b, "series_mul");
  const int order = std::min(a.order(), b.order());
  std::vector<S> out(static_cast<std::size_t>(order) + 1, S(0));
  for (int i = 0; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return PowerSeries<S>(std::move(out), a.var());
}

/// r with a*r = 1 to the order of a, via r_k = -(sum_{i=1..k} a_i r_{k-i}) / a_0.
template <Scalar S>
[[nodiscard]] PowerSeries<S> series_reciprocal(const PowerSeries<S>& a) {
  if (a[0] == 0) raise(ErrorKind::DivisionByZeroSeries, "reciprocal of a series with zero constant term");
  const int order = a.order();
  std::vector<S> r(static_cast<std::size_t>(order) + 1, S(0));
  const S inv0 = S(1) / a[0];
  r[0] = inv0;
  for (int k = 1; k <= order; ++k) {
    S acc(0);
    for (int i = 1; i <= k; ++i) acc += a[i] * r[k - i];
    r[k] = -acc * inv0;
  }
  return PowerSeries<S>(std::move(r), a.var());
}

template <Scalar S>
[[nodiscard]] PowerSeries<S> series_div(const PowerSeries<S>& num, const PowerSeries<S>& den) {
  return series_mul(num, series_reciprocal(den));
}

/// Term-by-term integral from 0 in t; raises the order by one.
template <Scalar S>
[[nodiscard]] PowerSeries<S> series_integrate(const PowerSeries<S>& a) {
  if (a.var() != Var::T) raise(ErrorKind::VariableMismatch, "series_integrate works in t only");
  std::vector<S> out(static_cast<std::size_t>(a.order()) + 2, S(0));
  for (int j = 0; j <= a.order(); ++j) out[j + 1] = a[j] / S(j + 1);
  return PowerSeries<S>(std::move(out), Var::T);
}

/// Term-by-term derivative in t; lowers the order by one (order 0 stays 0).
template <Scalar S>
[[nodiscard]] PowerSeries<S> series_derivative(const PowerSeries<S>& a) {
  if (a.var() != Var::T) raise(ErrorKind::VariableMismatch, "series_derivative works in t only");
  if (a.order() == 0) return PowerSeries<S>::zero(0);
  std::vector<S> out(static_cast<std::size_t>(a.order()));
  for (int j = 1; j <= a.order(); ++j) out[j - 1] = a[j] * S(j);
  return PowerSeries<S>(std::move(out), Var::T);
}

/// Horner evaluation at t (at z = t^2 for Z series).
template <Scalar S>
[[nodiscard]] S series_eval(const PowerSeries<S>& a, const S& t) {
  const S arg = a.var() == Var::Z ? S(t * t) : t;
  S acc(0);
  for (int j = a.order(); j >= 0; --j) acc = acc * arg + a[j];
  return acc;
}

/// Re-index an even t-series as a series in z = t^2.
template <Scalar S>
[[nodiscard]] PowerSeries<S> to_even_variable(const PowerSeries<S>& a) {
  if (a.var() != Var::T) raise(ErrorKind::VariableMismatch, "to_even_variable expects a t-series");
  S tolerance(0);
  if constexpr (!is_exact_v<S>) {
    double scale = 0.0;
    for (const auto& c : a.coeffs()) scale = std::max(scale, std::abs(c));
    tolerance = kEvenTolerance * scale;
  }
  for (int j = 1; j <= a.order(); j += 2) {
    if (abs_value(a[j]) > tolerance) {
      raise(ErrorKind::NotEvenSeries, "coefficient of t^" + std::to_string(j) + " is nonzero");
    }
  }
  std::vector<S> out;
  for (int j = 0; j <= a.order(); j += 2) out.push_back(a[j]);
  return PowerSeries<S>(std::move(out), Var::Z);
}

template <Scalar To, Scalar From>
[[nodiscard]] PowerSeries<To> series_cast(const PowerSeries<From>& a) {
  if constexpr (std::same_as<To, From>) {
    return a;
  } else {
    std::vector<To> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) {
      if constexpr (is_exact_v<To>) {
        out.push_back(exact_rational(c));
      } else {
        out.push_back(to_double(c));
      }
    }
    return PowerSeries<To>(std::move(out), a.var());
  }
}

// ---------------------------------------------------------------------------
// Elementary functions with exact Taylor data at t = 0.

enum class AnalyticKind { Exp, ExpSquare, Cos, Sin, Tan, Sec, Const, Linear };

/// exp(k t), exp(k t^2), cos t, sin t, tan t, sec t, the constant k, or k t.
template <Scalar S>
struct AnalyticFn {
  AnalyticKind kind;
  S k = S(1);
};

/// Accepts exp, exp_sq, cos, sin, tan, sec, const, linear.
[[nodiscard]] inline AnalyticKind parse_analytic_kind(std::string_view name) {
  if (name == "exp") return AnalyticKind::Exp;
  if (name == "exp_sq" || name == "exp_square") return AnalyticKind::ExpSquare;
  if (name == "cos") return AnalyticKind::Cos;
  if (name == "sin") return AnalyticKind::Sin;
  if (name == "tan") return AnalyticKind::Tan;
  if (name == "sec") return AnalyticKind::Sec;
  if (name == "const") return AnalyticKind::Const;
  if (name == "linear") return AnalyticKind::Linear;
  raise(ErrorKind::UnsupportedFunction, "no Taylor data for '" + std::string(name) + "'");
}

namespace detail {

template <Scalar S>
PowerSeries<S> sin_cos_series(bool want_sin, int order) {
  std::vector<S> c(static_cast<std::size_t>(order) + 1, S(0));
  const int start = want_sin ? 1 : 0;
  for (int j = start; j <= order; j += 2) {
    const S mag = S(1) / factorial<S>(j);
    c[j] = ((j - start) / 2) % 2 == 0 ? mag : S(-mag);
  }
  return PowerSeries<S>(std::move(c), Var::T);
}

}  // namespace detail

/// Taylor series at 0. With var = Z only even functions are accepted and
/// `order` counts powers of z.
template <Scalar S>
[[nodiscard]] PowerSeries<S> analytic_series(const AnalyticFn<S>& fn, int order, Var var = Var::T) {
  PowerSeries<S>::checked_order(order);
  if (var == Var::Z) {
    switch (fn.kind) {
      case AnalyticKind::ExpSquare: {
        std::vector<S> c(static_cast<std::size_t>(order) + 1);
        S pow_k(1);
        for (int j = 0; j <= order; ++j) {
          c[j] = pow_k / detail::factorial<S>(j);
          pow_k *= fn.k;
        }
        return PowerSeries<S>(std::move(c), Var::Z);
      }
      case AnalyticKind::Cos:
      case AnalyticKind::Sec:
      case AnalyticKind::Const:
        return to_even_variable(analytic_series(fn, 2 * order, Var::T));
      default:
        raise(ErrorKind::VariableMismatch, "only even functions expand in z = t^2");
    }
  }

  const auto n = static_cast<std::size_t>(order) + 1;
  switch (fn.kind) {
    case AnalyticKind::Exp: {
      std::vector<S> c(n);
      S pow_k(1);
      for (int j = 0; j <= order; ++j) {
        c[j] = pow_k / detail::factorial<S>(j);
        pow_k *= fn.k;
      }
      return PowerSeries<S>(std::move(c));
    }
    case AnalyticKind::ExpSquare: {
      const auto z = analytic_series(fn, order / 2, Var::Z);
      std::vector<S> c(n, S(0));
      for (int j = 0; 2 * j <= order; ++j) c[2 * j] = z[j];
      return PowerSeries<S>(std::move(c));
    }
    case AnalyticKind::Cos: return detail::sin_cos_series<S>(false, order);
    case AnalyticKind::Sin: return detail::sin_cos_series<S>(true, order);
    case AnalyticKind::Tan:
      return series_mul(detail::sin_cos_series<S>(true, order), series_reciprocal(detail::sin_cos_series<S>(false, order)));
    case AnalyticKind::Sec: return series_reciprocal(detail::sin_cos_series<S>(false, order));
    case AnalyticKind::Const: return PowerSeries<S>::constant(fn.k, order);
    case AnalyticKind::Linear: {
      std::vector<S> c(n, S(0));
      if (order >= 1) c[1] = fn.k;
      return PowerSeries<S>(std::move(c));
    }
  }
  raise(ErrorKind::UnsupportedFunction, "unknown analytic function");
}

}  // namespace lvs
