#pragma once

// The prey-predator system with time-dependent rates
//
//   x' =  a(t) x - b(t) x y,   x(0) = alpha
//   y' = -c(t) y + d(t) x y,   y(0) = beta
//
// Rates are finite sums of primitives whose Taylor data is exact, so the same
// description feeds both the floating-point integrators and the rational
// series solver.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvs/error.hpp"
#include "lvs/scalar.hpp"
#include "lvs/series.hpp"

namespace lvs {

enum class TermKind {
  Constant,     // coeff
  Linear,       // coeff * t
  Exponential,  // coeff * exp(rate * t)
  Tangent,      // coeff * tan t
  Cosine,       // coeff * cos t
};

struct Term {
  TermKind kind = TermKind::Constant;
  Rational coeff{0};
  Rational rate{0};

  [[nodiscard]] static Term constant(Rational c) { return {TermKind::Constant, std::move(c), 0}; }
  [[nodiscard]] static Term linear(Rational k) { return {TermKind::Linear, std::move(k), 0}; }
  [[nodiscard]] static Term exponential(Rational c, Rational k) { return {TermKind::Exponential, std::move(c), std::move(k)}; }
  [[nodiscard]] static Term tangent(Rational c) { return {TermKind::Tangent, std::move(c), 0}; }
  [[nodiscard]] static Term cosine(Rational c) { return {TermKind::Cosine, std::move(c), 0}; }

  friend bool operator==(const Term&, const Term&) = default;
};

/// |cos t| below this is treated as a pole of tan.
inline constexpr double kTangentPoleGuard = 1e-12;

class CoefficientFn {
 public:
  explicit CoefficientFn(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) raise(ErrorKind::InvalidArgument, "coefficient function needs at least one term");
  }

  [[nodiscard]] static CoefficientFn constant(Rational c) { return CoefficientFn({Term::constant(std::move(c))}); }

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }

  [[nodiscard]] double eval(double t) const {
    double sum = 0.0;
    for (const auto& term : terms_) {
      const double c = to_double(term.coeff);
      switch (term.kind) {
        case TermKind::Constant: sum += c; break;
        case TermKind::Linear: sum += c * t; break;
        case TermKind::Exponential: sum += c * std::exp(to_double(term.rate) * t); break;
        case TermKind::Cosine: sum += c * std::cos(t); break;
        case TermKind::Tangent: {
          const double cs = std::cos(t);
          if (std::abs(cs) < kTangentPoleGuard) {
            raise(ErrorKind::CoefficientSingular, "tan t is singular at t = " + std::to_string(t));
          }
          sum += c * std::sin(t) / cs;
          break;
        }
      }
    }
    return sum;
  }

  /// Taylor series at t = 0 to the given order.
  template <Scalar S>
  [[nodiscard]] PowerSeries<S> taylor(int order) const {
    auto sum = PowerSeries<S>::zero(order);
    for (const auto& term : terms_) {
      const S c = from_rational<S>(term.coeff);
      PowerSeries<S> piece = [&] {
        switch (term.kind) {
          case TermKind::Constant: return analytic_series<S>({AnalyticKind::Const, c}, order);
          case TermKind::Linear: return analytic_series<S>({AnalyticKind::Linear, c}, order);
          case TermKind::Exponential:
            return series_scale(analytic_series<S>({AnalyticKind::Exp, from_rational<S>(term.rate)}, order), c);
          case TermKind::Tangent: return series_scale(analytic_series<S>({AnalyticKind::Tan}, order), c);
          case TermKind::Cosine: return series_scale(analytic_series<S>({AnalyticKind::Cos}, order), c);
        }
        raise(ErrorKind::UnsupportedFunction, "unknown term kind");
      }();
      sum = series_add(sum, piece);
    }
    return sum;
  }

  /// True when the function does not depend on t.
  [[nodiscard]] bool is_constant() const {
    for (const auto& term : terms_) {
      if (term.kind != TermKind::Constant && term.coeff != 0) {
        if (term.kind == TermKind::Exponential && term.rate == 0) continue;
        return false;
      }
    }
    return true;
  }

  /// Exact value of a t-independent function.
  [[nodiscard]] Rational constant_value() const {
    if (!is_constant()) raise(ErrorKind::NotAutonomous, "coefficient depends on t");
    Rational sum = 0;
    for (const auto& term : terms_) {
      if (term.kind == TermKind::Constant || term.kind == TermKind::Exponential) sum += term.coeff;
    }
    return sum;
  }

  /// First pole of a tangent term in [t0, t1], if any.
  [[nodiscard]] std::optional<double> first_singularity_in(double t0, double t1) const {
    for (const auto& term : terms_) {
      if (term.kind != TermKind::Tangent || term.coeff == 0) continue;
      const double k = std::ceil((t0 - std::numbers::pi / 2) / std::numbers::pi);
      const double pole = std::numbers::pi / 2 + k * std::numbers::pi;
      if (pole <= t1) return pole;
    }
    return std::nullopt;
  }

  friend bool operator==(const CoefficientFn&, const CoefficientFn&) = default;

 private:
  std::vector<Term> terms_;
};

template <Scalar S>
[[nodiscard]] PowerSeries<S> coefficient_taylor(const CoefficientFn& f, int order) {
  return f.template taylor<S>(order);
}

struct ModelSpec {
  CoefficientFn a;
  CoefficientFn b;
  CoefficientFn c;
  CoefficientFn d;
  Rational alpha;
  Rational beta;
  std::string label;

  [[nodiscard]] double x0() const { return to_double(alpha); }
  [[nodiscard]] double y0() const { return to_double(beta); }

  [[nodiscard]] bool is_autonomous() const {
    return a.is_constant() && b.is_constant() && c.is_constant() && d.is_constant();
  }

  [[nodiscard]] std::optional<double> first_singularity_in(double t0, double t1) const {
    std::optional<double> first;
    for (const CoefficientFn* f : {&a, &b, &c, &d}) {
      if (auto s = f->first_singularity_in(t0, t1); s && (!first || *s < *first)) first = s;
    }
    return first;
  }
};

struct Derivative {
  double dx;
  double dy;
};

[[nodiscard]] inline Derivative rhs_eval(const ModelSpec& m, double t, double x, double y) {
  const double xy = x * y;
  return {m.a.eval(t) * x - m.b.eval(t) * xy, -m.c.eval(t) * y + m.d.eval(t) * xy};
}

// ---------------------------------------------------------------------------
// Closed-form solutions.

/// Exact evaluation within this distance of a pole is refused.
inline constexpr double kSingularTimeGuard = 1e-9;

struct ExactSolution {
  std::string preset;
  std::function<double(double)> x;
  std::function<double(double)> y;
  /// Blow-up times on t >= 0 closest to the origin.
  std::vector<double> singular_times;
  /// Distance from t to the nearest blow-up time anywhere on the real line.
  std::function<double(double)> distance_to_singularity;

  /// True when [t0, t1] contains or touches a blow-up time.
  [[nodiscard]] bool crosses_singularity(double t0, double t1) const {
    if (distance_to_singularity(t0) < kSingularTimeGuard || distance_to_singularity(t1) < kSingularTimeGuard) return true;
    // Poles are isolated at spacing >= 2 t_c, so scanning at a fine step is enough to bracket one.
    const int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / 1e-3)));
    for (int i = 0; i <= steps; ++i) {
      const double t = t0 + (t1 - t0) * i / steps;
      if (distance_to_singularity(t) <= (t1 - t0) / steps) return true;
    }
    return false;
  }
};

struct ExactPoint {
  double x;
  double y;
};

[[nodiscard]] inline ExactPoint exact_eval(const ExactSolution& s, double t) {
  if (s.distance_to_singularity(t) < kSingularTimeGuard) {
    raise(ErrorKind::SingularTime, s.preset + " exact solution is singular near t = " + std::to_string(t));
  }
  return {s.x(t), s.y(t)};
}

struct Preset {
  ModelSpec model;
  std::optional<ExactSolution> exact;
};

/// Blow-up time sqrt(2 ln 2) of the first variable-coefficient example.
[[nodiscard]] inline double example1_critical_time() { return std::sqrt(2.0 * std::numbers::ln2); }

[[nodiscard]] inline std::vector<std::string> preset_names() { return {"example1", "example2", "caseI"}; }

[[nodiscard]] inline Preset preset(std::string_view name) {
  using C = CoefficientFn;
  if (name == "example1") {
    const C minus_t({Term::linear(-1)});
    const C plus_t({Term::linear(1)});
    ExactSolution exact;
    exact.preset = "example1";
    exact.x = [](double t) { return 2.0 / (2.0 - std::exp(t * t / 2.0)); };
    exact.y = exact.x;
    exact.singular_times = {example1_critical_time()};
    exact.distance_to_singularity = [](double t) { return std::abs(std::abs(t) - example1_critical_time()); };
    return {ModelSpec{minus_t, minus_t, plus_t, plus_t, 2, 2, "example1"}, std::move(exact)};
  }
  if (name == "example2") {
    ModelSpec m{C({Term::constant(4), Term::tangent(1)}),
                C({Term::exponential(1, 2)}),
                C::constant(-2),
                C({Term::cosine(1)}),
                -4,
                4,
                "example2"};
    ExactSolution exact;
    exact.preset = "example2";
    exact.x = [](double t) { return -4.0 / std::cos(t); };
    exact.y = [](double t) { return 4.0 * std::exp(-2.0 * t); };
    exact.singular_times = {std::numbers::pi / 2};
    exact.distance_to_singularity = [](double t) {
      return std::abs(std::remainder(t - std::numbers::pi / 2, std::numbers::pi));
    };
    return {std::move(m), std::move(exact)};
  }
  if (name == "caseI") {
    return {ModelSpec{C::constant(1), C::constant(1), C::constant(Rational(1, 10)), C::constant(1), 14, 18, "caseI"},
            std::nullopt};
  }
  raise(ErrorKind::UnknownPreset, "no preset named '" + std::string(name) + "'");
}

}  // namespace lvs
