#pragma once

// [m/n] Pade approximants of truncated series and the real poles of their
// denominators.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lvs/error.hpp"
#include "lvs/model.hpp"
#include "lvs/roots.hpp"
#include "lvs/scalar.hpp"
#include "lvs/series.hpp"
#include "lvs/taylor.hpp"

namespace lvs {

/// Relative threshold on cross-multiplied coefficients in double mode.
inline constexpr double kEquivTolerance = 1e-10;
/// Evaluation closer than this (in t) to a real pole is refused.
inline constexpr double kNearPoleGuard = 1e-9;

/// p(var)/q(var) with q_0 = 1. For var = Z the argument is z = t^2.
template <Scalar S>
struct RationalApproximant {
  std::vector<S> numerator;    // p_0 .. p_m
  std::vector<S> denominator;  // q_0 .. q_n, q_0 = 1
  Var var = Var::T;

  [[nodiscard]] int m() const { return static_cast<int>(numerator.size()) - 1; }
  [[nodiscard]] int n() const { return static_cast<int>(denominator.size()) - 1; }

  /// "[m/n](z)" and, for z-approximants, the equivalent "[2m/2n](t)".
  [[nodiscard]] std::string label() const {
    std::ostringstream os;
    os << '[' << m() << '/' << n() << "](" << to_string(var) << ')';
    return os.str();
  }
  [[nodiscard]] std::string t_label() const {
    if (var == Var::T) return label();
    std::ostringstream os;
    os << '[' << 2 * m() << '/' << 2 * n() << "](t)";
    return os.str();
  }
};

template <Scalar To, Scalar From>
[[nodiscard]] RationalApproximant<To> approximant_cast(const RationalApproximant<From>& a) {
  auto conv = [](const std::vector<From>& v) {
    std::vector<To> out;
    for (const auto& c : v) {
      if constexpr (std::same_as<To, From>) {
        out.push_back(c);
      } else if constexpr (is_exact_v<To>) {
        out.push_back(exact_rational(c));
      } else {
        out.push_back(to_double(c));
      }
    }
    return out;
  };
  return {conv(a.numerator), conv(a.denominator), a.var};
}

namespace detail {

/// Solves M q = rhs by Gaussian elimination with full pivoting; nullopt when singular.
template <Scalar S>
std::optional<std::vector<S>> solve_full_pivot(std::vector<std::vector<S>> M, std::vector<S> rhs) {
  const std::size_t n = rhs.size();
  std::vector<std::size_t> col_of(n);
  for (std::size_t i = 0; i < n; ++i) col_of[i] = i;

  double scale = 0.0;
  if constexpr (!is_exact_v<S>) {
    for (const auto& row : M) {
      for (const auto& v : row) scale = std::max(scale, std::abs(v));
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    S best = abs_value(M[k][k]);
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (abs_value(M[i][j]) > best) {
          best = abs_value(M[i][j]);
          pr = i;
          pc = j;
        }
      }
    }
    if constexpr (is_exact_v<S>) {
      if (best == 0) return std::nullopt;
    } else {
      if (best <= 1e-14 * scale || best == 0.0) return std::nullopt;
    }
    std::swap(M[k], M[pr]);
    std::swap(rhs[k], rhs[pr]);
    if (pc != k) {
      for (auto& row : M) std::swap(row[k], row[pc]);
      std::swap(col_of[k], col_of[pc]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M[i][k] == 0) continue;
      const S f = M[i][k] / M[k][k];
      for (std::size_t j = k; j < n; ++j) M[i][j] -= f * M[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<S> sol(n, S(0));
  for (std::size_t k = n; k-- > 0;) {
    S acc = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= M[k][j] * sol[j];
    sol[k] = acc / M[k][k];
  }
  std::vector<S> out(n, S(0));
  for (std::size_t k = 0; k < n; ++k) out[col_of[k]] = sol[k];
  return out;
}

template <Scalar S>
S poly_value(const std::vector<S>& c, const S& x) {
  S acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

template <Scalar S>
std::vector<S> poly_mul(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> out(a.size() + b.size() - 1, S(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace detail

/// [m/n] approximant matching s through degree m + n.
///
/// The denominator solves sum_{j=1..n} q_j c_{m+k-j} = -c_{m+k}, k = 1..n
/// (c_i = 0 for i < 0); the numerator is p_i = sum_{j<=min(i,n)} q_j c_{i-j}.
/// A singular system raises DegeneratePadeTable; the degrees are never reduced.
template <Scalar S>
[[nodiscard]] RationalApproximant<S> pade_from_series(const PowerSeries<S>& s, int m, int n) {
  if (m < 0 || n < 0) raise(ErrorKind::InvalidArgument, "Pade degrees must be non-negative");
  if (s.order() < m + n) {
    raise(ErrorKind::InvalidArgument, "series of order " + std::to_string(s.order()) + " cannot support [" +
                                          std::to_string(m) + "/" + std::to_string(n) + "]");
  }
  auto c = [&](int i) { return i < 0 ? S(0) : s[static_cast<std::size_t>(i)]; };

  std::vector<S> q(static_cast<std::size_t>(n) + 1, S(0));
  q[0] = S(1);
  if (n > 0) {
    std::vector<std::vector<S>> M(n, std::vector<S>(n));
    std::vector<S> rhs(n);
    for (int k = 1; k <= n; ++k) {
      for (int j = 1; j <= n; ++j) M[k - 1][j - 1] = c(m + k - j);
      rhs[k - 1] = -c(m + k);
    }
    auto sol = detail::solve_full_pivot(std::move(M), std::move(rhs));
    if (!sol) {
      raise(ErrorKind::DegeneratePadeTable,
            "[" + std::to_string(m) + "/" + std::to_string(n) + "] Toeplitz system is singular");
    }
    for (int j = 1; j <= n; ++j) q[j] = (*sol)[j - 1];
  }
  std::vector<S> p(static_cast<std::size_t>(m) + 1, S(0));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= std::min(i, n); ++j) p[i] += q[j] * c(i - j);
  }
  return {std::move(p), std::move(q), s.var()};
}

/// True iff p_A q_B - p_B q_A vanishes (exactly for rationals, to kEquivTolerance
/// relative for doubles). Degrees may differ; trailing zeros are harmless.
template <Scalar S>
[[nodiscard]] bool rational_equiv(const RationalApproximant<S>& A, const RationalApproximant<S>& B) {
  if (A.var != B.var) return false;
  const auto left = detail::poly_mul(A.numerator, B.denominator);
  const auto right = detail::poly_mul(B.numerator, A.denominator);
  const std::size_t len = std::max(left.size(), right.size());
  auto at = [](const std::vector<S>& v, std::size_t i) { return i < v.size() ? v[i] : S(0); };
  if constexpr (is_exact_v<S>) {
    for (std::size_t i = 0; i < len; ++i) {
      if (at(left, i) != at(right, i)) return false;
    }
    return true;
  } else {
    double scale = 0.0;
    for (std::size_t i = 0; i < len; ++i) scale = std::max({scale, std::abs(at(left, i)), std::abs(at(right, i))});
    if (scale == 0.0) return true;
    for (std::size_t i = 0; i < len; ++i) {
      if (std::abs(at(left, i) - at(right, i)) > kEquivTolerance * scale) return false;
    }
    return true;
  }
}

/// Builds an approximant from unnormalized coefficient lists, e.g. a printed form.
template <Scalar S>
[[nodiscard]] RationalApproximant<S> make_rational(std::vector<S> numerator, std::vector<S> denominator, Var var) {
  if (numerator.empty() || denominator.empty() || denominator[0] == 0) {
    raise(ErrorKind::InvalidArgument, "rational form needs a denominator with nonzero constant term");
  }
  const S q0 = denominator[0];
  for (auto& v : numerator) v /= q0;
  for (auto& v : denominator) v /= q0;
  return {std::move(numerator), std::move(denominator), var};
}

// ---------------------------------------------------------------------------
// Poles.

struct PoleEstimate {
  int m = 0;
  int n = 0;
  Var var = Var::T;
  double location = 0.0;  // in var
  double residual = 0.0;  // |q(location)| / |q_n|
};

struct PoleSet {
  std::vector<PoleEstimate> real;  // ascending
  int complex_count = 0;
};

template <Scalar S>
[[nodiscard]] PoleSet pade_poles(const RationalApproximant<S>& A) {
  std::vector<double> q;
  for (const auto& c : A.denominator) q.push_back(to_double(c));
  while (q.size() > 1 && q.back() == 0.0) q.pop_back();
  PoleSet out;
  if (q.size() <= 1) return out;
  const auto roots = real_roots(q);
  out.complex_count = roots.complex_count;
  for (double r : roots.roots) {
    out.real.push_back({A.m(), A.n(), A.var, r, std::abs(poly_eval(q, r)) / std::abs(q.back())});
  }
  return out;
}

/// Smallest positive real pole, if any.
[[nodiscard]] inline std::optional<PoleEstimate> smallest_positive_pole(const PoleSet& poles) {
  for (const auto& p : poles.real) {
    if (p.location > 0.0) return p;
  }
  return std::nullopt;
}

/// Distance in t from t to the nearest real pole.
[[nodiscard]] inline double distance_to_pole(const PoleSet& poles, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : poles.real) {
    if (p.var == Var::T) {
      best = std::min(best, std::abs(t - p.location));
    } else if (p.location >= 0.0) {
      best = std::min(best, std::abs(std::abs(t) - std::sqrt(p.location)));
    }
  }
  return best;
}

/// p(t)/q(t), using precomputed poles for the near-pole guard.
template <Scalar S>
[[nodiscard]] double rational_eval(const RationalApproximant<S>& A, double t, const PoleSet& poles) {
  if (distance_to_pole(poles, t) < kNearPoleGuard) {
    raise(ErrorKind::NearPole, A.label() + " evaluated within " + std::to_string(kNearPoleGuard) + " of a pole");
  }
  const double arg = A.var == Var::Z ? t * t : t;
  std::vector<double> p, q;
  for (const auto& c : A.numerator) p.push_back(to_double(c));
  for (const auto& c : A.denominator) q.push_back(to_double(c));
  return poly_eval(p, arg) / poly_eval(q, arg);
}

template <Scalar S>
[[nodiscard]] double rational_eval(const RationalApproximant<S>& A, double t) {
  return rational_eval(A, t, pade_poles(A));
}

/// Taylor expansion of p/q to the given order.
template <Scalar S>
[[nodiscard]] PowerSeries<S> rational_taylor(const RationalApproximant<S>& A, int order) {
  auto pad = [order](const std::vector<S>& v) {
    std::vector<S> out(static_cast<std::size_t>(order) + 1, S(0));
    for (std::size_t i = 0; i < v.size() && i < out.size(); ++i) out[i] = v[i];
    return out;
  };
  return series_div(PowerSeries<S>(pad(A.numerator), A.var), PowerSeries<S>(pad(A.denominator), A.var));
}

// ---------------------------------------------------------------------------
// Integer-scaled form, the way such approximants are usually printed:
// both polynomials multiplied by the same factor so the denominator has
// coprime integer coefficients and a positive leading coefficient; the
// numerator is written as content * primitive part.

struct ScaledRational {
  Rational numerator_content;
  std::vector<Integer> numerator_primitive;  // ascending, coprime
  std::vector<Integer> denominator;          // ascending
  Var var = Var::T;
};

[[nodiscard]] inline ScaledRational scaled_integer_form(const RationalApproximant<Rational>& A) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;

  Integer den_lcm = 1;
  for (const auto& c : A.denominator) den_lcm = lcm(den_lcm, denominator(c));
  std::vector<Integer> q;
  Integer g = 0;
  for (const auto& c : A.denominator) {
    q.push_back(numerator(c) * (den_lcm / denominator(c)));
    g = gcd(g, q.back());
  }
  std::size_t lead = q.size() - 1;
  while (lead > 0 && q[lead] == 0) --lead;
  Rational factor = Rational(den_lcm) / Rational(g);
  if (q[lead] < 0) factor = -factor;

  ScaledRational out;
  out.var = A.var;
  for (const auto& c : A.denominator) out.denominator.push_back(numerator(Rational(c * factor)));

  std::vector<Rational> p;
  for (const auto& c : A.numerator) p.push_back(c * factor);
  Integer num_lcm = 1;
  for (const auto& c : p) num_lcm = lcm(num_lcm, denominator(c));
  Integer content = 0;
  for (const auto& c : p) content = gcd(content, numerator(c) * (num_lcm / denominator(c)));
  if (content == 0) {
    out.numerator_content = 0;
    out.numerator_primitive = std::vector<Integer>(p.size(), 0);
    return out;
  }
  std::size_t nlead = p.size() - 1;
  while (nlead > 0 && p[nlead] == 0) --nlead;
  const Rational content_r = Rational(content) / Rational(num_lcm) * (p[nlead] < 0 ? -1 : 1);
  out.numerator_content = content_r;
  for (const auto& c : p) out.numerator_primitive.push_back(numerator(Rational(c / content_r)));
  return out;
}

/// Descending-power text such as "z^2 + 16*z - 24".
[[nodiscard]] inline std::string format_polynomial(const std::vector<Integer>& c, Var var) {
  std::ostringstream os;
  bool first = true;
  const std::string v(to_string(var));
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Integer mag = c[i] < 0 ? Integer(-c[i]) : c[i];
    if (first) {
      if (c[i] < 0) os << '-';
    } else {
      os << (c[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      os << v;
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

[[nodiscard]] inline std::string format_scaled(const ScaledRational& s) {
  std::ostringstream os;
  const auto prim = format_polynomial(s.numerator_primitive, s.var);
  if (s.numerator_content == 1) {
    os << prim;
  } else if (s.numerator_content == -1) {
    os << "-(" << prim << ')';
  } else {
    os << s.numerator_content.str() << '*' << '(' << prim << ')';
  }
  os << " / (" << format_polynomial(s.denominator, s.var) << ')';
  return os.str();
}

/// Ascending-power text with rational coefficients, e.g. "2 - 1/3*z".
[[nodiscard]] inline std::string format_rational_poly(const std::vector<Rational>& c, Var var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const Rational mag = c[i] < 0 ? Rational(-c[i]) : c[i];
    if (first) {
      if (c[i] < 0) os << '-';
    } else {
      os << (c[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.str();
    if (i > 0) {
      if (mag != 1) os << '*';
      os << to_string(var);
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------
// Pole-convergence study.

enum class Component { X, Y };

struct PoleStudyEntry {
  int m = 0;
  int n = 0;
  Var var = Var::T;
  std::optional<PoleEstimate> pole;  // smallest positive real pole
  int complex_count = 0;
  std::optional<std::string> error;  // e.g. a degenerate table entry
};

struct PoleStudyOptions {
  Component component = Component::X;
  /// Work in z = t^2 when the series is even; otherwise in t.
  bool prefer_even = true;
};

/// For each (m, n): solve the series exactly to the order the entry needs,
/// build the approximant, and report its smallest positive real pole.
[[nodiscard]] inline std::vector<PoleStudyEntry> pole_study(const ModelSpec& model,
                                                            const std::vector<std::pair<int, int>>& table,
                                                            PoleStudyOptions opts = {}) {
  std::vector<PoleStudyEntry> out;
  for (const auto& [m, n] : table) {
    PoleStudyEntry entry;
    entry.m = m;
    entry.n = n;
    try {
      // In z the entry needs m+n z-coefficients beyond the constant, i.e. t-order 2(m+n).
      const int t_order = std::max(1, 2 * (m + n));
      const auto sol = solve_series<Rational>(model, t_order);
      const auto& s = opts.component == Component::X ? sol.x : sol.y;
      std::optional<PowerSeries<Rational>> work;
      if (opts.prefer_even) {
        try {
          work = to_even_variable(s);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NotEvenSeries) throw;
        }
      }
      if (!work) work = s.truncated(std::max(1, m + n));
      entry.var = work->var();
      const auto approx = pade_from_series(*work, m, n);
      const auto poles = pade_poles(approx);
      entry.pole = smallest_positive_pole(poles);
      entry.complex_count = poles.complex_count;
    } catch (const Error& e) {
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace lvs
