#pragma once

// Real roots of a real polynomial without complex arithmetic.
//
// Roots of p lie in [-B, B] with B the Cauchy bound. Between consecutive real
// roots of p' the polynomial is monotone, so the critical points (found
// recursively) split [-B, B] into pieces holding at most one simple root each.
// A sign change isolates the root; bisection with Newton acceleration refines
// it and a final Newton polish runs in extended precision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace lvs {

struct RealRoots {
  std::vector<double> roots;  // ascending
  int complex_count = 0;      // degree minus real roots counted with multiplicity
};

namespace detail {

inline long double horner(std::span<const long double> c, long double x) {
  long double acc = 0.0L;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// Sum of |c_i| |x|^i; the scale against which p(x) counts as zero.
inline long double magnitude(std::span<const long double> c, long double x) {
  long double acc = 0.0L;
  const long double ax = std::abs(x);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * ax + std::abs(c[i]);
  return acc;
}

inline std::vector<long double> derivative(std::span<const long double> c) {
  std::vector<long double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long double>(i));
  return d;
}

inline long double polish(std::span<const long double> c, std::span<const long double> dc, long double x, long double lo,
                          long double hi) {
  for (int it = 0; it < 8; ++it) {
    const long double fx = horner(c, x);
    const long double dfx = horner(dc, x);
    if (fx == 0.0L || dfx == 0.0L) break;
    const long double next = x - fx / dfx;
    if (!(next >= lo && next <= hi)) break;
    if (next == x) break;
    x = next;
  }
  return x;
}

/// Root of c in [lo, hi] given a sign change between the ends.
inline long double refine_bracket(std::span<const long double> c, std::span<const long double> dc, long double lo,
                                  long double hi) {
  long double flo = horner(c, lo);
  if (flo == 0.0L) return lo;
  if (horner(c, hi) == 0.0L) return hi;
  long double x = 0.5L * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const long double fx = horner(c, x);
    if (fx == 0.0L) return x;
    if ((fx < 0) == (flo < 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= std::numeric_limits<long double>::epsilon() * std::max(1.0L, std::abs(x))) break;
    const long double dfx = horner(dc, x);
    const long double newton = dfx != 0.0L ? x - fx / dfx : lo;
    x = (newton > lo && newton < hi) ? newton : 0.5L * (lo + hi);
  }
  return polish(c, dc, x, lo, hi);
}

struct RootWithMultiplicity {
  long double value;
  int multiplicity;
};

inline std::vector<RootWithMultiplicity> real_roots_impl(std::vector<long double> c) {
  while (c.size() > 1 && c.back() == 0.0L) c.pop_back();
  const std::size_t degree = c.size() - 1;
  if (degree == 0) return {};
  if (degree == 1) return {{-c[0] / c[1], 1}};

  long double bound = 0.0L;
  for (std::size_t i = 0; i < degree; ++i) bound = std::max(bound, std::abs(c[i] / c[degree]));
  bound += 1.0L;

  const auto dc = derivative(c);
  std::vector<long double> breaks{-bound};
  for (const auto& r : real_roots_impl(dc)) {
    if (r.value > -bound && r.value < bound) breaks.push_back(r.value);
  }
  breaks.push_back(bound);

  constexpr long double kTouch = 64 * std::numeric_limits<long double>::epsilon();
  std::vector<RootWithMultiplicity> out;
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    // A critical point where p vanishes is a root of even or odd multiplicity >= 2.
    const long double x = breaks[i];
    if (std::abs(horner(c, x)) <= kTouch * magnitude(c, x)) out.push_back({x, 2});
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const long double lo = breaks[i];
    const long double hi = breaks[i + 1];
    const long double flo = horner(c, lo);
    const long double fhi = horner(c, hi);
    const bool lo_zero = std::abs(flo) <= kTouch * magnitude(c, lo);
    const bool hi_zero = std::abs(fhi) <= kTouch * magnitude(c, hi);
    if (lo_zero || hi_zero) continue;
    if ((flo < 0) != (fhi < 0)) out.push_back({refine_bracket(c, dc, lo, hi), 1});
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.value < r.value; });
  return out;
}

}  // namespace detail

/// Real roots of sum_i coeffs[i] x^i, ascending.
[[nodiscard]] inline RealRoots real_roots(std::span<const double> coeffs) {
  std::vector<long double> c(coeffs.begin(), coeffs.end());
  while (c.size() > 1 && c.back() == 0.0L) c.pop_back();
  RealRoots result;
  if (c.empty()) return result;
  const int degree = static_cast<int>(c.size()) - 1;
  int counted = 0;
  for (const auto& r : detail::real_roots_impl(c)) {
    result.roots.push_back(static_cast<double>(r.value));
    counted += r.multiplicity;
  }
  result.complex_count = std::max(0, degree - counted);
  return result;
}

/// sum_i coeffs[i] x^i in extended precision.
[[nodiscard]] inline double poly_eval(std::span<const double> coeffs, double x) {
  std::vector<long double> c(coeffs.begin(), coeffs.end());
  return static_cast<double>(detail::horner(c, x));
}

}  // namespace lvs
