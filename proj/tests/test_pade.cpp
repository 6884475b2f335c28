#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lvs/pade.hpp"
#include "lvs/roots.hpp"
#include "lvs/taylor.hpp"
#include "support/generators.hpp"

namespace lvs {
namespace {

using R = Rational;
using RA = RationalApproximant<R>;

PowerSeries<R> example1_z(int z_order) {
  return to_even_variable(solve_series<R>(preset("example1").model, 2 * z_order).x);
}

RA printed_example1_12() { return make_rational<R>({-48, 8}, {-24, 16, 1}, Var::Z); }

TEST(RealRoots, SimpleCubic) {
  const std::vector<double> p = {-6, 11, -6, 1};  // (t-1)(t-2)(t-3)
  const auto r = real_roots(p);
  ASSERT_EQ(r.roots.size(), 3u);
  EXPECT_NEAR(r.roots[0], 1.0, 1e-14);
  EXPECT_NEAR(r.roots[1], 2.0, 1e-14);
  EXPECT_NEAR(r.roots[2], 3.0, 1e-14);
  EXPECT_EQ(r.complex_count, 0);
}

TEST(RealRoots, ComplexPairCounted) {
  const auto r = real_roots(std::vector<double>{1, 0, 1});
  EXPECT_TRUE(r.roots.empty());
  EXPECT_EQ(r.complex_count, 2);
}

TEST(RealRoots, DoubleRoot) {
  const auto r = real_roots(std::vector<double>{1, -2, 1});
  ASSERT_FALSE(r.roots.empty());
  EXPECT_NEAR(r.roots[0], 1.0, 1e-7);
  EXPECT_EQ(r.complex_count, 0);
}

TEST(RealRoots, RandomFactoredPolynomials) {
  testing::Gen g(41);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const int k = g.integer(1, 5);
    std::vector<double> roots;
    std::vector<double> p = {1.0};
    for (int j = 0; j < k; ++j) {
      double r = 0;
      bool ok = false;
      while (!ok) {
        r = g.integer(-40, 40) / 8.0;
        ok = true;
        for (double s : roots) ok = ok && std::abs(s - r) > 0.1;
      }
      roots.push_back(r);
      std::vector<double> next(p.size() + 1, 0.0);
      for (std::size_t a = 0; a < p.size(); ++a) {
        next[a] -= r * p[a];
        next[a + 1] += p[a];
      }
      p = next;
    }
    // times (t^2 + 1): two complex roots
    std::vector<double> full(p.size() + 2, 0.0);
    for (std::size_t a = 0; a < p.size(); ++a) {
      full[a] += p[a];
      full[a + 2] += p[a];
    }
    std::sort(roots.begin(), roots.end());
    const auto got = real_roots(full);
    ASSERT_EQ(got.roots.size(), roots.size());
    EXPECT_EQ(got.complex_count, 2);
    for (std::size_t j = 0; j < roots.size(); ++j) EXPECT_NEAR(got.roots[j], roots[j], 1e-9);
  }
}

TEST(PadeFromSeries, Example1OneTwoIsPrintedForm) {
  const auto A = pade_from_series(example1_z(3), 1, 2);
  EXPECT_EQ(A.numerator, (std::vector<R>{2, R(-1, 3)}));
  EXPECT_EQ(A.denominator, (std::vector<R>{1, R(-2, 3), R(-1, 24)}));
  EXPECT_TRUE(rational_equiv(A, printed_example1_12()));
  EXPECT_EQ(A.label(), "[1/2](z)");
}

TEST(PadeFromSeries, Example2Forms) {
  const auto sol = solve_series<R>(preset("example2").model, 8);
  const auto X = pade_from_series(to_even_variable(sol.x.truncated(6)), 1, 2);
  EXPECT_TRUE(rational_equiv(X, make_rational<R>({-480, -16}, {120, -56, 3}, Var::Z)));
  const auto Y = pade_from_series(sol.y.truncated(7), 3, 4);
  EXPECT_TRUE(rational_equiv(Y, make_rational<R>({420, -360, 120, -16}, {105, 120, 60, 16, 2}, Var::T)));
}

TEST(PadeFromSeries, InsufficientOrder) {
  EXPECT_THROW((void)pade_from_series(example1_z(2), 1, 2), Error);
}

TEST(PadeFromSeries, DegenerateTableReported) {
  // 1 + t^2: the [1/1] system reads q1 * c1 = -c2 with c1 = 0.
  try {
    (void)pade_from_series(PowerSeries<R>({1, 0, 1}), 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegeneratePadeTable);
  }
  EXPECT_THROW((void)pade_from_series(PowerSeries<double>({1.0, 0.0, 1.0}), 1, 1), Error);
}

TEST(RationalEquiv, Examples) {
  const auto A = make_rational<R>({2, R(-1, 3)}, {1, R(-2, 3), R(-1, 24)}, Var::Z);
  EXPECT_TRUE(rational_equiv(A, printed_example1_12()));
  EXPECT_TRUE(rational_equiv(A, A));
  EXPECT_FALSE(rational_equiv(make_rational<R>({1}, {1, -1}, Var::T), make_rational<R>({1}, {1, 1}, Var::T)));
  EXPECT_FALSE(rational_equiv(make_rational<R>({1}, {1, -1}, Var::T), make_rational<R>({1}, {1, -1}, Var::Z)));
}

TEST(RationalEval, ValuesAtOrigin) {
  EXPECT_DOUBLE_EQ(rational_eval(printed_example1_12(), 0.0), 2.0);
  EXPECT_DOUBLE_EQ(rational_eval(make_rational<R>({-480, -16}, {120, -56, 3}, Var::Z), 0.0), -4.0);
  EXPECT_DOUBLE_EQ(rational_eval(make_rational<R>({420, -360, 120, -16}, {105, 120, 60, 16, 2}, Var::T), 0.0), 4.0);
}

TEST(RationalEval, NearPoleRefused) {
  const auto A = make_rational<R>({1}, {1, -1}, Var::T);
  try {
    (void)rational_eval(A, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NearPole);
  }
  EXPECT_DOUBLE_EQ(rational_eval(A, 0.5), 2.0);
}

TEST(PadePoles, LinearDenominator) {
  const auto poles = pade_poles(make_rational<R>({1}, {1, -1}, Var::T));
  ASSERT_EQ(poles.real.size(), 1u);
  EXPECT_DOUBLE_EQ(poles.real[0].location, 1.0);
}

TEST(PadePoles, ResidualWithinBound) {
  const auto study = pole_study(preset("example1").model, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 2}, {3, 3}});
  for (const auto& e : study) {
    ASSERT_FALSE(e.error) << *e.error;
    ASSERT_TRUE(e.pole);
    EXPECT_LE(e.pole->residual, 1e-10) << e.m << "/" << e.n;
  }
}

TEST(PoleStudy, Example1ConvergesToCriticalSquare) {
  const double two_ln2 = 2.0 * std::numbers::ln2;
  const auto s = pole_study(preset("example1").model, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  ASSERT_EQ(s.size(), 4u);
  for (const auto& e : s) {
    ASSERT_TRUE(e.pole);
    EXPECT_EQ(e.var, Var::Z);
  }
  EXPECT_NEAR(s[0].pole->location, 1.3808315196468591, 1e-12);
  EXPECT_NEAR(s[1].pole->location, 1.3863223328797380, 1e-12);
  EXPECT_NEAR(s[2].pole->location, 1.3862942908595402, 1e-12);
  EXPECT_NEAR(s[3].pole->location, 1.3862943612256078, 1e-12);
  EXPECT_LT(std::abs(s[2].pole->location - two_ln2), std::abs(s[0].pole->location - two_ln2));
  EXPECT_LT(std::abs(s[3].pole->location - two_ln2), std::abs(s[1].pole->location - two_ln2));
  EXPECT_LT(std::abs(s[3].pole->location - two_ln2), 5e-9);
}

TEST(PoleStudy, OddSeriesStudiedInT) {
  const auto s = pole_study(preset("example2").model, {{3, 4}}, {Component::Y, true});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].var, Var::T);
  EXPECT_FALSE(s[0].error);
  // 4 e^{-2t} has no blow-up; any real pole the approximant has is off [0, pi/2).
  if (s[0].pole) {
    EXPECT_GE(s[0].pole->location, std::numbers::pi / 2);
  }
}

TEST(ScaledForm, PrintsIntegerForms) {
  const auto A = pade_from_series(example1_z(3), 1, 2);
  EXPECT_EQ(format_scaled(scaled_integer_form(A)), "8*(z - 6) / (z^2 + 16*z - 24)");
}

TEST(PadeProperties, OrderConditionExact) {
  testing::Gen g(42);
  int checked = 0;
  for (int i = 0; checked < testing::kPropertyCases && i < 10 * testing::kPropertyCases; ++i) {
    const int m = g.integer(0, 4), n = g.integer(0, 4);
    auto s = g.rational_series(m + n + g.integer(0, 2));
    if (s[0] == 0) continue;
    RA A;
    try {
      A = pade_from_series(s, m, n);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::DegeneratePadeTable);
      continue;
    }
    EXPECT_EQ(A.denominator[0], R(1));
    EXPECT_EQ(rational_taylor(A, m + n), s.truncated(m + n));
    ++checked;
  }
  EXPECT_GE(checked, testing::kPropertyCases);
}

TEST(PadeProperties, OrderConditionDouble) {
  testing::Gen g(43);
  int checked = 0;
  for (int i = 0; checked < testing::kPropertyCases && i < 10 * testing::kPropertyCases; ++i) {
    const int m = g.integer(0, 3), n = g.integer(1, 3);
    auto c = g.double_series(m + n).coeffs();
    c[0] = 1.0;
    const PowerSeries<double> s(c);
    RationalApproximant<double> A;
    try {
      A = pade_from_series(s, m, n);
    } catch (const Error&) {
      continue;
    }
    double q_scale = 1.0;
    for (double v : A.denominator) q_scale = std::max(q_scale, std::abs(v));
    if (q_scale > 1e4) continue;  // ill-conditioned entry
    const auto back = rational_taylor(A, m + n);
    for (int j = 0; j <= m + n; ++j) EXPECT_NEAR(back[j], s[j], 1e-9 * q_scale);
    ++checked;
  }
  EXPECT_GE(checked, testing::kPropertyCases);
}

TEST(PadeProperties, EquivalenceRelation) {
  testing::Gen g(44);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    std::vector<R> p(g.integer(1, 3)), q(g.integer(1, 3));
    for (auto& v : p) v = g.rational();
    for (auto& v : q) v = g.rational();
    q[0] = g.nonzero_rational();
    const RA A = make_rational(p, q, Var::T);
    const R k1 = g.nonzero_rational(), k2 = g.nonzero_rational();
    auto scaled = [](std::vector<R> v, const R& k) {
      for (auto& x : v) x *= k;
      return v;
    };
    // make_rational normalizes q0 to 1, so build the scaled copies directly.
    const RA B{scaled(p, k1), scaled(q, k1), Var::T};
    const RA C{scaled(p, k2), scaled(q, k2), Var::T};
    EXPECT_TRUE(rational_equiv(A, A));
    EXPECT_EQ(rational_equiv(A, B), rational_equiv(B, A));
    EXPECT_TRUE(rational_equiv(A, B));
    EXPECT_TRUE(rational_equiv(B, C));
    EXPECT_TRUE(rational_equiv(A, C));
  }
}

}  // namespace
}  // namespace lvs
