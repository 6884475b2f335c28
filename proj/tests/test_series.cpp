#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lvs/series.hpp"
#include "support/generators.hpp"

namespace lvs {
namespace {

using R = Rational;
using RS = PowerSeries<Rational>;
using DS = PowerSeries<double>;

RS rs(std::vector<R> c, Var v = Var::T) { return RS(std::move(c), v); }

// Schoolbook long division of power series, independent of series_reciprocal.
std::vector<R> long_divide(std::vector<R> num, const std::vector<R>& den, int order) {
  std::vector<R> q(static_cast<std::size_t>(order) + 1, R(0));
  num.resize(q.size(), R(0));
  for (int k = 0; k <= order; ++k) {
    q[k] = num[k] / den[0];
    for (int i = 0; i + k <= order && i < static_cast<int>(den.size()); ++i) num[k + i] -= q[k] * den[i];
  }
  return q;
}

TEST(SeriesAdd, IdentityInverseAndCoefficientwise) {
  EXPECT_EQ(series_add(rs({1, 1}), rs({0, 0})), rs({1, 1}));
  EXPECT_EQ(series_add(rs({1, 1}), rs({-1, -1})), rs({0, 0}));
  EXPECT_EQ(series_add(rs({2, 0, 1}), rs({0, 0, 3})), rs({2, 0, 4}));
}

TEST(SeriesAdd, TruncatesToShorterOperand) {
  const auto s = series_add(rs({1, 2, 3, 4}), rs({1, 1}));
  EXPECT_EQ(s.order(), 1);
  EXPECT_EQ(s, rs({2, 3}));
}

TEST(SeriesAdd, RejectsMixedVariables) {
  try {
    (void)series_add(rs({1}), rs({1}, Var::Z));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VariableMismatch);
  }
}

TEST(SeriesMul, IdentityAndBinomial) {
  const auto s = rs({R(3), R(-1, 2), R(7, 3)});
  EXPECT_EQ(series_mul(RS::one(2), s), s);
  EXPECT_EQ(series_mul(rs({1, 1, 0}), rs({1, 1, 0})), rs({1, 2, 1}));
}

TEST(SeriesMul, SinTimesSecIsTan) {
  const auto sin5 = analytic_series<R>({AnalyticKind::Sin}, 5);
  const auto sec5 = series_reciprocal(analytic_series<R>({AnalyticKind::Cos}, 5));
  const auto oracle = long_divide(sin5.coeffs(), analytic_series<R>({AnalyticKind::Cos}, 5).coeffs(), 5);
  const auto tan5 = series_mul(sin5, sec5);
  EXPECT_EQ(tan5.coeffs(), oracle);
  EXPECT_EQ(tan5, rs({0, 1, 0, R(1, 3), 0, R(2, 15)}));
}

TEST(SeriesMul, RejectsMixedVariables) {
  EXPECT_THROW((void)series_mul(rs({1}, Var::Z), rs({1})), Error);
}

TEST(SeriesReciprocal, GeometricSeries) {
  EXPECT_EQ(series_reciprocal(rs({1, -1, 0, 0})), rs({1, 1, 1, 1}));
}

TEST(SeriesReciprocal, BlowUpSolutionOfExample1) {
  // 2 / (2 - e^{t^2/2}) through t^6
  const auto e = analytic_series<R>({AnalyticKind::ExpSquare, R(1, 2)}, 6);
  const auto den = series_sub(RS::constant(2, 6), e);
  const auto x = series_scale(series_reciprocal(den), R(2));
  EXPECT_EQ(x, rs({2, 0, 1, 0, R(3, 4), 0, R(13, 24)}));
}

TEST(SeriesReciprocal, SecantCoefficients) {
  const auto sec = series_reciprocal(analytic_series<R>({AnalyticKind::Cos}, 4));
  EXPECT_EQ(sec, rs({1, 0, R(1, 2), 0, R(5, 24)}));
}

TEST(SeriesReciprocal, ZeroConstantTermFails) {
  try {
    (void)series_reciprocal(rs({0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZeroSeries);
  }
}

TEST(SeriesIntegrate, TermByTerm) {
  EXPECT_EQ(series_integrate(rs({1})), rs({0, 1}));
  EXPECT_EQ(series_integrate(rs({0, 2})), rs({0, 0, 1}));
  const auto cos6 = analytic_series<R>({AnalyticKind::Cos}, 6);
  EXPECT_EQ(series_integrate(cos6), analytic_series<R>({AnalyticKind::Sin}, 7));
}

TEST(SeriesIntegrate, OnlyInT) {
  try {
    (void)series_integrate(rs({1, 1}, Var::Z));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VariableMismatch);
  }
}

TEST(AnalyticSeries, Exponential) {
  EXPECT_EQ(analytic_series<R>({AnalyticKind::Exp, R(2)}, 3), rs({1, 2, 2, R(4, 3)}));
}

TEST(AnalyticSeries, TangentMatchesLongDivision) {
  const int order = 11;
  const auto oracle = long_divide(analytic_series<R>({AnalyticKind::Sin}, order).coeffs(),
                                  analytic_series<R>({AnalyticKind::Cos}, order).coeffs(), order);
  EXPECT_EQ(analytic_series<R>({AnalyticKind::Tan}, order).coeffs(), oracle);
  EXPECT_EQ(oracle[11], R(1382, 155925));
}

TEST(AnalyticSeries, ConstantPlusTangent) {
  const auto s = series_add(analytic_series<R>({AnalyticKind::Const, R(4)}, 1), analytic_series<R>({AnalyticKind::Tan}, 1));
  EXPECT_EQ(s, rs({4, 1}));
}

TEST(AnalyticSeries, ExpSquareInZ) {
  const auto z = analytic_series<R>({AnalyticKind::ExpSquare, R(1, 2)}, 3, Var::Z);
  EXPECT_EQ(z.var(), Var::Z);
  EXPECT_EQ(z, rs({1, R(1, 2), R(1, 8), R(1, 48)}, Var::Z));
}

TEST(AnalyticSeries, OddFunctionRefusedInZ) {
  EXPECT_THROW((void)analytic_series<R>({AnalyticKind::Sin}, 3, Var::Z), Error);
}

TEST(AnalyticSeries, UnknownName) {
  try {
    (void)parse_analytic_kind("cosh");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedFunction);
  }
  EXPECT_EQ(parse_analytic_kind("tan"), AnalyticKind::Tan);
}

TEST(SeriesEval, Horner) {
  EXPECT_EQ(series_eval(rs({2, 0, 1}), R(0)), R(2));
  EXPECT_DOUBLE_EQ(series_eval(DS({2, 0, 1, 0, 0.75}), 0.5), 2.296875);
  EXPECT_EQ(series_eval(rs({2, 1}, Var::Z), R(2)), R(6));
}

TEST(ToEvenVariable, Reindexes) {
  EXPECT_EQ(to_even_variable(rs({2, 0, 1, 0, R(3, 4)})), rs({2, 1, R(3, 4)}, Var::Z));
  EXPECT_EQ(to_even_variable(rs({1})), rs({1}, Var::Z));
}

TEST(ToEvenVariable, OddTermFails) {
  try {
    (void)to_even_variable(rs({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEvenSeries);
  }
}

TEST(ToEvenVariable, DoubleModeToleratesRounding) {
  EXPECT_NO_THROW((void)to_even_variable(DS({2.0, 1e-15, 1.0})));
  EXPECT_THROW((void)to_even_variable(DS({2.0, 1e-9, 1.0})), Error);
}

TEST(PowerSeries, RejectsNonFinite) {
  EXPECT_THROW(DS({1.0, std::numeric_limits<double>::infinity()}), Error);
  EXPECT_THROW(DS(std::vector<double>{}), Error);
}

// ---------------------------------------------------------------------------
// Properties over random inputs.

TEST(SeriesProperties, ReciprocalIsInverse) {
  testing::Gen g(11);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const int order = g.integer(0, 8);
    auto c = g.rational_series(order).coeffs();
    if (c[0] == 0) c[0] = 1;
    const RS a(c);
    EXPECT_EQ(series_mul(a, series_reciprocal(a)), RS::one(order));
  }
}

TEST(SeriesProperties, ReciprocalIsInverseInDoubleMode) {
  testing::Gen g(12);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    auto c = g.double_series(g.integer(0, 8)).coeffs();
    c[0] = g.coin() ? g.real(0.5, 2.0) : g.real(-2.0, -0.5);
    const DS a(c);
    const auto r = series_reciprocal(a);
    const auto prod = series_mul(a, r);
    // Cancellation error scales with the largest term entering each Cauchy sum.
    double scale = 1.0;
    for (int j = 0; j <= r.order(); ++j) scale = std::max(scale, std::abs(r[j]) * 2.0);
    for (int j = 0; j <= prod.order(); ++j) EXPECT_NEAR(prod[j], j == 0 ? 1.0 : 0.0, 1e-12 * scale);
  }
}

TEST(SeriesProperties, RingLaws) {
  testing::Gen g(13);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto a = g.rational_series(g.integer(0, 6));
    const auto b = g.rational_series(g.integer(0, 6));
    const auto c = g.rational_series(g.integer(0, 6));
    EXPECT_EQ(series_add(a, b), series_add(b, a));
    EXPECT_EQ(series_mul(a, b), series_mul(b, a));
    EXPECT_EQ(series_add(series_add(a, b), c), series_add(a, series_add(b, c)));
    EXPECT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
    EXPECT_EQ(series_mul(a, series_add(b, c)), series_add(series_mul(a, b), series_mul(a, c)));
  }
}

TEST(SeriesProperties, DerivativeUndoesIntegral) {
  testing::Gen g(14);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto a = g.rational_series(g.integer(0, 8));
    EXPECT_EQ(series_derivative(series_integrate(a)), a);
  }
}

TEST(SeriesProperties, EvenReindexPreservesValues) {
  testing::Gen g(15);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    auto c = g.rational_series(2 * g.integer(0, 5)).coeffs();
    for (std::size_t j = 1; j < c.size(); j += 2) c[j] = 0;
    const RS a(c);
    const R t = g.rational();
    EXPECT_EQ(series_eval(to_even_variable(a), t), series_eval(a, t));
  }
}

TEST(SeriesProperties, ExponentialCoefficientsTimesFactorial) {
  testing::Gen g(16);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const R k = g.rational();
    const int order = g.integer(0, 10);
    const auto s = analytic_series<R>({AnalyticKind::Exp, k}, order);
    R fact = 1, pow_k = 1;
    for (int j = 0; j <= order; ++j) {
      if (j > 0) {
        fact *= j;
        pow_k *= k;
      }
      EXPECT_EQ(s[j] * fact, pow_k);
    }
  }
}

}  // namespace
}  // namespace lvs
