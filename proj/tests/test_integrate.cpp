#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lvs/integrate.hpp"
#include "support/generators.hpp"

namespace lvs {
namespace {

using R = Rational;

ModelSpec constant_model(R a, R b, R c, R d, R alpha = 1, R beta = 1) {
  using C = CoefficientFn;
  return {C::constant(a), C::constant(b), C::constant(c), C::constant(d), alpha, beta, "const"};
}

TEST(Integrate, Example1AtOne) {
  const auto tr = integrate(preset("example1").model, 1.0, 1e-10);
  ASSERT_TRUE(tr.completed());
  EXPECT_NEAR(tr.xs().back(), 2.0 / (2.0 - std::exp(0.5)), 1e-8);
  EXPECT_NEAR(tr.ys().back(), 2.0 / (2.0 - std::exp(0.5)), 1e-8);
  EXPECT_EQ(tr.t_end(), 1.0);
}

TEST(Integrate, Example2AtOne) {
  const auto tr = integrate(preset("example2").model, 1.0, 1e-10);
  ASSERT_TRUE(tr.completed());
  EXPECT_NEAR(tr.ys().back(), 4.0 * std::exp(-2.0), 1e-8);
  EXPECT_NEAR(tr.xs().back(), -4.0 / std::cos(1.0), 1e-7);
}

TEST(Integrate, Example1BlowUp) {
  const auto tr = integrate(preset("example1").model, 2.0, 1e-10);
  EXPECT_EQ(tr.status(), TrajectoryStatus::BlowUpDetected);
  ASSERT_TRUE(tr.t_stop());
  EXPECT_NEAR(*tr.t_stop(), std::sqrt(2.0 * std::log(2.0)), 0.01);
}

TEST(Integrate, Example2StopsAtCoefficientPole) {
  const auto tr = integrate(preset("example2").model, 2.0, 1e-8);
  EXPECT_FALSE(tr.completed());
  ASSERT_TRUE(tr.t_stop());
  EXPECT_NEAR(*tr.t_stop(), std::numbers::pi / 2, 0.01);
}

TEST(Integrate, ArgumentChecks) {
  const auto m = preset("caseI").model;
  EXPECT_THROW((void)integrate(m, 0.0, 1e-8), Error);
  EXPECT_THROW((void)integrate(m, 1.0, 1e-14), Error);
  EXPECT_THROW((void)integrate(m, 1.0, 1e-2), Error);
  EXPECT_NO_THROW((void)integrate(m, 1.0, 1e-3));
}

TEST(Integrate, DenseOutputMatchesReintegration) {
  const auto m = preset("caseI").model;
  const double tol = 1e-9;
  const auto tr = integrate(m, 2.0, tol);
  for (double t : {0.013, 0.37, 0.9, 1.41, 1.999}) {
    const auto dense = tr.state_at(t);
    const auto direct = integrate(m, t, tol);
    const double sx = std::max(1.0, std::abs(direct.xs().back()));
    const double sy = std::max(1.0, std::abs(direct.ys().back()));
    EXPECT_NEAR(dense.x, direct.xs().back(), 10 * tol * sx) << t;
    EXPECT_NEAR(dense.y, direct.ys().back(), 10 * tol * sy) << t;
  }
  EXPECT_THROW((void)tr.state_at(2.5), Error);
}

TEST(Integrate, HalvingToleranceDoesNotHurt) {
  const auto p1 = preset("example1");
  const auto p2 = preset("example2");
  for (double tol = 1e-6; tol >= 1e-11; tol /= 2) {
    const double e1 = std::abs(integrate(p1.model, 1.0, tol).xs().back() - p1.exact->x(1.0));
    const double e1h = std::abs(integrate(p1.model, 1.0, tol / 2).xs().back() - p1.exact->x(1.0));
    EXPECT_LE(e1h, 1.5 * e1 + 1e-14) << tol;
    const double e2 = std::abs(integrate(p2.model, 1.0, tol).ys().back() - p2.exact->y(1.0));
    const double e2h = std::abs(integrate(p2.model, 1.0, tol / 2).ys().back() - p2.exact->y(1.0));
    EXPECT_LE(e2h, 1.5 * e2 + 1e-14) << tol;
  }
}

TEST(IntegrateProperties, TimesStrictlyIncreaseAndValuesFinite) {
  testing::Gen g(61);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const auto m = g.coin() ? g.autonomous_model() : g.smooth_model();
    const double tol = std::pow(10.0, -g.integer(3, 12));
    const auto tr = integrate(m, g.real(0.1, 3.0), tol);
    ASSERT_GE(tr.size(), 2u);
    for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GT(tr.times()[i], tr.times()[i - 1]);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      EXPECT_TRUE(std::isfinite(tr.xs()[i]));
      EXPECT_TRUE(std::isfinite(tr.ys()[i]));
    }
    if (!tr.completed()) {
      EXPECT_TRUE(tr.t_stop());
    }
  }
}

TEST(Equilibria, CaseI) {
  const auto eq = equilibria(preset("caseI").model);
  ASSERT_EQ(eq.size(), 2u);
  EXPECT_EQ(eq[0].x, 0.0);
  EXPECT_EQ(eq[0].y, 0.0);
  EXPECT_EQ(eq[0].classification, EquilibriumClass::Saddle);
  EXPECT_NEAR(eq[0].eigenvalues[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(eq[0].eigenvalues[1].real(), -0.1, 1e-12);
  EXPECT_NEAR(eq[1].x, 0.1, 1e-15);
  EXPECT_NEAR(eq[1].y, 1.0, 1e-15);
  EXPECT_EQ(eq[1].classification, EquilibriumClass::Center);
  EXPECT_NEAR(eq[1].eigenvalues[0].real(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eq[1].eigenvalues[0].imag()), std::sqrt(0.1), 1e-12);
  EXPECT_NEAR(eq[1].eigenvalues[1].imag(), -eq[1].eigenvalues[0].imag(), 1e-15);
}

TEST(Equilibria, ClassicalSymmetricCase) {
  const auto eq = equilibria(constant_model(1, 1, 1, 1));
  ASSERT_EQ(eq.size(), 2u);
  EXPECT_EQ(eq[0].classification, EquilibriumClass::Saddle);
  EXPECT_EQ(eq[1].x, 1.0);
  EXPECT_EQ(eq[1].y, 1.0);
  EXPECT_EQ(eq[1].classification, EquilibriumClass::Center);
}

TEST(Equilibria, NoInteriorPointWithoutInteraction) {
  EXPECT_EQ(equilibria(constant_model(1, 0, 1, 1)).size(), 1u);
}

TEST(Equilibria, NotAutonomous) {
  try {
    (void)equilibria(preset("example1").model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAutonomous);
  }
}

TEST(ClassifyLinearization, Cases) {
  EXPECT_EQ(classify_linearization(0, 0, -1, 0, 0, -2).classification, EquilibriumClass::StableNode);
  EXPECT_EQ(classify_linearization(0, 0, 1, 0, 0, 2).classification, EquilibriumClass::UnstableNode);
  EXPECT_EQ(classify_linearization(0, 0, -1, -2, 2, -1).classification, EquilibriumClass::StableFocus);
  EXPECT_EQ(classify_linearization(0, 0, 1, -2, 2, 1).classification, EquilibriumClass::UnstableFocus);
  EXPECT_EQ(classify_linearization(0, 0, 0, -1, 1, 0).classification, EquilibriumClass::Center);
  EXPECT_EQ(classify_linearization(0, 0, 1, 0, 0, 0).classification, EquilibriumClass::Degenerate);
}

TEST(ClassifyProperties, ConsistentWithEigenvaluesAndScaleInvariant) {
  testing::Gen g(62);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const double j11 = g.integer(-5, 5), j12 = g.integer(-5, 5), j21 = g.integer(-5, 5), j22 = g.integer(-5, 5);
    const auto p = classify_linearization(0, 0, j11, j12, j21, j22);
    const auto& ev = p.eigenvalues;
    switch (p.classification) {
      case EquilibriumClass::Saddle:
        EXPECT_EQ(ev[0].imag(), 0.0);
        EXPECT_LT(ev[0].real() * ev[1].real(), 0.0);
        break;
      case EquilibriumClass::Center:
        EXPECT_NEAR(ev[0].real(), 0.0, 1e-12);
        EXPECT_NE(ev[0].imag(), 0.0);
        break;
      case EquilibriumClass::StableFocus:
      case EquilibriumClass::UnstableFocus:
        EXPECT_NE(ev[0].imag(), 0.0);
        EXPECT_EQ(ev[0].real() < 0, p.classification == EquilibriumClass::StableFocus);
        break;
      case EquilibriumClass::StableNode:
      case EquilibriumClass::UnstableNode:
        EXPECT_EQ(ev[0].imag(), 0.0);
        EXPECT_GT(ev[0].real() * ev[1].real(), 0.0);
        EXPECT_EQ(ev[0].real() < 0, p.classification == EquilibriumClass::StableNode);
        break;
      case EquilibriumClass::Degenerate:
        EXPECT_NEAR(std::abs(ev[0] * ev[1]), 0.0, 1e-9);
        break;
    }
  }
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const auto m = g.autonomous_model();
    const R k(g.integer(1, 40), g.integer(1, 8));
    const ModelSpec scaled{CoefficientFn::constant(m.a.constant_value() * k),
                           CoefficientFn::constant(m.b.constant_value() * k),
                           CoefficientFn::constant(m.c.constant_value() * k),
                           CoefficientFn::constant(m.d.constant_value() * k), m.alpha, m.beta, "scaled"};
    const auto e1 = equilibria(m);
    const auto e2 = equilibria(scaled);
    ASSERT_EQ(e1.size(), e2.size());
    for (std::size_t i = 0; i < e1.size(); ++i) {
      EXPECT_EQ(e1[i].classification, e2[i].classification);
      for (int j = 0; j < 2; ++j) {
        EXPECT_NEAR(std::abs(e2[i].eigenvalues[j] - to_double(k) * e1[i].eigenvalues[j]), 0.0,
                    1e-12 * to_double(k) * (1 + std::abs(e1[i].eigenvalues[j])));
      }
    }
  }
}

TEST(ConservedQuantity, Values) {
  EXPECT_DOUBLE_EQ(conserved_quantity(constant_model(1, 1, 1, 1), 1, 1), 2.0);
  const auto m = preset("caseI").model;
  // Gradient vanishes at the centre.
  const double h = 1e-6;
  EXPECT_NEAR((conserved_quantity(m, 0.1 + h, 1) - conserved_quantity(m, 0.1 - h, 1)) / (2 * h), 0.0, 1e-6);
  EXPECT_NEAR((conserved_quantity(m, 0.1, 1 + h) - conserved_quantity(m, 0.1, 1 - h)) / (2 * h), 0.0, 1e-6);
  try {
    (void)conserved_quantity(m, -1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
  EXPECT_THROW((void)conserved_quantity(preset("example1").model, 1, 1), Error);
}

TEST(ConservedQuantity, CaseIOrbit) {
  const auto m = preset("caseI").model;
  const auto tr = integrate(m, 10.0, 1e-10);
  ASSERT_TRUE(tr.completed());
  const double v0 = conserved_quantity(m, tr.xs()[0], tr.ys()[0]);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) worst = std::max(worst, std::abs(conserved_quantity(m, tr.xs()[i], tr.ys()[i]) - v0));
  EXPECT_LE(worst, 1e-6);
}

TEST(ConservedQuantity, CaseIOrbitsNearCentreStayBounded) {
  const auto m = preset("caseI").model;
  IntegrateOptions opts;
  opts.initial = State2{0.12, 1.1};
  const auto tr = integrate(m, 50.0, 1e-10, opts);
  ASSERT_TRUE(tr.completed());
  const double v0 = conserved_quantity(m, 0.12, 1.1);
  // The level set V = v0 lies inside the box where each separable part stays below v0 - min of the other.
  const double vmin_x = 1 * 0.1 - 0.1 * std::log(0.1);
  const double vmin_y = 1.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_LE(tr.xs()[i] - 0.1 * std::log(tr.xs()[i]), v0 - vmin_y + 1e-8);
    EXPECT_LE(tr.ys()[i] - std::log(tr.ys()[i]), v0 - vmin_x + 1e-8);
  }
}

}  // namespace
}  // namespace lvs
