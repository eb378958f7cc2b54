#include <gtest/gtest.h>

#include "bamm/closed_forms.hpp"
#include "bamm/wronskian2d.hpp"

using namespace bamm;

TEST(Wronskian, SinPairMatchesDeterminant) {
  const auto w = wronskian({1, 2}, TrigKind::sin);
  for (int i = 0; i < 10; ++i) {
    const double phi = 0.1 + 0.61 * i;
    const double direct = std::sin(phi) * 2.0 * std::cos(2.0 * phi) - std::cos(phi) * std::sin(2.0 * phi);
    EXPECT_NEAR(w.evaluate(phi), direct, 1e-12);
  }
}

TEST(Wronskian, CosTripleMatchesDeterminant) {
  const auto w = wronskian({0, 1, 3}, TrigKind::cos);
  for (int i = 0; i < 10; ++i) {
    const double p = 0.2 + 0.57 * i;
    // rows (1, cos p, cos 3p), derivatives of the constant vanish
    const double a11 = -std::sin(p), a12 = -3.0 * std::sin(3 * p);
    const double a21 = -std::cos(p), a22 = -9.0 * std::cos(3 * p);
    EXPECT_NEAR(w.evaluate(p), a11 * a22 - a12 * a21, 1e-11);
  }
}

TEST(Wronskian, RejectsDegenerateInput) {
  EXPECT_THROW(wronskian({2, 2}, TrigKind::cos), UsageError);
  EXPECT_THROW(wronskian({0, 1}, TrigKind::sin), UsageError);
}

TEST(Laurent, ExactQuotient) {
  const auto a = Laurent::cos_k(1) * Laurent::sin_k(3);
  EXPECT_EQ(exact_quotient(a, Laurent::cos_k(1)), Laurent::sin_k(3));
  EXPECT_THROW(exact_quotient(Laurent::cos_k(1), Laurent::sin_k(2)), FactorizationMismatch);
}

TEST(TrigPoly, RoundTripAndDerivative) {
  const auto t = TrigPoly::from_laurent(Laurent::cos_k(2) * Laurent::sin_k(1));
  EXPECT_EQ(TrigPoly::from_laurent(t.to_laurent()), t);
  const double h = 1e-6, p = 0.73;
  EXPECT_NEAR(t.derivative().evaluate(p), (t.evaluate(p + h) - t.evaluate(p - h)) / (2 * h), 1e-8);
}

TEST(Factorization, ReconstructsQuotient) {
  for (auto [m, mt, l, q] : std::vector<std::array<int, 4>>{{2, 0, 2, 1}, {3, 1, 2, 1}, {2, 1, 4, 1}, {1, 0, 2, 2}, {1, 1, 2, 3}}) {
    const auto fz = factorize_q(m, mt, l, q);
    EXPECT_TRUE(fz.abs_matches);
    EXPECT_EQ(fz.angles.size(), static_cast<std::size_t>(l));
    EXPECT_LT(fz.residual, 1e-10);
    EXPECT_LT(fz.angle_sum_error, 1e-10);
    for (int i = 0; i < 7; ++i) {
      const double phi = 0.05 + 0.41 * i;
      EXPECT_NEAR(fz.q_trig.evaluate(phi), fz.reconstruct(phi, fz.a_value()),
                  1e-9 * std::max(1.0, std::abs(fz.q_trig.evaluate(phi))));
    }
    EXPECT_EQ(Scalar(mm_2d_from_factorization(fz)), *mm_2d(m, mt, l, q).exact) << m << mt << l << q;
  }
}

TEST(Factorization, QuadratureMatchesExactValue) {
  const auto fz = factorize_q(2, 0, 2, 1);
  QuadConfig cfg;
  cfg.tol_abs = 0.0;
  const double exact = mm_2d_from_factorization(fz).get_d();
  const auto v = wronskian_mm_quadrature(fz, cfg);
  EXPECT_NEAR(v.value.real() / exact, 1.0, 1e-9);
}

TEST(Factorization, EmittedArrangementIsValid) {
  const auto fz = factorize_q(2, 0, 2, 1);
  const auto lines = emit_arrangement(2, 0, 2, 1, fz.angles);
  EXPECT_EQ(lines.dimension(), 2u);
  EXPECT_EQ(lines.total_multiplicity(), fz.q * fz.total());
}
