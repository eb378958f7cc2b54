#include <gtest/gtest.h>

#include "bamm/exppoly.hpp"
#include "bamm/gamma.hpp"
#include "bamm/multipoly.hpp"
#include "bamm/scalar.hpp"

using namespace bamm;

TEST(Scalar, QuadraticFieldArithmetic) {
  const Scalar s2 = Scalar::sqrt_of(2);
  EXPECT_EQ(s2 * s2, Scalar(2));
  EXPECT_EQ(Scalar::sqrt_of(8), Scalar(2) * s2);
  const Scalar x = Scalar(1) + s2;
  EXPECT_EQ(x * x.inverse(), Scalar(1));
  EXPECT_EQ(x.norm(), Rational(-1));
  EXPECT_NEAR(x.to_double(), 1.0 + std::sqrt(2.0), 1e-15);
}

TEST(Scalar, ExactSign) {
  const Scalar s2 = Scalar::sqrt_of(2);
  EXPECT_EQ((Scalar(make_rational(141, 100)) - s2).sign(), -1);
  EXPECT_EQ((Scalar(make_rational(142, 100)) - s2).sign(), 1);
  EXPECT_EQ(Scalar(0).sign(), 0);
}

TEST(Scalar, MixedRadicandsRejected) {
  EXPECT_THROW(Scalar::sqrt_of(2) + Scalar::sqrt_of(3), FieldMismatch);
  EXPECT_THROW(Scalar(Rational(0), Rational(1), 4), FieldMismatch);
}

TEST(MultiPoly, RingIdentities) {
  const Poly x = Poly::variable(2, Block::x, 0);
  const Poly y = Poly::variable(2, Block::x, 1);
  const Poly l = Poly::variable(2, Block::lambda, 0);
  const Poly a = x + y * Scalar(3) - l;
  const Poly b = x * y + Poly::constant(2, Scalar(make_rational(1, 2)));
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a + b) * (a + b), a * a + a * b * Scalar(2) + b * b);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(pow(x + y, 3).size(), 4u);
}

TEST(MultiPoly, EvaluationMatchesDirectFormula) {
  const Poly x = Poly::variable(1, Block::x, 0);
  const Poly l = Poly::variable(1, Block::lambda, 0);
  const Poly p = x * x * l * Scalar::sqrt_of(2) - x + Poly::constant(1, Scalar(5));
  const std::vector<std::complex<double>> pt = {{0.3, -1.2}, {2.0, 0.5}};
  const auto z = pt[0], w = pt[1];
  EXPECT_LT(std::abs(p.evaluate(pt) - (z * z * w * std::sqrt(2.0) - z + 5.0)), 1e-13);
}

TEST(MultiPoly, Derivative) {
  const Poly x = Poly::variable(2, Block::x, 0);
  const Poly y = Poly::variable(2, Block::x, 1);
  const Poly p = pow(x, 3) * y + x * Scalar(7);
  EXPECT_EQ(p.derivative(Block::x, 0), pow(x, 2) * y * Scalar(3) + Poly::constant(2, Scalar(7)));
  EXPECT_EQ(p.derivative(Block::x, 1), pow(x, 3));
}

TEST(MultiPoly, LinearDivision) {
  const Poly x = Poly::variable(2, Block::x, 0);
  const Poly y = Poly::variable(2, Block::x, 1);
  const std::vector<Scalar> alpha = {Scalar(1), Scalar(-1)};
  const Poly lin = x - y;
  const Poly q = x * x + y * Scalar(3);
  EXPECT_EQ(exact_div_linear(lin * q, std::span<const Scalar>(alpha), Block::x), q);
  EXPECT_THROW(exact_div_linear(q, std::span<const Scalar>(alpha), Block::x), NonDivisibleError);
  const auto d = divide_linear(q, std::span<const Scalar>(alpha), Block::x);
  EXPECT_EQ(d.quotient * lin + d.remainder, q);
}

TEST(MultiPoly, ArityMismatch) {
  EXPECT_THROW(Poly::variable(1, Block::x, 0) + Poly::variable(2, Block::x, 0), ArityMismatch);
}

TEST(Gamma, AgreesWithStdTgamma) {
  for (double x : {0.3, 1.0, 2.5, 7.25, 12.0, -0.5, -2.75}) {
    EXPECT_NEAR(gamma(cplx(x)).real() / std::tgamma(x), 1.0, 1e-13) << x;
  }
}

TEST(Gamma, ReflectionForComplexArguments) {
  const cplx z(0.3, 1.7);
  const cplx lhs = gamma(z) * gamma(1.0 - z);
  const cplx rhs = M_PI / std::sin(M_PI * z);
  EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-13);
}

TEST(Gamma, ExactValuesAndPoles) {
  EXPECT_EQ(exact_gamma(Rational(5)).first, Rational(24));
  const auto [q, root_pi] = exact_gamma(make_rational(5, 2));
  EXPECT_TRUE(root_pi);
  EXPECT_EQ(q, make_rational(3, 4));
  EXPECT_THROW(exact_gamma(Rational(-2)), GammaPole);
  EXPECT_THROW(log_gamma(cplx(-3.0)), GammaPole);
}
