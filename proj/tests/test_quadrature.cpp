#include <gtest/gtest.h>

#include "bamm/quadrature.hpp"

using namespace bamm;

namespace {

double double_factorial(int n) { return n <= 0 ? 1.0 : n * double_factorial(n - 2); }

NumericArrangement a1() { return build_coxeter(Group::A, 1).numeric; }

}  // namespace

TEST(GaussHermite, MomentsAreDoubleFactorials) {
  for (int n : {8, 32, 64, 128}) {
    const auto& r = gauss_hermite(n);
    ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
    double w = 0.0;
    for (double v : r.weights) w += v;
    EXPECT_NEAR(w, 1.0, 1e-14);
    for (int k = 1; 2 * k < std::min(n, 24); ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * k);
      EXPECT_NEAR(s / double_factorial(2 * k - 1), 1.0, 1e-11) << n << " " << k;
    }
  }
}

TEST(GaussHermite, NodesAreSymmetric) {
  const auto& r = gauss_hermite(40);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    EXPECT_NEAR(r.nodes[i], -r.nodes[r.nodes.size() - 1 - i], 1e-13);
    EXPECT_NEAR(r.weights[i], r.weights[r.weights.size() - 1 - i], 1e-15);
  }
}

// Integration by parts: on a shifted line E[1/(2 z^2)] = -1/2 and E[1/(4 z^4)] = 1/12.
TEST(ShiftedIntegral, RankOneByParts) {
  const auto a = a1();
  const auto spec = regular_shift(a, ShiftStrategy::positive_chamber);
  const auto v = shifted_gaussian_integral(inverse_am_squared_integrand(a), spec);
  EXPECT_NEAR(v.value.real(), -0.5, 1e-12);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
  EXPECT_EQ(v.xi, spec.xi);
  const auto v2 = shifted_gaussian_integral(mm_integrand(a, {cplx(-4.0)}), spec);
  EXPECT_NEAR(v2.value.real(), 1.0 / 12.0, 1e-12);
}

TEST(ShiftedIntegral, IndependentOfShift) {
  const auto a = build_coxeter(Group::A, 2).numeric;
  const auto f = inverse_am_squared_integrand(a);
  const auto s1 = regular_shift(a, ShiftStrategy::positive_chamber);
  const auto s2 = regular_shift(a, ShiftStrategy::negative_chamber, {}, 1.5);
  const auto r = contour_independence_check(f, s1, s2);
  EXPECT_TRUE(r.pass) << r.difference;
  EXPECT_NEAR(r.first.value.real(), -1.0 / 12.0, 1e-10);
}

TEST(ShiftedIntegral, PolynomialIntegrandHasNoShiftDependence) {
  const auto in = power_product_integrand(2, {{{1.0, 0.0}, cplx(2.0)}, {{0.0, 1.0}, cplx(2.0)}}, 1.0, "x^2 y^2");
  ContourSpec spec;
  spec.xi = {0.7, -0.4};
  const auto v = shifted_gaussian_integral(in, spec);
  EXPECT_NEAR(v.value.real(), 1.0, 1e-12);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
}

TEST(ShiftedIntegral, ContourOnSingularHyperplaneRejected) {
  const auto a = build_coxeter(Group::A, 2).numeric;
  ContourSpec spec;
  spec.xi = {1.0, 1.0, 0.0};
  EXPECT_THROW(shifted_gaussian_integral(inverse_am_squared_integrand(a), spec), NotRegular);
}

TEST(ShiftedIntegral, UnreachableToleranceIsNonConvergent) {
  const auto a = build_coxeter(Group::B, 2).numeric;
  QuadConfig cfg;
  cfg.order = 4;
  cfg.max_refinements = 0;
  cfg.tol_rel = 1e-15;
  cfg.tol_abs = 0.0;
  EXPECT_THROW(shifted_gaussian_integral(mm_integrand(a, std::vector<cplx>(4, cplx(-6.0))),
                                         regular_shift(a, ShiftStrategy::positive_chamber), cfg),
               NonConvergent);
}

TEST(MonteCarlo, SeededRunsAreReproducible) {
  const auto in = power_product_integrand(1, {{{1.0}, cplx(2.0)}}, 1.0, "x^2");
  ContourSpec spec;
  spec.xi = {0.5};
  QuadConfig cfg;
  cfg.method = QuadMethod::monte_carlo;
  cfg.samples = 200000;
  cfg.seed = 42;
  const auto r1 = detail::integrate_unchecked(in, spec, cfg);
  const auto r2 = detail::integrate_unchecked(in, spec, cfg);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_NEAR(r1.value.real(), 1.0, 0.02);
  cfg.seed = 43;
  EXPECT_NE(detail::integrate_unchecked(in, spec, cfg).value, r1.value);
}

TEST(AbsoluteIntegral, RankOneMoment) {
  const double k = 0.35;
  const double oracle = std::pow(4.0, k) * std::tgamma(k + 0.5) / std::sqrt(M_PI);
  EXPECT_NEAR(absolute_mm_integral(a1(), k) / oracle, 1.0, 1e-9);
}
