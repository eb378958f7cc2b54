#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>

#include "bamm/closed_forms.hpp"
#include "bamm/multipoly.hpp"

using namespace bamm;

namespace {

long double_factorial(long n) { return n <= 0 ? 1 : n * double_factorial(n - 2); }

// Gaussian expectation of a polynomial in x from the moments E[x^{2k}] = (2k-1)!!.
double gaussian_expectation(const MultiPoly<Scalar>& p) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c.to_double();
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (m[i] % 2 == 1) t = 0.0;
      else t *= static_cast<double>(double_factorial(static_cast<long>(m[i]) - 1));
    }
    s += t;
  }
  return s;
}

MultiPoly<Scalar> product_of_squares(const Arrangement& a, unsigned k) {
  auto p = MultiPoly<Scalar>::constant(a.dimension(), Scalar(1));
  for (const auto& v : a.vectors()) p = p * pow(MultiPoly<Scalar>::linear_form(std::span<const Scalar>(v.coords), Block::x), 2 * k);
  return p;
}

}  // namespace

TEST(MacdonaldMehta, RankOneMatchesGammaMoment) {
  const auto w = detail::coxeter_table(Group::A, 1);
  for (double k : {0.3, 1.0, 2.5}) {
    const double oracle = std::pow(4.0, k) * std::tgamma(k + 0.5) / std::sqrt(M_PI);
    EXPECT_NEAR(mm_coxeter(w, Param(k)).value.real() / oracle, 1.0, 1e-13);
  }
}

TEST(MacdonaldMehta, IntegerKMatchesGaussianMoments) {
  for (auto [g, r] : std::vector<std::pair<Group, int>>{{Group::A, 2}, {Group::B, 2}, {Group::A, 3}}) {
    const auto sys = build_coxeter(g, r);
    for (unsigned k : {1u, 2u}) {
      const double oracle = gaussian_expectation(product_of_squares(*sys.exact, k));
      const auto v = mm_coxeter(sys.datum, Param(static_cast<int>(k)));
      ASSERT_TRUE(v.exact.has_value());
      EXPECT_NEAR(v.exact->to_double() / oracle, 1.0, 1e-12) << sys.datum.label << " k=" << k;
    }
  }
}

// Integration by parts gives E[z^{-2n}] = (-1)^n / (2n-1)!! on a shifted line.
TEST(ContourGaussian, RankOneByParts) {
  const auto w = detail::coxeter_table(Group::A, 1);
  for (int m : {1, 2, 3}) {
    const double oracle = (m % 2 ? -1.0 : 1.0) / static_cast<double>(double_factorial(2 * m - 1)) / std::pow(2.0, m);
    EXPECT_NEAR(contour_gaussian(w, m).value.real(), oracle, 1e-15);
  }
  EXPECT_EQ(*contour_gaussian(w, 1).exact, Scalar(make_rational(-1, 2)));
}

TEST(ContourGaussian, ProductWithMacdonaldMehtaIsSign) {
  for (auto [g, r] : std::vector<std::pair<Group, int>>{{Group::A, 2}, {Group::B, 3}, {Group::D, 4}, {Group::H, 3}, {Group::I, 7}}) {
    const auto w = detail::coxeter_table(g, r);
    for (int m : {1, 2, 3}) {
      const auto v = gw_product(w, m);
      ASSERT_TRUE(v.exact.has_value());
      EXPECT_EQ(*v.exact, Scalar(gw_sign(w, m))) << w.label << " m=" << m;
    }
  }
}

TEST(ContourGaussian, RejectsNonPositiveMultiplicity) { EXPECT_THROW(contour_gaussian(detail::coxeter_table(Group::A, 2), 0), UsageError); }

TEST(DotsenkoFateev, SingleVariableIsBeta) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.3, 0.4}, {1.5, 2.25}, {0.7, 3.1}}) {
    const auto v = dotsenko_fateev(0, 1, Param(a), Param(b), Param(0.37));
    EXPECT_NEAR(v.value.real() / boost::math::beta(a + 1.0, b + 1.0), 1.0, 1e-12);
  }
}

TEST(Dihedral, FrequenciesAndFormula) {
  EXPECT_EQ(dihedral_frequencies(2, 0, 2, 1), (std::vector<long>{0, 1, 4}));
  EXPECT_THROW(dihedral_frequencies(2, 0, 1, 1), UsageError);
  const auto m = mm_2d(2, 0, 2, 1);
  ASSERT_TRUE(m.exact.has_value());
  EXPECT_NEAR(m.exact->to_double(), m.value.real(), 1e-15 * std::abs(m.value.real()));
}

TEST(GammaPoles, PoleRaisesGammaPole) {
  EXPECT_THROW(mm_coxeter(detail::coxeter_table(Group::A, 1), Param(make_rational(-1, 2))), GammaPole);
}
