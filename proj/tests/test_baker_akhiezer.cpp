#include <gtest/gtest.h>

#include "bamm/baker_akhiezer.hpp"
#include "bamm/closed_forms.hpp"

using namespace bamm;

namespace {

Arrangement exact_of(Group g, int r) { return *build_coxeter(g, r).exact; }

}  // namespace

// For (alpha, x) = sqrt(2) x with multiplicity one, a direct computation of
// (d^2 - (2/x) d - lambda^2) (a x lambda + b) e^{lambda x} forces b = -a.
TEST(BakerAkhiezer, RankOneClosedForm) {
  const auto a = exact_of(Group::A, 1);
  const auto phi = construct_berest(a);
  const Poly x = Poly::variable(1, Block::x, 0);
  const Poly l = Poly::variable(1, Block::lambda, 0);
  EXPECT_EQ(phi.poly, x * l * Scalar(2) - Poly::constant(1, Scalar(2)));
  EXPECT_EQ(value_at_origin(phi), Scalar(-2));
}

TEST(BakerAkhiezer, AxiomsHoldForSmallGroups) {
  std::vector<Arrangement> cases = {exact_of(Group::A, 2), exact_of(Group::B, 2), exact_of(Group::G, 2),
                                    build_deformed_a(1, 2).first};
  for (const auto& a : cases) {
    const auto phi = construct_berest(a);
    const auto r = check_axioms(phi, a);
    EXPECT_TRUE(r.all_pass()) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_FALSE(r.phi00_vanishes);
  }
}

TEST(BakerAkhiezer, HigherMultiplicity) {
  std::vector<RootVector> vs = {{{Scalar::sqrt_of(2)}, 2, 0}};
  const Arrangement a(1, vs);
  const auto phi = construct_berest(a);
  EXPECT_TRUE(check_axioms(phi, a).all_pass());
  EXPECT_EQ(phi.poly.degree(Block::x), 2u);
}

TEST(BakerAkhiezer, BrokenFunctionFailsAxioms) {
  const auto a = exact_of(Group::A, 1);
  auto phi = construct_berest(a);
  phi.poly = phi.poly + Poly::variable(1, Block::x, 0);
  EXPECT_FALSE(check_axioms(phi, a).all_pass());
}

TEST(BakerAkhiezer, TermBudget) {
  EXPECT_THROW(construct_berest(exact_of(Group::B, 3), 5), TermBudgetExceeded);
}

TEST(BakerAkhiezer, DiscriminantQuasiInvariant) {
  const auto a = exact_of(Group::A, 2);
  const Poly w = m_discriminant(a);
  EXPECT_EQ(w.degree(Block::x), 9u);
  for (const auto& v : a.vectors()) EXPECT_TRUE(quasi_invariant(w, v));
}

TEST(BilinearForm, UnitAndDiscriminantNorms) {
  for (auto [g, r] : std::vector<std::pair<Group, int>>{{Group::A, 1}, {Group::I, 4}}) {
    const auto sys = build_coxeter(g, r);
    const auto& a = *sys.exact;
    const Poly one = Poly::constant(a.dimension(), Scalar(1));
    const auto unit = bilinear_form(one, one, a);
    EXPECT_NEAR(unit.value.real(), 1.0, 1e-9);
    EXPECT_NEAR(unit.value.imag(), 0.0, 1e-9);
    const Poly w = m_discriminant(a);
    const auto ww = bilinear_form(w, w, a);
    const double expected = wm_norm(sys.datum, 1).value.real();
    EXPECT_NEAR(ww.value.real() / expected, 1.0, 1e-8) << sys.datum.label;
  }
}
