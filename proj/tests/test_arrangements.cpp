#include <gtest/gtest.h>

#include "bamm/arrangement.hpp"

using namespace bamm;

namespace {

struct TableCase {
  Group g;
  int rank;
  std::uint64_t order;
  int positive_roots;
};

}  // namespace

TEST(Coxeter, DegreeTablesMatchRootCounts) {
  const std::vector<TableCase> cases = {
      {Group::A, 1, 2, 1},       {Group::A, 3, 24, 6},      {Group::B, 3, 48, 9},  {Group::C, 3, 48, 9},
      {Group::D, 4, 192, 12},    {Group::E, 6, 51840, 36},  {Group::E, 7, 2903040, 63},
      {Group::E, 8, 696729600, 120}, {Group::F, 4, 1152, 24}, {Group::G, 2, 12, 6},
      {Group::H, 3, 120, 15},    {Group::H, 4, 14400, 60},  {Group::I, 5, 10, 5}};
  for (const auto& c : cases) {
    const auto sys = build_coxeter(c.g, c.rank);
    EXPECT_TRUE(sys.datum.consistent()) << sys.datum.label;
    EXPECT_EQ(sys.datum.order, c.order) << sys.datum.label;
    EXPECT_EQ(sys.datum.positive_roots, c.positive_roots) << sys.datum.label;
    EXPECT_EQ(static_cast<int>(sys.numeric.size()), c.positive_roots) << sys.datum.label;
  }
}

TEST(Coxeter, RootsHaveSquaredLengthTwo) {
  for (auto [g, r] : std::vector<std::pair<Group, int>>{{Group::A, 2}, {Group::B, 2}, {Group::F, 4}, {Group::H, 3}}) {
    const auto sys = build_coxeter(g, r);
    for (const auto& v : sys.numeric.vectors()) EXPECT_NEAR(detail::dot(v.coords, v.coords), 2.0, 1e-12);
  }
}

TEST(Coxeter, ParseGroupLabels) {
  EXPECT_EQ(parse_group("A2"), std::make_pair(Group::A, 2));
  EXPECT_EQ(parse_group("I2(7)"), std::make_pair(Group::I, 7));
  EXPECT_EQ(parse_group("e8"), std::make_pair(Group::E, 8));
  EXPECT_THROW(parse_group("Z3"), UsageError);
  EXPECT_THROW(parse_group("A"), UsageError);
}

TEST(Arrangement, RejectsCollinearAndZeroVectors) {
  std::vector<RootVector> vs = {{{Scalar(1), Scalar(0)}, 1, 0}, {{Scalar(-2), Scalar(0)}, 1, 0}};
  EXPECT_THROW(Arrangement(2, vs), InvalidArrangement);
  std::vector<RootVector> zero = {{{Scalar(0), Scalar(0)}, 1, 0}};
  EXPECT_THROW(Arrangement(2, zero), InvalidArrangement);
}

TEST(Arrangement, DeformedFamilies) {
  const auto [a, d] = build_deformed_a(2, 3);
  EXPECT_EQ(a.dimension(), 3u);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.radicand(), 3);
  const auto [c, dc] = build_deformed_c(1, 1, 0);
  EXPECT_EQ(c.dimension(), 2u);
  EXPECT_GE(c.size(), 3u);
}

TEST(Shift, ChamberShiftsAreRegular) {
  const auto sys = build_coxeter(Group::A, 3);
  for (auto strat : {ShiftStrategy::positive_chamber, ShiftStrategy::negative_chamber}) {
    const auto spec = regular_shift(sys.numeric, strat, {}, 2.0);
    EXPECT_NEAR(spec.margin, 2.0, 1e-9);
    EXPECT_NEAR(shift_margin(sys.numeric, spec.xi), spec.margin, 1e-12);
    const double sign = strat == ShiftStrategy::positive_chamber ? 1.0 : -1.0;
    for (const auto& v : sys.numeric.vectors()) EXPECT_GT(sign * detail::dot(v.coords, spec.xi), 0.0);
  }
}

TEST(Shift, GivenShiftOnHyperplaneIsRejected) {
  const auto sys = build_coxeter(Group::A, 1);
  const std::vector<double> zero = {0.0};
  EXPECT_THROW(regular_shift(sys.numeric, ShiftStrategy::given, zero), NotRegular);
}

TEST(Shift, BoundedShiftCapsTheNorm) {
  const auto sys = build_coxeter(Group::I, 8);
  const auto spec = bounded_shift(sys.numeric, ShiftStrategy::positive_chamber, 2.5, 4.0);
  EXPECT_NEAR(detail::norm(spec.xi), 4.0, 1e-12);
  EXPECT_GT(spec.margin, 0.0);
}

TEST(Shift, OrderedShift) {
  const auto spec = ordered_shift(2, 2, 1.0, 0.5);
  EXPECT_TRUE(is_ordered_shift(spec, 2, 2));
  ContourSpec bad = spec;
  std::swap(bad.xi[0], bad.xi[1]);
  EXPECT_FALSE(is_ordered_shift(bad, 2, 2));
}

TEST(Frame, SpanBasisOfAnInRnPlusOne) {
  const auto sys = build_coxeter(Group::A, 2);
  const auto b = sys.numeric.span_basis();
  EXPECT_EQ(b.cols(), 2);
  EXPECT_EQ(b.rows(), 3);
  for (Eigen::Index j = 0; j < b.cols(); ++j) EXPECT_NEAR(b.col(j).sum(), 0.0, 1e-12);
}
