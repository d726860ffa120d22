#include <gtest/gtest.h>

#include "ksorbits/torus_orbits.hpp"

using namespace ksorbits;

namespace {

SimpleSubset subset(std::vector<int> members, int rank) {
  return SimpleSubset::from_members(members, standard_ordering(rank));
}

}  // namespace

TEST(TorusOrbits, Dimensions) {
  EXPECT_EQ(torus_orbit_dimension(subset({}, 3)), 0);
  EXPECT_EQ(torus_orbit_dimension(subset({1, 2, 3}, 3)), 3);
  EXPECT_EQ(torus_orbit_dimension(subset({2}, 2)), 1);
}

TEST(TorusOrbits, ClosureIsInclusion) {
  EXPECT_TRUE(torus_closure_leq(subset({1}, 3), subset({1, 2}, 3)));
  EXPECT_FALSE(torus_closure_leq(subset({1}, 3), subset({2}, 3)));
  for (std::uint32_t m = 0; m < 8; ++m) EXPECT_TRUE(torus_closure_leq(subset({}, 3), SimpleSubset(m, {1, 2, 3})));
}

TEST(ComponentGroups, SLnFullSubsetIsCyclicOfOrderN) {
  for (int n = 2; n <= 6; ++n) {
    auto d = build_root_datum(GroupKind{Family::SL, n});
    auto g = component_group_AT(d, SimpleSubset(full_mask(n - 1), standard_ordering(n - 1)));
    EXPECT_EQ(g.invariant_factors(), (std::vector<long long>{n})) << n;
  }
}

TEST(ComponentGroups, SpHasZ2ExactlyWhenBetaInS) {
  for (int n = 1; n <= 4; ++n) {
    auto d = build_root_datum(GroupKind{Family::Sp, n});
    for (const auto& s : all_subsets(n, standard_ordering(n))) {
      auto g = component_group_AT(d, s);
      EXPECT_EQ(g.order(), s.contains(n) ? 2 : 1) << n << " " << s.to_string();
    }
  }
}

TEST(ComponentGroups, GLAlwaysTrivial) {
  for (int n = 1; n <= 6; ++n) {
    auto d = build_root_datum(GroupKind{Family::GL, n});
    for (const auto& s : all_subsets(n - 1, standard_ordering(n - 1))) EXPECT_TRUE(component_group_AT(d, s).trivial());
  }
}

TEST(ComponentGroups, EmptySubsetTrivialAndSLDivisibility) {
  for (const char* k : {"GL:3", "SL:4", "Sp:3", "SpinB:3", "SpinD:4", "SOB:3", "SOD:4"}) {
    auto d = build_root_datum(parse_group_kind(k));
    EXPECT_TRUE(component_group_AT(d, SimpleSubset(0, standard_ordering(d.rank))).trivial()) << k;
  }
  for (int n = 2; n <= 6; ++n) {
    auto d = build_root_datum(GroupKind{Family::SL, n});
    const long long top = component_group_AT(d, SimpleSubset(full_mask(n - 1), standard_ordering(n - 1))).order();
    for (const auto& s : all_subsets(n - 1, standard_ordering(n - 1)))
      EXPECT_EQ(top % component_group_AT(d, s).order(), 0);
  }
}

TEST(Parameters, Counts) {
  EXPECT_EQ(xi_T(build_root_datum(GroupKind{Family::GL, 4})).size(), 8u);
  auto sl2 = xi_T(build_root_datum(GroupKind{Family::SL, 2}));
  ASSERT_EQ(sl2.size(), 3u);
  EXPECT_EQ(sl2[2].character, 1);
  EXPECT_EQ(xi_T(build_root_datum(GroupKind{Family::Sp, 2})).size(), 6u);
}

TEST(TorusMatrix, InclusionZeta) {
  auto c = c_matrix_T_trivial(3);
  ASSERT_EQ(c.size(), 8u);
  EXPECT_TRUE(c.is_unitriangular());
  // {1} = mask 1, Pi = mask 7, {2} = mask 2
  EXPECT_EQ(c.at(1, 7), 1);
  EXPECT_EQ(c.at(1, 2), 0);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c.at(i, i), 1);
}
