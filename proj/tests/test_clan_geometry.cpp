#include <gtest/gtest.h>

#include <random>

#include "ksorbits/clan_geometry.hpp"

using namespace ksorbits;

TEST(PairModel, A22Eigenspaces) {
  auto m = build_pair_model(PairKind::A(2, 2));
  EXPECT_EQ(m.plus_coords(), (std::vector<int>{0, 2}));
  EXPECT_EQ(m.minus_coords(), (std::vector<int>{1, 3}));
  EXPECT_EQ(identify_orbit(m, m.base_flag()).to_string(), "+-+-");
}

TEST(PairModel, C2BaseFlag) {
  auto m = build_pair_model(PairKind::C(2));
  EXPECT_EQ(identify_orbit(m, m.base_flag()).to_string(), "+-+-");
}

TEST(PairModel, RejectsNonQuasisplit) {
  EXPECT_THROW(build_pair_model(PairKind::A(3, 1)), DomainError);
}

TEST(PairModel, RootVectorsLieInAlgebra) {
  for (int n = 1; n <= 3; ++n) {
    auto m = build_pair_model(PairKind::C(n));
    for (int s = 1; s <= n; ++s)
      for (bool neg : {false, true}) EXPECT_TRUE(in_lie_algebra(m, root_vector(m, s, neg)));
  }
}

// The combinatorial table must describe the actual geometry of every
// representative, which makes identify(representative(c)) = c a real check.
TEST(Representatives, RoundTripExhaustive) {
  std::vector<PairKind> kinds;
  for (int n = 1; n <= 6; ++n) {
    kinds.push_back(PairKind::A((n + 1) / 2, n / 2));
    if (n % 2) kinds.push_back(PairKind::A(n / 2, (n + 1) / 2));
  }
  for (int n = 1; n <= 3; ++n) kinds.push_back(PairKind::C(n));
  for (const auto& k : kinds) {
    auto m = build_pair_model(k);
    for (const auto& c : m.clans()) {
      FlagRep f = representative_flag(m, c);
      EXPECT_EQ(invariant_table(m, f), combinatorial_table(c)) << to_string(k) << " " << c;
      EXPECT_EQ(identify_orbit(m, f), c) << to_string(k);
    }
  }
}

TEST(Representatives, A22Pair1122) {
  auto m = build_pair_model(PairKind::A(2, 2));
  auto f = representative_flag(m, m.parse_clan("1122"));
  QVector v = f.vector(0);
  EXPECT_EQ(v, (QVector{1, 1, 0, 0}));
}

TEST(Representatives, C2MixedIsotropicLine) {
  auto m = build_pair_model(PairKind::C(2));
  auto f = representative_flag(m, m.parse_clan("1+-1"));
  QVector v = f.vector(0);
  EXPECT_FALSE(is_zero(project_plus(m, v)));
  EXPECT_FALSE(is_zero(project_minus(m, v)));
}

TEST(Identify, GenericLineStartsWithPair) {
  auto m = build_pair_model(PairKind::A(2, 2));
  QMatrix cols = QMatrix::identity(4);
  cols(1, 0) = 1;  // v_1 = e_1 + e_2
  Clan c = identify_orbit(m, FlagRep{cols, std::nullopt});
  EXPECT_FALSE(c.is_sign(0));
}

TEST(Identify, RejectsBadFlags) {
  auto a = build_pair_model(PairKind::A(1, 1));
  QMatrix sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 1;
  EXPECT_THROW(identify_orbit(a, FlagRep{sing, std::nullopt}), DomainError);
  auto c = build_pair_model(PairKind::C(2));
  QMatrix cols = QMatrix::identity(4);
  cols.set_column(1, unit_vector(4, 3));  // e_1, e_4 pair nontrivially
  cols.set_column(3, unit_vector(4, 1));
  EXPECT_THROW(identify_orbit(c, FlagRep{cols, c.form()}), DomainError);
}

TEST(Epsilon, EmptySubsetIsBase) {
  auto m = build_pair_model(PairKind::A(2, 2));
  auto f = epsilon_flag(m, SimpleSubset(0, {1, 2, 3}));
  EXPECT_EQ(f.columns, m.base_flag().columns);
}

TEST(Epsilon, A22BoxedOpenOrbits) {
  auto m = build_pair_model(PairKind::A(2, 2));
  EXPECT_EQ(identify_orbit(m, epsilon_flag(m, SimpleSubset(7, {2, 1, 3}))).to_string(), "1+-1");
  EXPECT_EQ(identify_orbit(m, epsilon_flag(m, SimpleSubset(7, {1, 3, 2}))).to_string(), "1212");
}

TEST(Epsilon, CoefficientIndependence) {
  for (const auto& k : {PairKind::A(2, 2), PairKind::A(3, 2), PairKind::C(2), PairKind::C(3)}) {
    auto m = build_pair_model(k);
    const int r = m.rank();
    for (const auto& o : all_orderings(r))
      for (std::uint32_t mask = 0; mask <= full_mask(r); ++mask) {
        SimpleSubset s(mask, o);
        Clan base = identify_orbit(m, epsilon_flag(m, s));
        for (int seed = 0; seed < 5; ++seed) {
          std::mt19937_64 rng(1000 + seed);
          std::map<int, Rational> coeffs;
          for (int root = 1; root <= r; ++root) coeffs[root] = random_nonzero_rational(rng);
          ASSERT_EQ(identify_orbit(m, epsilon_flag(m, s, coeffs)), base) << to_string(k) << " " << s.to_string();
        }
      }
  }
}

TEST(Geometry, OrbitDimensionOfBaseAndOpen) {
  auto m = build_pair_model(PairKind::A(2, 2));
  EXPECT_EQ(orbit_dimension_geometric(m, m.base_flag()), 2);
  EXPECT_EQ(orbit_dimension_geometric(m, representative_flag(m, m.parse_clan("1221"))), 6);
  auto c = build_pair_model(PairKind::C(2));
  EXPECT_EQ(orbit_dimension_geometric(c, c.base_flag()), 1);
  EXPECT_EQ(orbit_dimension_geometric(c, representative_flag(c, c.parse_clan("1221"))), 4);
}
