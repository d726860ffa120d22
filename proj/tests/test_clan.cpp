#include <gtest/gtest.h>

#include <set>

#include "ksorbits/clan.hpp"

using namespace ksorbits;

TEST(Clan, ParseNormalizesLabels) {
  Clan c = Clan::parse(PairFamily::A, "2+-2");
  EXPECT_EQ(c.to_string(), "1+-1");
  EXPECT_EQ(c.partner(0), 3);
  EXPECT_EQ(c.partner(1), -1);
  Clan u = Clan::parse(PairFamily::A, "+\xE2\x88\x92+\xE2\x88\x92");
  EXPECT_EQ(u.to_string(), "+-+-");
  EXPECT_THROW(Clan::parse(PairFamily::A, "1+-"), UsageError);
  EXPECT_THROW(Clan::parse(PairFamily::A, "111"), UsageError);
  EXPECT_THROW(Clan::parse(PairFamily::A, "x"), UsageError);
}

TEST(Clan, KnownOrbitCounts) {
  EXPECT_EQ(enumerate_clans(PairKind::A(2, 2)).size(), 21u);
  EXPECT_EQ(enumerate_clans(PairKind::C(2)).size(), 11u);
  auto a11 = enumerate_clans(PairKind::A(1, 1));
  std::set<std::string> names;
  for (const auto& c : a11) names.insert(c.to_string());
  EXPECT_EQ(names, (std::set<std::string>{"+-", "-+", "11"}));
}

// Independent count: clans of signature (p, q) with k pairs are choices of k
// positions-pairs among n (a perfect matching on 2k chosen points) times a
// sign pattern on the rest: C(n, 2k) (2k-1)!! C(n-2k, p-k).
static long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(Clan, SignatureCountsMatchClosedForm) {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      if (p + q < 1) continue;
      const int n = p + q;
      long long expect = 0;
      for (int k = 0; k <= std::min(p, q); ++k) {
        long long dfact = 1;
        for (int t = 2 * k - 1; t > 1; t -= 2) dfact *= t;
        expect += binom(n, 2 * k) * dfact * binom(n - 2 * k, p - k);
      }
      EXPECT_EQ(static_cast<long long>(enumerate_clans(PairKind::A(p, q)).size()), expect) << p << "," << q;
    }
}

TEST(Clan, SymplecticClansAreSymmetric) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& c : enumerate_clans(PairKind::C(n))) {
      EXPECT_TRUE(is_symplectic_symmetric(c)) << c;
      EXPECT_NO_THROW(validate_clan(PairKind::C(n), c));
    }
  EXPECT_FALSE(is_symplectic_symmetric(Clan::parse(PairFamily::C, "++--")) == false);
  EXPECT_FALSE(is_symplectic_symmetric(Clan::parse(PairFamily::C, "+-+-")) == false);
  EXPECT_FALSE(is_symplectic_symmetric(Clan::parse(PairFamily::C, "+--+")));
  EXPECT_FALSE(is_symplectic_symmetric(Clan::parse(PairFamily::C, "1+1-")));
}

TEST(Clan, PairKindParsing) {
  EXPECT_EQ(parse_pair_kind("A:2,2"), PairKind::A(2, 2));
  EXPECT_EQ(parse_pair_kind("C:3"), PairKind::C(3));
  EXPECT_THROW(parse_pair_kind("B:2"), NotImplementedError);
  EXPECT_THROW(parse_pair_kind("A:2"), UsageError);
}
