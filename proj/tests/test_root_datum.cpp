#include <gtest/gtest.h>

#include <set>

#include "ksorbits/root_datum.hpp"

using namespace ksorbits;

namespace {

// Brute force: all e_i - e_j (i != j) with i < j are the positive roots of GL(n).
long long gl_positive_roots_brute(int n) {
  long long c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ++c;
  return c;
}

// Type C_n roots in Z^n: ±e_i ± e_j (i<j) and ±2e_i; positive ones counted.
std::set<std::vector<int>> type_c_positive_roots(int n) {
  std::set<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      for (int s : {1, -1}) {
        std::vector<int> v(n, 0);
        v[i] = 1;
        v[j] = s;
        out.insert(v);
      }
    std::vector<int> v(n, 0);
    v[i] = 2;
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(RootDatum, GL4Counts) {
  auto d = build_root_datum(parse_group_kind("GL:4"));
  EXPECT_EQ(d.rank, 3);
  EXPECT_EQ(static_cast<long long>(d.positive_root_count()), gl_positive_roots_brute(4));
}

TEST(RootDatum, Sp4Counts) {
  auto d = build_root_datum(parse_group_kind("Sp:2"));
  EXPECT_EQ(d.rank, 2);
  EXPECT_EQ(d.positive_root_count(), type_c_positive_roots(2).size());
  // Every computed positive root lands on a brute-force root in Z^2.
  auto brute = type_c_positive_roots(2);
  for (const auto& c : d.positive_root_coefficients) {
    auto v = d.root_vector(c);
    EXPECT_TRUE(brute.count(std::vector<int>(v.begin(), v.end())));
  }
}

TEST(RootDatum, RhoCheckPairsToOneOnSimpleRoots) {
  for (const char* k : {"GL:1", "GL:5", "SL:2", "SL:4", "Sp:1", "Sp:3", "SpinB:3", "SpinD:4", "SOB:2", "SOD:5"}) {
    auto d = build_root_datum(parse_group_kind(k));
    for (const auto& a : d.simple_roots) EXPECT_EQ(d.pair_with_rho_check(a), 1) << k;
    EXPECT_EQ(d.cartan_matrix(), standard_cartan_matrix(cartan_type(d.kind), d.rank)) << k;
  }
}

TEST(RootDatum, GradingDimensions) {
  auto gl4 = build_root_datum(parse_group_kind("GL:4"));
  EXPECT_EQ(grading_dimension(gl4, -1), 3);
  EXPECT_EQ(grading_dimension(gl4, 0), 4);
  auto sp4 = build_root_datum(parse_group_kind("Sp:2"));
  // Type C2 roots of height -2: alpha+beta only... and 2alpha+beta has height 3.
  long long brute = 0;
  for (const auto& c : sp4.positive_root_coefficients)
    if (RootDatum::height(c) == 2) ++brute;
  EXPECT_EQ(grading_dimension(sp4, -2), brute);
  EXPECT_EQ(grading_dimension(sp4, -2), 1);
}

TEST(RootDatum, GradingSumsToLieAlgebraDimension) {
  for (const char* k : {"GL:4", "SL:3", "Sp:3", "SpinB:3", "SOD:4"}) {
    auto d = build_root_datum(parse_group_kind(k));
    long long total = 0;
    for (long long j = -20; j <= 20; ++j) total += grading_dimension(d, j);
    EXPECT_EQ(total, lie_algebra_dimension(d)) << k;
  }
}

TEST(RootDatum, SL4SimpleRootsHaveSmithFactorFour) {
  auto d = build_root_datum(parse_group_kind("SL:4"));
  auto sf = smith_normal_form(to_zmatrix(d.simple_roots, d.lattice_rank));
  EXPECT_EQ(sf.diagonal(), (std::vector<Integer>{1, 1, 4}));
}

TEST(RootDatum, RejectsUnsupported) {
  EXPECT_THROW(parse_group_kind("E:8"), Error);
  EXPECT_THROW(parse_group_kind("SpinB:1"), Error);
  EXPECT_THROW(parse_group_kind("GL:0"), Error);
}

TEST(FiniteAbelianGroup, Basics) {
  FiniteAbelianGroup g({1, 2, 4});
  EXPECT_EQ(g.order(), 8);
  EXPECT_EQ(g.to_string(), "Z/2 x Z/4");
  EXPECT_FALSE(g.is_elementary_2_group());
  EXPECT_EQ(g.character_tuple(0), (std::vector<long long>{0, 0}));
  EXPECT_EQ(g.character_tuple(5), (std::vector<long long>{1, 2}));
  EXPECT_THROW(FiniteAbelianGroup({2, 3}), UsageError);
  EXPECT_TRUE(FiniteAbelianGroup(std::vector<long long>{}).trivial());
}
