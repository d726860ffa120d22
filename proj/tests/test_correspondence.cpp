#include <gtest/gtest.h>

#include "ksorbits/correspondence.hpp"

using namespace ksorbits;

namespace {

struct Fixture {
  SymmetricPairModel model;
  OrbitGraph graph;
  explicit Fixture(PairKind k) : model(build_pair_model(k)), graph(closure_order(model)) {}
};

std::set<std::string> image(const QSAssignment& qs) {
  std::set<std::string> out;
  for (const auto& c : qs.table) out.insert(c.to_string());
  return out;
}

}  // namespace

TEST(QS, A22ExamplesBothRoutes) {
  Fixture f(PairKind::A(2, 2));
  EXPECT_EQ(orbit_QS(f.model, f.graph, SimpleSubset::from_members({2, 3}, {2, 1, 3})).to_string(), "+1-1");
  EXPECT_EQ(orbit_QS(f.model, f.graph, SimpleSubset(7, {2, 1, 3})).to_string(), "1+-1");
  EXPECT_EQ(orbit_QS(f.model, f.graph, SimpleSubset(7, {1, 3, 2})).to_string(), "1212");
}

TEST(QS, A22BoxedSets) {
  Fixture f(PairKind::A(2, 2));
  const std::set<std::string> boxed{"+-+-", "+11-", "11+-", "+-11", "1+1-", "+1-1", "1122", "1+-1"};
  std::set<std::string> shadow = boxed;
  shadow.erase("1+-1");
  shadow.insert("1212");
  for (const auto& o : all_orderings(3)) {
    auto qs = qs_assignment(f.model, f.graph, o);
    EXPECT_EQ(image(qs), o.back() == 2 ? shadow : boxed) << to_string(o);
    EXPECT_EQ(qs.at(7).to_string(), o.back() == 2 ? "1212" : "1+-1");
  }
}

TEST(QS, C2Orderings) {
  Fixture f(PairKind::C(2));
  EXPECT_EQ(orbit_QS(f.model, f.graph, SimpleSubset(3, f.model.parse_ordering("β,α"))).to_string(), "1+-1");
  EXPECT_EQ(orbit_QS(f.model, f.graph, SimpleSubset(3, f.model.parse_ordering("α,β"))).to_string(), "1212");
}

TEST(QS, BaseOrbitForEmptySubset) {
  Fixture f(PairKind::A(3, 2));
  for (const auto& o : all_orderings(4))
    EXPECT_EQ(orbit_QS(f.model, f.graph, SimpleSubset(0, o)), identify_orbit(f.model, f.model.base_flag()));
}

TEST(Verify, A22AllOrderings) {
  Fixture f(PairKind::A(2, 2));
  for (const auto& o : all_orderings(3)) {
    auto rep = verify_correspondence(f.model, f.graph, o);
    EXPECT_TRUE(rep.passed()) << to_string(o);
    EXPECT_EQ(rep.dimension_checks, 8);
    EXPECT_EQ(rep.closure_checks, 64);
  }
}

TEST(Verify, C2BetaAlphaIncomparableSingletons) {
  Fixture f(PairKind::C(2));
  auto o = f.model.parse_ordering("β,α");
  auto qs = qs_assignment(f.model, f.graph, o);
  const int qa = f.graph.index_of(qs.at(1)), qb = f.graph.index_of(qs.at(2));
  EXPECT_FALSE(f.graph.in_closure(qa, qb));
  EXPECT_FALSE(f.graph.in_closure(qb, qa));
  EXPECT_TRUE(verify_correspondence(f.model, f.graph, o).passed());
}

TEST(Verify, C3ExtremeOrderings) {
  Fixture f(PairKind::C(3));
  for (const Ordering& o : {Ordering{1, 2, 3}, Ordering{3, 2, 1}}) {
    auto rep = verify_correspondence(f.model, f.graph, o);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.dimension_checks, 8);
  }
}

TEST(ComponentGroupsK, Rules) {
  auto a = build_pair_model(PairKind::A(2, 1));
  EXPECT_TRUE(ak_of_QS(a, SimpleSubset(3, {2, 1})).trivial());
  auto c = build_pair_model(PairKind::C(3));
  EXPECT_EQ(ak_of_QS(c, SimpleSubset::from_members({3}, {1, 2, 3})).order(), 2);
  EXPECT_EQ(ak_of_QS(c, SimpleSubset::from_members({2, 3}, {3, 2, 1})).order(), 2);
  EXPECT_EQ(ak_of_QS(c, SimpleSubset::from_members({2, 3}, {1, 2, 3})).order(), 1);
  EXPECT_EQ(ak_of_QS(c, SimpleSubset::from_members({1, 2}, {3, 2, 1})).order(), 1);
}

TEST(ComponentGroupsK, OutsideDomain) {
  Fixture f(PairKind::C(2));
  auto qs = qs_assignment(f.model, f.graph, f.model.parse_ordering("β,α"));
  EXPECT_THROW(ak_of_orbit(f.model, qs, f.model.parse_clan("1221")), DomainError);
}

TEST(Phi, TrivialToTrivialAndSp4Nontrivial) {
  Fixture f(PairKind::C(2));
  auto qs = qs_assignment(f.model, f.graph, f.model.parse_ordering("β,α"));
  auto phi = phi_map(f.model, qs);
  for (const auto& e : phi)
    if (e.source.character == 0) EXPECT_EQ(e.target.character, 0);
  auto top = phi_of(f.model, qs, {f.model.parse_clan("1+-1"), 1});
  EXPECT_EQ(top.target.subset.mask(), 3u);
  EXPECT_EQ(top.target.character, 1);
  auto base = phi_of(f.model, qs, {f.model.parse_clan("+-+-"), 0});
  EXPECT_TRUE(base.target.subset.empty());
  EXPECT_EQ(base.target.character, 0);
  EXPECT_THROW(phi_of(f.model, qs, {f.model.parse_clan("1221"), 0}), DomainError);
}

TEST(Surjectivity, Verdicts) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& o : all_orderings(n - 1)) EXPECT_TRUE(phi_surjectivity({Family::GL, n}, o).surjective);
  auto sl4 = phi_surjectivity({Family::SL, 4}, {1, 2, 3});
  EXPECT_FALSE(sl4.surjective);
  bool has_pi = false;
  for (const auto& w : sl4.witnesses) has_pi = has_pi || w.mask() == 7u;
  EXPECT_TRUE(has_pi);
  auto sp_ab = phi_surjectivity({Family::Sp, 2}, {1, 2});
  EXPECT_FALSE(sp_ab.surjective);
  ASSERT_EQ(sp_ab.witnesses.size(), 1u);
  EXPECT_EQ(sp_ab.witnesses[0].mask(), 3u);
  EXPECT_TRUE(phi_surjectivity({Family::Sp, 2}, {2, 1}).surjective);
  EXPECT_THROW(phi_surjectivity({Family::SpinB, 3}, {1, 2, 3}), NotImplementedError);
}
