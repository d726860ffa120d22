#include <gtest/gtest.h>

#include "ksorbits/klv_hecke.hpp"

using namespace ksorbits;

namespace {

struct Block {
  SymmetricPairModel model;
  OrbitGraph graph;
  KLVTable klv;
  explicit Block(PairKind k) : model(build_pair_model(k)), graph(closure_order(model)), klv(klv_polynomials(graph)) {}
};

const Block& block(int p, int q) {
  static std::map<std::pair<int, int>, std::unique_ptr<Block>> cache;
  auto& b = cache[{p, q}];
  if (!b) b = std::make_unique<Block>(PairKind::A(p, q));
  return *b;
}

HeckeModuleElement apply(const OrbitGraph& g, const std::vector<int>& word, HeckeModuleElement e) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) e = hecke_operator(g, *it, e);
  return e;
}

const std::vector<std::pair<int, int>> kSmall{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {2, 3}};

}  // namespace

TEST(Polynomials, Arithmetic) {
  QPolynomial a({1, 1});
  EXPECT_EQ((a * a).coefficients(), (std::vector<long long>{1, 2, 1}));
  EXPECT_EQ((a - a).coefficients(), std::vector<long long>{});
  EXPECT_EQ(QPolynomial({1, 0, 0}).degree(), 0);
  EXPECT_EQ((a * a).to_string(), "1+2q+q^2");
  EXPECT_EQ(QPolynomial({0, -1}).to_string(), "-q");
  EXPECT_EQ(LaurentPoly::monomial(3, 2).bar(), LaurentPoly::monomial(-3, 2));
}

TEST(Hecke, QuadraticRelation) {
  for (auto [p, q] : kSmall) {
    const auto& g = block(p, q).graph;
    const QPolynomial qq = QPolynomial::q(), one = QPolynomial::constant(1);
    for (int s = 1; s <= g.rank; ++s)
      for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
        auto e = HeckeModuleElement::basis(x);
        auto t1 = hecke_operator(g, s, e);
        auto t2 = hecke_operator(g, s, t1);
        // T^2 = (q-1)T + q
        EXPECT_EQ(t2, t1.scaled(qq - one) + e.scaled(qq)) << g.nodes[x].to_string() << " s=" << s;
      }
  }
}

TEST(Hecke, BraidRelations) {
  for (auto [p, q] : kSmall) {
    const auto& g = block(p, q).graph;
    for (int s = 1; s <= g.rank; ++s)
      for (int t = s + 1; t <= g.rank; ++t)
        for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
          auto e = HeckeModuleElement::basis(x);
          if (t == s + 1) EXPECT_EQ(apply(g, {s, t, s}, e), apply(g, {t, s, t}, e));
          else EXPECT_EQ(apply(g, {s, t}, e), apply(g, {t, s}, e));
        }
  }
}

TEST(Hecke, CaseTableExamples) {
  const auto& b = block(2, 2);
  const auto& g = b.graph;
  // Equal signs at positions 1,2: compact imaginary.
  const int pp = g.index_of(b.model.parse_clan("++--"));
  EXPECT_EQ(hecke_operator(g, 1, HeckeModuleElement::basis(pp)), HeckeModuleElement::basis(pp).scaled(QPolynomial::q()));
  const int base = g.index_of(b.model.parse_clan("+-+-"));
  auto img = hecke_operator(g, 1, HeckeModuleElement::basis(base));
  EXPECT_EQ(img.terms.size(), 2u);
  EXPECT_TRUE(img.terms.count(g.index_of(b.model.parse_clan("-++-"))));
  EXPECT_TRUE(img.terms.count(g.index_of(b.model.parse_clan("11+-"))));
}

TEST(Hecke, FamilyCRejected) {
  auto m = build_pair_model(PairKind::C(2));
  auto g = closure_order(m);
  EXPECT_THROW(hecke_operator(g, 1, HeckeModuleElement::basis(0)), NotImplementedError);
  EXPECT_THROW(klv_polynomials(g), NotImplementedError);
}

TEST(KLV, StructuralProperties) {
  for (auto [p, q] : kSmall) {
    const auto& b = block(p, q);
    const auto& g = b.graph;
    const int n = static_cast<int>(g.nodes.size());
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const auto& P = b.klv.P[a][c];
        if (a == c) {
          EXPECT_EQ(P, QPolynomial::constant(1));
          continue;
        }
        EXPECT_EQ(P.is_zero(), !g.in_closure(a, c)) << g.nodes[a].to_string() << " " << g.nodes[c].to_string();
        if (P.is_zero()) continue;
        EXPECT_TRUE(P.nonnegative());
        EXPECT_EQ(P.coefficient(0), 1);
        EXPECT_LE(2 * P.degree(), g.length[c] - g.length[a] - 1);
      }
  }
}

TEST(KLV, SixDimensionalBlock) {
  const auto& b = block(3, 3);
  const auto& g = b.graph;
  const QPolynomial qq = QPolynomial::q(), one = QPolynomial::constant(1);
  for (int s = 1; s <= g.rank; ++s)
    for (int x = 0; x < static_cast<int>(g.nodes.size()); x += 7) {
      auto e = HeckeModuleElement::basis(x);
      auto t1 = hecke_operator(g, s, e);
      EXPECT_EQ(hecke_operator(g, s, t1), t1.scaled(qq - one) + e.scaled(qq));
    }
  for (std::size_t a = 0; a < g.nodes.size(); ++a)
    for (std::size_t c = 0; c < g.nodes.size(); ++c) {
      EXPECT_TRUE(b.klv.P[a][c].nonnegative());
      EXPECT_EQ(b.klv.P[a][c].is_zero(), !g.in_closure(a, c));
    }
  EXPECT_TRUE(compare_with_torus(b.model, g, b.klv, {1, 2, 3, 4, 5}).passed());
  EXPECT_TRUE(compare_with_torus(b.model, g, b.klv, {3, 5, 1, 4, 2}).passed());
}

TEST(KLV, TrivialOnQSPairsEveryOrdering) {
  const auto& b = block(2, 2);
  for (const auto& o : all_orderings(3)) {
    auto qs = qs_assignment(b.model, b.graph, o);
    for (std::uint32_t s = 0; s < 8; ++s)
      for (std::uint32_t t = 0; t < 8; ++t)
        if ((t & ~s) == 0) EXPECT_EQ(b.klv.at(qs.at(t), qs.at(s)), QPolynomial::constant(1));
  }
}

TEST(KLV, SingularPairsA22) {
  const auto& b = block(2, 2);
  auto P = [&](const char* x, const char* y) { return b.klv.at(b.model.parse_clan(x), b.model.parse_clan(y)); };
  EXPECT_EQ(P("++--", "1+-1"), QPolynomial({1, 1}));
  EXPECT_EQ(P("+--+", "1212"), QPolynomial({1, 1}));
  EXPECT_EQ(P("-++-", "1212"), QPolynomial({1, 1}));
  EXPECT_GE(c_matrix_K(b.graph, b.klv).at(b.graph.index_of(b.model.parse_clan("++--")),
                                           b.graph.index_of(b.model.parse_clan("1+-1"))),
            2);
}

TEST(CMatrix, Unitriangular) {
  const auto& b = block(2, 2);
  EXPECT_TRUE(c_matrix_K(b.graph, b.klv).is_unitriangular());
}

TEST(CMatrix, RestrictedIndependentOfOrdering) {
  const auto& b = block(3, 2);
  std::optional<std::vector<std::vector<long long>>> first;
  for (const auto& o : all_orderings(4)) {
    auto qs = qs_assignment(b.model, b.graph, o);
    auto c = c_matrix_K(b.graph, b.klv, &qs);
    if (!first) first = c.entries;
    else EXPECT_EQ(c.entries, *first);
  }
}

TEST(Comparison, A22SpecifiedOrdering) {
  const auto& b = block(2, 2);
  auto rep = compare_with_torus(b.model, b.graph, b.klv, {2, 1, 3});
  EXPECT_EQ(rep.entries, 64);
  EXPECT_TRUE(rep.passed());
}

TEST(Comparison, A11) {
  const auto& b = block(1, 1);
  auto rep = compare_with_torus(b.model, b.graph, b.klv, {1});
  EXPECT_EQ(rep.entries, 4);
  EXPECT_TRUE(rep.passed());
}

TEST(Comparison, A32AllOrderings) {
  const auto& b = block(3, 2);
  for (const auto& o : all_orderings(4)) EXPECT_TRUE(compare_with_torus(b.model, b.graph, b.klv, o).passed());
}

TEST(Export, Csv) {
  const auto& b = block(1, 1);
  auto csv = klv_csv(b.klv);
  EXPECT_NE(csv.find("psi,gamma,polynomial,coefficients"), std::string::npos);
  EXPECT_NE(csv.find("11,11,1,1"), std::string::npos);
}

// Independent check: build the bar involution from T_s^{-1} and the closed
// orbits, then require every C_delta assembled from the table to be fixed by
// it. Bar invariance plus the degree bound determine the P uniquely.
namespace {

using VElt = std::vector<LaurentPoly>;  // tau basis, coefficients in v

VElt act(const OrbitGraph& g, int s, const VElt& e) {
  VElt r(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (e[x].is_zero()) continue;
    for (const auto& [y, f] : hecke_basis_action(g, s, static_cast<int>(x)).terms)
      r[y] += e[x] * LaurentPoly::from_q(f, 0);
  }
  return r;
}

VElt act_inverse(const OrbitGraph& g, int s, const VElt& e) {
  // T^{-1} = q^{-1} T - (1 - q^{-1})
  VElt t = act(g, s, e), r(e.size());
  for (std::size_t x = 0; x < e.size(); ++x)
    r[x] = t[x] * LaurentPoly::monomial(-2) - e[x] * (LaurentPoly::monomial(0) - LaurentPoly::monomial(-2));
  return r;
}

std::vector<VElt> bar_images(const OrbitGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.length[a] < g.length[b]; });
  std::vector<VElt> bar(n);
  auto bar_of = [&](const VElt& e) {
    VElt r(n);
    for (int x = 0; x < n; ++x)
      if (!e[x].is_zero())
        for (int y = 0; y < n; ++y) r[y] += e[x].bar() * bar[x][y];
    return r;
  };
  for (int d : order) {
    if (g.length[d] == 0) {
      bar[d].assign(n, {});
      bar[d][d] = LaurentPoly::monomial(0);
      continue;
    }
    std::optional<VElt> found;
    for (int s = 1; s <= g.rank; ++s) {
      const RootType t = g.type(d, s);
      if (t != RootType::ComplexDescent && t != RootType::Real) continue;
      for (int gam : g.saturation_members[g.slot(d, s)]) {
        if (gam == d) continue;
        // tau_d = T_s tau_gam - (the other terms of T_s tau_gam)
        VElt base(n);
        base[gam] = LaurentPoly::monomial(0);
        VElt img = act(g, s, base);
        VElt rest = img;
        rest[d] = LaurentPoly{};
        VElt candidate = act_inverse(g, s, bar_of(base));
        VElt sub = bar_of(rest);
        for (int y = 0; y < n; ++y) candidate[y] = candidate[y] - sub[y];
        if (!found) found = candidate;
        else EXPECT_EQ(*found, candidate) << "bar involution depends on the descent";
      }
    }
    bar[d] = *found;
  }
  return bar;
}

}  // namespace

TEST(KLV, SelfDualUnderIndependentBar) {
  for (auto [p, q] : kSmall) {
    const auto& b = block(p, q);
    const auto& g = b.graph;
    const int n = static_cast<int>(g.nodes.size());
    auto bar = bar_images(g);
    for (int d = 0; d < n; ++d) {
      VElt c(n), cb(n);
      for (int x = 0; x < n; ++x) c[x] = LaurentPoly::from_q(b.klv.P[x][d], -g.length[d]);
      for (int x = 0; x < n; ++x)
        if (!c[x].is_zero())
          for (int y = 0; y < n; ++y) cb[y] += c[x].bar() * bar[x][y];
      EXPECT_EQ(c, cb) << "A(" << p << "," << q << ") " << g.nodes[d].to_string();
    }
  }
}
