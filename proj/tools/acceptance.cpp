// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: ksorbits_acceptance DATA_DIR

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>

#include "ksorbits/klv_hecke.hpp"

using namespace ksorbits;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Block {
  SymmetricPairModel model;
  OrbitGraph graph;
  explicit Block(PairKind k) : model(build_pair_model(k)), graph(closure_order(model)) {}
};

std::map<std::string, std::unique_ptr<Block>> g_blocks;

const Block& block(const PairKind& k) {
  auto& b = g_blocks[to_string(k)];
  if (!b) b = std::make_unique<Block>(k);
  return *b;
}

// Quasisplit A(p,q) with p + q <= max_total, p = ceil(n/2) or its mirror.
std::vector<PairKind> a_kinds(int max_total) {
  std::vector<PairKind> out;
  for (int n = 2; n <= max_total; ++n) {
    out.push_back(PairKind::A((n + 1) / 2, n / 2));
    if (n % 2) out.push_back(PairKind::A(n / 2, (n + 1) / 2));
  }
  return out;
}

std::vector<PairKind> c_kinds(int max_n) {
  std::vector<PairKind> out;
  for (int n = 1; n <= max_n; ++n) out.push_back(PairKind::C(n));
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  std::sort(out.begin(), out.end());
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failed = 0;

void criterion(int number, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++g_failed;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << " " << name << " (" << std::fixed
            << std::setprecision(2) << seconds_since(t0) << " s): " << o.detail << std::endl;
}

Outcome figure(const PairKind& k, std::size_t count, const std::string& golden) {
  const auto t0 = Clock::now();
  auto m = build_pair_model(k);
  auto g = closure_order(m);
  const double t = seconds_since(t0);
  const auto want = read_lines(golden);
  const auto got = edge_lines(g);
  Outcome o;
  o.pass = g.nodes.size() == count && got == want && t < 5.0;
  o.detail = std::to_string(g.nodes.size()) + " orbits, " + std::to_string(got.size()) + " edges, golden " +
             (got == want ? "match" : "MISMATCH") + ", build " + std::to_string(t) + " s";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " DATA_DIR\n";
    return 2;
  }
  const std::string data = argv[1];
  const auto start = Clock::now();

  criterion(1, "A(2,2) orbits and closure graph", [&] { return figure(PairKind::A(2, 2), 21, data + "/figure1_a22.txt"); });
  criterion(2, "C(2) orbits and closure graph", [&] { return figure(PairKind::C(2), 11, data + "/figure2_c2.txt"); });

  criterion(3, "Q_S identification", [&] {
    Outcome o;
    const auto& a = block(PairKind::A(2, 2));
    const std::set<std::string> boxed{"+-+-", "+11-", "11+-", "+-11", "1+1-", "+1-1", "1122", "1+-1"};
    int good = 0;
    for (const auto& ord : all_orderings(3)) {
      auto qs = qs_assignment(a.model, a.graph, ord);
      std::set<std::string> image;
      for (const auto& c : qs.table) image.insert(c.to_string());
      std::set<std::string> want = boxed;
      if (ord.back() == 2) {
        want.erase("1+-1");
        want.insert("1212");
      }
      const bool ok = image == want && std::all_of(qs.consistent.begin(), qs.consistent.end(), [](bool b) { return b; });
      good += ok;
      if (!ok) o.detail += "A(2,2) ordering " + to_string(ord) + " wrong; ";
    }
    const auto& c = block(PairKind::C(2));
    const std::string ba = orbit_QS(c.model, c.graph, SimpleSubset(3, c.model.parse_ordering("β,α"))).to_string();
    const std::string ab = orbit_QS(c.model, c.graph, SimpleSubset(3, c.model.parse_ordering("α,β"))).to_string();
    o.pass = good == 6 && ba == "1+-1" && ab == "1212";
    o.detail += "A(2,2) " + std::to_string(good) + "/6 orderings, C(2) (β,α) -> " + ba + ", (α,β) -> " + ab;
    return o;
  });

  // Criteria 4 and 5 share one sweep.
  std::vector<PairKind> sweep = a_kinds(6);
  for (const auto& k : c_kinds(3)) sweep.push_back(k);
  int dim_checks = 0, dim_fail = 0, clo_checks = 0, clo_fail = 0, other_fail = 0;
  std::string sweep_error;
  const auto t_sweep = Clock::now();
  try {
    for (const auto& k : sweep) {
      const auto& b = block(k);
      for (const auto& ord : all_orderings(b.model.rank())) {
        auto rep = verify_correspondence(b.model, b.graph, ord);
        dim_checks += rep.dimension_checks;
        dim_fail += rep.dimension_failures;
        clo_checks += rep.closure_checks;
        clo_fail += rep.closure_failures;
        other_fail += rep.consistency_failures + (rep.injective ? 0 : 1);
      }
    }
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  const double sweep_time = seconds_since(t_sweep);

  criterion(4, "dimension formula", [&] {
    Outcome o;
    o.pass = sweep_error.empty() && dim_fail == 0 && other_fail == 0 && dim_checks > 0 && sweep_time < 120.0;
    o.detail = std::to_string(dim_checks - dim_fail) + "/" + std::to_string(dim_checks) +
               " (A(p,q) p+q<=6, C(n) n<=3, all orderings), monoid/epsilon or injectivity failures " +
               std::to_string(other_fail) + ", sweep " + std::to_string(sweep_time) + " s" +
               (sweep_error.empty() ? "" : ", error: " + sweep_error);
    return o;
  });
  criterion(5, "closure iff inclusion", [&] {
    Outcome o;
    o.pass = sweep_error.empty() && clo_fail == 0 && clo_checks > 0;
    o.detail = std::to_string(clo_checks - clo_fail) + "/" + std::to_string(clo_checks) + " ordered pairs";
    return o;
  });

  std::map<std::string, KLVTable> klv;
  auto klv_of = [&](const PairKind& k) -> const KLVTable& {
    auto it = klv.find(to_string(k));
    if (it == klv.end()) it = klv.emplace(to_string(k), klv_polynomials(block(k).graph)).first;
    return it->second;
  };

  criterion(6, "KLV polynomials on Q_S pairs", [&] {
    Outcome o;
    int checks = 0, fails = 0;
    for (const auto& k : a_kinds(5)) {
      const auto& b = block(k);
      const auto& tab = klv_of(k);
      for (const auto& ord : all_orderings(b.model.rank())) {
        auto qs = qs_assignment(b.model, b.graph, ord);
        for (std::uint32_t s = 0; s < qs.table.size(); ++s)
          for (std::uint32_t t = 0; t < qs.table.size(); ++t) {
            const auto& P = tab.at(qs.at(t), qs.at(s));
            ++checks;
            if ((t & ~s) == 0 ? !(P == QPolynomial::constant(1)) : !P.is_zero()) ++fails;
          }
      }
    }
    const auto& b = block(PairKind::A(2, 2));
    const auto& tab = klv_of(PairKind::A(2, 2));
    auto P = [&](const char* x, const char* y) { return tab.at(b.model.parse_clan(x), b.model.parse_clan(y)); };
    const QPolynomial p1 = P("++--", "1+-1"), p2 = P("+--+", "1212"), p3 = P("-++-", "1212");
    const bool singular = p1.degree() >= 1 && p2.degree() >= 1 && p3.degree() >= 1;
    o.pass = fails == 0 && checks > 0 && singular;
    o.detail = std::to_string(checks - fails) + "/" + std::to_string(checks) + " Q_S pairs (p+q<=5); P(++--,1+-1) = " +
               p1.to_string() + ", P(+--+,1212) = " + p2.to_string() + ", P(-++-,1212) = " + p3.to_string();
    return o;
  });

  criterion(7, "restricted C matrix equals torus side", [&] {
    Outcome o;
    int runs = 0, passed = 0, entries = 0;
    for (const auto& k : a_kinds(5)) {
      const auto& b = block(k);
      for (const auto& ord : all_orderings(b.model.rank())) {
        auto rep = compare_with_torus(b.model, b.graph, klv_of(k), ord);
        ++runs;
        passed += rep.passed();
        entries += rep.entries;
      }
    }
    o.pass = runs > 0 && passed == runs;
    o.detail = std::to_string(passed) + "/" + std::to_string(runs) + " (pair, ordering) runs, " +
               std::to_string(entries) + " entries compared";
    return o;
  });

  criterion(8, "component groups and Phi surjectivity", [&] {
    Outcome o;
    std::vector<std::string> bad;
    for (int n = 1; n <= 6; ++n) {
      auto d = build_root_datum({Family::GL, n});
      for (const auto& s : all_subsets(d.rank, standard_ordering(d.rank)))
        if (!component_group_AT(d, s).trivial()) bad.push_back("GL" + std::to_string(n) + " " + s.to_string());
    }
    for (int n = 2; n <= 6; ++n) {
      auto d = build_root_datum({Family::SL, n});
      if (component_group_AT(d, SimpleSubset(full_mask(d.rank), standard_ordering(d.rank))) != FiniteAbelianGroup({n}))
        bad.push_back("SL" + std::to_string(n) + " Pi");
    }
    for (int n = 1; n <= 4; ++n) {
      auto d = build_root_datum({Family::Sp, n});
      for (const auto& s : all_subsets(d.rank, standard_ordering(d.rank)))
        if (component_group_AT(d, s) != (s.contains(n) ? FiniteAbelianGroup({2}) : FiniteAbelianGroup{}))
          bad.push_back("Sp" + std::to_string(n) + " " + s.to_string());
    }
    for (int n = 1; n <= 5; ++n)
      for (const auto& ord : all_orderings(n - 1))
        if (!phi_surjectivity({Family::GL, n}, ord).surjective) bad.push_back("Phi GL" + std::to_string(n));
    for (int n = 3; n <= 5; ++n)
      for (const auto& ord : all_orderings(n - 1))
        if (phi_surjectivity({Family::SL, n}, ord).surjective) bad.push_back("Phi SL" + std::to_string(n));
    if (!phi_surjectivity({Family::Sp, 1}, {1}).surjective) bad.push_back("Phi Sp1");
    for (int n = 2; n <= 4; ++n)
      for (const auto& ord : all_orderings(n)) {
        const bool beta_first = std::find(ord.begin(), ord.end(), n) < std::find(ord.begin(), ord.end(), n - 1);
        if (phi_surjectivity({Family::Sp, n}, ord).surjective != beta_first)
          bad.push_back("Phi Sp" + std::to_string(n) + " " + to_string(ord));
      }
    o.pass = bad.empty();
    o.detail = bad.empty() ? "GL trivial, SL(n) Pi = Z/n, Sp Z/2 iff β in S; Phi verdicts GL yes, SL(n>=3) no, "
                             "Sp iff β precedes α"
                           : "mismatches: " + std::to_string(bad.size()) + ", first " + bad.front();
    return o;
  });

  criterion(9, "structural properties", [&] {
    Outcome o;
    int fails = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
      if (fails++ == 0) first = what;
    };
    const QPolynomial q = QPolynomial::q(), one = QPolynomial::constant(1);
    int hecke_checks = 0;
    for (const auto& k : a_kinds(5)) {
      const auto& g = block(k).graph;
      for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
        const auto e = HeckeModuleElement::basis(x);
        for (int s = 1; s <= g.rank; ++s) {
          const auto t1 = hecke_operator(g, s, e);
          ++hecke_checks;
          if (!(hecke_operator(g, s, t1) == t1.scaled(q - one) + e.scaled(q))) fail("quadratic " + to_string(k));
          for (int t = s + 1; t <= g.rank; ++t) {
            ++hecke_checks;
            if (t == s + 1) {
              auto l = hecke_operator(g, s, hecke_operator(g, t, t1));
              auto r = hecke_operator(g, t, hecke_operator(g, s, hecke_operator(g, t, e)));
              if (!(l == r)) fail("braid " + to_string(k));
            } else if (!(hecke_operator(g, t, t1) == hecke_operator(g, s, hecke_operator(g, t, e)))) {
              fail("commutation " + to_string(k));
            }
          }
        }
      }
    }
    int classes = 0;
    for (const auto& k : sweep) {
      const auto& b = block(k);
      const auto& g = b.graph;
      for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x)
        for (int s = 1; s <= g.rank; ++s) {
          const auto& mem = g.saturation_members[g.slot(x, s)];
          ++classes;
          int open = 0;
          long long top = -1;
          for (int y : mem) top = std::max(top, g.dimension[y]);
          for (int y : mem) open += g.dimension[y] == top;
          if (mem.size() > 3 || open != 1 || g.dimension[g.m_action(x, s)] != top) fail("saturation " + g.nodes[x].to_string());
        }
      // Choice independence is asserted inside closure_order; a second seed
      // must reproduce the same graph.
      auto again = closure_order(b.model, 12345);
      if (again.below != g.below || again.weak_edges.size() != g.weak_edges.size()) fail("seed dependence " + to_string(k));
      for (const auto& c : b.model.clans())
        if (identify_orbit(b.model, representative_flag(b.model, c)) != c) fail("roundtrip " + c.to_string());
    }
    int klv_pairs = 0;
    for (const auto& k : a_kinds(5)) {
      const auto& g = block(k).graph;
      const auto& tab = klv_of(k);
      for (std::size_t a = 0; a < g.nodes.size(); ++a)
        for (std::size_t c = 0; c < g.nodes.size(); ++c) {
          if (!g.in_closure(a, c)) continue;
          ++klv_pairs;
          const auto& P = tab.P[a][c];
          if (!P.nonnegative() || P.coefficient(0) != 1) fail("klv " + g.nodes[a].to_string() + " " + g.nodes[c].to_string());
        }
    }
    o.pass = fails == 0;
    o.detail = std::to_string(hecke_checks) + " Hecke identities, " + std::to_string(classes) + " saturation classes, " +
               std::to_string(klv_pairs) + " KLV closure pairs, roundtrip over all sweep models" +
               (fails ? ", " + std::to_string(fails) + " failures, first: " + first : "");
    return o;
  });

  const double total = seconds_since(start);
  std::cout << (g_failed == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(g_failed)) << " (" << std::fixed
            << std::setprecision(2) << total << " s total)" << std::endl;
  return g_failed == 0 ? 0 : 1;
}
