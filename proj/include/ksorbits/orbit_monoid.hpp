#pragma once

// P_s-saturations of K-orbits, the monoid action m(s), simple-root types,
// lengths, and the closure order, all computed from the flag geometry.

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ksorbits/clan_geometry.hpp"

namespace ksorbits {

enum class RootType { CompactImaginary, NoncompactImaginary, ComplexAscent, ComplexDescent, Real };

inline std::string to_string(RootType t) {
  switch (t) {
    case RootType::CompactImaginary: return "compact-imaginary";
    case RootType::NoncompactImaginary: return "noncompact-imaginary";
    case RootType::ComplexAscent: return "complex-ascent";
    case RootType::ComplexDescent: return "complex-descent";
    case RootType::Real: return "real";
  }
  return "?";
}

inline bool is_descent(RootType t) { return t == RootType::ComplexDescent || t == RootType::Real; }
inline bool is_ascent(RootType t) { return t == RootType::ComplexAscent || t == RootType::NoncompactImaginary; }

// Orbits meeting P_s·Q, sorted, and the dense one among them.
struct Saturation {
  std::vector<Clan> members;
  Clan open;
  bool contains(const Clan& c) const { return std::binary_search(members.begin(), members.end(), c); }
};

// Root labels as printed in figures: family C(n) calls alpha_n "β" and, for
// n = 2, alpha_1 "α".
inline std::string root_label(const PairKind& k, int s) {
  if (k.family == PairFamily::C) {
    if (s == k.rank()) return "β";
    if (k.rank() == 2 && s == 1) return "α";
  }
  return std::to_string(s);
}

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, const Clan& c, int s) {
  std::uint64_t h = seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(s) * 0xBF58476D1CE4E5B9ull;
  for (int x : c.symbols()) h = (h ^ static_cast<std::uint64_t>(x + 7)) * 0x100000001B3ull;
  return h;
}

// Pencil lines (a : b), meaning a*v_pos + b*v_{pos+1} mod F_pos, normalized
// so the first nonzero coordinate is 1.
using PencilPoint = std::pair<Rational, Rational>;

inline PencilPoint normalize_point(Rational a, Rational b) {
  if (a != 0) return {1, b / a};
  return {0, 1};
}

// Lines of the pencil lying in L + F_pos, when there is exactly one.
inline std::optional<PencilPoint> pencil_meet(const std::vector<QVector>& lbasis, const std::vector<QVector>& low,
                                              const QVector& v1, const QVector& v2, int n) {
  SpanBuilder b(n);
  b.add_all(low);
  b.add_all(lbasis);
  QVector r1 = b.reduce(v1), r2 = b.reduce(v2);
  const bool z1 = is_zero(r1), z2 = is_zero(r2);
  if (z1 && z2) return std::nullopt;
  if (z1) return PencilPoint{1, 0};
  if (z2) return PencilPoint{0, 1};
  // a r1 + b r2 = 0 has a nonzero solution iff r1, r2 are proportional.
  std::size_t k = 0;
  while (r1[k] == 0) ++k;
  if (r2[k] == 0) return std::nullopt;
  const Rational t = r2[k] / r1[k];
  for (std::size_t i = 0; i < r1.size(); ++i)
    if (r2[i] != t * r1[i]) return std::nullopt;
  // r2 = t r1, so t*v1 - v2 lies in the span.
  return normalize_point(t, -1);
}

inline std::vector<QVector> perp(const QMatrix& form, const std::vector<QVector>& basis, int n) {
  if (basis.empty()) {
    std::vector<QVector> all;
    for (int i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    return all;
  }
  QMatrix eq(basis.size(), n);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (int c = 0; c < n; ++c) {
      Rational s = 0;
      for (int r = 0; r < n; ++r)
        if (basis[a][r] != 0) s += basis[a][r] * form(r, c);
      eq(a, c) = s;
    }
  return nullspace(eq);
}

// Preimage of U under the projection onto V_keep along the other eigenspace:
// (U ∩ V_keep) + V_other.
inline std::vector<QVector> projection_preimage(const SymmetricPairModel& m, const std::vector<QVector>& u,
                                                bool keep_plus) {
  const int n = m.ambient();
  const auto& keep = keep_plus ? m.plus_coords() : m.minus_coords();
  const auto& other = keep_plus ? m.minus_coords() : m.plus_coords();
  std::vector<QVector> out = intersect(u, coordinate_basis(n, keep), n);
  for (int i : other) out.push_back(unit_vector(n, i));
  return out;
}

}  // namespace detail

// Orbits met by the rational lines of the pencil at s through the
// representative of c: the two coordinate lines, their sum, two seeded random
// lines, and every line cut out by a subspace that the orbit invariants are
// sensitive to. The two random lines must agree; their orbit is the dense
// one. Special lines need not be rational (in C(3) a pencil can meet the
// lower orbit in the roots of a^2 + b^2 = 0), so for the dense orbit itself
// this can miss members; saturation() below completes it.
inline Saturation pencil_orbits(const SymmetricPairModel& m, const Clan& c, int s, std::uint64_t seed = 0) {
  const int n = m.ambient();
  const int pos = m.pencil_position(s);
  const FlagRep f = representative_flag(m, c);
  const QVector v1 = f.vector(pos), v2 = f.vector(pos + 1);
  const std::vector<QVector> low = f.prefix(pos);

  std::set<detail::PencilPoint> points{{1, 0}, {0, 1}, {1, 1}};
  std::mt19937_64 rng(detail::mix_seed(seed, c, s));
  std::vector<detail::PencilPoint> random_points;
  for (int k = 0; k < 2; ++k) {
    auto p = detail::normalize_point(random_nonzero_rational(rng), random_nonzero_rational(rng));
    random_points.push_back(p);
    points.insert(p);
  }

  // Subspaces whose incidence with the new F_{pos+1} can change along the
  // pencil. Indices whose F moves with the line are skipped.
  auto moves = [&](int i) { return i == pos + 1 || (m.form() && i == n - pos - 1); };
  std::vector<std::vector<QVector>> us;
  us.push_back(coordinate_basis(n, m.plus_coords()));
  us.push_back(coordinate_basis(n, m.minus_coords()));
  for (int a = 0; a <= n; ++a) {
    if (moves(a)) continue;
    for (int b : {0, pos}) {
      for (bool plus : {true, false}) {
        std::vector<QVector> u;
        for (int k = 0; k < a; ++k) u.push_back(plus ? project_plus(m, f.vector(k)) : project_minus(m, f.vector(k)));
        for (int k = 0; k < b; ++k) u.push_back(f.vector(k));
        us.push_back(u);
      }
    }
  }
  for (int b = 0; b <= n; ++b) {
    if (moves(b)) continue;
    for (bool plus : {true, false}) {
      std::vector<QVector> u;
      for (int k = 0; k < pos; ++k) u.push_back(plus ? project_plus(m, f.vector(k)) : project_minus(m, f.vector(k)));
      for (int k = 0; k < b; ++k) u.push_back(f.vector(k));
      us.push_back(u);
    }
  }
  if (m.form()) {
    const std::size_t count = us.size();
    for (std::size_t i = 0; i < count; ++i) us.push_back(detail::perp(*m.form(), us[i], n));
  }
  for (const auto& u : us) {
    for (int form = 0; form < 3; ++form) {
      std::vector<QVector> l = form == 0 ? u : detail::projection_preimage(m, u, form == 1);
      if (auto p = detail::pencil_meet(l, low, v1, v2, n)) points.insert(*p);
    }
  }

  std::set<Clan> found;
  auto clan_of = [&](const detail::PencilPoint& p) {
    QVector line = axpy(p.second, v2, p.first == 0 ? zero_vector(n) : v1);
    return identify_orbit(m, replace_line(m, f, pos, line));
  };
  for (const auto& p : points) found.insert(clan_of(p));
  const Clan open1 = clan_of(random_points[0]);
  const Clan open2 = clan_of(random_points[1]);
  if (open1 != open2)
    throw InternalError("random pencil lines disagree for " + c.to_string() + " at s=" + std::to_string(s));
  if (!found.count(c)) throw InternalError("saturation lost the original orbit");
  return Saturation{std::vector<Clan>(found.begin(), found.end()), open1};
}

// Every orbit contained in P_s·(orbit of c). A lower orbit's pencil passes
// through its own rational line, so the class of a dense orbit is the union
// of the pencil sets of the orbits that m(s) sends to it.
inline Saturation saturation(const SymmetricPairModel& m, const Clan& c, int s, std::uint64_t seed = 0) {
  Saturation sat = pencil_orbits(m, c, s, seed);
  if (sat.open != c) return sat;
  std::set<Clan> all(sat.members.begin(), sat.members.end());
  for (const auto& q : m.clans()) {
    if (q == c) continue;
    Saturation other = pencil_orbits(m, q, s, seed);
    if (other.open == c) all.insert(other.members.begin(), other.members.end());
  }
  sat.members.assign(all.begin(), all.end());
  return sat;
}

inline Clan m_action(const SymmetricPairModel& m, const Clan& c, int s, std::uint64_t seed = 0) {
  return pencil_orbits(m, c, s, seed).open;
}

// Combinatorial cross action of the simple reflection s on clans: swap the
// entries at the pencil position and the next one (family C also swaps the
// mirrored entries). Used only to cross-check the geometric types.
inline Clan cross_action(const SymmetricPairModel& m, const Clan& c, int s) {
  std::vector<int> sym = c.symbols();
  const int pos = m.pencil_position(s);
  std::swap(sym[pos], sym[pos + 1]);
  const int n = c.size();
  if (m.family() == PairFamily::C && pos + 1 != n - pos - 1) std::swap(sym[n - pos - 1], sym[n - pos - 2]);
  return Clan(c.family(), sym);
}

// ---------------------------------------------------------------------------

struct WeakEdge {
  int from = 0;
  int root = 0;
  int to = 0;
  friend auto operator<=>(const WeakEdge&, const WeakEdge&) = default;
};

// All orbits of one model with their saturations, types, lengths,
// dimensions and closure order. Indices refer to model.clans().
struct OrbitGraph {
  PairKind kind;
  std::vector<Clan> nodes;
  std::vector<int> length;
  std::vector<long long> dimension;
  std::vector<std::vector<int>> saturation_members;  // [node * rank + s-1] -> node indices
  std::vector<int> open_member;                      // [node * rank + s-1]
  std::vector<RootType> root_types;                  // [node * rank + s-1]
  std::vector<WeakEdge> weak_edges;
  std::vector<std::vector<bool>> below;  // below[a][b]: orbit a lies in the closure of orbit b
  std::vector<std::pair<int, int>> covers;
  std::vector<std::pair<int, int>> dashed_edges;  // covers that are not weak edges
  int rank = 0;

  int index_of(const Clan& c) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), c);
    if (it == nodes.end() || *it != c) throw UsageError("unknown clan " + c.to_string());
    return static_cast<int>(it - nodes.begin());
  }
  int slot(int node, int s) const { return node * rank + (s - 1); }
  RootType type(int node, int s) const { return root_types[slot(node, s)]; }
  int m_action(int node, int s) const { return open_member[slot(node, s)]; }
  bool in_closure(int a, int b) const { return below[a][b]; }
  bool is_closed(int node) const { return length[node] == 0; }
  bool is_open(int node) const {
    return dimension[node] == *std::max_element(dimension.begin(), dimension.end());
  }
  std::vector<int> closure_of(int b) const {
    std::vector<int> out;
    for (std::size_t a = 0; a < nodes.size(); ++a)
      if (below[a][b]) out.push_back(static_cast<int>(a));
    return out;
  }
};

// Builds the graph and checks its internal consistency: saturation classes
// partition the orbits (size <= 3, one open member), every weak edge raises
// the geometric orbit dimension by one, lengths agree with stabilizer
// dimensions, and the closure recursion is independent of the chosen
// (s, Q') pair. Any failure throws InternalError.
inline OrbitGraph closure_order(const SymmetricPairModel& m, std::uint64_t seed = 0) {
  OrbitGraph g;
  g.kind = m.kind();
  g.nodes = m.clans();
  g.rank = m.rank();
  const int count = static_cast<int>(g.nodes.size());
  const int r = g.rank;
  g.saturation_members.resize(static_cast<std::size_t>(count) * r);
  g.open_member.resize(static_cast<std::size_t>(count) * r);
  g.root_types.resize(static_cast<std::size_t>(count) * r);

  std::vector<std::vector<int>> raw(static_cast<std::size_t>(count) * r);
  for (int i = 0; i < count; ++i)
    for (int s = 1; s <= r; ++s) {
      Saturation sat = pencil_orbits(m, g.nodes[i], s, seed);
      auto& mem = raw[g.slot(i, s)];
      for (const auto& c : sat.members) mem.push_back(m.index_of(c));
      g.open_member[g.slot(i, s)] = m.index_of(sat.open);
    }
  // Classes: each lower orbit's pencil set must be the whole class of its
  // open member; the open member's own set must lie inside it.
  for (int s = 1; s <= r; ++s) {
    std::vector<std::set<int>> cls(count);
    for (int i = 0; i < count; ++i) {
      const int o = g.open_member[g.slot(i, s)];
      if (g.open_member[g.slot(o, s)] != o)
        throw InternalError("m(s) is not idempotent at " + g.nodes[i].to_string() + ", s=" + std::to_string(s));
      cls[o].insert(raw[g.slot(i, s)].begin(), raw[g.slot(i, s)].end());
    }
    for (int i = 0; i < count; ++i) {
      const int o = g.open_member[g.slot(i, s)];
      std::vector<int> whole(cls[o].begin(), cls[o].end());
      for (int j : whole)
        if (g.open_member[g.slot(j, s)] != o)
          throw InternalError("saturation sets for s=" + std::to_string(s) + " do not partition the orbits (" +
                              g.nodes[i].to_string() + " vs " + g.nodes[j].to_string() + ")");
      if (i != o && raw[g.slot(i, s)] != whole)
        throw InternalError("pencil of " + g.nodes[i].to_string() + " misses part of its class at s=" +
                            std::to_string(s));
      if (whole.size() > 3) throw InternalError("saturation with more than three orbits at " + g.nodes[i].to_string());
      g.saturation_members[g.slot(i, s)] = whole;
    }
  }

  // Types. The open member's pair at (pos, pos+1) marks a Cayley transform.
  for (int i = 0; i < count; ++i)
    for (int s = 1; s <= r; ++s) {
      const auto& mem = g.saturation_members[g.slot(i, s)];
      const int open = g.open_member[g.slot(i, s)];
      const int pos = m.pencil_position(s);
      RootType t;
      if (mem.size() == 1) {
        t = RootType::CompactImaginary;
      } else if (open != i) {
        const Clan& q = g.nodes[i];
        const Clan& o = g.nodes[open];
        const bool cayley = q.is_sign(pos) && q.is_sign(pos + 1) && !o.is_sign(pos) && o.partner(pos) == pos + 1;
        // A two-member class whose lower orbit the reflection fixes is a
        // type II Cayley transform, otherwise a complex ascent.
        const bool fixed = cross_action(m, q, s) == q;
        t = cayley || fixed ? RootType::NoncompactImaginary : RootType::ComplexAscent;
      } else {
        t = RootType::ComplexDescent;
      }
      g.root_types[g.slot(i, s)] = t;
    }
  for (int i = 0; i < count; ++i)
    for (int s = 1; s <= r; ++s) {
      if (g.root_types[g.slot(i, s)] != RootType::ComplexDescent) continue;
      for (int j : g.saturation_members[g.slot(i, s)])
        if (g.root_types[g.slot(j, s)] == RootType::NoncompactImaginary) g.root_types[g.slot(i, s)] = RootType::Real;
    }
  // Class shapes: complex classes have size 2 and the cross action swaps
  // their members; Cayley classes have size 2 or 3.
  for (int i = 0; i < count; ++i)
    for (int s = 1; s <= r; ++s) {
      const auto t = g.root_types[g.slot(i, s)];
      const auto& mem = g.saturation_members[g.slot(i, s)];
      const auto size = mem.size();
      if ((t == RootType::ComplexAscent || t == RootType::ComplexDescent) && size != 2)
        throw InternalError("complex class of size " + std::to_string(size) + " at " + g.nodes[i].to_string());
      if (t == RootType::ComplexAscent || t == RootType::ComplexDescent) {
        const int other = mem[0] == i ? mem[1] : mem[0];
        if (cross_action(m, g.nodes[i], s) != g.nodes[other])
          throw InternalError("cross action disagrees with the complex pair at " + g.nodes[i].to_string());
      }
      if (t == RootType::CompactImaginary && cross_action(m, g.nodes[i], s) != g.nodes[i])
        throw InternalError("cross action moves a compact imaginary orbit " + g.nodes[i].to_string());
      if (m.family() == PairFamily::A && (t == RootType::NoncompactImaginary || t == RootType::Real) && size != 3)
        throw InternalError("type A noncompact root of type II at " + g.nodes[i].to_string());
    }

  for (int i = 0; i < count; ++i)
    for (int s = 1; s <= r; ++s)
      if (is_ascent(g.root_types[g.slot(i, s)])) g.weak_edges.push_back({i, s, g.open_member[g.slot(i, s)]});
  std::sort(g.weak_edges.begin(), g.weak_edges.end());

  // Lengths: BFS from the orbits without descents.
  g.length.assign(count, -1);
  std::queue<int> todo;
  for (int i = 0; i < count; ++i) {
    bool descent = false;
    for (int s = 1; s <= r; ++s) descent = descent || is_descent(g.root_types[g.slot(i, s)]);
    if (!descent) {
      g.length[i] = 0;
      todo.push(i);
    }
  }
  std::vector<std::vector<int>> out_edges(count);
  for (const auto& e : g.weak_edges) out_edges[e.from].push_back(e.to);
  while (!todo.empty()) {
    int i = todo.front();
    todo.pop();
    for (int j : out_edges[i])
      if (g.length[j] < 0) {
        g.length[j] = g.length[i] + 1;
        todo.push(j);
      }
  }
  g.dimension.resize(count);
  const long long base_dim = m.base_orbit_dimension();
  for (int i = 0; i < count; ++i) {
    if (g.length[i] < 0) throw InternalError("orbit " + g.nodes[i].to_string() + " unreachable from closed orbits");
    g.dimension[i] = base_dim + g.length[i];
    const long long geom = orbit_dimension_geometric(m, representative_flag(m, g.nodes[i]));
    if (geom != g.dimension[i])
      throw InternalError("orbit " + g.nodes[i].to_string() + ": length gives dimension " +
                          std::to_string(g.dimension[i]) + ", stabilizer gives " + std::to_string(geom));
  }
  for (const auto& e : g.weak_edges)
    if (g.length[e.to] != g.length[e.from] + 1) throw InternalError("weak edge does not raise length by one");
  for (int i = 0; i < count; ++i)
    for (int s = 1; s <= r; ++s)
      for (int j : g.saturation_members[g.slot(i, s)])
        if (j != g.open_member[g.slot(i, s)] && g.length[j] + 1 != g.length[g.open_member[g.slot(i, s)]])
          throw InternalError("saturation class is not one step below its open member");

  // Closure, by increasing length.
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.length[a] < g.length[b]; });
  std::vector<std::vector<bool>> closure(count, std::vector<bool>(count, false));
  for (int q : order) {
    if (g.length[q] == 0) {
      closure[q][q] = true;
      continue;
    }
    bool have = false;
    std::vector<bool> result;
    for (const auto& e : g.weak_edges) {
      if (e.to != q) continue;
      std::vector<bool> candidate(count, false);
      for (int x = 0; x < count; ++x)
        if (closure[x][e.from])
          for (int y : g.saturation_members[g.slot(x, e.root)]) candidate[y] = true;
      if (!have) {
        result = candidate;
        have = true;
      } else if (candidate != result) {
        throw InternalError("closure of " + g.nodes[q].to_string() + " depends on the chosen edge");
      }
    }
    require(have, "orbit of positive length without an incoming weak edge");
    for (int x = 0; x < count; ++x) closure[x][q] = result[x];
  }
  g.below = closure;

  // Partial order checks and dimension monotonicity.
  for (int a = 0; a < count; ++a) {
    if (!closure[a][a]) throw InternalError("closure order not reflexive");
    for (int b = 0; b < count; ++b) {
      if (a != b && closure[a][b] && closure[b][a]) throw InternalError("closure order not antisymmetric");
      if (a != b && closure[a][b] && g.dimension[a] >= g.dimension[b])
        throw InternalError("closure order not strictly dimension-monotone");
      if (!closure[a][b]) continue;
      for (int c = 0; c < count; ++c)
        if (closure[b][c] && !closure[a][c]) throw InternalError("closure order not transitive");
    }
  }
  for (const auto& e : g.weak_edges)
    if (!closure[e.from][e.to]) throw InternalError("weak edge missing from closure order");

  std::set<std::pair<int, int>> weak_pairs;
  for (const auto& e : g.weak_edges) weak_pairs.insert({e.from, e.to});
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      if (a == b || !closure[a][b]) continue;
      bool cover = true;
      for (int c = 0; c < count && cover; ++c)
        if (c != a && c != b && closure[a][c] && closure[c][b]) cover = false;
      if (!cover) continue;
      g.covers.push_back({a, b});
      if (!weak_pairs.count({a, b})) g.dashed_edges.push_back({a, b});
    }
  return g;
}

// ---------------------------------------------------------------------------
// DOT

struct DotOptions {
  std::set<Clan> boxed;         // rendered as boxes
  std::set<Clan> double_boxed;  // rendered as boxes with a second outline
};

inline std::string to_dot(const OrbitGraph& g, const DotOptions& opt = {}) {
  std::ostringstream os;
  os << "digraph orbits {\n";
  os << "  rankdir=BT;\n  node [shape=plaintext];\n";
  std::map<long long, std::vector<int>> by_dim;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) by_dim[g.dimension[i]].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& c = g.nodes[i];
    os << "  \"" << c << "\"";
    if (opt.double_boxed.count(c)) os << " [shape=box, peripheries=2]";
    else if (opt.boxed.count(c)) os << " [shape=box]";
    os << ";\n";
  }
  for (const auto& [dim, ids] : by_dim) {
    os << "  { rank=same;";
    for (int i : ids) os << " \"" << g.nodes[i] << "\";";
    os << " }\n";
  }
  for (const auto& e : g.weak_edges)
    os << "  \"" << g.nodes[e.from] << "\" -> \"" << g.nodes[e.to] << "\" [label=\"" << root_label(g.kind, e.root)
       << "\"];\n";
  for (const auto& [a, b] : g.dashed_edges)
    os << "  \"" << g.nodes[a] << "\" -> \"" << g.nodes[b] << "\" [style=dashed];\n";
  os << "}\n";
  return os.str();
}

// Edge list in the golden-file format: "solid FROM ROOT TO" / "dashed FROM TO",
// sorted.
inline std::vector<std::string> edge_lines(const OrbitGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.weak_edges)
    out.push_back("solid " + g.nodes[e.from].to_string() + " " + std::to_string(e.root) + " " +
                  g.nodes[e.to].to_string());
  for (const auto& [a, b] : g.dashed_edges)
    out.push_back("dashed " + g.nodes[a].to_string() + " " + g.nodes[b].to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ksorbits
