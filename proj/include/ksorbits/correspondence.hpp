#pragma once

// The orbits Q_S attached to an ordering, the checks that relate them to the
// torus orbits O_S (dimension, closure), component groups A_K on the Q_S, the
// parameter map Phi and its surjectivity.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ksorbits/orbit_monoid.hpp"
#include "ksorbits/torus_orbits.hpp"

namespace ksorbits {

// The group G whose flag variety the model lives on.
inline GroupKind ambient_group(const PairKind& k) {
  if (k.family == PairFamily::A) return GroupKind{Family::GL, k.ambient_dim()};
  return GroupKind{Family::Sp, k.symplectic_n()};
}

// Q_S for every S (indexed by mask), for one ordering.
struct QSAssignment {
  Ordering ordering;
  std::vector<Clan> table;        // by mask
  std::vector<bool> consistent;   // monoid product and epsilon agree
  const Clan& at(std::uint32_t mask) const { return table.at(mask); }
  std::optional<std::uint32_t> subset_of(const Clan& c) const {
    for (std::uint32_t m = 0; m < table.size(); ++m)
      if (table[m] == c) return m;
    return std::nullopt;
  }
};

// m(alpha_{j_s}) ... m(alpha_{j_1}) Q_∅, with j_1 the first root of S.
inline Clan orbit_QS_monoid(const SymmetricPairModel& m, const OrbitGraph& g, const SimpleSubset& s) {
  int node = g.index_of(identify_orbit(m, m.base_flag()));
  for (int root : s.members()) node = g.m_action(node, root);
  return g.nodes[node];
}

inline Clan orbit_QS_epsilon(const SymmetricPairModel& m, const SimpleSubset& s,
                             const std::map<int, Rational>& coefficients = {}) {
  return identify_orbit(m, epsilon_flag(m, s, coefficients));
}

// Both routes; throws InternalError if they disagree.
inline Clan orbit_QS(const SymmetricPairModel& m, const OrbitGraph& g, const SimpleSubset& s) {
  const Clan a = orbit_QS_monoid(m, g, s);
  const Clan b = orbit_QS_epsilon(m, s);
  if (a != b)
    throw InternalError("Q_S for S=" + s.to_string() + ", ordering " + to_string(s.ordering()) + ": monoid gives " +
                        a.to_string() + ", epsilon gives " + b.to_string());
  return a;
}

inline QSAssignment qs_assignment(const SymmetricPairModel& m, const OrbitGraph& g, const Ordering& ordering) {
  validate_ordering(ordering, m.rank());
  QSAssignment out;
  out.ordering = ordering;
  for (std::uint32_t mask = 0; mask <= full_mask(m.rank()); ++mask) {
    SimpleSubset s(mask, ordering);
    const Clan a = orbit_QS_monoid(m, g, s);
    const Clan b = orbit_QS_epsilon(m, s);
    out.table.push_back(a);
    out.consistent.push_back(a == b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

struct QSEntry {
  SimpleSubset subset;
  Clan clan;
  long long dim = 0;
  long long dim_expected = 0;
  int closure_pass_count = 0;  // pairs (S', S) for this S with the right answer
  bool consistent = true;      // monoid vs epsilon
};

struct CorrespondenceReport {
  Ordering ordering;
  std::vector<QSEntry> entries;
  int dimension_checks = 0, dimension_failures = 0;
  int closure_checks = 0, closure_failures = 0;
  int consistency_failures = 0;
  bool injective = true;
  std::vector<std::string> failures;

  bool passed() const {
    return dimension_failures == 0 && closure_failures == 0 && consistency_failures == 0 && injective;
  }
};

inline CorrespondenceReport verify_correspondence(const SymmetricPairModel& m, const OrbitGraph& g,
                                                  const Ordering& ordering) {
  CorrespondenceReport rep;
  rep.ordering = ordering;
  const QSAssignment qs = qs_assignment(m, g, ordering);
  const long long base = m.base_orbit_dimension();
  const std::uint32_t top = full_mask(m.rank());
  std::set<Clan> seen;
  for (std::uint32_t mask = 0; mask <= top; ++mask) {
    SimpleSubset s(mask, ordering);
    QSEntry e{s, qs.at(mask), g.dimension[g.index_of(qs.at(mask))], base + s.size(), 0, qs.consistent[mask]};
    ++rep.dimension_checks;
    if (e.dim != e.dim_expected) {
      ++rep.dimension_failures;
      rep.failures.push_back("dim Q_" + s.to_string() + " = " + std::to_string(e.dim) + ", expected " +
                             std::to_string(e.dim_expected));
    }
    if (!e.consistent) {
      ++rep.consistency_failures;
      rep.failures.push_back("Q_" + s.to_string() + ": monoid and epsilon disagree");
    }
    if (!seen.insert(e.clan).second) rep.injective = false;
    for (std::uint32_t lower = 0; lower <= top; ++lower) {
      const bool inclusion = (lower & ~mask) == 0;
      const bool closure = g.in_closure(g.index_of(qs.at(lower)), g.index_of(qs.at(mask)));
      ++rep.closure_checks;
      if (inclusion == closure) {
        ++e.closure_pass_count;
      } else {
        ++rep.closure_failures;
        rep.failures.push_back("closure(Q_" + s.to_string() + ") vs Q_" + SimpleSubset(lower, ordering).to_string());
      }
    }
    rep.entries.push_back(e);
  }
  if (!rep.injective) rep.failures.push_back("S -> Q_S is not injective");
  return rep;
}

// ---------------------------------------------------------------------------
// Component groups on the orbit side

// Family A: trivial. Family C: Z/2 iff beta is in S and, when alpha is in S
// too, beta comes first. For S = {beta} the point epsilon(x_S) does not depend
// on the ordering, so neither does A_K.
inline FiniteAbelianGroup ak_of_QS(const SymmetricPairModel& m, const SimpleSubset& s) {
  if (m.family() == PairFamily::A) return FiniteAbelianGroup{};
  const int n = m.rank();
  const int beta = n;
  if (!s.contains(beta)) return FiniteAbelianGroup{};
  if (n == 1) return FiniteAbelianGroup({2});
  const int alpha = n - 1;
  if (!s.contains(alpha)) return FiniteAbelianGroup({2});
  for (int r : s.ordering()) {
    if (r == beta) return FiniteAbelianGroup({2});
    if (r == alpha) return FiniteAbelianGroup{};
  }
  throw InternalError("ordering misses a root");
}

inline FiniteAbelianGroup ak_of_orbit(const SymmetricPairModel& m, const QSAssignment& qs, const Clan& c) {
  auto mask = qs.subset_of(c);
  if (!mask)
    throw DomainError("orbit " + c.to_string() + " is not of the form Q_S for ordering " + to_string(qs.ordering));
  return ak_of_QS(m, SimpleSubset(*mask, qs.ordering));
}

// An orbit Q_S with a character of A_K (0 = trivial).
struct KParameter {
  Clan clan;
  long long character = 0;
};

struct PhiEntry {
  KParameter source;
  TorusParameter target;
};

// Phi on the parameters supported on the Q_S: trivial goes to trivial; the
// nontrivial character of A_K = Z/2 pulls back along A_T(x_S) -> A_K to the
// nontrivial character of A_T(x_S) = Z/2.
inline std::vector<PhiEntry> phi_map(const SymmetricPairModel& m, const QSAssignment& qs) {
  const RootDatum d = build_root_datum(ambient_group(m.kind()));
  std::vector<PhiEntry> out;
  for (std::uint32_t mask = 0; mask < qs.table.size(); ++mask) {
    SimpleSubset s(mask, qs.ordering);
    const auto ak = ak_of_QS(m, s);
    const auto at = component_group_AT(d, s);
    for (long long chi = 0; chi < ak.order(); ++chi) {
      long long target = 0;
      if (chi != 0) {
        if (at.invariant_factors() != std::vector<long long>{2} || ak.invariant_factors() != std::vector<long long>{2})
          throw InternalError("nontrivial A_K over a torus group other than Z/2 at S=" + s.to_string());
        target = 1;
      }
      out.push_back({{qs.at(mask), chi}, {s, target}});
    }
  }
  return out;
}

inline PhiEntry phi_of(const SymmetricPairModel& m, const QSAssignment& qs, const KParameter& p) {
  auto mask = qs.subset_of(p.clan);
  if (!mask) throw DomainError("parameter on " + p.clan.to_string() + " is outside the domain of Phi");
  const auto ak = ak_of_QS(m, SimpleSubset(*mask, qs.ordering));
  if (p.character < 0 || p.character >= ak.order()) throw DomainError("character index out of range for A_K");
  for (const auto& e : phi_map(m, qs))
    if (e.source.clan == p.clan && e.source.character == p.character) return e;
  throw InternalError("phi_map lost a parameter");
}

// ---------------------------------------------------------------------------
// Surjectivity

struct SurjectivityRow {
  SimpleSubset subset;
  FiniteAbelianGroup at;
  std::string ak;  // group, or a bound when no orbit model exists
  bool covered = true;
};

struct SurjectivityReport {
  GroupKind kind;
  Ordering ordering;
  bool surjective = true;
  std::vector<SimpleSubset> witnesses;
  std::vector<SurjectivityRow> rows;
};

// Subset by subset, Phi hits every character of A_T(x_S) iff the pullback
// from the dual of A_K is onto, i.e. |A_K| >= |A_T| (the pullback is
// injective). GL: A_K trivial and A_T trivial. Sp: A_K from ak_of_QS. SL(2)
// is Sp(2). SL(n >= 3): A_K is an elementary 2-group, so any S whose A_T has
// an element of order > 2 is missed.
inline SurjectivityReport phi_surjectivity(const GroupKind& kind, const Ordering& ordering) {
  validate(kind);
  SurjectivityReport rep;
  rep.kind = kind;
  rep.ordering = ordering;
  if (kind.family != Family::GL && kind.family != Family::SL && kind.family != Family::Sp)
    throw NotImplementedError("Phi surjectivity needs an orbit-side model; none for " + to_string(kind));
  const RootDatum d = build_root_datum(kind);
  validate_ordering(ordering, d.rank);
  std::optional<SymmetricPairModel> sp;
  if (kind.family == Family::Sp) sp = build_pair_model(PairKind::C(kind.n));
  if (kind.family == Family::SL && kind.n == 2) sp = build_pair_model(PairKind::C(1));
  for (const auto& s : all_subsets(d.rank, ordering)) {
    SurjectivityRow row{s, component_group_AT(d, s), "1", true};
    if (kind.family == Family::GL) {
      row.covered = row.at.trivial();
    } else if (sp) {
      const auto ak = ak_of_QS(*sp, SimpleSubset(s.mask(), ordering));
      row.ak = ak.to_string();
      row.covered = ak.order() >= row.at.order();
    } else {
      row.ak = "elementary 2-group";
      // Only the bound is known, so rows within it are not counted as witnesses.
      row.covered = row.at.is_elementary_2_group();
    }
    if (!row.covered) {
      rep.surjective = false;
      rep.witnesses.push_back(s);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ksorbits
