#pragma once

// Hecke module on the K-orbits of a family A model (all local systems
// trivial), the KLV polynomials P_{psi,gamma} via the self-dual basis, and
// the multiplicity matrices C built from them.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ksorbits/correspondence.hpp"
#include "ksorbits/multiplicity.hpp"

namespace ksorbits {

// Integer polynomial in q; coefficients[k] is the coefficient of q^k.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<long long> c) : c_(std::move(c)) { trim(); }
  static QPolynomial constant(long long a) { return QPolynomial({a}); }
  static QPolynomial q() { return QPolynomial({0, 1}); }

  const std::vector<long long>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  long long coefficient(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }
  long long at_one() const {
    long long s = 0;
    for (long long a : c_) s += a;
    return s;
  }
  bool nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](long long a) { return a >= 0; });
  }

  QPolynomial operator+(const QPolynomial& o) const {
    std::vector<long long> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return QPolynomial(std::move(r));
  }
  QPolynomial operator-(const QPolynomial& o) const { return *this + o * constant(-1); }
  QPolynomial operator*(const QPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<long long> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return QPolynomial(std::move(r));
  }
  bool operator==(const QPolynomial& o) const { return c_ == o.c_; }

  // "1+q", "1+2q+q^2", "0".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      long long a = c_[k];
      if (a == 0) continue;
      if (!first) os << (a > 0 ? "+" : "-");
      else if (a < 0) os << "-";
      long long m = a < 0 ? -a : a;
      if (k == 0 || m != 1) os << m;
      if (k >= 1) os << "q";
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<long long> c_;
};

// Laurent polynomial in v (q = v^2), sparse.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int power, long long a = 1) {
    LaurentPoly p;
    if (a != 0) p.t_[power] = a;
    return p;
  }
  // f(q) with q = v^2, times v^shift.
  static LaurentPoly from_q(const QPolynomial& f, int shift) {
    LaurentPoly p;
    for (int k = 0; k <= f.degree(); ++k)
      if (f.coefficient(k) != 0) p.t_[2 * k + shift] = f.coefficient(k);
    return p;
  }

  const std::map<int, long long>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  long long coefficient(int k) const {
    auto it = t_.find(k);
    return it == t_.end() ? 0 : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (auto [k, a] : o.t_) add(k, a);
    return *this;
  }
  LaurentPoly operator+(const LaurentPoly& o) const { return LaurentPoly(*this) += o; }
  LaurentPoly operator-(const LaurentPoly& o) const { return *this + o * monomial(0, -1); }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto [i, a] : t_)
      for (auto [j, b] : o.t_) r.add(i + j, a * b);
    return r;
  }
  LaurentPoly bar() const {
    LaurentPoly r;
    for (auto [k, a] : t_) r.t_[-k] = a;
    return r;
  }
  bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }

 private:
  void add(int k, long long a) {
    long long& x = t_[k];
    x += a;
    if (x == 0) t_.erase(k);
  }
  std::map<int, long long> t_;
};

// Free module on the orbits, standard basis tau_x, coefficients in Z[q].
struct HeckeModuleElement {
  std::map<int, QPolynomial> terms;  // node index -> coefficient

  void add(int node, const QPolynomial& f) {
    QPolynomial r = terms[node] + f;
    if (r.is_zero()) terms.erase(node);
    else terms[node] = r;
  }
  static HeckeModuleElement basis(int node) {
    HeckeModuleElement e;
    e.add(node, QPolynomial::constant(1));
    return e;
  }
  HeckeModuleElement operator+(const HeckeModuleElement& o) const {
    HeckeModuleElement r = *this;
    for (const auto& [k, f] : o.terms) r.add(k, f);
    return r;
  }
  HeckeModuleElement scaled(const QPolynomial& f) const {
    HeckeModuleElement r;
    for (const auto& [k, g] : terms) r.add(k, g * f);
    return r;
  }
  bool operator==(const HeckeModuleElement& o) const { return terms == o.terms; }
};

namespace detail {

inline void require_family_a(const OrbitGraph& g) {
  if (g.kind.family != PairFamily::A)
    throw NotImplementedError("KLV polynomials need nontrivial local systems for family C; only family A is supported");
}

inline std::vector<int> lower_members(const OrbitGraph& g, int node, int s) {
  const int open = g.m_action(node, s);
  std::vector<int> out;
  for (int j : g.saturation_members[g.slot(node, s)])
    if (j != open) out.push_back(j);
  return out;
}

inline int other(const std::vector<int>& v, int x) {
  for (int y : v)
    if (y != x) return y;
  throw InternalError("saturation class has no second member");
}

}  // namespace detail

// T_s on one basis element.
inline HeckeModuleElement hecke_basis_action(const OrbitGraph& g, int s, int x) {
  detail::require_family_a(g);
  const QPolynomial q = QPolynomial::q(), one = QPolynomial::constant(1);
  HeckeModuleElement r;
  switch (g.type(x, s)) {
    case RootType::CompactImaginary:
      r.add(x, q);
      break;
    case RootType::ComplexAscent:
      r.add(g.m_action(x, s), one);
      break;
    case RootType::ComplexDescent: {
      const auto low = detail::lower_members(g, x, s);
      require(low.size() == 1, "complex descent with a class of size " + std::to_string(low.size() + 1));
      r.add(x, q - one);
      r.add(low[0], q);
      break;
    }
    case RootType::NoncompactImaginary: {
      // Type I: the cross action moves x to the other lower member.
      const auto low = detail::lower_members(g, x, s);
      require(low.size() == 2, "noncompact imaginary root of type II in family A at " + g.nodes[x].to_string());
      r.add(detail::other(low, x), one);
      r.add(g.m_action(x, s), one);
      break;
    }
    case RootType::Real: {
      const auto low = detail::lower_members(g, x, s);
      require(low.size() == 2, "real root of type I in family A at " + g.nodes[x].to_string());
      r.add(x, q - QPolynomial::constant(2));
      r.add(low[0], q - one);
      r.add(low[1], q - one);
      break;
    }
  }
  return r;
}

inline HeckeModuleElement hecke_operator(const OrbitGraph& g, int s, const HeckeModuleElement& elt) {
  detail::require_family_a(g);
  if (s < 1 || s > g.rank) throw UsageError("simple root index out of range");
  HeckeModuleElement r;
  for (const auto& [x, f] : elt.terms) r = r + hecke_basis_action(g, s, x).scaled(f);
  return r;
}

// P[psi][gamma] for every pair of orbits.
struct KLVTable {
  std::vector<Clan> nodes;
  std::vector<int> length;
  std::vector<std::vector<QPolynomial>> P;

  int index_of(const Clan& c) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), c);
    if (it == nodes.end() || *it != c) throw UsageError("unknown clan " + c.to_string());
    return static_cast<int>(it - nodes.begin());
  }
  const QPolynomial& at(const Clan& psi, const Clan& gamma) const { return P[index_of(psi)][index_of(gamma)]; }
};

namespace detail {

// Element in the basis t_x = v^{-l(x)} tau_x.
using TElement = std::vector<LaurentPoly>;

// C_s = v^{-1}(T_s + 1) applied to an element in the t basis.
inline TElement apply_cs(const OrbitGraph& g, int s, const TElement& e) {
  TElement r(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (e[x].is_zero()) continue;
    HeckeModuleElement img = hecke_basis_action(g, s, static_cast<int>(x));
    img.add(static_cast<int>(x), QPolynomial::constant(1));
    for (const auto& [y, f] : img.terms)
      r[y] += e[x] * LaurentPoly::from_q(f, -1 - g.length[x] + g.length[y]);
  }
  return r;
}

}  // namespace detail

// Self-dual basis C_delta = sum_psi v^{l(psi)-l(delta)} P_{psi,delta}(v^2) t_psi,
// built as C_s C_gamma minus lower corrections. Every (s, gamma) choice is
// computed and required to agree.
inline KLVTable klv_polynomials(const OrbitGraph& g) {
  detail::require_family_a(g);
  const int count = static_cast<int>(g.nodes.size());
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.length[a] < g.length[b]; });

  std::vector<detail::TElement> C(count);
  std::vector<bool> done(count, false);
  for (int delta : order) {
    if (g.length[delta] == 0) {
      C[delta].assign(count, {});
      C[delta][delta] = LaurentPoly::monomial(0);
      done[delta] = true;
      continue;
    }
    std::optional<detail::TElement> chosen;
    for (int s = 1; s <= g.rank; ++s) {
      const RootType t = g.type(delta, s);
      if (t != RootType::ComplexDescent && t != RootType::Real) continue;
      for (int gamma : detail::lower_members(g, delta, s)) {
        require(done[gamma] && g.length[gamma] == g.length[delta] - 1, "descent does not lower the length by one");
        detail::TElement e = detail::apply_cs(g, s, C[gamma]);
        require(e[delta] == LaurentPoly::monomial(0), "C_s C_gamma does not start with t_delta");
        // Top-down in length: push every coefficient into v^{-1} Z[v^{-1}].
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
          const int eps = *it;
          if (eps == delta || e[eps].is_zero()) continue;
          require(g.length[eps] < g.length[delta], "C_s C_gamma has a term not below delta");
          LaurentPoly pos, fix;
          for (auto [k, a] : e[eps].terms())
            if (k >= 0) pos += LaurentPoly::monomial(k, a);
          if (pos.is_zero()) continue;
          fix = pos;
          for (auto [k, a] : pos.terms())
            if (k > 0) fix += LaurentPoly::monomial(-k, a);
          for (int y = 0; y < count; ++y)
            if (!C[eps][y].is_zero()) e[y] = e[y] - fix * C[eps][y];
        }
        if (!chosen) chosen = e;
        else require(*chosen == e, "self-dual element depends on the descent used for " + g.nodes[delta].to_string());
      }
    }
    require(chosen.has_value(), "orbit of positive length without a descent: " + g.nodes[delta].to_string());
    C[delta] = *chosen;
    done[delta] = true;
  }

  KLVTable tab;
  tab.nodes = g.nodes;
  tab.length = g.length;
  tab.P.assign(count, std::vector<QPolynomial>(count));
  for (int delta = 0; delta < count; ++delta)
    for (int psi = 0; psi < count; ++psi) {
      const LaurentPoly& a = C[delta][psi];
      if (a.is_zero()) continue;
      const int shift = g.length[delta] - g.length[psi];
      std::vector<long long> coeffs;
      for (auto [k, c] : a.terms()) {
        require(psi == delta ? k == 0 : k <= -1, "coefficient outside v^{-1}Z[v^{-1}]");
        const int twice = k + shift;
        require(twice % 2 == 0 && twice >= 0, "KLV coefficient in odd or negative q-degree");
        if (static_cast<int>(coeffs.size()) <= twice / 2) coeffs.resize(twice / 2 + 1, 0);
        coeffs[twice / 2] = c;
      }
      tab.P[psi][delta] = QPolynomial(coeffs);
    }
  return tab;
}

// C(psi, gamma) = P_{psi,gamma}(1), dims = orbit dimensions. With qs, only
// the Q_S of that ordering, indexed by subset mask.
inline MultiplicityMatrix c_matrix_K(const OrbitGraph& g, const KLVTable& tab,
                                     const QSAssignment* qs = nullptr) {
  std::vector<int> idx;
  if (qs) {
    for (const auto& c : qs->table) idx.push_back(g.index_of(c));
  } else {
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) idx.push_back(i);
  }
  MultiplicityMatrix m;
  for (int i : idx) {
    m.labels.push_back(g.nodes[i].to_string());
    m.dims.push_back(g.dimension[i]);
  }
  m.entries.assign(idx.size(), std::vector<long long>(idx.size(), 0));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m.entries[a][b] = tab.P[idx[a]][idx[b]].at_one();
  return m;
}

struct TorusComparison {
  Ordering ordering;
  int entries = 0;
  int equal = 0;
  std::vector<std::string> mismatches;
  bool passed() const { return entries > 0 && equal == entries; }
};

// Restricted K-side matrix against the torus matrix, transported along
// Phi: (Q_S, trivial) -> (S, trivial).
inline TorusComparison compare_with_torus(const SymmetricPairModel& m, const OrbitGraph& g, const KLVTable& tab,
                                          const Ordering& ordering) {
  detail::require_family_a(g);
  TorusComparison rep;
  rep.ordering = ordering;
  const QSAssignment qs = qs_assignment(m, g, ordering);
  const MultiplicityMatrix k = c_matrix_K(g, tab, &qs);
  const MultiplicityMatrix t = c_matrix_T_trivial(m.rank());
  std::map<std::string, std::size_t> tpos;
  for (std::size_t i = 0; i < t.size(); ++i) tpos[t.labels[i]] = i;
  for (std::uint32_t a = 0; a < qs.table.size(); ++a)
    for (std::uint32_t b = 0; b < qs.table.size(); ++b) {
      const std::string la = SimpleSubset(a, ordering).to_string(), lb = SimpleSubset(b, ordering).to_string();
      const long long kv = k.at(a, b), tv = t.at(tpos.at(la), tpos.at(lb));
      ++rep.entries;
      if (kv == tv) ++rep.equal;
      else
        rep.mismatches.push_back("C_K(" + k.labels[a] + "," + k.labels[b] + ") = " + std::to_string(kv) +
                                 ", C_T(" + la + "," + lb + ") = " + std::to_string(tv));
    }
  return rep;
}

// One line per nonzero P: psi,gamma,polynomial,coefficients (';'-separated).
inline std::string klv_csv(const KLVTable& tab) {
  std::ostringstream os;
  os << "psi,gamma,polynomial,coefficients\n";
  for (std::size_t a = 0; a < tab.nodes.size(); ++a)
    for (std::size_t b = 0; b < tab.nodes.size(); ++b) {
      const auto& p = tab.P[a][b];
      if (p.is_zero()) continue;
      os << tab.nodes[a].to_string() << ',' << tab.nodes[b].to_string() << ',' << p.to_string() << ',';
      for (std::size_t i = 0; i < p.coefficients().size(); ++i) os << (i ? ";" : "") << p.coefficients()[i];
      os << '\n';
    }
  return os.str();
}

inline std::string matrix_csv(const MultiplicityMatrix& m) {
  std::ostringstream os;
  os << "row";
  for (const auto& l : m.labels) os << ',' << l;
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << m.labels[i];
    for (std::size_t j = 0; j < m.size(); ++j) os << ',' << m.at(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace ksorbits
