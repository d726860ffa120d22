#pragma once

// Exact matrix models of the equal-rank quasisplit symmetric pairs
//   A(p, q): K = GL(p) x GL(q) in GL(p+q),
//   C(n):    K = GL(n) in Sp(2n),
// with theta = conjugation by an alternating diagonal sign matrix. Points of
// the flag variety are full flags (family C: isotropic flags extended by
// perpendicularity). K-orbits are identified by a complete table of
// K-invariant dimensions.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ksorbits/clan.hpp"
#include "ksorbits/error.hpp"
#include "ksorbits/matrix.hpp"
#include "ksorbits/simple_subset.hpp"

namespace ksorbits {

// A point of the flag variety: F_i is spanned by the first i columns.
struct FlagRep {
  QMatrix columns;
  std::optional<QMatrix> form;  // symplectic form, family C only

  int ambient() const { return static_cast<int>(columns.rows()); }
  QVector vector(int k) const { return columns.column(static_cast<std::size_t>(k)); }
  std::vector<QVector> prefix(int i) const {
    std::vector<QVector> out;
    for (int k = 0; k < i; ++k) out.push_back(vector(k));
    return out;
  }
};

// Flattened invariant table: dim(F_i ∩ V+), dim(F_i ∩ V-) for i = 1..N, then
// dim(pi_+(F_i) + F_j) for i, j = 1..N.
using InvariantTable = std::vector<int>;

class SymmetricPairModel {
 public:
  const PairKind& kind() const { return kind_; }
  PairFamily family() const { return kind_.family; }
  int ambient() const { return n_; }
  int rank() const { return kind_.rank(); }
  const std::vector<int>& theta() const { return theta_; }
  const std::vector<int>& plus_coords() const { return plus_; }
  const std::vector<int>& minus_coords() const { return minus_; }
  const std::optional<QMatrix>& form() const { return form_; }
  const FlagRep& base_flag() const { return base_; }

  // dim Q_∅ = number of positive roots of K.
  long long base_orbit_dimension() const {
    if (kind_.family == PairFamily::A)
      return kind_.p * (kind_.p - 1) / 2 + kind_.q * (kind_.q - 1) / 2;
    return kind_.p * (kind_.p - 1) / 2;
  }
  // Dimension of the flag variety.
  long long flag_variety_dimension() const {
    if (kind_.family == PairFamily::A) return static_cast<long long>(n_) * (n_ - 1) / 2;
    return static_cast<long long>(kind_.p) * kind_.p;
  }

  const std::vector<Clan>& clans() const { return clans_; }
  int clan_count() const { return static_cast<int>(clans_.size()); }
  int index_of(const Clan& c) const {
    auto it = clan_index_.find(c);
    if (it == clan_index_.end()) throw UsageError("clan '" + c.to_string() + "' is not an orbit of " + to_string(kind_));
    return it->second;
  }
  // -1 if no enumerated clan has this table.
  int lookup(const InvariantTable& t) const {
    auto it = table_index_.find(t);
    return it == table_index_.end() ? -1 : it->second;
  }

  // Position in the flag that the minimal parabolic P_s modifies (0-based:
  // F_{pos+1} is replaced). Family C: alpha_s moves F_s, beta moves F_n.
  int pencil_position(int s) const {
    if (s < 1 || s > rank()) throw UsageError("simple root index out of range");
    return s - 1;
  }

  Clan parse_clan(const std::string& text) const {
    Clan c = Clan::parse(kind_.family, text);
    validate_clan(kind_, c);
    return c;
  }

  // Aliases: family C accepts alpha/beta names for alpha_{n-1}/alpha_n.
  int parse_root(const std::string& text) const;
  Ordering parse_ordering(const std::string& text) const;

 private:
  friend SymmetricPairModel build_pair_model(const PairKind& kind);

  PairKind kind_;
  int n_ = 0;
  std::vector<int> theta_;
  std::vector<int> plus_, minus_;
  std::optional<QMatrix> form_;
  FlagRep base_;
  std::vector<Clan> clans_;
  std::map<Clan, int> clan_index_;
  std::map<InvariantTable, int> table_index_;
};

// ---------------------------------------------------------------------------
// Small helpers

inline Rational symplectic_pairing(const QMatrix& form, const QVector& x, const QVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (form(i, j) != 0 && y[j] != 0) s += x[i] * form(i, j) * y[j];
  }
  return s;
}

inline QVector project_plus(const SymmetricPairModel& m, const QVector& v) {
  QVector out = zero_vector(v.size());
  for (int i : m.plus_coords()) out[i] = v[i];
  return out;
}

inline QVector project_minus(const SymmetricPairModel& m, const QVector& v) {
  QVector out = zero_vector(v.size());
  for (int i : m.minus_coords()) out[i] = v[i];
  return out;
}

inline std::vector<QVector> coordinate_basis(int n, const std::vector<int>& coords) {
  std::vector<QVector> out;
  for (int i : coords) out.push_back(unit_vector(n, i));
  return out;
}

// X lies in the Lie algebra of G (all of gl_N for family A, sp for C).
inline bool in_lie_algebra(const SymmetricPairModel& m, const QMatrix& x) {
  if (!m.form()) return true;
  const QMatrix& j = *m.form();
  return (x.transpose() * j + j * x).is_zero();
}

// Root vectors for ±alpha_s in the matrix model.
inline QMatrix root_vector(const SymmetricPairModel& m, int s, bool negative) {
  const int n = m.ambient();
  const int r = m.rank();
  if (s < 1 || s > r) throw UsageError("simple root index out of range");
  QMatrix x(n, n);
  auto put = [&](int row, int col, const Rational& c) {
    if (negative) x(col, row) = c;
    else x(row, col) = c;
  };
  if (m.family() == PairFamily::A) {
    put(s - 1, s, 1);
    return x;
  }
  const int half = n / 2;
  if (s == r) {
    put(half - 1, half, 1);
  } else {
    put(s - 1, s, 1);
    put(n - s - 1, n - s, 1);
    if (!in_lie_algebra(m, x)) put(n - s - 1, n - s, -1);
  }
  require(in_lie_algebra(m, x), "root vector not in sp(2n)");
  return x;
}

// ---------------------------------------------------------------------------
// Invariant tables

inline InvariantTable invariant_table(const SymmetricPairModel& m, const FlagRep& f) {
  const int n = m.ambient();
  InvariantTable t;
  t.reserve(2 * n + n * n);
  const auto vp = coordinate_basis(n, m.plus_coords());
  const auto vm = coordinate_basis(n, m.minus_coords());
  for (const auto* vs : {&vp, &vm}) {
    SpanBuilder b(n);
    b.add_all(*vs);
    const int base = static_cast<int>(b.dim());
    for (int i = 0; i < n; ++i) {
      b.add(f.vector(i));
      // dim(F_i ∩ V) = i + dim V - dim(F_i + V)
      t.push_back((i + 1) + base - static_cast<int>(b.dim()));
    }
  }
  for (int i = 1; i <= n; ++i) {
    SpanBuilder b(n);
    for (int k = 0; k < i; ++k) b.add(project_plus(m, f.vector(k)));
    for (int j = 0; j < n; ++j) {
      b.add(f.vector(j));
      t.push_back(static_cast<int>(b.dim()));
    }
  }
  return t;
}

// The same table computed from the clan string alone: + and - contribute to
// V+ and V- as soon as they appear, a pair (a, b) contributes to both once b
// is reached, and dim(pi_+(F_i) + F_j) = j + #{+ at j < k <= i} +
// #{pairs (a, b) : a <= i, b > j}.
inline InvariantTable combinatorial_table(const Clan& c) {
  const int n = c.size();
  InvariantTable t;
  t.reserve(2 * n + n * n);
  for (int want : {Clan::kPlus, Clan::kMinus}) {
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (c.symbol(i) == want) ++count;
      if (!c.is_sign(i) && c.partner(i) < i) ++count;
      t.push_back(count);
    }
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int d = j;
      for (int k = j + 1; k <= i; ++k)
        if (c.is_plus(k - 1)) ++d;
      for (int a = 1; a <= i; ++a) {
        if (c.is_sign(a - 1)) continue;
        int b = c.partner(a - 1) + 1;
        if (b > a && b > j) ++d;
      }
      t.push_back(d);
    }
  return t;
}

// Throws DomainError unless f is a point of the flag variety of the model.
inline void validate_flag(const SymmetricPairModel& m, const FlagRep& f) {
  const int n = m.ambient();
  if (f.columns.rows() != static_cast<std::size_t>(n) || f.columns.cols() != static_cast<std::size_t>(n))
    throw DomainError("flag has wrong shape");
  if (rank(f.columns) != static_cast<std::size_t>(n)) throw DomainError("flag columns are linearly dependent");
  if (m.form()) {
    // F_{N-i} = F_i^perp for every i.
    const QMatrix& j = *m.form();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a + b + 1 >= n) continue;  // a < N-1-b: v_a must be orthogonal to v_b
        if (symplectic_pairing(j, f.vector(a), f.vector(b)) != 0)
          throw DomainError("flag is not isotropic / not extended by perpendicularity");
      }
  }
}

inline Clan identify_orbit(const SymmetricPairModel& m, const FlagRep& f) {
  validate_flag(m, f);
  const int idx = m.lookup(invariant_table(m, f));
  if (idx < 0) throw InternalError("invariant table matches no enumerated clan");
  return m.clans()[idx];
}

// ---------------------------------------------------------------------------
// Flags

// Completes an isotropic flag v_1..v_n (n = N/2) to a full flag with
// F_{N-i} = F_i^perp.
inline FlagRep extend_isotropic(const SymmetricPairModel& m, const std::vector<QVector>& half) {
  const int n = m.ambient();
  const int h = n / 2;
  const QMatrix& j = *m.form();
  QMatrix cols(n, n);
  SpanBuilder span(n);
  for (int k = 0; k < h; ++k) {
    cols.set_column(k, half[k]);
    if (!span.add(half[k])) throw DomainError("isotropic half is linearly dependent");
  }
  for (int k = h; k < n; ++k) {
    // F_{k+1} = F_{N-k-1}^perp
    const int i = n - k - 1;
    QMatrix eq(static_cast<std::size_t>(std::max(i, 1)), n);
    for (int a = 0; a < i; ++a) {
      for (int c = 0; c < n; ++c) {
        Rational s = 0;
        for (int r = 0; r < n; ++r) s += half[a][r] * j(r, c);
        eq(a, c) = s;
      }
    }
    std::vector<QVector> perp = i == 0 ? coordinate_basis(n, [&] {
      std::vector<int> all(n);
      for (int t = 0; t < n; ++t) all[t] = t;
      return all;
    }())
                                       : nullspace(eq);
    bool added = false;
    for (const auto& v : perp)
      if (span.add(v)) {
        cols.set_column(k, v);
        added = true;
        break;
      }
    require(added, "perpendicular extension failed");
  }
  FlagRep f{cols, m.form()};
  validate_flag(m, f);
  return f;
}

// The flag with F_{pos+1} replaced by F_pos + line, where line lies in
// F_{pos+2} \ F_pos. Family C re-extends by perpendicularity.
inline FlagRep replace_line(const SymmetricPairModel& m, const FlagRep& f, int pos, const QVector& line) {
  const int n = m.ambient();
  QMatrix cols = f.columns;
  cols.set_column(pos, line);
  // Complement in the pencil: whichever old vector keeps the columns independent.
  SpanBuilder b(n);
  for (int k = 0; k < pos; ++k) b.add(f.vector(k));
  if (!b.add(line)) throw DomainError("replacement line lies in F_pos");
  QVector comp = f.vector(pos + 1);
  if (b.contains(comp)) comp = f.vector(pos);
  cols.set_column(pos + 1, comp);
  if (m.family() == PairFamily::A) {
    FlagRep out{cols, std::nullopt};
    validate_flag(m, out);
    return out;
  }
  std::vector<QVector> half;
  for (int k = 0; k < n / 2; ++k) half.push_back(cols.column(k));
  return extend_isotropic(m, half);
}

inline FlagRep representative_flag(const SymmetricPairModel& m, const Clan& c) {
  validate_clan(m.kind(), c);
  const int n = m.ambient();
  QMatrix cols(n, n);
  if (m.family() == PairFamily::A) {
    std::size_t next_plus = 0, next_minus = 0;
    for (int k = 0; k < n; ++k) {
      if (c.is_plus(k)) {
        cols.set_column(k, unit_vector(n, m.plus_coords()[next_plus++]));
      } else if (c.is_minus(k)) {
        cols.set_column(k, unit_vector(n, m.minus_coords()[next_minus++]));
      } else if (c.partner(k) > k) {
        const int e = m.plus_coords()[next_plus++];
        const int f = m.minus_coords()[next_minus++];
        QVector a = zero_vector(n), b = zero_vector(n);
        a[e] = 1;
        a[f] = 1;
        b[e] = 1;
        b[f] = -1;
        cols.set_column(k, a);
        cols.set_column(c.partner(k), b);
      }
    }
    FlagRep out{cols, std::nullopt};
    validate_flag(m, out);
    return out;
  }

  // Family C: split C^{2n} into hyperbolic planes (u_a, w_a) with u_a in V+,
  // w_a in V- and omega(u_a, w_a) != 0; mirror positions k, N-1-k always get
  // the only non-orthogonal pairs of vectors.
  const QMatrix& j = *m.form();
  std::vector<std::pair<QVector, QVector>> planes;
  for (int coord : m.plus_coords()) {
    const int dual = n - 1 - coord;
    planes.emplace_back(unit_vector(n, coord), unit_vector(n, dual));
  }
  std::size_t next_plane = 0;
  auto take = [&]() { return planes.at(next_plane++); };
  std::vector<bool> done(n, false);
  for (int k = 0; k < n; ++k) {
    if (done[k]) continue;
    const int kbar = n - 1 - k;
    if (c.is_sign(k)) {
      auto [u, w] = take();
      cols.set_column(k, c.is_plus(k) ? u : w);
      cols.set_column(kbar, c.is_plus(k) ? w : u);
      done[k] = done[kbar] = true;
      continue;
    }
    const int b = c.partner(k);
    if (b == kbar) {
      auto [u, w] = take();
      cols.set_column(k, axpy(1, w, u));
      cols.set_column(b, axpy(-1, w, u));
      done[k] = done[b] = true;
      continue;
    }
    const int bbar = n - 1 - b;
    auto [u, w] = take();
    auto [u2, w2] = take();
    const Rational c1 = symplectic_pairing(j, u, w);
    const Rational c2 = symplectic_pairing(j, w2, u2);
    cols.set_column(k, axpy(1, w2, u));
    cols.set_column(b, axpy(-1, w2, u));
    // omega(v_b, v_kbar) = 0 and omega(v_k, v_bbar) = 0.
    cols.set_column(kbar, axpy(c2 / c1, w, u2));
    cols.set_column(bbar, axpy(-c2 / c1, w, u2));
    done[k] = done[b] = done[kbar] = done[bbar] = true;
  }
  FlagRep out{cols, m.form()};
  validate_flag(m, out);
  return out;
}

// ---------------------------------------------------------------------------
// The model

inline SymmetricPairModel build_pair_model(const PairKind& kind) {
  SymmetricPairModel m;
  m.kind_ = kind;
  if (kind.family == PairFamily::A) {
    if (kind.p < 0 || kind.q < 0 || kind.p + kind.q < 1) throw UsageError("bad signature " + to_string(kind));
    if (std::abs(kind.p - kind.q) > 1)
      throw DomainError(to_string(kind) + " is not quasisplit (need |p - q| <= 1)");
    m.n_ = kind.p + kind.q;
    // Alternating signs, starting with + unless q = p + 1.
    const int first = kind.p >= kind.q ? 1 : -1;
    for (int i = 0; i < m.n_; ++i) m.theta_.push_back(i % 2 == 0 ? first : -first);
  } else {
    if (kind.p < 1 || kind.p != kind.q) throw UsageError("bad symplectic rank " + to_string(kind));
    m.n_ = 2 * kind.p;
    for (int i = 0; i < m.n_; ++i) m.theta_.push_back(i % 2 == 0 ? 1 : -1);
    QMatrix j(m.n_, m.n_);
    for (int i = 0; i < m.n_; ++i) j(i, m.n_ - 1 - i) = i < kind.p ? 1 : -1;
    m.form_ = j;
  }
  for (int i = 0; i < m.n_; ++i) (m.theta_[i] > 0 ? m.plus_ : m.minus_).push_back(i);
  if (kind.family == PairFamily::A &&
      (static_cast<int>(m.plus_.size()) != kind.p || static_cast<int>(m.minus_.size()) != kind.q))
    throw InternalError("theta eigenspaces do not match the signature");
  m.base_ = FlagRep{QMatrix::identity(m.n_), m.form_};

  // theta negates every simple root vector, and fixes the base flag.
  QMatrix y(m.n_, m.n_);
  for (int i = 0; i < m.n_; ++i) y(i, i) = m.theta_[i];
  for (int s = 1; s <= m.rank(); ++s)
    for (bool neg : {false, true}) {
      QMatrix x = root_vector(m, s, neg);
      require(y * x * y == Rational(-1) * x, "theta does not negate a simple root vector");
    }
  for (int k = 0; k < m.n_; ++k) {
    SpanBuilder b(m.n_);
    for (int i = 0; i <= k; ++i) b.add(unit_vector(m.n_, i));
    require(b.contains(y * unit_vector(m.n_, k)), "base flag is not theta-stable");
  }
  if (m.form_) {
    // K preserves the form: theta scales it by -1, so i*theta lies in Sp.
    require((y.transpose() * (*m.form_) * y) == Rational(-1) * (*m.form_), "theta is not a similitude of the form");
  }

  m.clans_ = enumerate_clans(kind);
  for (int i = 0; i < m.clan_count(); ++i) {
    m.clan_index_[m.clans_[i]] = i;
    auto [it, fresh] = m.table_index_.emplace(combinatorial_table(m.clans_[i]), i);
    if (!fresh)
      throw InternalError("clans " + m.clans_[it->second].to_string() + " and " + m.clans_[i].to_string() +
                          " share an invariant table");
  }
  return m;
}

inline int SymmetricPairModel::parse_root(const std::string& text) const {
  if (kind_.family == PairFamily::C) {
    if (text == "β" || text == "beta" || text == "b") return rank();
    if (text == "α" || text == "alpha" || text == "a") {
      if (rank() < 2) throw UsageError("C:1 has no root alpha");
      return rank() - 1;
    }
  }
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("bad simple root '" + text + "'");
  }
  if (v < 1 || v > rank()) throw UsageError("simple root index out of range: " + text);
  return v;
}

inline Ordering SymmetricPairModel::parse_ordering(const std::string& text) const {
  Ordering o;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) o.push_back(parse_root(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  validate_ordering(o, rank());
  return o;
}

// ---------------------------------------------------------------------------
// epsilon: exp(z_{j_1}) exp(z_{j_2}) ... exp(z_{j_s}) applied to the base
// flag, z_j = coefficient_j * X_{-alpha_j}, j_1 the first root of S in the
// ordering. The first root is outermost so that the point lies in
// K P_{j_1} ... P_{j_s} B, the orbit reached by saturating along j_1 first.
// Multiplying the other way round lands in the orbit of the reversed order.

inline QMatrix epsilon_group_element(const SymmetricPairModel& m, const SimpleSubset& s,
                                     const std::map<int, Rational>& coefficients = {}) {
  if (s.rank() != m.rank()) throw UsageError("subset rank does not match the model");
  QMatrix g = QMatrix::identity(m.ambient());
  for (int root : s.members()) {
    Rational c = 1;
    if (auto it = coefficients.find(root); it != coefficients.end()) c = it->second;
    if (c == 0) throw UsageError("epsilon coefficients must be nonzero");
    g = g * nilpotent_exp(c * root_vector(m, root, true));
  }
  return g;
}

inline FlagRep epsilon_flag(const SymmetricPairModel& m, const SimpleSubset& s,
                            const std::map<int, Rational>& coefficients = {}) {
  FlagRep f{epsilon_group_element(m, s, coefficients), m.form()};
  validate_flag(m, f);
  return f;
}

// Nonzero rational with a wide spread of numerators and denominators, so a
// sample hitting one of the finitely many special lines is negligible.
inline Rational random_nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 1000003), den(1, 99991), sign(0, 1);
  Rational r(num(rng) * (sign(rng) ? 1 : -1));
  r /= den(rng);
  return r;
}

// ---------------------------------------------------------------------------
// Orbit dimension from the stabilizer: dim k - dim(k ∩ b_F).

inline long long orbit_dimension_geometric(const SymmetricPairModel& m, const FlagRep& f) {
  const int n = m.ambient();
  // Unknowns: entries X_ab with theta_a == theta_b.
  std::vector<std::pair<int, int>> unknowns;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (m.theta()[a] == m.theta()[b]) unknowns.emplace_back(a, b);
  const std::size_t u = unknowns.size();
  std::vector<QVector> lie_rows;
  if (m.form()) {
    // X^T J + J X = 0
    const QMatrix& j = *m.form();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        QVector row = zero_vector(u);
        for (std::size_t t = 0; t < u; ++t) {
          auto [a, b] = unknowns[t];
          // (X^T J)_{rc} = X_{ar} J_{ac} with b == r; (J X)_{rc} = J_{ra} X_{ac} with b == c
          if (b == r) row[t] += j(a, c);
          if (b == c) row[t] += j(r, a);
        }
        if (!is_zero(row)) lie_rows.push_back(row);
      }
  }
  auto nullity = [&](const std::vector<QVector>& rows) {
    if (rows.empty()) return static_cast<long long>(u);
    QMatrix mat(rows.size(), u);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t t = 0; t < u; ++t) mat(i, t) = rows[i][t];
    return static_cast<long long>(u - rank(mat));
  };
  const long long dim_k = nullity(lie_rows);
  // Stabilizer: (M^{-1} X M)_{ik} = 0 for i > k.
  const QMatrix minv = inverse(f.columns);
  std::vector<QVector> rows = lie_rows;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) {
      QVector row = zero_vector(u);
      for (std::size_t t = 0; t < u; ++t) {
        auto [a, b] = unknowns[t];
        row[t] = minv(i, a) * f.columns(b, k);
      }
      rows.push_back(row);
    }
  return dim_k - nullity(rows);
}

}  // namespace ksorbits
