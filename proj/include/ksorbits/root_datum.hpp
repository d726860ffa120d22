#pragma once

// Classical root data in explicit character-lattice bases, the ρ∨-grading of
// g, finite abelian groups given by invariant factors, and Smith normal form.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ksorbits/error.hpp"
#include "ksorbits/matrix.hpp"

namespace ksorbits {

using IntVector = std::vector<long long>;

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
  ZMatrix d;  // diagonal, d_1 | d_2 | ...
  ZMatrix u;  // unimodular, rows x rows
  ZMatrix v;  // unimodular, cols x cols

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

namespace detail {

inline void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += f * row[src]
inline void add_row(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
inline void add_col(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace detail

// U * M * V = D with D diagonal, nonnegative, and each diagonal entry dividing
// the next. U and V are returned explicitly and have determinant ±1.
inline SmithForm smith_normal_form(const ZMatrix& m) {
  using namespace detail;
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm f{m, ZMatrix::identity(rows), ZMatrix::identity(cols)};
  ZMatrix& d = f.d;
  // Row ops on d are mirrored on u, column ops on v.
  const std::size_t diag = std::min(rows, cols);
  bool exhausted = false;
  for (std::size_t t = 0; t < diag && !exhausted; ++t) {
    while (true) {
      // Smallest nonzero |entry| in the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          Integer a = abs(d(i, j));
          if (!found || a < best) {
            best = a;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        exhausted = true;
        break;
      }
      swap_rows(d, t, pi);
      swap_rows(f.u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(f.v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(d, i, t, -q);
        add_row(f.u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(d, j, t, -q);
        add_col(f.v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, 1);
            add_row(f.u, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!exhausted && d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) f.u(t, j) = -f.u(t, j);
    }
  }
  return f;
}

inline ZMatrix to_zmatrix(const std::vector<IntVector>& columns, std::size_t rows) {
  ZMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = static_cast<long>(columns[j][i]);
  return m;
}

// ---------------------------------------------------------------------------
// Finite abelian groups

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  // Factors equal to 1 are dropped; the rest must form a divisibility chain.
  explicit FiniteAbelianGroup(std::vector<long long> factors) {
    for (long long f : factors) {
      if (f < 1) throw UsageError("invariant factor must be positive");
      if (f > 1) factors_.push_back(f);
    }
    for (std::size_t i = 1; i < factors_.size(); ++i)
      if (factors_[i] % factors_[i - 1] != 0) throw UsageError("invariant factors must form a divisibility chain");
  }

  const std::vector<long long>& invariant_factors() const { return factors_; }
  long long order() const {
    return std::accumulate(factors_.begin(), factors_.end(), 1LL, std::multiplies<>());
  }
  bool trivial() const { return factors_.empty(); }
  long long exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  bool is_elementary_2_group() const { return exponent() <= 2; }

  // Characters are tuples (c_1, ..., c_k) with 0 <= c_i < d_i, packed in
  // mixed radix with the first factor least significant. Index 0 is trivial.
  std::vector<long long> character_tuple(long long index) const {
    if (index < 0 || index >= order()) throw UsageError("character index out of range");
    std::vector<long long> t;
    for (long long f : factors_) {
      t.push_back(index % f);
      index /= f;
    }
    return t;
  }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " x " : "") << "Z/" << factors_[i];
    return os.str();
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<long long> factors_;
};

// Torsion subgroup of Z^rows / (column span of m).
inline FiniteAbelianGroup torsion_of_cokernel(const ZMatrix& m) {
  std::vector<long long> factors;
  for (const auto& d : smith_normal_form(m).diagonal())
    if (d > 1) factors.push_back(d.get_si());
  return FiniteAbelianGroup(factors);
}

// ---------------------------------------------------------------------------
// Group kinds

enum class Family { GL, SL, Sp, SpinB, SpinD, SOB, SOD };

// Cartan type of the derived group.
enum class CartanType { A, B, C, D };

struct GroupKind {
  Family family = Family::GL;
  int n = 1;

  friend bool operator==(const GroupKind&, const GroupKind&) = default;
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::Sp: return "Sp";
    case Family::SpinB: return "SpinB";
    case Family::SpinD: return "SpinD";
    case Family::SOB: return "SOB";
    case Family::SOD: return "SOD";
  }
  return "?";
}

inline std::string to_string(const GroupKind& k) { return family_name(k.family) + ":" + std::to_string(k.n); }

inline void validate(const GroupKind& k) {
  switch (k.family) {
    case Family::GL:
    case Family::SL:
    case Family::Sp:
      if (k.n < 1) throw UsageError(to_string(k) + ": rank parameter must be >= 1");
      break;
    default:
      if (k.n < 2) throw UsageError(to_string(k) + ": rank parameter must be >= 2");
  }
}

// Accepts "GL:4", "SL:3", "Sp:2", "SpinB:3", "SpinD:4", "SOB:2", "SOD:4".
inline GroupKind parse_group_kind(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("group kind must look like FAMILY:n, got '" + text + "'");
  std::string fam = text.substr(0, colon);
  std::string num = text.substr(colon + 1);
  static const std::map<std::string, Family> names = {
      {"GL", Family::GL},       {"SL", Family::SL},       {"Sp", Family::Sp},   {"SpinB", Family::SpinB},
      {"SpinD", Family::SpinD}, {"SOB", Family::SOB},     {"SOD", Family::SOD},
  };
  if (fam == "E" || fam == "F" || fam == "G" || fam == "E6" || fam == "E7" || fam == "E8" || fam == "F4" ||
      fam == "G2")
    throw NotImplementedError("exceptional root systems are not supported: " + text);
  auto it = names.find(fam);
  if (it == names.end()) throw UsageError("unknown group family '" + fam + "'");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
  } catch (const std::exception&) {
    throw UsageError("bad rank parameter in '" + text + "'");
  }
  GroupKind k{it->second, n};
  validate(k);
  return k;
}

inline CartanType cartan_type(const GroupKind& k) {
  switch (k.family) {
    case Family::GL:
    case Family::SL: return CartanType::A;
    case Family::Sp: return CartanType::C;
    case Family::SpinB:
    case Family::SOB: return CartanType::B;
    case Family::SpinD:
    case Family::SOD: return CartanType::D;
  }
  return CartanType::A;
}

inline int semisimple_rank(const GroupKind& k) {
  return (k.family == Family::GL || k.family == Family::SL) ? k.n - 1 : k.n;
}

// Standard Cartan matrix, entry (i, j) = <alpha_i, alpha_j^vee>, Bourbaki
// numbering. Built from the Dynkin diagram alone.
inline std::vector<IntVector> standard_cartan_matrix(CartanType t, int r) {
  std::vector<IntVector> c(r, IntVector(r, 0));
  for (int i = 0; i < r; ++i) c[i][i] = 2;
  for (int i = 0; i + 1 < r; ++i) c[i][i + 1] = c[i + 1][i] = -1;
  if (r >= 2) {
    if (t == CartanType::B) c[r - 2][r - 1] = -2;  // alpha_r short
    if (t == CartanType::C) c[r - 1][r - 2] = -2;  // alpha_r long
    if (t == CartanType::D) {
      c[r - 2][r - 1] = c[r - 1][r - 2] = 0;
      if (r >= 3) c[r - 3][r - 1] = c[r - 1][r - 3] = -1;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Root data

inline long long dot(const IntVector& a, const IntVector& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct RootDatum {
  GroupKind kind;
  int rank = 0;          // semisimple rank r
  int lattice_rank = 0;  // rank m of X*(T)
  std::vector<IntVector> simple_roots;    // r vectors of length m
  std::vector<IntVector> simple_coroots;  // r vectors of length m, dual basis
  QVector rho_check;                      // length m
  // Positive roots as coefficient vectors over the simple roots, by height.
  std::vector<IntVector> positive_root_coefficients;
  std::vector<IntVector> positive_coroot_coefficients;

  long long pairing(const IntVector& character, const IntVector& cocharacter) const {
    return dot(character, cocharacter);
  }

  std::vector<IntVector> cartan_matrix() const {
    std::vector<IntVector> c(rank, IntVector(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) c[i][j] = dot(simple_roots[i], simple_coroots[j]);
    return c;
  }

  IntVector root_vector(const IntVector& coefficients) const {
    IntVector v(lattice_rank, 0);
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < lattice_rank; ++k) v[k] += coefficients[i] * simple_roots[i][k];
    return v;
  }

  std::size_t positive_root_count() const { return positive_root_coefficients.size(); }

  // <beta, rho_check> for a root given by simple-root coefficients.
  static long long height(const IntVector& coefficients) {
    return std::accumulate(coefficients.begin(), coefficients.end(), 0LL);
  }

  Rational pair_with_rho_check(const IntVector& character) const {
    Rational s = 0;
    for (int k = 0; k < lattice_rank; ++k) s += Rational(static_cast<long>(character[k])) * rho_check[k];
    return s;
  }

  // Index of the long simple root adjacent to short ones (type C: beta = alpha_r).
  int long_simple_root() const {
    if (cartan_type(kind) != CartanType::C) throw DomainError("long_simple_root is defined for type C only");
    return rank - 1;
  }
};

// Positive roots of the root system with Cartan matrix c (entry (i, j) =
// <alpha_i, alpha_j^vee>), as simple-root coefficient vectors sorted by height.
inline std::vector<IntVector> positive_roots_from_cartan(const std::vector<IntVector>& c) {
  const int r = static_cast<int>(c.size());
  std::vector<IntVector> roots;
  std::map<IntVector, bool> known;
  std::vector<IntVector> layer;
  for (int i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = 1;
    layer.push_back(e);
    known[e] = true;
  }
  while (!layer.empty()) {
    roots.insert(roots.end(), layer.begin(), layer.end());
    std::vector<IntVector> next;
    for (const auto& beta : layer) {
      for (int j = 0; j < r; ++j) {
        // p = length of the alpha_j string below beta.
        int p = 0;
        IntVector down = beta;
        while (true) {
          down[j] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        long long pair = 0;
        for (int i = 0; i < r; ++i) pair += beta[i] * c[i][j];
        long long q = p - pair;
        if (q > 0) {
          IntVector up = beta;
          up[j] += 1;
          if (!known.count(up)) {
            known[up] = true;
            next.push_back(up);
          }
        }
      }
    }
    layer = std::move(next);
  }
  return roots;
}

namespace detail {

// Simple roots and coroots in Z^m for the "standard" lattices GL(n) / Sp /
// SO(2n+1) / SO(2n).
inline void standard_lattice(const GroupKind& k, std::vector<IntVector>& roots, std::vector<IntVector>& coroots,
                             int& m) {
  const int n = k.n;
  auto e = [&](int i) {
    IntVector v(m, 0);
    v[i] = 1;
    return v;
  };
  auto lin = [&](const IntVector& a, long long ca, const IntVector& b, long long cb) {
    IntVector v(m, 0);
    for (int i = 0; i < m; ++i) v[i] = ca * a[i] + cb * b[i];
    return v;
  };
  roots.clear();
  coroots.clear();
  switch (cartan_type(k)) {
    case CartanType::A:
      m = n;
      for (int i = 0; i + 1 < n; ++i) {
        roots.push_back(lin(e(i), 1, e(i + 1), -1));
        coroots.push_back(roots.back());
      }
      break;
    case CartanType::B:
      m = n;
      for (int i = 0; i + 1 < n; ++i) {
        roots.push_back(lin(e(i), 1, e(i + 1), -1));
        coroots.push_back(roots.back());
      }
      roots.push_back(e(n - 1));
      coroots.push_back(lin(e(n - 1), 2, e(n - 1), 0));
      break;
    case CartanType::C:
      m = n;
      for (int i = 0; i + 1 < n; ++i) {
        roots.push_back(lin(e(i), 1, e(i + 1), -1));
        coroots.push_back(roots.back());
      }
      roots.push_back(lin(e(n - 1), 2, e(n - 1), 0));
      coroots.push_back(e(n - 1));
      break;
    case CartanType::D:
      m = n;
      for (int i = 0; i + 1 < n; ++i) {
        roots.push_back(lin(e(i), 1, e(i + 1), -1));
        coroots.push_back(roots.back());
      }
      roots.push_back(lin(e(n - 2), 1, e(n - 1), 1));
      coroots.push_back(roots.back());
      break;
  }
}

}  // namespace detail

inline RootDatum build_root_datum(const GroupKind& kind) {
  validate(kind);
  RootDatum d;
  d.kind = kind;
  d.rank = semisimple_rank(kind);
  const auto type = cartan_type(kind);
  const auto cartan = standard_cartan_matrix(type, d.rank);

  switch (kind.family) {
    case Family::GL:
    case Family::Sp:
    case Family::SOB:
    case Family::SOD:
      detail::standard_lattice(kind, d.simple_roots, d.simple_coroots, d.lattice_rank);
      break;
    case Family::SL: {
      // X*(T) = Z^n / Z(1,...,1). A unimodular U with U(1,...,1)^T = e_1 (from
      // the Smith form of that column) gives coordinates x -> (Ux)_{2..n};
      // cocharacters y (summing to zero) map to (U^{-T} y)_{2..n}.
      std::vector<IntVector> gl_roots, gl_coroots;
      int m = 0;
      detail::standard_lattice(GroupKind{Family::GL, kind.n}, gl_roots, gl_coroots, m);
      ZMatrix ones(kind.n, 1);
      for (int i = 0; i < kind.n; ++i) ones(i, 0) = 1;
      SmithForm sf = smith_normal_form(ones);
      ZMatrix u = sf.u;
      if (sf.v(0, 0) < 0)
        for (std::size_t j = 0; j < u.cols(); ++j) u(0, j) = -u(0, j);
      QMatrix uq(kind.n, kind.n);
      for (int i = 0; i < kind.n; ++i)
        for (int j = 0; j < kind.n; ++j) uq(i, j) = Rational(u(i, j));
      QMatrix u_inv_t = inverse(uq).transpose();
      d.lattice_rank = kind.n - 1;
      auto project = [&](const QMatrix& t, const IntVector& x) {
        IntVector out(kind.n - 1);
        for (int i = 1; i < kind.n; ++i) {
          Rational s = 0;
          for (int j = 0; j < kind.n; ++j) s += t(i, j) * Rational(static_cast<long>(x[j]));
          if (s.get_den() != 1) throw InternalError("SL lattice change of basis is not integral");
          out[i - 1] = s.get_num().get_si();
        }
        return out;
      };
      for (int i = 0; i < d.rank; ++i) {
        d.simple_roots.push_back(project(uq, gl_roots[i]));
        d.simple_coroots.push_back(project(u_inv_t, gl_coroots[i]));
      }
      break;
    }
    case Family::SpinB:
    case Family::SpinD: {
      // Weight lattice in the basis of fundamental weights: alpha_i has
      // coordinates <alpha_i, alpha_j^vee>, coroots are the dual unit vectors.
      d.lattice_rank = d.rank;
      for (int i = 0; i < d.rank; ++i) {
        d.simple_roots.push_back(cartan[i]);
        IntVector e(d.rank, 0);
        e[i] = 1;
        d.simple_coroots.push_back(e);
      }
      break;
    }
  }

  if (d.cartan_matrix() != cartan) throw InternalError("Cartan matrix mismatch for " + to_string(kind));

  d.positive_root_coefficients = positive_roots_from_cartan(cartan);
  std::vector<IntVector> dual(d.rank, IntVector(d.rank));
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) dual[i][j] = cartan[j][i];
  d.positive_coroot_coefficients = positive_roots_from_cartan(dual);

  d.rho_check = zero_vector(d.lattice_rank);
  for (const auto& c : d.positive_coroot_coefficients)
    for (int i = 0; i < d.rank; ++i)
      for (int k = 0; k < d.lattice_rank; ++k)
        d.rho_check[k] += Rational(static_cast<long>(c[i] * d.simple_coroots[i][k])) / 2;
  for (auto& x : d.rho_check) x.canonicalize();
  for (int i = 0; i < d.rank; ++i)
    if (d.pair_with_rho_check(d.simple_roots[i]) != 1) throw InternalError("<alpha_i, rho_check> != 1");
  return d;
}

// dim g_k for the grading by ad(rho_check): roots of height k, plus the
// Cartan subalgebra at k = 0.
inline long long grading_dimension(const RootDatum& d, long long k) {
  long long count = 0;
  for (const auto& c : d.positive_root_coefficients) {
    long long h = RootDatum::height(c);
    if (h == k || -h == k) ++count;
  }
  if (k == 0) count += d.lattice_rank;
  return count;
}

inline long long lie_algebra_dimension(const RootDatum& d) {
  return 2 * static_cast<long long>(d.positive_root_count()) + d.lattice_rank;
}

}  // namespace ksorbits
