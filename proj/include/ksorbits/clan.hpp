#pragma once

// Clans: the combinatorial labels of K-orbits on the flag variety for
// GL(p) x GL(q) in GL(p+q) (family A) and GL(n) in Sp(2n) (family C).

#include <algorithm>
#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ksorbits/error.hpp"

namespace ksorbits {

enum class PairFamily { A, C };

// A(p, q): GL(p) x GL(q) in GL(p+q). C(n): GL(n) in Sp(2n).
struct PairKind {
  PairFamily family = PairFamily::A;
  int p = 1;
  int q = 1;

  static PairKind A(int p, int q) { return {PairFamily::A, p, q}; }
  static PairKind C(int n) { return {PairFamily::C, n, n}; }

  // Length of a clan string = dimension of the defining representation.
  int ambient_dim() const { return p + q; }
  // Semisimple rank of G.
  int rank() const { return family == PairFamily::A ? p + q - 1 : p; }
  int symplectic_n() const { return p; }

  friend bool operator==(const PairKind&, const PairKind&) = default;
};

inline std::string to_string(const PairKind& k) {
  if (k.family == PairFamily::C) return "C:" + std::to_string(k.p);
  return "A:" + std::to_string(k.p) + "," + std::to_string(k.q);
}

// Accepts "A:2,2", "A:3,2", "C:2".
inline PairKind parse_pair_kind(const std::string& text) {
  auto bad = [&]() { return UsageError("pair must look like A:p,q or C:n, got '" + text + "'"); };
  if (text.size() < 3 || text[1] != ':') throw bad();
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  std::string rest = text.substr(2);
  if (text[0] == 'A') {
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw bad();
    PairKind k = PairKind::A(parse_int(rest.substr(0, comma)), parse_int(rest.substr(comma + 1)));
    if (k.p < 0 || k.q < 0 || k.p + k.q < 1) throw bad();
    return k;
  }
  if (text[0] == 'C') {
    int n = parse_int(rest);
    if (n < 1) throw bad();
    return PairKind::C(n);
  }
  if (text[0] == 'B' || text[0] == 'D')
    throw NotImplementedError("orbit-side models exist for families A and C only, got '" + text + "'");
  throw bad();
}

class Clan {
 public:
  static constexpr int kPlus = -1;
  static constexpr int kMinus = -2;

  Clan() = default;
  Clan(PairFamily family, std::vector<int> symbols) : family_(family), symbols_(std::move(symbols)) {
    normalize();
  }

  // Parses "+-+-", "1+-1", "1212"; U+2212 is accepted for minus.
  static Clan parse(PairFamily family, const std::string& text) {
    std::vector<int> sym;
    for (std::size_t i = 0; i < text.size(); ++i) {
      unsigned char ch = static_cast<unsigned char>(text[i]);
      if (ch == '+') {
        sym.push_back(kPlus);
      } else if (ch == '-') {
        sym.push_back(kMinus);
      } else if (ch == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                 static_cast<unsigned char>(text[i + 2]) == 0x92) {
        sym.push_back(kMinus);
        i += 2;
      } else if (ch >= '1' && ch <= '9') {
        sym.push_back(ch - '0');
      } else if (ch >= 'a' && ch <= 'z') {
        sym.push_back(10 + (ch - 'a'));
      } else {
        throw UsageError("bad clan symbol in '" + text + "'");
      }
    }
    return Clan(family, std::move(sym));
  }

  PairFamily family() const { return family_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  int symbol(int i) const { return symbols_[i]; }
  const std::vector<int>& symbols() const { return symbols_; }

  bool is_sign(int i) const { return symbols_[i] < 0; }
  bool is_plus(int i) const { return symbols_[i] == kPlus; }
  bool is_minus(int i) const { return symbols_[i] == kMinus; }
  // Matched position of a number symbol, or -1 for a sign.
  int partner(int i) const { return partner_[i]; }

  int count_plus() const { return static_cast<int>(std::count(symbols_.begin(), symbols_.end(), kPlus)); }
  int count_minus() const { return static_cast<int>(std::count(symbols_.begin(), symbols_.end(), kMinus)); }
  int count_pairs() const { return (size() - count_plus() - count_minus()) / 2; }

  std::string to_string() const {
    std::string s;
    for (int x : symbols_) {
      if (x == kPlus) s += '+';
      else if (x == kMinus) s += '-';
      else if (x < 10) s += static_cast<char>('0' + x);
      else s += static_cast<char>('a' + (x - 10));
    }
    return s;
  }

  friend bool operator==(const Clan& a, const Clan& b) {
    return a.family_ == b.family_ && a.symbols_ == b.symbols_;
  }
  friend auto operator<=>(const Clan& a, const Clan& b) {
    if (auto c = a.family_ <=> b.family_; c != 0) return c;
    return a.symbols_ <=> b.symbols_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Clan& c) { return os << c.to_string(); }

 private:
  // Relabel numbers by order of first occurrence and check each occurs twice.
  void normalize() {
    std::map<int, int> relabel;
    std::map<int, int> first_pos;
    partner_.assign(symbols_.size(), -1);
    int next = 1;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      int x = symbols_[i];
      if (x == kPlus || x == kMinus) continue;
      if (x <= 0) throw UsageError("bad clan symbol");
      auto it = first_pos.find(x);
      if (it == first_pos.end()) {
        first_pos[x] = static_cast<int>(i);
        relabel[x] = next++;
      } else {
        if (it->second < 0) throw UsageError("clan label occurs more than twice");
        partner_[i] = it->second;
        partner_[it->second] = static_cast<int>(i);
        it->second = -1;
      }
    }
    for (const auto& [label, pos] : first_pos)
      if (pos >= 0) throw UsageError("clan label occurs only once");
    for (auto& x : symbols_)
      if (x > 0) x = relabel[x];
  }

  PairFamily family_ = PairFamily::A;
  std::vector<int> symbols_;
  std::vector<int> partner_;
};

// Reverse-and-negate symmetry of clans for Sp(2n).
inline bool is_symplectic_symmetric(const Clan& c) {
  const int len = c.size();
  for (int i = 0; i < len; ++i) {
    const int m = len - 1 - i;
    if (c.is_plus(i) && !c.is_minus(m)) return false;
    if (c.is_minus(i) && !c.is_plus(m)) return false;
    if (!c.is_sign(i)) {
      const int j = c.partner(i);
      if (c.is_sign(m) || c.partner(m) != len - 1 - j) return false;
    }
  }
  return true;
}

inline void validate_clan(const PairKind& kind, const Clan& c) {
  const std::string s = c.to_string();
  if (c.size() != kind.ambient_dim())
    throw UsageError("clan '" + s + "' has wrong length for " + to_string(kind));
  if (kind.family == PairFamily::A) {
    if (c.family() != PairFamily::A) throw UsageError("clan family mismatch");
    if (c.count_plus() + c.count_pairs() != kind.p || c.count_minus() + c.count_pairs() != kind.q)
      throw UsageError("clan '" + s + "' has wrong signature for " + to_string(kind));
  } else {
    if (c.family() != PairFamily::C) throw UsageError("clan family mismatch");
    if (!is_symplectic_symmetric(c)) throw UsageError("clan '" + s + "' is not reverse-and-negate symmetric");
  }
}

namespace detail {

inline void enumerate_a(int pos, int len, int plus_left, int minus_left, int pairs_to_open,
                        std::vector<int>& open, std::vector<int>& sym, int& next_label,
                        PairFamily family, std::vector<Clan>& out) {
  if (pos == len) {
    if (plus_left == 0 && minus_left == 0 && pairs_to_open == 0 && open.empty())
      out.emplace_back(family, sym);
    return;
  }
  const int remaining = len - pos;
  if (plus_left + minus_left + 2 * pairs_to_open + static_cast<int>(open.size()) != remaining) return;
  if (plus_left > 0) {
    sym[pos] = Clan::kPlus;
    enumerate_a(pos + 1, len, plus_left - 1, minus_left, pairs_to_open, open, sym, next_label, family, out);
  }
  if (minus_left > 0) {
    sym[pos] = Clan::kMinus;
    enumerate_a(pos + 1, len, plus_left, minus_left - 1, pairs_to_open, open, sym, next_label, family, out);
  }
  if (pairs_to_open > 0) {
    int label = next_label++;
    sym[pos] = label;
    open.push_back(label);
    enumerate_a(pos + 1, len, plus_left, minus_left, pairs_to_open - 1, open, sym, next_label, family, out);
    open.pop_back();
    --next_label;
  }
  for (std::size_t k = 0; k < open.size(); ++k) {
    int label = open[k];
    sym[pos] = label;
    open.erase(open.begin() + static_cast<long>(k));
    enumerate_a(pos + 1, len, plus_left, minus_left, pairs_to_open, open, sym, next_label, family, out);
    open.insert(open.begin() + static_cast<long>(k), label);
  }
}

inline std::vector<Clan> enumerate_signature(int p, int q, PairFamily family) {
  std::vector<Clan> out;
  const int len = p + q;
  for (int k = 0; k <= std::min(p, q); ++k) {
    std::vector<int> open, sym(len, 0);
    int next_label = 1;
    enumerate_a(0, len, p - k, q - k, k, open, sym, next_label, family, out);
  }
  return out;
}

}  // namespace detail

// Complete, duplicate-free, canonical list of clans, sorted.
inline std::vector<Clan> enumerate_clans(const PairKind& kind) {
  std::vector<Clan> out;
  if (kind.family == PairFamily::A) {
    out = detail::enumerate_signature(kind.p, kind.q, PairFamily::A);
  } else {
    for (auto& c : detail::enumerate_signature(kind.p, kind.p, PairFamily::C))
      if (is_symplectic_symmetric(c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ksorbits
