#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ksorbits/error.hpp"

namespace ksorbits {

// Total order on the simple roots, as a permutation of 1..r.
using Ordering = std::vector<int>;

inline void validate_ordering(const Ordering& o, int rank) {
  if (static_cast<int>(o.size()) != rank) throw UsageError("ordering must list every simple root exactly once");
  std::vector<int> sorted = o;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < rank; ++i)
    if (sorted[i] != i + 1) throw UsageError("ordering is not a permutation of 1..r");
}

inline Ordering standard_ordering(int rank) {
  Ordering o(rank);
  std::iota(o.begin(), o.end(), 1);
  return o;
}

inline std::vector<Ordering> all_orderings(int rank) {
  std::vector<Ordering> out;
  Ordering o = standard_ordering(rank);
  do out.push_back(o);
  while (std::next_permutation(o.begin(), o.end()));
  return out;
}

inline std::string to_string(const Ordering& o) {
  std::ostringstream os;
  for (std::size_t i = 0; i < o.size(); ++i) os << (i ? "," : "") << o[i];
  return os.str();
}

// A subset S of the simple roots together with the ordering it inherits.
class SimpleSubset {
 public:
  SimpleSubset() = default;
  SimpleSubset(std::uint32_t mask, Ordering ordering) : mask_(mask), ordering_(std::move(ordering)) {
    validate_ordering(ordering_, rank());
    if (rank() < 32 && (mask_ >> rank()) != 0) throw UsageError("subset contains an index beyond the rank");
  }
  static SimpleSubset from_members(const std::vector<int>& members, Ordering ordering) {
    std::uint32_t m = 0;
    for (int i : members) {
      if (i < 1 || i > static_cast<int>(ordering.size())) throw UsageError("simple root index out of range");
      m |= 1u << (i - 1);
    }
    return SimpleSubset(m, std::move(ordering));
  }

  int rank() const { return static_cast<int>(ordering_.size()); }
  std::uint32_t mask() const { return mask_; }
  const Ordering& ordering() const { return ordering_; }
  bool contains(int root) const { return (mask_ >> (root - 1)) & 1u; }
  int size() const { return __builtin_popcount(mask_); }
  bool empty() const { return mask_ == 0; }

  // Members in the order induced by the ordering (innermost factor first).
  std::vector<int> members() const {
    std::vector<int> out;
    for (int r : ordering_)
      if (contains(r)) out.push_back(r);
    return out;
  }

  bool is_subset_of(const SimpleSubset& other) const { return (mask_ & ~other.mask_) == 0; }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i = 1; i <= rank(); ++i)
      if (contains(i)) {
        os << (first ? "" : ",") << i;
        first = false;
      }
    os << '}';
    return os.str();
  }

 private:
  std::uint32_t mask_ = 0;
  Ordering ordering_;
};

inline std::uint32_t full_mask(int rank) { return rank >= 32 ? ~0u : ((1u << rank) - 1u); }

}  // namespace ksorbits
