#pragma once

// Integer matrices C(psi, gamma) indexed by parameters, with the support
// dimension d(psi) kept alongside (the sign (-1)^d is not folded in).

#include <string>
#include <vector>

#include "ksorbits/error.hpp"

namespace ksorbits {

struct MultiplicityMatrix {
  std::vector<std::string> labels;  // rows and columns share one index
  std::vector<long long> dims;      // d(psi) per label
  std::vector<std::vector<long long>> entries;

  std::size_t size() const { return labels.size(); }
  long long at(std::size_t row, std::size_t col) const { return entries.at(row).at(col); }

  // Unitriangular for the order by dimension: ones on the diagonal, zero
  // whenever the row is not strictly smaller than the column.
  bool is_unitriangular() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (i == j && entries[i][j] != 1) return false;
        if (i != j && entries[i][j] != 0 && dims[i] >= dims[j]) return false;
      }
    return true;
  }
};

}  // namespace ksorbits
