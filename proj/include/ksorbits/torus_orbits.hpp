#pragma once

// The torus side: T-orbits O_S on g_{-1}, their closure order, component
// groups A_T(x_S), the parameter set Xi(T, g_{-1}) and its multiplicity
// matrix for trivial local systems.

#include <string>
#include <vector>

#include "ksorbits/multiplicity.hpp"
#include "ksorbits/root_datum.hpp"
#include "ksorbits/simple_subset.hpp"

namespace ksorbits {

// A T-orbit O_S together with a character of A_T(x_S) (0 = trivial).
struct TorusParameter {
  SimpleSubset subset;
  long long character = 0;

  friend bool operator==(const TorusParameter& a, const TorusParameter& b) {
    return a.subset.mask() == b.subset.mask() && a.character == b.character;
  }
};

// T acts on the coefficients of x_S through the characters in S, which are
// linearly independent, so the orbit is an |S|-dimensional torus.
inline int torus_orbit_dimension(const SimpleSubset& s) { return s.size(); }

inline bool torus_closure_leq(const SimpleSubset& lower, const SimpleSubset& upper) {
  return lower.is_subset_of(upper);
}

// Components of {t in T : alpha(t) = 1 for alpha in S} = torsion of X*(T)/ZS.
inline FiniteAbelianGroup component_group_AT(const RootDatum& d, const SimpleSubset& s) {
  if (s.rank() != d.rank) throw UsageError("subset rank does not match the root datum");
  if (s.empty()) return FiniteAbelianGroup{};
  std::vector<IntVector> cols;
  for (int i = 1; i <= d.rank; ++i)
    if (s.contains(i)) cols.push_back(d.simple_roots[i - 1]);
  return torsion_of_cokernel(to_zmatrix(cols, d.lattice_rank));
}

inline std::vector<SimpleSubset> all_subsets(int rank, const Ordering& ordering) {
  std::vector<SimpleSubset> out;
  for (std::uint32_t mask = 0; mask <= full_mask(rank); ++mask) out.emplace_back(mask, ordering);
  return out;
}

inline std::vector<TorusParameter> xi_T(const RootDatum& d) {
  std::vector<TorusParameter> out;
  for (const auto& s : all_subsets(d.rank, standard_ordering(d.rank))) {
    const long long order = component_group_AT(d, s).order();
    for (long long c = 0; c < order; ++c) out.push_back({s, c});
  }
  return out;
}

inline std::string subset_label(const SimpleSubset& s) { return s.to_string(); }

// Trivial local systems only: every closure of O_S is a coordinate subspace
// (smooth), so C(S', S) = 1 iff S' is contained in S.
inline MultiplicityMatrix c_matrix_T_trivial(int rank) {
  MultiplicityMatrix c;
  const auto subsets = all_subsets(rank, standard_ordering(rank));
  for (const auto& s : subsets) {
    c.labels.push_back(subset_label(s));
    c.dims.push_back(torus_orbit_dimension(s));
  }
  c.entries.assign(subsets.size(), std::vector<long long>(subsets.size(), 0));
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = 0; j < subsets.size(); ++j)
      c.entries[i][j] = torus_closure_leq(subsets[i], subsets[j]) ? 1 : 0;
  return c;
}

inline MultiplicityMatrix c_matrix_T_trivial(const RootDatum& d) { return c_matrix_T_trivial(d.rank); }

}  // namespace ksorbits
