#ifndef DPCOH_MINIMALITY_HPP_
#define DPCOH_MINIMALITY_HPP_

#include <span>
#include <vector>

#include "dpcoh/lattice_aut.hpp"
#include "dpcoh/picard.hpp"

namespace dpcoh {

// <g>-orbits on the (-1)-classes, indices into minus_one_classes().  An orbit
// is contractible when its members are pairwise disjoint.
struct OrbitPartition {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> contractible;
};

// (-1)-classes and their pairings for degrees 1..7, built once per degree.
struct LineTable {
  std::vector<LatticeClass> lines;
  std::vector<std::int8_t> inner;  // lines.size()^2

  int size() const { return static_cast<int>(lines.size()); }
  int ip(int i, int j) const { return inner[static_cast<std::size_t>(i) * lines.size() + static_cast<std::size_t>(j)]; }
};
const LineTable& line_table(int degree);

// Permutation of the (-1)-classes induced by an isometry.
std::vector<int> line_permutation(int degree, const SquareMatrix& m);

OrbitPartition line_orbits(const LatticeAut& g);
OrbitPartition line_orbits(int degree, std::span<const int> line_perm);

// Largest total size of a union of contractible orbits that are pairwise
// disjoint across orbits; exact branch and bound.  The sum of each chosen
// orbit is an invariant class of negative square and the sums are mutually
// orthogonal, so they span a negative definite subspace of the invariant
// lattice (signature (1, invariant_rank - 1)): at most invariant_rank - 1
// orbits, and at most 9 - d lines in total.
int index_of(int degree, const OrbitPartition& partition, int invariant_rank);
int index(const LatticeAut& g);
bool is_minimal(const LatticeAut& g);

}  // namespace dpcoh

#endif  // DPCOH_MINIMALITY_HPP_
