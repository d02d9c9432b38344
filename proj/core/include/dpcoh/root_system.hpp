#ifndef DPCOH_ROOT_SYSTEM_HPP_
#define DPCOH_ROOT_SYSTEM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpcoh/lattice_aut.hpp"
#include "dpcoh/picard.hpp"

namespace dpcoh {

// A Weyl group element as a permutation of the root list: perm[i] is the
// index of w(root i).  The action on roots is faithful, so this is a complete
// representation.  At most 240 roots, so indices fit in a byte.
using RootPerm = std::vector<std::uint8_t>;

// Images of the simple roots packed one byte each; a faithful compact key.
using ElementKey = std::uint64_t;

// Roots, (-1)-classes and lookup tables of Pic for degrees 1..6, where the
// simple roots together with K form a Q-basis of Pic.
//
// Simple roots: a0 = H - E1 - E2 - E3, ai = Ei - E(i+1).  They give A2xA1, A4,
// D5, E6, E7, E8 for degrees 6..1.
class RootSystem {
 public:
  explicit RootSystem(int degree);

  int degree() const { return lattice_.degree(); }
  int rank() const { return lattice_.rank(); }
  const PicardLattice& lattice() const { return lattice_; }

  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  const std::vector<LatticeClass>& roots() const { return roots_; }
  const std::vector<LatticeClass>& lines() const { return lines_; }
  const std::vector<int>& simple_roots() const { return simple_; }
  int num_simple() const { return static_cast<int>(simple_.size()); }

  std::optional<int> root_index(const std::vector<int>& coords) const;
  std::optional<int> line_index(const std::vector<int>& coords) const;

  int root_inner(int i, int j) const { return root_ip_[static_cast<std::size_t>(i * num_roots() + j)]; }
  int line_inner(int i, int j) const { return line_ip_[static_cast<std::size_t>(i * num_lines() + j)]; }
  int negate(int i) const { return neg_[static_cast<std::size_t>(i)]; }
  // Index of root i + root j, or -1.
  int root_sum(int i, int j) const { return sum_[static_cast<std::size_t>(i * num_roots() + j)]; }
  // Image of root x under the reflection in root r.
  int reflect(int r, int x) const { return refl_[static_cast<std::size_t>(r * num_roots() + x)]; }
  // Inner product of simple roots i and j (positions in simple_roots()).
  int simple_inner(int i, int j) const { return root_inner(simple_[static_cast<std::size_t>(i)], simple_[static_cast<std::size_t>(j)]); }

  // -1 on K^perp lies in W (degrees 1 and 2).
  bool has_central_negation() const { return central_negation_; }

  RootPerm identity_perm() const;
  RootPerm reflection_perm(int r) const;
  ElementKey key_of(const RootPerm& p) const;
  // Matrix of the isometry sending simple root i to root images[i] and fixing
  // K.  Empty if the result is not integral.
  std::optional<SquareMatrix> matrix_from_simple_images(std::span<const int> images) const;
  SquareMatrix matrix_of(const RootPerm& p) const;
  SquareMatrix matrix_of_key(ElementKey key) const;
  RootPerm perm_of(const SquareMatrix& m) const;
  RootPerm perm_of_key(ElementKey key) const;
  std::vector<int> line_perm_of(const SquareMatrix& m) const;

 private:
  PicardLattice lattice_;
  std::vector<LatticeClass> roots_;
  std::vector<LatticeClass> lines_;
  std::vector<int> simple_;
  std::vector<std::int8_t> root_ip_;
  std::vector<std::int8_t> line_ip_;
  std::vector<int> neg_;
  std::vector<std::int16_t> sum_;
  std::vector<std::uint8_t> refl_;
  bool central_negation_ = false;
  // Inverse of [simple roots | K] as numerators over a common denominator.
  std::vector<std::int64_t> basis_inverse_;
  std::int64_t basis_denominator_ = 1;
};

// Shared immutable instance per degree (1..6), built on first use.
const RootSystem& root_system(int degree);

// Composition (a * b)(x) = a(b(x)).
RootPerm compose(const RootPerm& a, const RootPerm& b);
RootPerm inverse(const RootPerm& p);
RootPerm power(const RootPerm& p, std::int64_t e);
// Sorted cycle lengths.
std::vector<int> cycle_type(std::span<const std::uint8_t> p);
std::vector<int> cycle_type(std::span<const int> p);
std::int64_t perm_order(const RootPerm& p);

}  // namespace dpcoh

#endif  // DPCOH_ROOT_SYSTEM_HPP_
