#ifndef DPCOH_PICARD_HPP_
#define DPCOH_PICARD_HPP_

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcoh/linalg.hpp"

namespace dpcoh {

class BadDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A divisor class in the basis (H, E1, ..., E_{9-d}).
struct LatticeClass {
  std::vector<int> coords;

  int operator[](std::size_t i) const { return coords[i]; }
  std::size_t size() const { return coords.size(); }
  std::string to_string() const;

  friend bool operator==(const LatticeClass&, const LatticeClass&) = default;
  friend auto operator<=>(const LatticeClass&, const LatticeClass&) = default;
};

// Pic of a del Pezzo surface of degree d over a separable closure: the odd
// unimodular lattice I_{1,9-d} with K = -3H + sum Ei.
class PicardLattice {
 public:
  static PicardLattice build(int degree);

  int degree() const { return degree_; }
  int rank() const { return 10 - degree_; }
  const LatticeClass& canonical() const { return canonical_; }
  IntMatrix gram() const;

  int inner(const LatticeClass& x, const LatticeClass& y) const;
  // Unchecked pairing on raw coordinate arrays of length rank().
  int inner(const int* x, const int* y) const {
    int s = x[0] * y[0];
    for (int i = 1; i < rank(); ++i) s -= x[i] * y[i];
    return s;
  }

  LatticeClass hyperplane() const;
  LatticeClass exceptional(int i) const;  // E_i, 1-based

 private:
  explicit PicardLattice(int degree);
  int degree_;
  LatticeClass canonical_;
};

// All D with D.D = -1 and D.K = -1, lexicographic.  Requires degree <= 7.
// `slack` widens every search bound; used to certify the bounds are tight.
std::vector<LatticeClass> minus_one_classes(const PicardLattice& lattice, int slack = 0);

// All a with a.a = -2 and a.K = 0, lexicographic.
std::vector<LatticeClass> roots(const PicardLattice& lattice, int slack = 0);

}  // namespace dpcoh

#endif  // DPCOH_PICARD_HPP_
