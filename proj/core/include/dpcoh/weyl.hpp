#ifndef DPCOH_WEYL_HPP_
#define DPCOH_WEYL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcoh/lattice_aut.hpp"
#include "dpcoh/picard.hpp"
#include "dpcoh/root_system.hpp"
#include "dpcoh/symbols.hpp"

namespace dpcoh {

class NotARoot : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConjugacyUnresolved : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// s_a(x) = x + (x.a) a.
LatticeAut reflection(const PicardLattice& lattice, const LatticeClass& alpha);

// Least n >= 1 with g^n = 1.  Throws std::domain_error past `bound`.
std::int64_t element_order(const SquareMatrix& g, std::int64_t bound = 10000);
std::int64_t element_order(const LatticeAut& g);

// Conjugacy invariants used to bucket elements before exact testing.
struct Fingerprint {
  std::int64_t order = 1;
  CharSymbol char_symbol;
  std::vector<int> root_cycles;
  std::vector<int> line_cycles;

  std::string to_string() const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const RootSystem& rs, const RootPerm& g);

enum class Verdict { Conjugate, NotConjugate, Unresolved };

struct ConjugacyResult {
  Verdict verdict = Verdict::Unresolved;
  // w with w g w^-1 = h, as a root permutation, when Conjugate.
  std::optional<RootPerm> witness;
  std::int64_t nodes = 0;
};

// Exact test.  Fingerprints are compared first; when they agree, a
// backtracking search assigns images to the simple roots, propagating along
// <g>-orbits (w(g^k a) = h^k w(a)) and pruning on inner products.  Gives up
// with Unresolved after `node_budget` search nodes.  Callers that already
// know the fingerprints agree may skip the comparison.
ConjugacyResult conjugacy(const RootSystem& rs, const RootPerm& g, const RootPerm& h,
                          std::int64_t node_budget = 2'000'000, bool compare_fingerprints = true);

// Throws ConjugacyUnresolved if the search budget is exhausted.
bool are_conjugate(const LatticeAut& g, const LatticeAut& h);

}  // namespace dpcoh

#endif  // DPCOH_WEYL_HPP_
