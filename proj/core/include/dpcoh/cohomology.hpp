#ifndef DPCOH_COHOMOLOGY_HPP_
#define DPCOH_COHOMOLOGY_HPP_

#include <cstdint>
#include <map>
#include <optional>

#include "dpcoh/lattice_aut.hpp"
#include "dpcoh/linalg.hpp"

namespace dpcoh {

// H^1(<g>, Z^n) = ker(N) / im(g - 1), N = 1 + g + ... + g^(n-1), for any
// finite-order integer matrix g (not necessarily a Picard isometry).
AbelianGroupInvariants h1_cyclic(const SquareMatrix& g);
AbelianGroupInvariants h1_cyclic(const LatticeAut& g);

// Same group computed with ker(N) from a rational kernel followed by
// p-saturation instead of the Smith form; used as an independent check.
AbelianGroupInvariants h1_cyclic_rational_route(const SquareMatrix& g);

// Entry r for every divisor r of the order: H^1(<g^r>).
std::map<std::int64_t, AbelianGroupInvariants> h1_tower(const SquareMatrix& g);
std::map<std::int64_t, AbelianGroupInvariants> h1_tower(const LatticeAut& g);

// Smallest divisor r with H^1(<g^r>) nontrivial.
std::optional<std::int64_t> first_nonvanishing_power(const std::map<std::int64_t, AbelianGroupInvariants>& tower);
std::optional<std::int64_t> first_nonvanishing_power(const LatticeAut& g);

}  // namespace dpcoh

#endif  // DPCOH_COHOMOLOGY_HPP_
