#include "dpcoh/cohomology.hpp"

#include "dpcoh/weyl.hpp"

namespace dpcoh {

namespace {

struct CyclicData {
  IntMatrix norm;   // N
  IntMatrix delta;  // g - 1
};

CyclicData cyclic_data(const SquareMatrix& g) {
  const std::int64_t n = element_order(g);
  SquareMatrix sum(g.size()), power = SquareMatrix::identity(g.size());
  for (std::int64_t i = 0; i < n; ++i) {
    sum = sum + power;
    power = power * g;
  }
  return {sum.to_int_matrix(), (g - SquareMatrix::identity(g.size())).to_int_matrix()};
}

AbelianGroupInvariants quotient_of(const IntMatrix& kernel, const IntMatrix& delta) {
  if (kernel.cols() == 0) return {};
  return quotient_invariants(kernel, delta);
}

}  // namespace

AbelianGroupInvariants h1_cyclic(const SquareMatrix& g) {
  const CyclicData d = cyclic_data(g);
  return quotient_of(kernel_basis(d.norm), d.delta);
}

AbelianGroupInvariants h1_cyclic(const LatticeAut& g) { return h1_cyclic(g.matrix()); }

AbelianGroupInvariants h1_cyclic_rational_route(const SquareMatrix& g) {
  const CyclicData d = cyclic_data(g);
  const IntMatrix k = rational_kernel(d.norm);
  if (k.cols() == 0) return {};
  return quotient_invariants(saturate(k), d.delta);
}

std::map<std::int64_t, AbelianGroupInvariants> h1_tower(const SquareMatrix& g) {
  const std::int64_t n = element_order(g);
  std::map<std::int64_t, AbelianGroupInvariants> tower;
  for (std::int64_t r = 1; r <= n; ++r)
    if (n % r == 0) tower[r] = h1_cyclic(g.pow(r));
  return tower;
}

std::map<std::int64_t, AbelianGroupInvariants> h1_tower(const LatticeAut& g) { return h1_tower(g.matrix()); }

std::optional<std::int64_t> first_nonvanishing_power(const std::map<std::int64_t, AbelianGroupInvariants>& tower) {
  for (const auto& [r, h] : tower)
    if (!h.trivial()) return r;
  return std::nullopt;
}

std::optional<std::int64_t> first_nonvanishing_power(const LatticeAut& g) {
  return first_nonvanishing_power(h1_tower(g));
}

}  // namespace dpcoh
