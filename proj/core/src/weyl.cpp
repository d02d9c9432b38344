#include "dpcoh/weyl.hpp"

#include <map>
#include <sstream>

namespace dpcoh {

LatticeAut reflection(const PicardLattice& lattice, const LatticeClass& alpha) {
  if (static_cast<int>(alpha.size()) != lattice.rank())
    throw DimensionMismatch("reflection: root length does not match rank");
  if (lattice.inner(alpha, alpha) != -2 || lattice.inner(alpha, lattice.canonical()) != 0)
    throw NotARoot("reflection: " + alpha.to_string() + " is not a root");
  const int n = lattice.rank();
  std::vector<std::vector<int>> columns;
  for (int j = 0; j < n; ++j) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    const int ip = lattice.inner(e.data(), alpha.coords.data());
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] += ip * alpha[static_cast<std::size_t>(i)];
    columns.push_back(std::move(e));
  }
  return LatticeAut(lattice.degree(), SquareMatrix::from_columns(columns));
}

std::int64_t element_order(const SquareMatrix& g, std::int64_t bound) {
  SquareMatrix p = g;
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (p.is_identity()) return n;
    p = p * g;
  }
  throw std::domain_error("element_order: order exceeds bound");
}

std::int64_t element_order(const LatticeAut& g) { return element_order(g.matrix()); }

std::string Fingerprint::to_string() const {
  std::ostringstream out;
  auto cycles = [](const std::vector<int>& lengths) {
    std::map<int, int> counts;
    for (int len : lengths) ++counts[len];
    return format_symbol(FrameSymbol::from_exponents(counts));
  };
  out << "order=" << order << " char=" << format_symbol(char_symbol) << " roots=" << cycles(root_cycles)
      << " lines=" << cycles(line_cycles);
  return out.str();
}

Fingerprint fingerprint(const RootSystem& rs, const RootPerm& g) {
  Fingerprint f;
  const SquareMatrix m = rs.matrix_of(g);
  f.order = perm_order(g);
  f.char_symbol = char_symbol(m);
  f.root_cycles = cycle_type(std::span<const std::uint8_t>(g));
  const std::vector<int> lp = rs.line_perm_of(m);
  f.line_cycles = cycle_type(std::span<const int>(lp));
  return f;
}

}  // namespace dpcoh
