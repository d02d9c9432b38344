#include <gtest/gtest.h>

#include <algorithm>

#include "dpcoh/minimality.hpp"
#include "support.hpp"

using namespace dpcoh;
using dpcoh::testing::classes_for;

namespace {

// Orbits from the cycles of the line permutation, contractibility read off
// the pairing table, and an unpruned search over all families of mutually
// disjoint contractible orbits.
int index_oracle(const ClassRecord& c) {
  const LineTable& t = line_table(c.degree);
  const std::vector<int> perm = line_permutation(c.degree, c.representative);
  std::vector<bool> seen(perm.size());
  std::vector<std::vector<int>> orbits;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = true;
      orbit.push_back(j);
    }
    bool disjoint = true;
    for (int a : orbit)
      for (int b : orbit)
        if (a != b && t.ip(a, b) != 0) disjoint = false;
    if (disjoint) orbits.push_back(orbit);
  }
  auto compatible = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (int a : x)
      for (int b : y)
        if (t.ip(a, b) != 0) return false;
    return true;
  };
  int best = 0;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t start, int total) -> void {
    best = std::max(best, total);
    for (std::size_t i = start; i < orbits.size(); ++i) {
      bool ok = true;
      for (std::size_t j : chosen) ok = ok && compatible(orbits[i], orbits[j]);
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1, total + static_cast<int>(orbits[i].size()));
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
  return best;
}

int contractible_count(const ClassRecord& c) {
  const OrbitPartition p = line_orbits(c.aut());
  return static_cast<int>(std::count(p.contractible.begin(), p.contractible.end(), true));
}

}  // namespace

TEST(Minimality, IndexMatchesExhaustiveSearch) {
  for (int d : {4, 3, 2}) {
    for (const auto& c : classes_for(d).classes) {
      ASSERT_EQ(c.index, index_oracle(c)) << c.id;
      ASSERT_EQ(c.minimal, c.index == 0) << c.id;
      ASSERT_EQ(index(c.aut()), c.index) << c.id;
    }
  }
}

TEST(Minimality, IndexMatchesExhaustiveSearchDegreeOneSmallClasses) {
  int checked = 0;
  for (const auto& c : classes_for(1).classes) {
    if (contractible_count(c) > 40) continue;
    ++checked;
    ASSERT_EQ(c.index, index_oracle(c)) << c.id;
  }
  EXPECT_GT(checked, 50);
}

TEST(Minimality, IdentityHasFullIndex) {
  for (int d = 1; d <= 6; ++d) {
    const LatticeAut id = LatticeAut::identity(d);
    EXPECT_EQ(index(id), 9 - d);
    EXPECT_FALSE(is_minimal(id));
    const OrbitPartition p = line_orbits(id);
    EXPECT_EQ(p.orbits.size(), line_table(d).lines.size());
  }
}

TEST(Minimality, OrbitsPartitionTheLines) {
  for (const auto& c : classes_for(3).classes) {
    const OrbitPartition p = line_orbits(c.aut());
    std::vector<int> all;
    for (const auto& o : p.orbits) all.insert(all.end(), o.begin(), o.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), 27u);
    for (int i = 0; i < 27; ++i) ASSERT_EQ(all[static_cast<std::size_t>(i)], i);
    std::vector<int> sizes;
    for (const auto& o : p.orbits) sizes.push_back(static_cast<int>(o.size()));
    std::vector<int> cycles = c.line_cycles;
    std::sort(sizes.begin(), sizes.end());
    std::sort(cycles.begin(), cycles.end());
    ASSERT_EQ(sizes, cycles) << c.id;
  }
}

TEST(Minimality, MinimalClassCounts) {
  auto minimal = [](int d) {
    const auto& cs = classes_for(d).classes;
    return std::count_if(cs.begin(), cs.end(), [](const ClassRecord& c) { return c.minimal; });
  };
  EXPECT_EQ(minimal(3), 5);
  EXPECT_EQ(minimal(2), 18);
}

TEST(Minimality, CentralNegationIsMinimal) {
  // -1 on K^perp in degrees 1 and 2 fixes no line class and pairs each line
  // with one meeting it.
  for (int d : {1, 2}) {
    const RootSystem& rs = root_system(d);
    RootPerm neg(static_cast<std::size_t>(rs.num_roots()));
    for (int i = 0; i < rs.num_roots(); ++i) neg[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rs.negate(i));
    const LatticeAut g(d, rs.matrix_of(neg));
    EXPECT_TRUE(is_minimal(g)) << "degree " << d;
  }
}
