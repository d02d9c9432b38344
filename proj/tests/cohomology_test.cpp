#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "dpcoh/cohomology.hpp"
#include "support.hpp"

using namespace dpcoh;
using dpcoh::testing::classes_for;

namespace {

SquareMatrix permutation_matrix(const std::vector<int>& p) {
  SquareMatrix m(static_cast<int>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(p[i], static_cast<int>(i)) = 1;
  return m;
}

SquareMatrix block_sum(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix m(a.size() + b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) m(a.size() + i, a.size() + j) = b(i, j);
  return m;
}

// Generator of C_n acting on the augmentation ideal of Z[C_n], in the basis
// e_i - e_0 (i = 1..n-1).  The sequence 0 -> I -> Z[G] -> Z -> 0 gives
// H^1(G, I) = Z/n.
SquareMatrix augmentation_ideal(int n) {
  SquareMatrix m(n - 1);
  // g(e_i - e_0) = e_{i+1} - e_1 = (e_{i+1} - e_0) - (e_1 - e_0).
  for (int i = 1; i < n; ++i) {
    const int col = i - 1;
    if (i + 1 < n) m(i, col) += 1;
    m(0, col) -= 1;
  }
  return m;
}

AbelianGroupInvariants cyclic_group(std::int64_t n) { return AbelianGroupInvariants::from_compact(std::to_string(n)); }

}  // namespace

TEST(H1Cyclic, SmallModules) {
  // Swap on Z^2 is a permutation module.
  EXPECT_TRUE(h1_cyclic(permutation_matrix({1, 0})).trivial());
  SquareMatrix neg(1);
  neg(0, 0) = -1;
  EXPECT_EQ(h1_cyclic(neg), cyclic_group(2));
  EXPECT_TRUE(h1_cyclic(SquareMatrix::identity(3)).trivial());
  for (int n = 2; n <= 12; ++n) {
    ASSERT_EQ(h1_cyclic(augmentation_ideal(n)), cyclic_group(n)) << n;
    ASSERT_EQ(h1_cyclic_rational_route(augmentation_ideal(n)), cyclic_group(n)) << n;
  }
}

TEST(H1Cyclic, PermutationModulesVanish) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> p(2 + rng() % 9);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    ASSERT_TRUE(h1_cyclic(permutation_matrix(p)).trivial());
  }
}

TEST(H1Cyclic, AdditiveOverDirectSums) {
  SquareMatrix neg(1);
  neg(0, 0) = -1;
  const SquareMatrix m = block_sum(augmentation_ideal(6), block_sum(neg, permutation_matrix({2, 0, 1})));
  EXPECT_EQ(h1_cyclic(m).to_string(), "Z/2 x Z/6");
}

TEST(H1Tower, AugmentationIdealRestrictsToSubgroups) {
  // Z[C_n] is free over <g^r>, so H^1(<g^r>, I) = Z/(n/r).
  for (int n : {4, 6, 12}) {
    const auto tower = h1_tower(augmentation_ideal(n));
    for (const auto& [r, h] : tower) {
      if (r == n) {
        EXPECT_TRUE(h.trivial());
        continue;
      }
      EXPECT_EQ(h, cyclic_group(n / r)) << n << " r=" << r;
    }
    EXPECT_EQ(first_nonvanishing_power(tower), 1);
  }
  EXPECT_FALSE(first_nonvanishing_power(h1_tower(permutation_matrix({1, 2, 3, 0}))));
}

TEST(H1Picard, RoutesAgreeOnAllClasses) {
  for (int d : {4, 3, 2}) {
    for (const auto& c : classes_for(d).classes) {
      ASSERT_EQ(h1_cyclic(c.representative), h1_cyclic_rational_route(c.representative)) << c.id;
      ASSERT_EQ(h1_cyclic(c.aut()), c.h1()) << c.id;
      // H^1 is killed by the group order.
      for (const auto& f : c.h1().factors) ASSERT_TRUE(BigInt(BigInt(c.order) % f) == 0) << c.id;
    }
  }
}

TEST(H1Picard, TowerEntriesAreH1OfPowers) {
  for (const auto& c : classes_for(3).classes) {
    const auto tower = h1_tower(c.aut());
    ASSERT_EQ(tower, c.h1_tower) << c.id;
    for (const auto& [r, h] : tower) {
      ASSERT_EQ(c.order % r, 0);
      ASSERT_EQ(h, h1_cyclic(c.representative.pow(r))) << c.id << " r=" << r;
    }
    ASSERT_TRUE(tower.at(c.order).trivial());
  }
}

TEST(H1Picard, ConjugationInvariant) {
  std::mt19937_64 rng(12);
  const RootSystem& rs = root_system(2);
  for (int i = 0; i < 100; ++i) {
    const RootPerm g = dpcoh::testing::random_element(rs, rng);
    const RootPerm w = dpcoh::testing::random_element(rs, rng, 15);
    const RootPerm h = compose(compose(w, g), inverse(w));
    ASSERT_EQ(h1_cyclic(rs.matrix_of(g)), h1_cyclic(rs.matrix_of(h)));
  }
}

TEST(H1Picard, MinimalDegreeFourClassesHaveNonvanishingTower) {
  // A minimal degree-4 surface split by a cyclic extension acquires
  // nonzero H^1 over some extension.
  for (const auto& c : classes_for(4).classes) {
    if (!c.minimal) continue;
    EXPECT_TRUE(c.first_nonvanishing_power()) << c.id;
  }
}
