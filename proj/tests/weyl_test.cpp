#include <gtest/gtest.h>

#include "dpcoh/weyl.hpp"
#include "support.hpp"

using namespace dpcoh;
using dpcoh::testing::classes_for;
using dpcoh::testing::random_element;

TEST(Reflection, InvolutionFixingK) {
  for (int d = 1; d <= 6; ++d) {
    const PicardLattice p = PicardLattice::build(d);
    for (const auto& a : roots(p)) {
      const LatticeAut s = reflection(p, a);
      ASSERT_TRUE(s.compose(s).matrix().is_identity());
      ASSERT_EQ(s.apply(p.canonical()), p.canonical());
      LatticeClass neg = a;
      for (auto& x : neg.coords) x = -x;
      ASSERT_EQ(s.apply(a), neg);
      ASSERT_EQ(element_order(s), 2);
    }
  }
  const PicardLattice p = PicardLattice::build(3);
  EXPECT_THROW(reflection(p, p.hyperplane()), NotARoot);
  EXPECT_THROW(reflection(p, p.exceptional(1)), NotARoot);
}

TEST(LatticeAut, Validation) {
  SquareMatrix m = SquareMatrix::identity(7);
  m(0, 0) = 2;
  EXPECT_THROW(LatticeAut(3, m), InvalidAutomorphism);
  EXPECT_THROW(LatticeAut(3, SquareMatrix::identity(6)), std::invalid_argument);
  // -1 is an isometry but moves K.
  SquareMatrix neg(7);
  for (int i = 0; i < 7; ++i) neg(i, i) = -1;
  EXPECT_THROW(LatticeAut(3, neg), InvalidAutomorphism);
  const LatticeAut id = LatticeAut::identity(3);
  EXPECT_EQ(element_order(id), 1);
  EXPECT_EQ(characteristic_polynomial(id.matrix()), (std::vector<std::int64_t>{-1, 7, -21, 35, -35, 21, -7, 1}));
}

TEST(RootSystem, TablesConsistent) {
  const std::map<int, std::pair<int, int>> sizes = {{1, {240, 240}}, {2, {126, 56}}, {3, {72, 27}}, {4, {40, 16}},
                                                    {5, {20, 10}},   {6, {8, 6}}};
  for (const auto& [d, n] : sizes) {
    const RootSystem& rs = root_system(d);
    ASSERT_EQ(rs.num_roots(), n.first);
    ASSERT_EQ(rs.num_lines(), n.second);
    ASSERT_EQ(rs.num_simple(), 9 - d);
    EXPECT_EQ(rs.has_central_negation(), d <= 2);
    for (int i = 0; i < rs.num_roots(); ++i) {
      ASSERT_EQ(rs.root_inner(i, i), -2);
      ASSERT_EQ(rs.negate(rs.negate(i)), i);
      ASSERT_EQ(rs.reflect(i, i), rs.negate(i));
    }
    const RootPerm s0 = rs.reflection_perm(rs.simple_roots()[0]);
    EXPECT_EQ(rs.perm_of(rs.matrix_of(s0)), s0);
    EXPECT_EQ(rs.perm_of_key(rs.key_of(s0)), s0);
  }
}

TEST(ElementOrder, MatchesPermutationOrder) {
  std::mt19937_64 rng(1);
  for (int d = 1; d <= 4; ++d) {
    const RootSystem& rs = root_system(d);
    for (int i = 0; i < 200; ++i) {
      const RootPerm g = random_element(rs, rng);
      ASSERT_EQ(element_order(rs.matrix_of(g)), perm_order(g));
    }
  }
}

TEST(Conjugacy, RandomConjugatesFound) {
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 4; ++d) {
    const RootSystem& rs = root_system(d);
    for (int i = 0; i < 100; ++i) {
      const RootPerm g = random_element(rs, rng);
      const RootPerm w = random_element(rs, rng, 20);
      const RootPerm h = compose(compose(w, g), inverse(w));
      const ConjugacyResult res = conjugacy(rs, g, h);
      ASSERT_EQ(res.verdict, Verdict::Conjugate);
      ASSERT_TRUE(res.witness);
      ASSERT_EQ(compose(compose(*res.witness, g), inverse(*res.witness)), h);
    }
  }
}

TEST(Conjugacy, SearchSeparatesAllDegreeFourClasses) {
  const RootSystem& rs = root_system(4);
  const auto& classes = classes_for(4).classes;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j) {
      const auto res = conjugacy(rs, rs.perm_of_key(classes[i].key), rs.perm_of_key(classes[j].key), 2'000'000, false);
      ASSERT_EQ(res.verdict, i == j ? Verdict::Conjugate : Verdict::NotConjugate) << classes[i].id << " " << classes[j].id;
    }
}

TEST(Conjugacy, SearchSeparatesDegreeTwoClassesWithEqualCharSymbol) {
  const RootSystem& rs = root_system(2);
  const auto& classes = classes_for(2).classes;
  int compared = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (classes[i].char_symbol != classes[j].char_symbol) continue;
      ++compared;
      const auto res = conjugacy(rs, rs.perm_of_key(classes[i].key), rs.perm_of_key(classes[j].key), 2'000'000, false);
      ASSERT_EQ(res.verdict, Verdict::NotConjugate) << classes[i].id << " " << classes[j].id;
    }
  EXPECT_GT(compared, 0);
}

TEST(Conjugacy, LatticeAutInterface) {
  const PicardLattice p = PicardLattice::build(3);
  const auto rts = roots(p);
  const LatticeAut a = reflection(p, rts[0]);
  const LatticeAut b = reflection(p, rts[5]);
  EXPECT_TRUE(are_conjugate(a, b));
  EXPECT_FALSE(are_conjugate(a, LatticeAut::identity(3)));
  EXPECT_FALSE(are_conjugate(a, a.compose(b)));
}

// char_symbol(g^r) determines the same Frame symbol as power_frame applied
// to the Frame symbol of g.
TEST(CrossModuleLaw, PowerFrameCommutesWithMatrixPowers) {
  std::mt19937_64 rng(9);
  for (int d = 1; d <= 4; ++d) {
    const RootSystem& rs = root_system(d);
    for (int i = 0; i < 1000; ++i) {
      const RootPerm g = random_element(rs, rng);
      const int r = 1 + static_cast<int>(rng() % 30);
      const SquareMatrix m = rs.matrix_of(g);
      const FrameSymbol lhs = frame_from_char(char_symbol(m.pow(r)));
      const FrameSymbol rhs = power_frame(frame_from_char(char_symbol(m)), r);
      ASSERT_EQ(lhs, rhs) << "degree " << d << " r " << r;
    }
  }
}
