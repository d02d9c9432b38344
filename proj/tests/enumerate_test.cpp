#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "dpcoh/enumerate.hpp"
#include "dpcoh/weyl.hpp"
#include "support.hpp"

using namespace dpcoh;
using dpcoh::testing::classes_for;

namespace {

// Oracle: the group as a set of integer matrices generated by the simple
// reflections, and its classes as orbits under conjugation by generators.
struct MatrixGroup {
  std::vector<std::vector<std::int64_t>> elements;
  std::vector<std::size_t> class_sizes;
};

MatrixGroup matrix_group(int degree) {
  const PicardLattice p = PicardLattice::build(degree);
  const RootSystem& rs = root_system(degree);
  std::vector<SquareMatrix> gens;
  for (int s : rs.simple_roots()) gens.push_back(reflection(p, rs.roots()[static_cast<std::size_t>(s)]).matrix());
  std::map<std::vector<std::int64_t>, std::size_t> index;
  std::vector<SquareMatrix> elems{SquareMatrix::identity(p.rank())};
  index[elems[0].data()] = 0;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      SquareMatrix x = g * elems[i];
      if (index.emplace(x.data(), elems.size()).second) elems.push_back(std::move(x));
    }
  std::vector<std::size_t> parent(elems.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      const std::size_t j = index.at((g * elems[i] * g).data());
      parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t i = 0; i < elems.size(); ++i) ++sizes[find(i)];
  MatrixGroup out;
  for (const auto& e : elems) out.elements.push_back(e.data());
  for (auto [root, n] : sizes) out.class_sizes.push_back(n);
  std::sort(out.class_sizes.begin(), out.class_sizes.end());
  return out;
}

std::vector<std::size_t> record_sizes(const ClassDatabase& db) {
  std::vector<std::size_t> v;
  for (const auto& c : db.classes) v.push_back(static_cast<std::size_t>(*c.class_size));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Enumerate, GroupOrdersFromTwoRuns) {
  const std::map<int, std::int64_t> orders = {{6, 12}, {5, 120}, {4, 1920}, {3, 51840}};
  for (const auto& [d, n] : orders) {
    const ClassDatabase db = enumerate_classes(d, SearchBudget{});
    ASSERT_TRUE(db.group_order && db.group_order_second_run);
    EXPECT_EQ(*db.group_order, n) << "degree " << d;
    EXPECT_EQ(*db.group_order_second_run, n) << "degree " << d;
    EXPECT_FALSE(db.heuristic);
  }
}

TEST(Enumerate, ClassesMatchMatrixOracle) {
  for (int d : {6, 5, 4, 3}) {
    const MatrixGroup oracle = matrix_group(d);
    const ClassDatabase& db = d >= 3 && d <= 4 ? classes_for(d) : enumerate_classes(d, SearchBudget{});
    EXPECT_EQ(static_cast<std::int64_t>(oracle.elements.size()), *db.group_order) << "degree " << d;
    EXPECT_EQ(record_sizes(db), oracle.class_sizes) << "degree " << d;
  }
}

TEST(Enumerate, ClassEquationDegreeTwo) {
  const ClassDatabase& db = classes_for(2);
  EXPECT_EQ(*db.group_order, 2903040);
  EXPECT_EQ(*db.group_order_second_run, 2903040);
  std::int64_t total = 0;
  for (const auto& c : db.classes) total += *c.class_size;
  EXPECT_EQ(total, *db.group_order);
  EXPECT_EQ(db.classes.size(), 60u);
}

TEST(Enumerate, RecordsAreConsistent) {
  for (int d : {4, 3, 2}) {
    const ClassDatabase& db = classes_for(d);
    const RootSystem& rs = root_system(d);
    std::set<Fingerprint> fps;
    for (const auto& c : db.classes) {
      const LatticeAut g = c.aut();
      ASSERT_EQ(element_order(g), c.order);
      ASSERT_EQ(char_symbol(g), c.char_symbol);
      ASSERT_EQ(frame_from_char(c.char_symbol), c.frame_symbol);
      ASSERT_EQ(rs.matrix_of_key(c.key), c.representative);
      ASSERT_EQ(fingerprint(rs, rs.perm_of_key(c.key)), c.fingerprint());
      ASSERT_EQ(*db.group_order % *c.class_size, 0);
      fps.insert(c.fingerprint());
    }
    // Full fingerprints separate the classes in these degrees.
    EXPECT_EQ(fps.size(), db.classes.size());
    EXPECT_TRUE(std::is_sorted(db.classes.begin(), db.classes.end(),
                               [](const auto& a, const auto& b) { return a.id < b.id; }));
  }
}

TEST(Enumerate, RandomModeReproducesExhaustiveClasses) {
  SearchBudget b;
  b.mode = SearchMode::Random;
  b.window = 20000;
  b.seed = 5;
  const ClassDatabase r = enumerate_classes(3, b);
  const ClassDatabase& e = classes_for(3);
  ASSERT_EQ(r.classes.size(), e.classes.size());
  EXPECT_TRUE(r.heuristic);
  EXPECT_TRUE(r.unresolved.empty());
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    EXPECT_EQ(r.classes[i].fingerprint(), e.classes[i].fingerprint());
    EXPECT_EQ(r.classes[i].id, e.classes[i].id);
  }
}

TEST(Enumerate, RandomModeIsDeterministicForSeed) {
  SearchBudget b;
  b.mode = SearchMode::Random;
  b.window = 2000;
  b.seed = 42;
  const ClassDatabase x = enumerate_classes(2, b);
  const ClassDatabase y = enumerate_classes(2, b);
  ASSERT_EQ(x.classes.size(), y.classes.size());
  EXPECT_EQ(x.draws, y.draws);
  for (std::size_t i = 0; i < x.classes.size(); ++i) EXPECT_EQ(x.classes[i].key, y.classes[i].key);
}

TEST(Enumerate, DegreeOneRandomCoverage) {
  const ClassDatabase& db = classes_for(1);
  EXPECT_TRUE(db.heuristic);
  EXPECT_FALSE(db.group_order);
  EXPECT_TRUE(db.unresolved.empty());
  // W(E8) has 112 classes; the default budget is expected to find them all.
  EXPECT_EQ(db.classes.size(), 112u);
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(enumerate_classes(1, SearchBudget{}), std::invalid_argument);
  EXPECT_THROW(enumerate_classes(7, SearchBudget{}), BadDegree);
  SearchBudget tiny;
  tiny.mode = SearchMode::Random;
  tiny.window = 1000;
  tiny.max_draws = 50;
  EXPECT_THROW(enumerate_classes(2, tiny), BudgetExhausted);
  EXPECT_THROW(parse_search_mode("fast"), std::invalid_argument);
  EXPECT_THROW(classes_for(4).by_id("d4-999"), std::out_of_range);
}
