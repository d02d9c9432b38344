#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dpcoh/conic.hpp"
#include "support.hpp"

using namespace dpcoh;
using dpcoh::testing::data_path;

namespace {

AbelianGroupInvariants two_group(int rank) {
  AbelianGroupInvariants g;
  g.factors.assign(static_cast<std::size_t>(rank), BigInt(2));
  return g;
}

ConicConfig quasi_finite(std::vector<int> degrees) {
  ConicConfig c;
  for (int d : degrees) c.points.push_back(BadPoint{d, 1, false});
  return c;
}

// Valid quasi-finite configuration with an even number of points.
ConicConfig random_quasi_finite(std::mt19937_64& rng) {
  std::vector<int> degrees(2 * (1 + rng() % 4));
  for (auto& d : degrees) d = 1 + static_cast<int>(rng() % 8);
  return quasi_finite(degrees);
}

std::vector<BadPoint> sorted_points(ConicConfig c) {
  std::sort(c.points.begin(), c.points.end());
  return c.points;
}

// Order of {x in F_2^s : sum x_i norm_i = 0} by enumeration.
std::uint64_t kernel_order(const std::vector<std::uint64_t>& norms) {
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << norms.size()); ++x) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < norms.size(); ++i)
      if ((x >> i) & 1) s ^= norms[i];
    if (s == 0) ++count;
  }
  return count;
}

}  // namespace

TEST(Conic, QuasiFiniteExamples) {
  const ConicConfig c2111 = quasi_finite({2, 1, 1, 1});
  EXPECT_TRUE(validate(c2111).ok());
  EXPECT_EQ(h1_pic(c2111), two_group(2));
  EXPECT_EQ(h1_pic(c2111).to_string(), "Z/2 x Z/2");
  EXPECT_EQ(validate(quasi_finite({2, 1, 1})).violation, Violation::Reciprocity);
  EXPECT_TRUE(validate(quasi_finite({1, 1, 1, 1})).ok());
  EXPECT_TRUE(validate(ConicConfig{}).ok());
  EXPECT_TRUE(h1_pic(ConicConfig{}).trivial());
  EXPECT_THROW(h1_pic(quasi_finite({2, 1, 1})), InvalidConfig);
  for (int s : {2, 4, 6}) EXPECT_EQ(minimal_conic_h1_quasifinite(s), two_group(s - 2));
  EXPECT_THROW(minimal_conic_h1_quasifinite(5), OddCount);
  EXPECT_THROW(minimal_conic_h1_quasifinite(0), std::invalid_argument);
}

TEST(Conic, ShippedConfigs) {
  EXPECT_EQ(load_conic_config(data_path("conic/deg-2111.conf")), quasi_finite({2, 1, 1, 1}));
  EXPECT_EQ(validate(load_conic_config(data_path("conic/deg-211.conf"))).violation, Violation::Reciprocity);
  const ConicConfig c22 = load_conic_config(data_path("conic/deg-22.conf"));
  EXPECT_TRUE(h1_pic(c22).trivial());
  EXPECT_EQ(witness_extension(c22), 2);
  EXPECT_EQ(h1_pic(base_change(c22, 2)), two_group(2));
  const ConicReport r = analyze(c22);
  EXPECT_EQ(r.geometric_fibres, 4);
  EXPECT_FALSE(r.rational_range_warning);
  EXPECT_TRUE(analyze(quasi_finite({2, 1})).rational_range_warning);
}

TEST(Conic, H1MatchesQuasiFiniteCount) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const ConicConfig c = random_quasi_finite(rng);
    ASSERT_EQ(h1_pic(c), minimal_conic_h1_quasifinite(static_cast<int>(c.points.size())));
  }
}

TEST(Conic, H1MatchesEnumerationForWiderCharacterGroups) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    ConicConfig c;
    c.quasi_finite = false;
    c.relatively_minimal = false;
    c.character_dim = 1 + static_cast<int>(rng() % 3);
    const std::uint64_t mask = (std::uint64_t{1} << c.character_dim) - 1;
    std::uint64_t total = 0;
    const int s = 1 + static_cast<int>(rng() % 9);
    for (int k = 0; k < s; ++k) {
      BadPoint p{1 + static_cast<int>(rng() % 4), rng() & mask, false};
      if (k == s - 1) p.norm = total;
      total ^= p.norm;
      c.points.push_back(p);
    }
    ASSERT_TRUE(validate(c).ok());
    std::vector<std::uint64_t> norms;
    for (const auto& p : c.points) norms.push_back(p.norm);
    const std::uint64_t order = kernel_order(norms);
    ASSERT_EQ(h1_module(c).order(), order);
    ASSERT_EQ(h1_pic(c).order(), order / 2);
  }
}

TEST(Conic, BaseChangeLaws) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const ConicConfig c = random_quasi_finite(rng);
    const int a = 1 + static_cast<int>(rng() % 6), b = 1 + static_cast<int>(rng() % 6);
    ASSERT_EQ(base_change(c, 1), c);
    ASSERT_EQ(sorted_points(base_change(base_change(c, a), b)), sorted_points(base_change(c, a * b)));
    const ConicConfig ca = base_change(c, a);
    ASSERT_EQ(ca.geometric_fibres(), c.geometric_fibres());
    ASSERT_TRUE(validate(ca).ok());
    // Odd extensions keep every residue alive.
    if (a % 2 == 1) ASSERT_TRUE(ca.relatively_minimal);
    for (const auto& p : ca.points) ASSERT_EQ(p.residue_trivial, p.norm == 0);
  }
}

TEST(Conic, ValidationOrder) {
  ConicConfig c = quasi_finite({1, 1});
  c.points[0] = BadPoint{1, 0, true};
  EXPECT_EQ(validate(c).violation, Violation::Reciprocity);
  c.points[1] = BadPoint{1, 0, true};
  EXPECT_EQ(validate(c).violation, Violation::TrivialResidueInMinimal);
  c.relatively_minimal = false;
  EXPECT_TRUE(validate(c).ok());
  EXPECT_TRUE(h1_pic(c).trivial());

  ConicConfig w;
  w.quasi_finite = false;
  w.character_dim = 2;
  w.points = {BadPoint{1, 0, false}, BadPoint{1, 3, false}, BadPoint{1, 3, false}};
  EXPECT_EQ(validate(w).violation, Violation::ZeroNormInMinimal);
  w.points[1].norm = 4;
  EXPECT_EQ(validate(w).violation, Violation::Malformed);
  EXPECT_EQ(validate(quasi_finite({0, 1, 1})).violation, Violation::Malformed);
  EXPECT_THROW(base_change(w, 2), InvalidConfig);
  EXPECT_THROW(base_change(quasi_finite({1, 1}), 0), std::invalid_argument);
}

TEST(Conic, ParserRoundTripAndErrors) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const ConicConfig c = base_change(random_quasi_finite(rng), 1 + static_cast<int>(rng() % 4));
    ASSERT_EQ(parse_conic_config(format_conic_config(c)), c);
  }
  auto line_of = [](const std::string& text) {
    try {
      parse_conic_config(text);
    } catch (const ConfigParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("schema = 1\npoint degree=x\n"), 2);
  EXPECT_EQ(line_of("# c\nschema = 1\n\nquasi_finite = maybe\n"), 4);
  EXPECT_EQ(line_of("schema = 1\ncharacter_dim = 2\npoint degree=1 norm=1\n"), 3);
  EXPECT_EQ(line_of("schema = 2\n"), 1);
  EXPECT_EQ(line_of("point degree=1\n"), 1);
  EXPECT_EQ(line_of("schema = 1\ncolour = red\n"), 2);
  EXPECT_EQ(line_of("schema = 1\npoint norm=1\n"), 2);
  EXPECT_EQ(line_of("schema = 1\npoint degree=1 residue=maybe\n"), 2);
}
