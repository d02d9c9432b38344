#include <gtest/gtest.h>

#include <fstream>

#include "dpcoh/records.hpp"
#include "support.hpp"

using namespace dpcoh;
using dpcoh::testing::classes_for;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dpcoh-records-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Records, CycleTypeFormat) {
  EXPECT_EQ(format_cycle_type({1, 1, 1, 2, 2}), "1^3.2^2");
  EXPECT_EQ(format_cycle_type({4}), "4");
  EXPECT_EQ(parse_cycle_type("1^3.2^2"), (std::vector<int>{1, 1, 1, 2, 2}));
  EXPECT_EQ(parse_cycle_type(format_cycle_type({3, 3, 6, 1})), (std::vector<int>{1, 3, 3, 6}));
}

TEST(Records, ClassRecordRoundTrip) {
  for (int d : {4, 3}) {
    for (const auto& c : classes_for(d).classes) {
      const nlohmann::json j = to_json(c);
      const ClassRecord back = class_record_from_json(j);
      ASSERT_EQ(to_json(back), j) << c.id;
      ASSERT_EQ(back.key, c.key);
      ASSERT_EQ(back.representative, c.representative);
      ASSERT_EQ(back.h1_tower, c.h1_tower);
      ASSERT_EQ(back.fingerprint(), c.fingerprint());
    }
  }
}

TEST(Records, DatabaseRoundTrip) {
  const ClassDatabase& db = classes_for(4);
  const nlohmann::json j = to_json(db);
  EXPECT_EQ(j.at("coverage"), "all");
  EXPECT_EQ(to_json(class_database_from_json(j)), j);
}

TEST(Records, CacheKeyIgnoresSearchParametersInExhaustiveMode) {
  SearchBudget a, b;
  b.seed = 99;
  b.window = 7;
  EXPECT_EQ(cache_key(3, a), cache_key(3, b));
  a.mode = b.mode = SearchMode::Random;
  EXPECT_NE(cache_key(3, a), cache_key(3, b));
  EXPECT_EQ(cache_file_name(cache_key(1, a)), std::string("classes-d1-random-s1-w50000-") + kRecordFormatVersion + ".json");
  EXPECT_EQ(cache_file_name(cache_key(4, SearchBudget{})), std::string("classes-d4-exhaustive-") + kRecordFormatVersion + ".json");
}

TEST(Records, CacheStoresAndReloads) {
  const auto dir = scratch_dir("reload");
  const ClassDatabase first = cached_enumerate(5, SearchBudget{}, dir.string() + "/");
  const auto file = dir / cache_file_name(cache_key(5, SearchBudget{}));
  ASSERT_TRUE(std::filesystem::exists(file));
  const auto loaded = load_class_cache(file, cache_key(5, SearchBudget{}));
  ASSERT_TRUE(loaded);
  EXPECT_EQ(to_json(*loaded), to_json(first));
  EXPECT_EQ(to_json(cached_enumerate(5, SearchBudget{}, dir)), to_json(first));
  std::filesystem::remove_all(dir);
}

TEST(Records, StaleOrCorruptCacheIsRejected) {
  const auto dir = scratch_dir("stale");
  const auto file = dir / "c.json";
  const CacheKey key = cache_key(6, SearchBudget{});
  save_class_cache(file, key, enumerate_classes(6, SearchBudget{}));
  ASSERT_TRUE(load_class_cache(file, key));

  CacheKey old = key;
  old.version = "dpcoh-records-0";
  EXPECT_FALSE(load_class_cache(file, old));
  EXPECT_FALSE(load_class_cache(file, cache_key(5, SearchBudget{})));

  { std::ofstream(file) << "{\"kind\": \"class-cache\", "; }
  EXPECT_FALSE(load_class_cache(file, key));
  EXPECT_FALSE(load_class_cache(dir / "missing.json", key));
  // cached_enumerate recomputes and overwrites the corrupt file.
  EXPECT_EQ(cached_enumerate(6, SearchBudget{}, file).classes.size(), 6u);
  EXPECT_TRUE(load_class_cache(file, key));
  std::filesystem::remove_all(dir);
}
