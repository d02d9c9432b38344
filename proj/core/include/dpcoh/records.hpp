#ifndef DPCOH_RECORDS_HPP_
#define DPCOH_RECORDS_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "dpcoh/enumerate.hpp"

namespace dpcoh {

// Bumped whenever record contents or their computation change; part of the
// class cache key.
inline constexpr const char* kRecordFormatVersion = "dpcoh-records-4";
inline constexpr int kSchemaVersion = 1;

// Class records use the table entry layout (id, degree, char_symbol,
// frame_symbol, expected_index, expected_minimal, expected_h1_trivial,
// expected_tower_trivial, root_cycles, line_cycles) extended with the
// computed data, so a cache file loads as a table.
nlohmann::json to_json(const ClassRecord& r);
ClassRecord class_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ClassDatabase& db);
ClassDatabase class_database_from_json(const nlohmann::json& j);

// Cycle type as a symbol string: lengths with multiplicities, "1^3.2^12".
std::string format_cycle_type(const std::vector<int>& lengths);
std::vector<int> parse_cycle_type(const std::string& text);

struct CacheKey {
  int degree = 0;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 0;
  std::int64_t window = 0;
  std::string version = kRecordFormatVersion;

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

CacheKey cache_key(int degree, const SearchBudget& budget);
// File name for a key inside a cache directory.
std::string cache_file_name(const CacheKey& key);

// Loads `path` if it exists and was written for `key`.
std::optional<ClassDatabase> load_class_cache(const std::filesystem::path& path, const CacheKey& key);
void save_class_cache(const std::filesystem::path& path, const CacheKey& key, const ClassDatabase& db);

// Enumerates through the cache: `cache` may be a directory (file named by
// the key) or a file path.  An empty path disables caching.
ClassDatabase cached_enumerate(int degree, const SearchBudget& budget, const std::filesystem::path& cache);

}  // namespace dpcoh

#endif  // DPCOH_RECORDS_HPP_
