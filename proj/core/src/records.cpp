#include "dpcoh/records.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dpcoh/symbols.hpp"

namespace dpcoh {

using nlohmann::json;

std::string format_cycle_type(const std::vector<int>& lengths) {
  std::map<int, int> counts;
  for (int len : lengths) ++counts[len];
  std::string s;
  for (auto [len, count] : counts) {
    if (!s.empty()) s += '.';
    s += std::to_string(len);
    if (count != 1) s += "^" + std::to_string(count);
  }
  return s;
}

std::vector<int> parse_cycle_type(const std::string& text) {
  std::vector<int> lengths;
  for (auto [len, count] : parse_symbol(text)) {
    if (count < 0) throw ParseError("cycle counts must be positive", 0);
    lengths.insert(lengths.end(), static_cast<std::size_t>(count), len);
  }
  return lengths;
}

namespace {

std::string key_hex(ElementKey key) {
  std::ostringstream out;
  out << std::hex << key;
  return out.str();
}

ElementKey key_from_hex(const std::string& s) { return std::stoull(s, nullptr, 16); }

}  // namespace

json to_json(const ClassRecord& r) {
  json j;
  j["id"] = r.id;
  j["degree"] = r.degree;
  j["char_symbol"] = format_symbol(r.char_symbol);
  j["frame_symbol"] = format_symbol(r.frame_symbol);
  j["expected_index"] = r.index;
  j["expected_minimal"] = r.minimal;
  j["expected_h1_trivial"] = r.h1().trivial();
  j["expected_tower_trivial"] = !r.first_nonvanishing_power().has_value();
  j["root_cycles"] = format_cycle_type(r.root_cycles);
  j["line_cycles"] = format_cycle_type(r.line_cycles);
  j["key"] = key_hex(r.key);
  j["order"] = r.order;
  j["invariant_rank"] = r.invariant_rank;
  json tower = json::object();
  for (const auto& [k, h] : r.h1_tower) tower[std::to_string(k)] = h.to_compact();
  j["h1_tower"] = tower;
  if (r.class_size) j["class_size"] = *r.class_size;
  json rows = json::array();
  for (int i = 0; i < r.representative.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < r.representative.size(); ++k) row.push_back(r.representative(i, k));
    rows.push_back(row);
  }
  j["representative"] = rows;
  return j;
}

ClassRecord class_record_from_json(const json& j) {
  ClassRecord r;
  r.id = j.at("id").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.key = key_from_hex(j.at("key").get<std::string>());
  r.order = j.at("order").get<std::int64_t>();
  r.char_symbol = parse_char_symbol(j.at("char_symbol").get<std::string>());
  r.frame_symbol = parse_frame_symbol(j.at("frame_symbol").get<std::string>());
  r.index = j.at("expected_index").get<int>();
  r.minimal = j.at("expected_minimal").get<bool>();
  r.invariant_rank = j.at("invariant_rank").get<int>();
  for (const auto& [k, v] : j.at("h1_tower").items())
    r.h1_tower[std::stoll(k)] = AbelianGroupInvariants::from_compact(v.get<std::string>());
  if (j.contains("class_size")) r.class_size = j.at("class_size").get<std::int64_t>();
  r.root_cycles = parse_cycle_type(j.at("root_cycles").get<std::string>());
  r.line_cycles = parse_cycle_type(j.at("line_cycles").get<std::string>());
  const auto& rows = j.at("representative");
  r.representative = SquareMatrix(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      r.representative(static_cast<int>(i), static_cast<int>(k)) = rows[i][k].get<std::int64_t>();
  return r;
}

json to_json(const ClassDatabase& db) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "class-cache";
  j["version"] = kRecordFormatVersion;
  j["degree"] = db.degree;
  j["mode"] = to_string(db.mode);
  j["seed"] = db.seed;
  j["window"] = db.window;
  j["heuristic"] = db.heuristic;
  j["coverage"] = db.heuristic ? "partial" : "all";
  if (db.group_order) j["group_order"] = *db.group_order;
  if (db.group_order_second_run) j["group_order_second_run"] = *db.group_order_second_run;
  j["draws"] = db.draws;
  json entries = json::array();
  for (const auto& c : db.classes) entries.push_back(to_json(c));
  j["entries"] = entries;
  json unresolved = json::array();
  for (const auto& p : db.unresolved) unresolved.push_back({p.first, p.second});
  j["unresolved"] = unresolved;
  return j;
}

ClassDatabase class_database_from_json(const json& j) {
  ClassDatabase db;
  db.degree = j.at("degree").get<int>();
  db.mode = parse_search_mode(j.at("mode").get<std::string>());
  db.seed = j.at("seed").get<std::uint64_t>();
  db.window = j.at("window").get<std::int64_t>();
  db.heuristic = j.at("heuristic").get<bool>();
  if (j.contains("group_order")) db.group_order = j.at("group_order").get<std::int64_t>();
  if (j.contains("group_order_second_run")) db.group_order_second_run = j.at("group_order_second_run").get<std::int64_t>();
  db.draws = j.at("draws").get<std::int64_t>();
  for (const auto& e : j.at("entries")) db.classes.push_back(class_record_from_json(e));
  for (const auto& p : j.at("unresolved")) db.unresolved.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
  return db;
}

CacheKey cache_key(int degree, const SearchBudget& budget) {
  CacheKey k;
  k.degree = degree;
  k.mode = budget.mode;
  if (budget.mode == SearchMode::Random) {
    k.seed = budget.seed;
    k.window = budget.window;
  }
  return k;
}

std::string cache_file_name(const CacheKey& key) {
  std::string name = "classes-d" + std::to_string(key.degree) + "-" + to_string(key.mode);
  if (key.mode == SearchMode::Random) name += "-s" + std::to_string(key.seed) + "-w" + std::to_string(key.window);
  return name + "-" + key.version + ".json";
}

std::optional<ClassDatabase> load_class_cache(const std::filesystem::path& path, const CacheKey& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
    if (j.value("kind", "") != "class-cache" || j.value("version", "") != key.version) return std::nullopt;
    ClassDatabase db = class_database_from_json(j);
    if (cache_key(db.degree, SearchBudget{db.mode, db.window, 0, db.seed}) != key) return std::nullopt;
    return db;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable or stale cache: recompute
  }
}

void save_class_cache(const std::filesystem::path& path, const CacheKey& key, const ClassDatabase& db) {
  json j = to_json(db);
  j["version"] = key.version;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write class cache " + tmp.string());
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

ClassDatabase cached_enumerate(int degree, const SearchBudget& budget, const std::filesystem::path& cache) {
  if (cache.empty()) return enumerate_classes(degree, budget);
  const CacheKey key = cache_key(degree, budget);
  std::filesystem::path file = cache;
  if (std::filesystem::is_directory(cache) || cache.string().back() == '/') file = cache / cache_file_name(key);
  if (auto db = load_class_cache(file, key)) return *db;
  ClassDatabase db = enumerate_classes(degree, budget);
  save_class_cache(file, key, db);
  return db;
}

}  // namespace dpcoh
