#include "dpcoh/tables.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "dpcoh/records.hpp"

namespace dpcoh {

using nlohmann::json;

std::string to_string(Coverage c) {
  switch (c) {
    case Coverage::Partial: return "partial";
    case Coverage::Minimal: return "minimal";
    case Coverage::All: return "all";
  }
  return "partial";
}

Coverage parse_coverage(const std::string& text) {
  if (text == "partial") return Coverage::Partial;
  if (text == "minimal") return Coverage::Minimal;
  if (text == "all") return Coverage::All;
  throw std::invalid_argument("unknown coverage '" + text + "'");
}

std::string to_string(DiscrepancyKind k) {
  switch (k) {
    case DiscrepancyKind::Index: return "index";
    case DiscrepancyKind::Minimal: return "minimal";
    case DiscrepancyKind::H1: return "h1";
    case DiscrepancyKind::Tower: return "tower";
    case DiscrepancyKind::UnmatchedEntry: return "unmatched-entry";
    case DiscrepancyKind::UnmatchedClass: return "unmatched-class";
  }
  return "unknown";
}

std::string to_string(SymbolKind k) { return k == SymbolKind::Frame ? "frame" : "char"; }

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Verified: return "Verified";
    case Conclusion::Ambiguous: return "Ambiguous";
    case Conclusion::Mismatch: return "Mismatch";
  }
  return "Mismatch";
}

const TableEntry* TableFile::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

FrameSymbol entry_frame(const TableEntry& e) {
  return e.frame_symbol ? *e.frame_symbol : frame_from_char(*e.char_symbol);
}

TableEntry entry_from_json(const json& j, int default_degree) {
  TableEntry e;
  e.id = j.at("id").get<std::string>();
  e.degree = j.value("degree", default_degree);
  if (j.contains("char_symbol")) e.char_symbol = parse_char_symbol(j.at("char_symbol").get<std::string>());
  if (j.contains("frame_symbol")) e.frame_symbol = parse_frame_symbol(j.at("frame_symbol").get<std::string>());
  if (!e.char_symbol && !e.frame_symbol) throw ParseError("entry '" + e.id + "' has no symbol", 0);
  if (e.char_symbol && e.frame_symbol && frame_from_char(*e.char_symbol) != *e.frame_symbol)
    throw ParseError("entry '" + e.id + "': char_symbol and frame_symbol disagree", 0);
  if (j.contains("expected_index")) e.expected_index = j.at("expected_index").get<int>();
  if (j.contains("expected_minimal")) e.expected_minimal = j.at("expected_minimal").get<bool>();
  if (j.contains("expected_h1_trivial")) e.expected_h1_trivial = j.at("expected_h1_trivial").get<bool>();
  if (j.contains("expected_tower_trivial")) e.expected_tower_trivial = j.at("expected_tower_trivial").get<bool>();
  if (j.contains("root_cycles")) e.root_cycles = sorted(parse_cycle_type(j.at("root_cycles").get<std::string>()));
  if (j.contains("line_cycles")) e.line_cycles = sorted(parse_cycle_type(j.at("line_cycles").get<std::string>()));
  e.notes = j.value("notes", "");
  e.origin = j.value("origin", "source");
  return e;
}

}  // namespace

TableFile parse_table_file(const json& j) {
  if (!j.is_object() || !j.contains("schema")) throw SchemaMismatch("table file has no schema version");
  if (j.at("schema") != kSchemaVersion)
    throw SchemaMismatch("table schema " + j.at("schema").dump() + ", expected " + std::to_string(kSchemaVersion));
  TableFile t;
  t.table = j.value("table", j.value("kind", std::string()));
  t.variant = j.value("variant", "");
  t.degree = j.value("degree", 0);
  if (j.contains("coverage")) t.coverage = parse_coverage(j.at("coverage").get<std::string>());
  if (j.contains("provenance")) t.provenance = j.at("provenance");
  std::set<std::string> seen;
  for (const auto& row : j.at("entries")) {
    TableEntry e = entry_from_json(row, t.degree);
    if (!seen.insert(e.id).second) throw DuplicateId("duplicate entry id '" + e.id + "'");
    t.entries.push_back(std::move(e));
  }
  return t;
}

TableFile load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
  return parse_table_file(j);
}

std::vector<TableEntry> load_tables(const std::filesystem::path& path) { return load_table_file(path).entries; }

json to_json(const TableEntry& e) {
  json j;
  j["id"] = e.id;
  j["degree"] = e.degree;
  if (e.char_symbol) j["char_symbol"] = format_symbol(*e.char_symbol);
  if (e.frame_symbol) j["frame_symbol"] = format_symbol(*e.frame_symbol);
  if (e.expected_index) j["expected_index"] = *e.expected_index;
  if (e.expected_minimal) j["expected_minimal"] = *e.expected_minimal;
  if (e.expected_h1_trivial) j["expected_h1_trivial"] = *e.expected_h1_trivial;
  if (e.expected_tower_trivial) j["expected_tower_trivial"] = *e.expected_tower_trivial;
  if (e.root_cycles) j["root_cycles"] = format_cycle_type(*e.root_cycles);
  if (e.line_cycles) j["line_cycles"] = format_cycle_type(*e.line_cycles);
  if (!e.notes.empty()) j["notes"] = e.notes;
  j["origin"] = e.origin;
  return j;
}

json to_json(const TableFile& t) {
  json j;
  j["schema"] = kSchemaVersion;
  j["table"] = t.table;
  j["variant"] = t.variant;
  j["degree"] = t.degree;
  j["coverage"] = to_string(t.coverage);
  j["provenance"] = t.provenance;
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back(to_json(e));
  j["entries"] = entries;
  return j;
}

TableFile export_table(int degree, const std::vector<ClassRecord>& classes) {
  TableFile t;
  t.table = "export";
  t.variant = "computed";
  t.degree = degree;
  t.coverage = Coverage::All;
  t.provenance = {{"source", "class enumeration"}, {"format", kRecordFormatVersion}};
  for (const auto& c : classes) {
    if (c.degree != degree) continue;
    TableEntry e;
    e.id = c.id;
    e.degree = c.degree;
    e.char_symbol = c.char_symbol;
    e.frame_symbol = c.frame_symbol;
    e.expected_index = c.index;
    e.expected_minimal = c.minimal;
    e.expected_h1_trivial = c.h1().trivial();
    e.expected_tower_trivial = !c.first_nonvanishing_power().has_value();
    e.root_cycles = sorted(c.root_cycles);
    e.line_cycles = sorted(c.line_cycles);
    e.origin = "computed";
    t.entries.push_back(std::move(e));
  }
  return t;
}

bool entry_matches(const TableEntry& entry, const ClassRecord& c) {
  if (entry.degree != 0 && entry.degree != c.degree) return false;
  if (entry.frame_symbol && *entry.frame_symbol != c.frame_symbol) return false;
  if (entry.char_symbol && *entry.char_symbol != c.char_symbol) return false;
  if (entry.root_cycles && *entry.root_cycles != sorted(c.root_cycles)) return false;
  if (entry.line_cycles && *entry.line_cycles != sorted(c.line_cycles)) return false;
  return true;
}

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string tower_summary(const ClassRecord& c) {
  const auto r = c.first_nonvanishing_power();
  if (!r) return "trivial at every level";
  return "r=" + std::to_string(*r) + ": " + c.h1_tower.at(*r).to_string();
}

}  // namespace

EntryMatch match_entry(const TableEntry& entry, const std::vector<ClassRecord>& classes) {
  EntryMatch m;
  for (const auto& c : classes) {
    if (!entry_matches(entry, c)) continue;
    m.classes.push_back(&c);
    auto flag = [&](DiscrepancyKind k, std::string expected, std::string computed) {
      m.discrepancies.push_back({k, entry.id, c.id, std::move(expected), std::move(computed)});
    };
    if (entry.expected_index && *entry.expected_index != c.index)
      flag(DiscrepancyKind::Index, std::to_string(*entry.expected_index), std::to_string(c.index));
    if (entry.expected_minimal && *entry.expected_minimal != c.minimal)
      flag(DiscrepancyKind::Minimal, yes_no(*entry.expected_minimal), yes_no(c.minimal));
    if (entry.expected_h1_trivial && *entry.expected_h1_trivial != c.h1().trivial())
      flag(DiscrepancyKind::H1, *entry.expected_h1_trivial ? "0" : "nonzero", c.h1().to_string());
    const bool tower_trivial = !c.first_nonvanishing_power().has_value();
    if (entry.expected_tower_trivial && *entry.expected_tower_trivial != tower_trivial)
      flag(DiscrepancyKind::Tower, *entry.expected_tower_trivial ? "trivial at every level" : "nonzero at some level",
           tower_summary(c));
  }
  return m;
}

std::vector<Discrepancy> audit_tables(const TableFile& table, const std::vector<ClassRecord>& classes) {
  std::vector<Discrepancy> out;
  std::set<const ClassRecord*> matched;
  for (const auto& e : table.entries) {
    EntryMatch m = match_entry(e, classes);
    if (m.classes.empty()) out.push_back({DiscrepancyKind::UnmatchedEntry, e.id, "", "a matching class", "none"});
    matched.insert(m.classes.begin(), m.classes.end());
    out.insert(out.end(), m.discrepancies.begin(), m.discrepancies.end());
  }
  if (table.coverage != Coverage::Partial)
    for (const auto& c : classes) {
      if (table.degree != 0 && c.degree != table.degree) continue;
      if (table.coverage == Coverage::Minimal && !c.minimal) continue;
      if (!matched.count(&c)) out.push_back({DiscrepancyKind::UnmatchedClass, "", c.id, "a table entry", "none"});
    }
  return out;
}

DescentScript load_descent_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
  if (!j.is_object() || j.value("schema", 0) != kSchemaVersion) throw SchemaMismatch(path.string() + ": expected schema 1");
  DescentScript s;
  for (const auto& [deg, file] : j.at("tables").items()) s.tables[std::stoi(deg)] = file.get<std::string>();
  for (const auto& row : j.at("steps")) {
    ScriptedStep step;
    step.source_id = row.at("source").get<std::string>();
    step.r = row.at("r").get<int>();
    if (step.r < 1) throw std::invalid_argument(step.source_id + ": r must be positive");
    const std::string kind = row.value("kind", "frame");
    if (kind != "frame" && kind != "char") throw std::invalid_argument(step.source_id + ": unknown kind '" + kind + "'");
    step.kind = kind == "frame" ? SymbolKind::Frame : SymbolKind::Char;
    if (row.contains("quoted")) step.quoted = row.at("quoted").get<std::string>();
    if (row.contains("expected_match")) step.expected_match = row.at("expected_match").get<std::string>();
    s.steps.push_back(std::move(step));
  }
  return s;
}

std::string render_like_quote(SymbolKind kind, const FrameSymbol& f) {
  return kind == SymbolKind::Frame ? format_symbol_tex(f) : format_symbol(char_from_frame(f));
}

std::string normalize_quote(SymbolKind kind, const std::string& quoted) {
  std::string out;
  for (char ch : quoted) {
    if (ch == ' ' || ch == '\t' || ch == '\n') continue;
    out += (kind == SymbolKind::Char && ch == ',') ? '.' : ch;
  }
  return out;
}

bool DescentStep::ok() const {
  if (conclusion != Conclusion::Verified) return false;
  if (quoted_match && !*quoted_match) return false;
  if (expected_match && matches != std::vector<std::string>{*expected_match}) return false;
  return true;
}

namespace {

ScopeResult class_scope(const FrameSymbol& target, const std::vector<ClassRecord>& classes, bool minimal_only) {
  ScopeResult s;
  const ClassRecord* hit = nullptr;
  for (const auto& c : classes) {
    if (minimal_only && !c.minimal) continue;
    if (c.frame_symbol != target) continue;
    s.matches.push_back(c.id);
    hit = &c;
  }
  if (s.matches.size() > 1)
    s.conclusion = Conclusion::Ambiguous;
  else if (hit && !hit->h1().trivial())
    s.conclusion = Conclusion::Verified;
  return s;
}

}  // namespace

DescentStep replay_descent(const std::string& source_id, int r, const std::vector<TableEntry>& table,
                           const std::vector<ClassRecord>& classes, SymbolKind kind) {
  if (r < 1) throw std::invalid_argument("replay_descent: r must be positive");
  const auto source = std::find_if(table.begin(), table.end(), [&](const TableEntry& e) { return e.id == source_id; });
  if (source == table.end()) throw UnknownEntry("no table entry '" + source_id + "'");
  const EntryMatch sm = match_entry(*source, classes);
  if (sm.classes.size() != 1)
    throw AmbiguousClassMatch("entry '" + source_id + "' matches " + std::to_string(sm.classes.size()) + " classes");
  const ClassRecord& g = *sm.classes.front();

  DescentStep step;
  step.source_id = source_id;
  step.r = r;
  step.kind = kind;
  step.source_class = g.id;
  FrameSymbol target;
  if (kind == SymbolKind::Frame) {
    target = power_frame(g.frame_symbol, r);
    step.computed_symbol = format_symbol(target);
  } else {
    const CharSymbol c = power_char(g.char_symbol, r);
    target = frame_from_char(c);
    step.computed_symbol = format_symbol(c);
  }
  step.rendered = render_like_quote(kind, target);

  const TableEntry* hit = nullptr;
  for (const auto& e : table) {
    if (e.degree != g.degree || entry_frame(e) != target) continue;
    step.matches.push_back(e.id);
    hit = &e;
  }
  if (step.matches.size() > 1) {
    step.conclusion = Conclusion::Ambiguous;
  } else if (hit) {
    const EntryMatch tm = match_entry(*hit, classes);
    if (tm.classes.size() > 1) {
      step.conclusion = Conclusion::Ambiguous;
    } else if (tm.classes.size() == 1) {
      step.matched_class = tm.classes.front()->id;
      step.matched_h1_nontrivial = !tm.classes.front()->h1().trivial();
      step.conclusion = step.matched_h1_nontrivial ? Conclusion::Verified : Conclusion::Mismatch;
    }
  }
  step.all_classes = class_scope(target, classes, false);
  step.minimal_classes = class_scope(target, classes, true);
  step.scope_sensitive =
      step.all_classes.conclusion != step.conclusion || step.minimal_classes.conclusion != step.conclusion;
  return step;
}

DescentStep replay_descent(const ScriptedStep& s, const std::vector<TableEntry>& table,
                           const std::vector<ClassRecord>& classes) {
  DescentStep step = replay_descent(s.source_id, s.r, table, classes, s.kind);
  step.expected_match = s.expected_match;
  if (s.quoted) {
    step.quoted = s.quoted;
    step.quoted_match = step.rendered == normalize_quote(s.kind, *s.quoted);
  }
  return step;
}

std::vector<DescentStep> replay_script(const DescentScript& script, const std::filesystem::path& base_dir,
                                       const ClassProvider& classes) {
  std::map<int, std::vector<TableEntry>> tables;
  for (const auto& [degree, file] : script.tables) tables[degree] = load_tables(base_dir / file);
  std::vector<DescentStep> out;
  for (const auto& s : script.steps) {
    const std::vector<TableEntry>* table = nullptr;
    int degree = 0;
    for (const auto& [d, entries] : tables)
      for (const auto& e : entries)
        if (e.id == s.source_id) {
          table = &entries;
          degree = d;
        }
    if (!table) throw UnknownEntry("no table entry '" + s.source_id + "'");
    out.push_back(replay_descent(s, *table, classes(degree)));
  }
  return out;
}

TheoremReport verify_theorem(int degree, const std::vector<ClassRecord>& classes, bool heuristic,
                             const std::vector<TableEntry>* table) {
  if (degree < 1 || degree > 4) throw std::invalid_argument("verify_theorem: degree must be in 1..4");
  TheoremReport rep;
  rep.degree = degree;
  rep.heuristic = heuristic;
  for (const auto& c : classes) {
    if (c.degree != degree) continue;
    ++rep.classes_examined;
    if (!c.minimal) continue;
    TheoremRow row{c.id, c.first_nonvanishing_power()};
    if (!row.witness) rep.failures.push_back(c.id);
    rep.rows.push_back(std::move(row));
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) { return a.class_id < b.class_id; });
  std::sort(rep.failures.begin(), rep.failures.end());
  if (table)
    for (const auto& e : *table)
      if (e.degree == degree && match_entry(e, classes).classes.empty()) rep.unrealized_entries.push_back(e.id);
  return rep;
}

json to_json(const Discrepancy& d) {
  return {{"kind", to_string(d.kind)}, {"entry", d.entry_id}, {"class", d.class_id},
          {"expected", d.expected}, {"computed", d.computed}};
}

json to_json(const std::vector<Discrepancy>& ds) {
  json list = json::array();
  for (const auto& d : ds) list.push_back(to_json(d));
  return {{"kind", "audit-report"}, {"schema", kSchemaVersion}, {"discrepancies", list}, {"count", ds.size()}};
}

namespace {

json scope_json(const ScopeResult& s) { return {{"matches", s.matches}, {"conclusion", to_string(s.conclusion)}}; }

}  // namespace

json to_json(const DescentStep& s) {
  json j;
  j["source"] = s.source_id;
  j["r"] = s.r;
  j["kind"] = to_string(s.kind);
  j["source_class"] = s.source_class;
  j["computed_symbol"] = s.computed_symbol;
  j["rendered"] = s.rendered;
  j["matches"] = s.matches;
  j["matched_class"] = s.matched_class ? json(*s.matched_class) : json(nullptr);
  j["matched_h1_nontrivial"] = s.matched_h1_nontrivial;
  j["conclusion"] = to_string(s.conclusion);
  j["scope_all_classes"] = scope_json(s.all_classes);
  j["scope_minimal_classes"] = scope_json(s.minimal_classes);
  j["scope_sensitive"] = s.scope_sensitive;
  j["quoted"] = s.quoted ? json(*s.quoted) : json(nullptr);
  j["quoted_match"] = s.quoted_match ? json(*s.quoted_match) : json(nullptr);
  j["expected_match"] = s.expected_match ? json(*s.expected_match) : json(nullptr);
  j["ok"] = s.ok();
  return j;
}

json to_json(const TheoremReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"class", row.class_id}, {"witness_r", row.witness ? json(*row.witness) : json("FAILURE")}});
  return {{"kind", "theorem-report"},
          {"schema", kSchemaVersion},
          {"degree", r.degree},
          {"coverage", r.heuristic ? "heuristic" : "exhaustive"},
          {"status", r.pass() ? "PASS" : "FAIL"},
          {"classes_examined", r.classes_examined},
          {"minimal_classes", r.rows.size()},
          {"rows", rows},
          {"failures", r.failures},
          {"unrealized_entries", r.unrealized_entries}};
}

namespace {

void flatten_into(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten_into(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> flatten_report(const json& report) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into(report, "", out);
  return out;
}

std::string render_text(const json& report) {
  std::string text;
  for (const auto& [path, value] : flatten_report(report)) text += path + ": " + value + "\n";
  return text;
}

}  // namespace dpcoh
