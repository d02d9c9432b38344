#ifndef DPCOH_TABLES_HPP_
#define DPCOH_TABLES_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpcoh/enumerate.hpp"
#include "dpcoh/symbols.hpp"

namespace dpcoh {

class DuplicateId : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AmbiguousClassMatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row of a transcribed classification table.  Every expectation is
// optional; absent fields are not compared.
struct TableEntry {
  std::string id;
  int degree = 0;
  std::optional<CharSymbol> char_symbol;
  std::optional<FrameSymbol> frame_symbol;
  std::optional<int> expected_index;
  std::optional<bool> expected_minimal;
  std::optional<bool> expected_h1_trivial;
  // Claim that H^1 vanishes at every level of the tower.
  std::optional<bool> expected_tower_trivial;
  std::optional<std::vector<int>> root_cycles;
  std::optional<std::vector<int>> line_cycles;
  std::string notes;
  // "source" for rows whose symbol is stated by the cited source, "derived"
  // for rows reconstructed by elimination.
  std::string origin = "source";
};

// Which classes a table claims to list.  Unmatched classes are only
// reported for Minimal and All.
enum class Coverage { Partial, Minimal, All };

std::string to_string(Coverage c);
Coverage parse_coverage(const std::string& text);

struct TableFile {
  std::string table;
  std::string variant;
  int degree = 0;
  Coverage coverage = Coverage::Partial;
  nlohmann::json provenance = nlohmann::json::object();
  std::vector<TableEntry> entries;

  const TableEntry* find(const std::string& id) const;
};

// Accepts table files and class-cache files (schema 1).  Symbol errors are
// rethrown as ParseError with the offset inside the symbol string.
TableFile parse_table_file(const nlohmann::json& j);
TableFile load_table_file(const std::filesystem::path& path);
std::vector<TableEntry> load_tables(const std::filesystem::path& path);
nlohmann::json to_json(const TableEntry& e);
nlohmann::json to_json(const TableFile& t);

// Every class as a table entry carrying all comparable fields.
TableFile export_table(int degree, const std::vector<ClassRecord>& classes);

enum class DiscrepancyKind { Index, Minimal, H1, Tower, UnmatchedEntry, UnmatchedClass };
std::string to_string(DiscrepancyKind k);

struct Discrepancy {
  DiscrepancyKind kind = DiscrepancyKind::Index;
  std::string entry_id;  // empty for UnmatchedClass
  std::string class_id;  // empty for UnmatchedEntry
  std::string expected;
  std::string computed;

  friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
  friend auto operator<=>(const Discrepancy&, const Discrepancy&) = default;
};

struct EntryMatch {
  std::vector<const ClassRecord*> classes;
  std::vector<Discrepancy> discrepancies;
};

// Classes whose symbols (and cycle types, when given) equal the entry's.
// Symbols are compared after conversion, so a char-only entry matches on
// the Frame symbol it determines.
bool entry_matches(const TableEntry& entry, const ClassRecord& c);
EntryMatch match_entry(const TableEntry& entry, const std::vector<ClassRecord>& classes);

std::vector<Discrepancy> audit_tables(const TableFile& table, const std::vector<ClassRecord>& classes);

enum class SymbolKind { Frame, Char };
enum class Conclusion { Verified, Ambiguous, Mismatch };
std::string to_string(SymbolKind k);
std::string to_string(Conclusion c);

struct ScriptedStep {
  std::string source_id;
  int r = 1;
  SymbolKind kind = SymbolKind::Frame;
  // The symbol as printed where the step is stated, blanks and all.
  std::optional<std::string> quoted;
  std::optional<std::string> expected_match;
};

struct DescentScript {
  // Table file per degree, relative to the script's directory.
  std::map<int, std::filesystem::path> tables;
  std::vector<ScriptedStep> steps;
};

DescentScript load_descent_script(const std::filesystem::path& path);

struct ScopeResult {
  std::vector<std::string> matches;
  Conclusion conclusion = Conclusion::Mismatch;
};

struct DescentStep {
  std::string source_id;
  int r = 1;
  SymbolKind kind = SymbolKind::Frame;
  std::string source_class;
  std::string computed_symbol;  // canonical grammar
  // Table-scope matches; the conclusion is taken from this scope.
  std::vector<std::string> matches;
  std::optional<std::string> matched_class;
  bool matched_h1_nontrivial = false;
  Conclusion conclusion = Conclusion::Mismatch;
  ScopeResult all_classes;
  ScopeResult minimal_classes;
  // Conclusion differs between the table and class scopes.
  bool scope_sensitive = false;
  std::optional<std::string> quoted;
  std::string rendered;  // computed symbol in the quoted notation
  std::optional<bool> quoted_match;
  std::optional<std::string> expected_match;

  // Verified, quote reproduced, expected entry hit.
  bool ok() const;
};

// Quoted Frame symbols carry every exponent ("1^{-1}.2^2.5^{-1}.10^1");
// quoted eigenvalue lists use ", " between terms ("1, 3^6").  Blanks are
// dropped before the byte comparison.
std::string render_like_quote(SymbolKind kind, const FrameSymbol& f);
std::string normalize_quote(SymbolKind kind, const std::string& quoted);

DescentStep replay_descent(const std::string& source_id, int r, const std::vector<TableEntry>& table,
                           const std::vector<ClassRecord>& classes, SymbolKind kind = SymbolKind::Frame);
DescentStep replay_descent(const ScriptedStep& step, const std::vector<TableEntry>& table,
                           const std::vector<ClassRecord>& classes);

using ClassProvider = std::function<const std::vector<ClassRecord>&(int degree)>;
std::vector<DescentStep> replay_script(const DescentScript& script, const std::filesystem::path& base_dir,
                                       const ClassProvider& classes);

struct TheoremRow {
  std::string class_id;
  std::optional<std::int64_t> witness;
};

struct TheoremReport {
  int degree = 0;
  bool heuristic = false;
  std::vector<TheoremRow> rows;  // minimal classes, id-sorted
  std::vector<std::string> failures;
  // Entries of the supplied table with no matching class.
  std::vector<std::string> unrealized_entries;
  std::size_t classes_examined = 0;

  bool pass() const { return failures.empty() && unrealized_entries.empty(); }
};

TheoremReport verify_theorem(int degree, const std::vector<ClassRecord>& classes, bool heuristic = false,
                             const std::vector<TableEntry>* table = nullptr);

nlohmann::json to_json(const Discrepancy& d);
nlohmann::json to_json(const std::vector<Discrepancy>& ds);
nlohmann::json to_json(const DescentStep& s);
nlohmann::json to_json(const TheoremReport& r);

// Leaves of a report as (path, value) pairs: "rows[0].witness", "3".
// Strings appear unquoted, empty containers as "[]" / "{}".
std::vector<std::pair<std::string, std::string>> flatten_report(const nlohmann::json& report);
// Plain-text rendering of a report: one "path: value" line per leaf.
std::string render_text(const nlohmann::json& report);

}  // namespace dpcoh

#endif  // DPCOH_TABLES_HPP_
