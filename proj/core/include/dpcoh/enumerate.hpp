#ifndef DPCOH_ENUMERATE_HPP_
#define DPCOH_ENUMERATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcoh/lattice_aut.hpp"
#include "dpcoh/linalg.hpp"
#include "dpcoh/root_system.hpp"
#include "dpcoh/symbols.hpp"
#include "dpcoh/weyl.hpp"

namespace dpcoh {

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SearchMode { Exhaustive, Random };

std::string to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& text);

struct SearchBudget {
  SearchMode mode = SearchMode::Exhaustive;
  // Random mode stops after this many consecutive draws without a new class.
  std::int64_t window = 50000;
  // Random mode gives up (BudgetExhausted) after this many draws in total.
  std::int64_t max_draws = 5'000'000;
  std::uint64_t seed = 1;
  // Worker threads; 1 runs everything on the calling thread.
  int jobs = 1;
  // Search nodes allowed per conjugacy test before a pair is left unresolved.
  std::int64_t node_budget = 2'000'000;
};

// One conjugacy class of W with its invariants.
struct ClassRecord {
  std::string id;
  int degree = 0;
  ElementKey key = 0;  // images of the simple roots of the representative
  SquareMatrix representative;
  std::int64_t order = 1;
  CharSymbol char_symbol;
  FrameSymbol frame_symbol;
  std::map<std::int64_t, AbelianGroupInvariants> h1_tower;
  int index = 0;
  bool minimal = false;
  int invariant_rank = 0;
  std::optional<std::int64_t> class_size;
  std::vector<int> root_cycles;
  std::vector<int> line_cycles;

  const AbelianGroupInvariants& h1() const { return h1_tower.at(1); }
  std::optional<std::int64_t> first_nonvanishing_power() const;
  Fingerprint fingerprint() const;
  LatticeAut aut() const { return LatticeAut(degree, representative); }
};

// All invariants of the class of the element with the given key.
ClassRecord make_class_record(const RootSystem& rs, ElementKey key);

struct UnresolvedPair {
  std::string first;
  std::string second;
};

struct ClassDatabase {
  int degree = 0;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 0;
  std::int64_t window = 0;
  // True when completeness is not certified (random mode).
  bool heuristic = false;
  std::optional<std::int64_t> group_order;
  std::optional<std::int64_t> group_order_second_run;
  std::int64_t draws = 0;
  std::vector<ClassRecord> classes;
  std::vector<UnresolvedPair> unresolved;

  const ClassRecord& by_id(const std::string& id) const;
};

// Every element of W as a sorted list of keys, by breadth-first search on
// the Cayley graph with the simple reflections taken in `generator_order`.
std::vector<ElementKey> enumerate_group(const RootSystem& rs, std::span<const int> generator_order, int jobs = 1);

// Key of s_i w s_i.
ElementKey conjugate_by_simple(const RootSystem& rs, ElementKey key, int i);
// Key of s_i w.
ElementKey left_multiply_simple(const RootSystem& rs, ElementKey key, int i);

// Exhaustive mode is available for degrees 2..6; random mode for 1..6.
ClassDatabase enumerate_classes(int degree, const SearchBudget& budget);

}  // namespace dpcoh

#endif  // DPCOH_ENUMERATE_HPP_
