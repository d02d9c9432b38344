#include "dpcoh/enumerate.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "dpcoh/cohomology.hpp"
#include "dpcoh/minimality.hpp"
#include "parallel.hpp"

namespace dpcoh {

std::string to_string(SearchMode mode) { return mode == SearchMode::Exhaustive ? "exhaustive" : "random"; }

SearchMode parse_search_mode(const std::string& text) {
  if (text == "exhaustive") return SearchMode::Exhaustive;
  if (text == "random") return SearchMode::Random;
  throw std::invalid_argument("unknown search mode '" + text + "'");
}

std::optional<std::int64_t> ClassRecord::first_nonvanishing_power() const {
  return dpcoh::first_nonvanishing_power(h1_tower);
}

Fingerprint ClassRecord::fingerprint() const { return {order, char_symbol, root_cycles, line_cycles}; }

const ClassRecord& ClassDatabase::by_id(const std::string& id) const {
  for (const auto& c : classes)
    if (c.id == id) return c;
  throw std::out_of_range("no class with id '" + id + "'");
}

ClassRecord make_class_record(const RootSystem& rs, ElementKey key) {
  ClassRecord r;
  r.degree = rs.degree();
  r.key = key;
  r.representative = rs.matrix_of_key(key);
  const RootPerm perm = rs.perm_of(r.representative);
  r.order = perm_order(perm);
  r.char_symbol = char_symbol(r.representative);
  r.frame_symbol = frame_from_char(r.char_symbol);
  r.h1_tower = h1_tower(r.representative);
  r.invariant_rank = r.char_symbol.multiplicity(1);
  const std::vector<int> lines = rs.line_perm_of(r.representative);
  r.index = index_of(rs.degree(), line_orbits(rs.degree(), lines), r.invariant_rank);
  r.minimal = r.index == 0;
  r.root_cycles = cycle_type(std::span<const std::uint8_t>(perm));
  r.line_cycles = cycle_type(std::span<const int>(lines));
  return r;
}

ElementKey left_multiply_simple(const RootSystem& rs, ElementKey key, int i) {
  const int r = rs.simple_roots()[static_cast<std::size_t>(i)];
  ElementKey out = 0;
  for (int j = 0; j < rs.num_simple(); ++j) {
    const int img = static_cast<int>((key >> (8 * j)) & 0xff);
    out |= static_cast<ElementKey>(rs.reflect(r, img)) << (8 * j);
  }
  return out;
}

ElementKey conjugate_by_simple(const RootSystem& rs, ElementKey key, int i) {
  // (s_i w s_i)(a_j) = s_i(w(a_j + (a_j.a_i) a_i)).
  const int r = rs.simple_roots()[static_cast<std::size_t>(i)];
  const int img_i = static_cast<int>((key >> (8 * i)) & 0xff);
  ElementKey out = 0;
  for (int j = 0; j < rs.num_simple(); ++j) {
    const int img_j = static_cast<int>((key >> (8 * j)) & 0xff);
    int t;
    if (j == i) {
      t = rs.negate(img_i);
    } else if (rs.simple_inner(i, j) == 1) {
      t = rs.root_sum(img_j, img_i);
    } else {
      t = img_j;
    }
    out |= static_cast<ElementKey>(rs.reflect(r, t)) << (8 * j);
  }
  return out;
}

namespace {

ElementKey identity_key(const RootSystem& rs) { return rs.key_of(rs.identity_perm()); }

ElementKey key_from_perm_images(const RootSystem& rs, const RootPerm& p) { return rs.key_of(p); }

}  // namespace

std::vector<ElementKey> enumerate_group(const RootSystem& rs, std::span<const int> generator_order, int jobs) {
  // Left multiplication by a simple reflection changes length by exactly
  // one, so the neighbours of layer l lie in layers l - 1 and l + 1.
  std::vector<ElementKey> all;
  std::vector<ElementKey> previous, layer{identity_key(rs)};
  while (!layer.empty()) {
    all.insert(all.end(), layer.begin(), layer.end());
    const std::size_t chunks = static_cast<std::size_t>(std::max(1, jobs));
    std::vector<std::vector<ElementKey>> parts(chunks);
    detail::parallel_for(chunks, jobs, [&](std::size_t c) {
      const std::size_t lo = layer.size() * c / chunks, hi = layer.size() * (c + 1) / chunks;
      auto& out = parts[c];
      out.reserve((hi - lo) * generator_order.size());
      for (std::size_t k = lo; k < hi; ++k)
        for (int g : generator_order) out.push_back(left_multiply_simple(rs, layer[k], g));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    });
    std::vector<ElementKey> candidates;
    for (auto& part : parts) {
      std::vector<ElementKey> merged;
      merged.reserve(candidates.size() + part.size());
      std::set_union(candidates.begin(), candidates.end(), part.begin(), part.end(), std::back_inserter(merged));
      candidates.swap(merged);
    }
    std::vector<ElementKey> next;
    next.reserve(candidates.size());
    std::set_difference(candidates.begin(), candidates.end(), previous.begin(), previous.end(),
                        std::back_inserter(next));
    previous = std::move(layer);
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

// Plain breadth-first search with a hash set, making no use of the length
// function; used as the independent second count of |W|.
std::int64_t count_group_hashed(const RootSystem& rs, std::span<const int> generator_order) {
  std::unordered_set<ElementKey> seen;
  std::vector<ElementKey> frontier{identity_key(rs)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<ElementKey> next;
    for (ElementKey k : frontier)
      for (int g : generator_order) {
        const ElementKey n = left_multiply_simple(rs, k, g);
        if (seen.insert(n).second) next.push_back(n);
      }
    frontier.swap(next);
  }
  return static_cast<std::int64_t>(seen.size());
}

struct RawClass {
  ElementKey key;
  std::int64_t size;
};

std::vector<RawClass> exhaustive_classes(const RootSystem& rs, const std::vector<ElementKey>& elements) {
  std::vector<bool> visited(elements.size(), false);
  std::vector<RawClass> out;
  auto locate = [&](ElementKey k) {
    auto it = std::lower_bound(elements.begin(), elements.end(), k);
    if (it == elements.end() || *it != k) throw std::logic_error("exhaustive_classes: conjugate outside group");
    return static_cast<std::size_t>(it - elements.begin());
  };
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < elements.size(); ++start) {
    if (visited[start]) continue;
    // Scanning in ascending key order makes the first element seen the
    // smallest key of its class.
    visited[start] = true;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const ElementKey k = elements[queue[head]];
      for (int i = 0; i < rs.num_simple(); ++i) {
        const std::size_t idx = locate(conjugate_by_simple(rs, k, i));
        if (!visited[idx]) {
          visited[idx] = true;
          queue.push_back(idx);
        }
      }
    }
    out.push_back({elements[start], static_cast<std::int64_t>(queue.size())});
  }
  return out;
}

class RandomSearch {
 public:
  RandomSearch(const RootSystem& rs, const SearchBudget& budget) : rs_(rs), budget_(budget), rng_(budget.seed) {}

  void run() {
    // The identity is a class of its own that random words almost never hit.
    classify(rs_.identity_perm());
    std::int64_t since_new = 0;
    while (since_new < budget_.window) {
      if (draws_ >= budget_.max_draws)
        throw BudgetExhausted("random class search: no stabilization after " + std::to_string(draws_) +
                              " draws (" + std::to_string(reps_.size()) + " classes found)");
      ++draws_;
      ++since_new;
      if (process_draw(draw())) since_new = 0;
    }
  }

  std::int64_t draws() const { return draws_; }
  const std::vector<ElementKey>& representatives() const { return reps_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& unresolved() const { return unresolved_; }

 private:
  ElementKey draw() {
    const int s = rs_.num_simple();
    ElementKey key = identity_key(rs_);
    switch (rng_() % 3) {
      case 0: {
        // Random word in a random standard parabolic subgroup.
        std::vector<int> subset;
        for (int i = 0; i < s; ++i)
          if (rng_() & 1) subset.push_back(i);
        if (subset.empty()) subset.push_back(static_cast<int>(rng_() % static_cast<std::uint64_t>(s)));
        const std::uint64_t len = 1 + rng_() % (8 * subset.size());
        for (std::uint64_t k = 0; k < len; ++k)
          key = left_multiply_simple(rs_, key, subset[rng_() % subset.size()]);
        break;
      }
      case 1: {
        // Product of a few reflections in arbitrary roots.
        const std::uint64_t len = 1 + rng_() % static_cast<std::uint64_t>(s + 1);
        for (std::uint64_t k = 0; k < len; ++k) key = left_multiply_root(key, static_cast<int>(rng_() % rs_.num_roots()));
        break;
      }
      default: {
        // Long random word: close to uniform on W.
        for (int k = 0; k < rs_.num_roots(); ++k)
          key = left_multiply_simple(rs_, key, static_cast<int>(rng_() % static_cast<std::uint64_t>(s)));
        break;
      }
    }
    return key;
  }

  ElementKey left_multiply_root(ElementKey key, int r) const {
    ElementKey out = 0;
    for (int j = 0; j < rs_.num_simple(); ++j) {
      const int img = static_cast<int>((key >> (8 * j)) & 0xff);
      out |= static_cast<ElementKey>(rs_.reflect(r, img)) << (8 * j);
    }
    return out;
  }

  // A draw together with its proper powers and, when -1 lies in W, their
  // negatives: small classes are rarely hit directly.
  bool process_draw(ElementKey key) {
    const RootPerm g = rs_.perm_of_key(key);
    const std::int64_t n = perm_order(g);
    std::vector<RootPerm> family;
    for (std::int64_t d = 1; d < n; ++d)
      if (n % d == 0) family.push_back(power(g, d));
    if (rs_.has_central_negation()) {
      const std::size_t count = family.size();
      for (std::size_t k = 0; k < count; ++k) {
        RootPerm neg(family[k].size());
        for (std::size_t x = 0; x < neg.size(); ++x) neg[x] = static_cast<std::uint8_t>(rs_.negate(family[k][x]));
        family.push_back(std::move(neg));
      }
    }
    bool found = false;
    for (const RootPerm& p : family)
      if (classify(p)) found = true;
    return found;
  }

  bool classify(const RootPerm& p) {
    const ElementKey key = key_from_perm_images(rs_, p);
    if (known_.count(key)) return false;
    const Fingerprint fp = fingerprint(rs_, p);
    auto& bucket = buckets_[fp];
    std::vector<std::size_t> unresolved_with;
    for (std::size_t c : bucket) {
      const ConjugacyResult r = conjugacy(rs_, perms_[c], p, budget_.node_budget, false);
      if (r.verdict == Verdict::Conjugate) {
        remember(key, c);
        return false;
      }
      if (r.verdict == Verdict::Unresolved) unresolved_with.push_back(c);
    }
    const std::size_t id = reps_.size();
    reps_.push_back(key);
    perms_.push_back(p);
    bucket.push_back(id);
    for (std::size_t c : unresolved_with) unresolved_.emplace_back(c, id);
    remember(key, id);
    return true;
  }

  void remember(ElementKey key, std::size_t c) {
    if (known_.size() < kKnownLimit) known_.emplace(key, c);
  }

  static constexpr std::size_t kKnownLimit = 2'000'000;

  const RootSystem& rs_;
  SearchBudget budget_;
  std::mt19937_64 rng_;
  std::int64_t draws_ = 0;
  std::vector<ElementKey> reps_;
  std::vector<RootPerm> perms_;
  std::map<Fingerprint, std::vector<std::size_t>> buckets_;
  std::unordered_map<ElementKey, std::size_t> known_;
  std::vector<std::pair<std::size_t, std::size_t>> unresolved_;
};

bool record_less(const ClassRecord& a, const ClassRecord& b) {
  const Fingerprint fa = a.fingerprint(), fb = b.fingerprint();
  if (fa != fb) return fa < fb;
  return a.key < b.key;
}

}  // namespace

ClassDatabase enumerate_classes(int degree, const SearchBudget& budget) {
  if (degree < 1 || degree > 6) throw BadDegree("enumerate_classes: degree must be in 1..6");
  if (budget.mode == SearchMode::Exhaustive && degree < 2)
    throw std::invalid_argument("enumerate_classes: exhaustive mode needs degree >= 2");
  const RootSystem& rs = root_system(degree);
  ClassDatabase db;
  db.degree = degree;
  db.mode = budget.mode;
  std::vector<ElementKey> keys;
  std::vector<std::optional<std::int64_t>> sizes;
  std::vector<std::pair<std::size_t, std::size_t>> unresolved;
  if (budget.mode == SearchMode::Exhaustive) {
    std::vector<int> gens(static_cast<std::size_t>(rs.num_simple()));
    for (int i = 0; i < rs.num_simple(); ++i) gens[static_cast<std::size_t>(i)] = i;
    const std::vector<ElementKey> elements = enumerate_group(rs, gens, budget.jobs);
    db.group_order = static_cast<std::int64_t>(elements.size());
    std::reverse(gens.begin(), gens.end());
    db.group_order_second_run = count_group_hashed(rs, gens);
    for (const RawClass& c : exhaustive_classes(rs, elements)) {
      keys.push_back(c.key);
      sizes.emplace_back(c.size);
    }
  } else {
    db.seed = budget.seed;
    db.window = budget.window;
    db.heuristic = true;
    RandomSearch search(rs, budget);
    search.run();
    db.draws = search.draws();
    keys = search.representatives();
    sizes.assign(keys.size(), std::nullopt);
    unresolved = search.unresolved();
  }
  std::vector<ClassRecord> records(keys.size());
  detail::parallel_for(keys.size(), budget.jobs, [&](std::size_t i) {
    records[i] = make_class_record(rs, keys[i]);
    records[i].class_size = sizes[i];
  });
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return record_less(records[a], records[b]); });
  std::vector<std::string> ids(records.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "d%d-%03zu", degree, pos + 1);
    ids[order[pos]] = buf;
  }
  for (std::size_t i = 0; i < records.size(); ++i) records[i].id = ids[i];
  for (std::size_t pos = 0; pos < order.size(); ++pos) db.classes.push_back(std::move(records[order[pos]]));
  for (auto [a, b] : unresolved) db.unresolved.push_back({ids[a], ids[b]});
  return db;
}

}  // namespace dpcoh
