#include "dpcoh/minimality.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>

#include "dpcoh/symbols.hpp"

namespace dpcoh {

const LineTable& line_table(int degree) {
  if (degree < 1 || degree > 7) throw BadDegree("line_table: degree must be in 1..7");
  static std::array<std::once_flag, 8> flags;
  static std::array<std::unique_ptr<LineTable>, 8> tables;
  std::call_once(flags[static_cast<std::size_t>(degree)], [degree] {
    auto t = std::make_unique<LineTable>();
    const auto lattice = PicardLattice::build(degree);
    t->lines = minus_one_classes(lattice);
    const std::size_t n = t->lines.size();
    t->inner.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t->inner[i * n + j] = static_cast<std::int8_t>(lattice.inner(t->lines[i], t->lines[j]));
    tables[static_cast<std::size_t>(degree)] = std::move(t);
  });
  return *tables[static_cast<std::size_t>(degree)];
}

std::vector<int> line_permutation(int degree, const SquareMatrix& m) {
  const LineTable& t = line_table(degree);
  std::vector<int> p(t.lines.size());
  for (std::size_t i = 0; i < t.lines.size(); ++i) {
    const LatticeClass image{m.apply(t.lines[i].coords)};
    auto it = std::lower_bound(t.lines.begin(), t.lines.end(), image);
    if (it == t.lines.end() || *it != image)
      throw std::invalid_argument("line_permutation: matrix does not permute the (-1)-classes");
    p[i] = static_cast<int>(it - t.lines.begin());
  }
  return p;
}

OrbitPartition line_orbits(int degree, std::span<const int> line_perm) {
  const LineTable& t = line_table(degree);
  if (static_cast<int>(line_perm.size()) != t.size())
    throw DimensionMismatch("line_orbits: permutation length does not match line count");
  OrbitPartition part;
  std::vector<bool> seen(line_perm.size(), false);
  for (int s = 0; s < t.size(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> orbit;
    for (int x = s; !seen[static_cast<std::size_t>(x)]; x = line_perm[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      orbit.push_back(x);
    }
    bool disjoint = true;
    for (std::size_t i = 0; i < orbit.size() && disjoint; ++i)
      for (std::size_t j = i + 1; j < orbit.size() && disjoint; ++j)
        if (t.ip(orbit[i], orbit[j]) != 0) disjoint = false;
    part.orbits.push_back(std::move(orbit));
    part.contractible.push_back(disjoint);
  }
  return part;
}

OrbitPartition line_orbits(const LatticeAut& g) {
  const std::vector<int> p = line_permutation(g.degree(), g.matrix());
  return line_orbits(g.degree(), p);
}

namespace {

class MaxDisjoint {
 public:
  MaxDisjoint(const LineTable& t, std::vector<std::vector<int>> orbits, int max_lines, int max_orbits)
      : orbits_(std::move(orbits)), max_lines_(max_lines), max_orbits_(max_orbits) {
    std::stable_sort(orbits_.begin(), orbits_.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    const std::size_t n = orbits_.size();
    compatible_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool ok = true;
        for (int x : orbits_[i])
          for (int y : orbits_[j])
            if (t.ip(x, y) != 0) ok = false;
        compatible_[i * n + j] = compatible_[j * n + i] = ok;
      }
  }

  int solve() {
    std::vector<int> candidates(orbits_.size());
    std::iota(candidates.begin(), candidates.end(), 0);
    extend(candidates, 0, 0);
    return best_;
  }

 private:
  // Candidates stay sorted by decreasing weight, so the best possible
  // completion with k more orbits is the sum of the first k weights.
  void extend(const std::vector<int>& candidates, int weight, int count) {
    best_ = std::max(best_, weight);
    if (best_ >= max_lines_ || count >= max_orbits_) return;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      int bound = weight;
      for (std::size_t k = c; k < candidates.size() && static_cast<int>(k - c) < max_orbits_ - count; ++k)
        bound += static_cast<int>(orbits_[static_cast<std::size_t>(candidates[k])].size());
      if (std::min(bound, max_lines_) <= best_) return;
      const int o = candidates[c];
      const int w = static_cast<int>(orbits_[static_cast<std::size_t>(o)].size());
      if (weight + w > max_lines_) continue;
      std::vector<int> next;
      for (std::size_t k = c + 1; k < candidates.size(); ++k)
        if (compatible_[static_cast<std::size_t>(o) * orbits_.size() + static_cast<std::size_t>(candidates[k])])
          next.push_back(candidates[k]);
      extend(next, weight + w, count + 1);
      if (best_ >= max_lines_) return;
    }
  }

  std::vector<std::vector<int>> orbits_;
  std::vector<bool> compatible_;
  int max_lines_;
  int max_orbits_;
  int best_ = 0;
};

}  // namespace

int index_of(int degree, const OrbitPartition& partition, int invariant_rank) {
  std::vector<std::vector<int>> candidates;
  for (std::size_t i = 0; i < partition.orbits.size(); ++i)
    if (partition.contractible[i]) candidates.push_back(partition.orbits[i]);
  if (candidates.empty()) return 0;
  return MaxDisjoint(line_table(degree), std::move(candidates), 9 - degree, invariant_rank - 1).solve();
}

int index(const LatticeAut& g) {
  const int invariant_rank = char_symbol(g).multiplicity(1);
  return index_of(g.degree(), line_orbits(g), invariant_rank);
}

bool is_minimal(const LatticeAut& g) { return index(g) == 0; }

}  // namespace dpcoh
