#ifndef DPCOH_TESTS_SUPPORT_HPP_
#define DPCOH_TESTS_SUPPORT_HPP_

#include <map>
#include <mutex>
#include <random>

#include "dpcoh/records.hpp"
#include "dpcoh/root_system.hpp"

namespace dpcoh::testing {

// Class databases shared by every test in a binary and cached on disk across
// binaries.  Degree 1 uses the default random budget.
inline const ClassDatabase& classes_for(int degree) {
  static std::mutex mu;
  static std::map<int, ClassDatabase> dbs;
  std::lock_guard<std::mutex> lock(mu);
  auto it = dbs.find(degree);
  if (it == dbs.end()) {
    SearchBudget b;
    if (degree == 1) b.mode = SearchMode::Random;
    it = dbs.emplace(degree, cached_enumerate(degree, b, DPCOH_TEST_CACHE)).first;
  }
  return it->second;
}

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(DPCOH_DATA_DIR) / rel; }

// Product of `len` random reflections, as a root permutation.
inline RootPerm random_element(const RootSystem& rs, std::mt19937_64& rng, int len = 12) {
  std::uniform_int_distribution<int> pick(0, rs.num_roots() - 1);
  RootPerm g = rs.identity_perm();
  for (int i = 0; i < len; ++i) g = compose(rs.reflection_perm(pick(rng)), g);
  return g;
}

}  // namespace dpcoh::testing

#endif  // DPCOH_TESTS_SUPPORT_HPP_
