#include <benchmark/benchmark.h>

#include <random>

#include "dpcoh/cohomology.hpp"
#include "dpcoh/enumerate.hpp"
#include "dpcoh/linalg.hpp"
#include "dpcoh/root_system.hpp"
#include "dpcoh/symbols.hpp"
#include "dpcoh/weyl.hpp"

namespace {

using namespace dpcoh;

RootPerm random_element(const RootSystem& rs, std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> pick(0, rs.num_roots() - 1);
  RootPerm g = rs.identity_perm();
  for (int i = 0; i < len; ++i) g = compose(rs.reflection_perm(pick(rng)), g);
  return g;
}

void BM_ExhaustiveEnumeration(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ClassDatabase db = enumerate_classes(degree, SearchBudget{});
    benchmark::DoNotOptimize(db.classes.size());
  }
}
BENCHMARK(BM_ExhaustiveEnumeration)->Arg(5)->Arg(4)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ConjugacyWitness(benchmark::State& state) {
  const RootSystem& rs = root_system(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<std::pair<RootPerm, RootPerm>> pairs;
  for (int i = 0; i < 32; ++i) {
    const RootPerm g = random_element(rs, rng, 12), w = random_element(rs, rng, 20);
    pairs.emplace_back(g, compose(compose(w, g), inverse(w)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [g, h] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(conjugacy(rs, g, h).verdict);
  }
}
BENCHMARK(BM_ConjugacyWitness)->Arg(4)->Arg(3)->Arg(2)->Arg(1);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m).rank);
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(9)->Arg(16);

void BM_H1Tower(benchmark::State& state) {
  const RootSystem& rs = root_system(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(5);
  const SquareMatrix g = rs.matrix_of(random_element(rs, rng, 15));
  for (auto _ : state) benchmark::DoNotOptimize(h1_tower(g).size());
}
BENCHMARK(BM_H1Tower)->Arg(3)->Arg(1);

void BM_PowerFrame(benchmark::State& state) {
  const FrameSymbol f = parse_frame_symbol("1^2.2^-1.3^-1.5^-1.6.10");
  int r = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_frame(f, r));
    r = r % 30 + 1;
  }
}
BENCHMARK(BM_PowerFrame);

}  // namespace

BENCHMARK_MAIN();
