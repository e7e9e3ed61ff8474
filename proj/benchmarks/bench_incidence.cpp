#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "incidence/box_cover.hpp"
#include "incidence/curtain_structure.hpp"
#include "incidence/dyadic.hpp"
#include "incidence/fat_structure.hpp"
#include "incidence/generators.hpp"
#include "incidence/graph.hpp"
#include "incidence/slab_audit.hpp"

using namespace incidence;

namespace {

template <class R>
std::vector<R> ranges_as(const Instance& inst) {
  std::vector<R> out;
  for (const Range& r : inst.ranges) out.push_back(std::get<R>(r));
  return out;
}

void BM_CanonicalDecomposition(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  Rng rng(1);
  std::uint64_t pieces = 0;
  for (auto _ : state) {
    std::uint64_t a = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    std::uint64_t b = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    if (a > b) std::swap(a, b);
    for_each_canonical(a, b, n, [&](const DyadicRange& r) { pieces += r.rank; });
  }
  benchmark::DoNotOptimize(pieces);
}
BENCHMARK(BM_CanonicalDecomposition)->RangeMultiplier(16)->Range(16, 1 << 20);

void BM_Bruteforce(benchmark::State& state) {
  const Instance inst = random_boxes(state.range(0), state.range(0), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(incidences_bruteforce(inst.points, inst.ranges).incidences());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Bruteforce)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);

void BM_BoxCover(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(1));
  const Instance inst = random_boxes(state.range(0), state.range(0), d, 5);
  const auto boxes = ranges_as<Box>(inst);
  std::uint64_t size = 0;
  for (auto _ : state) size = build_box_cover(inst.points, boxes).cover.size();
  state.counters["cover_size"] = static_cast<double>(size);
}
BENCHMARK(BM_BoxCover)->ArgsProduct({{256, 1024, 4096}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_RectAudit(benchmark::State& state) {
  const Instance inst = random_boxes(state.range(0), state.range(0), 2, 7);
  const auto rects = ranges_as<Box>(inst);
  AuditOptions opts;
  opts.b = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rect_audit(inst.points, rects, opts).total);
}
BENCHMARK(BM_RectAudit)->ArgsProduct({{512, 2048}, {2, 4, 16}})->Unit(benchmark::kMillisecond);

void BM_CurtainQuery(benchmark::State& state) {
  const Instance inst = random_curtains(state.range(0), 512, 11, 1 << 16);
  const auto curtains = ranges_as<Curtain>(inst);
  const CurtainStructure cs(inst.points);
  std::size_t j = 0;
  CurtainQueryStats st;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs.query(curtains[j], &st).size());
    j = (j + 1) % curtains.size();
  }
  state.counters["visits_per_query"] =
      benchmark::Counter(static_cast<double>(st.visits), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_CurtainQuery)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_FatBuild(benchmark::State& state) {
  const Instance inst = random_fat(state.range(0), 0, 13, std::numbers::pi / 6);
  for (auto _ : state) {
    const FatReportStructure fs(inst.points);
    benchmark::DoNotOptimize(fs.stored_entries());
  }
}
BENCHMARK(BM_FatBuild)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_FatQuery(benchmark::State& state) {
  const Instance inst = random_fat(state.range(0), 256, 17, std::numbers::pi / 6);
  const auto tris = ranges_as<Triangle>(inst);
  const FatReportStructure fs(inst.points);
  // Warm the lazily built curtain structures.
  for (const Triangle& t : tris) fs.query(t);
  std::size_t j = 0;
  FatQueryStats st;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fs.query(tris[j], &st).size());
    j = (j + 1) % tris.size();
  }
  state.counters["visits_per_query"] =
      benchmark::Counter(static_cast<double>(st.visits()), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_FatQuery)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

}  // namespace

BENCHMARK_MAIN();
