#include <benchmark/benchmark.h>

#include <vector>

#include "drinfeld/lseries.hpp"
#include "drinfeld/places.hpp"
#include "drinfeld/search.hpp"
#include "drinfeld/stats.hpp"
#include "drinfeld/text.hpp"
#include "drinfeld/wieferich.hpp"
#include "drinfeld/wieferich_kernel.hpp"

using namespace drinfeld;

namespace {

// a few places of degree d, spread over the enumeration
std::vector<Place> sample_places(const Field& f, int d, std::size_t n) {
  std::vector<Place> out;
  std::uint64_t k = 0;
  for_each_place(f, d, [&](const Place& p) {
    if (k++ % 97 == 0) out.push_back(p);
    return out.size() < n;
  });
  return out;
}

}  // namespace

// per-place setup of the search: Frobenius tables mod p and p^2
static void BM_KernelBuild(benchmark::State& state) {
  const Field& f = Field::get(3);
  const auto places = sample_places(f, static_cast<int>(state.range(0)), 16);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(WieferichKernel(places[i++ % places.size()], 1));
}
BENCHMARK(BM_KernelBuild)->Arg(6)->Arg(9)->Arg(12);

// Fitting ideal plus phi_a(1) mod p^2 with a prebuilt kernel
static void BM_KernelTest(benchmark::State& state) {
  const Field& f = Field::get(3);
  const auto m = parse_model(f, "t + (t^2 + 1)*tau + tau^2");
  std::vector<WieferichKernel> ks;
  for (const auto& p : sample_places(f, static_cast<int>(state.range(0)), 16)) ks.emplace_back(p, 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ks[i++ % ks.size()].is_wieferich(m));
}
BENCHMARK(BM_KernelTest)->Arg(6)->Arg(9)->Arg(12);

// generic route, for comparison with the kernel
static void BM_IsWieferichGeneric(benchmark::State& state) {
  const Field& f = Field::get(3);
  const auto m = parse_model(f, "t + (t^2 + 1)*tau + tau^2");
  const auto places = sample_places(f, static_cast<int>(state.range(0)), 16);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_wieferich(m, places[i++ % places.size()]));
}
BENCHMARK(BM_IsWieferichGeneric)->Arg(6)->Arg(9);

// whole search through degree 10 (q = 3 Carlitz); informational worker scaling
static void BM_SearchCarlitzQ3(benchmark::State& state) {
  const auto C = DrinfeldModel::carlitz(Field::get(3));
  SearchConfig cfg;
  cfg.max_degree = 10;
  cfg.workers = static_cast<int>(state.range(0));
  std::uint64_t places = 0;
  for (auto _ : state) {
    auto r = search_wieferich(C, cfg);
    for (const auto& t : r.throughput) places += t.places;
  }
  state.counters["places/s"] = benchmark::Counter(static_cast<double>(places), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SearchCarlitzQ3)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_StatsExhaustiveQ2R2(benchmark::State& state) {
  const Universe u(Field::get(2), 2, RankBound::exact);
  StatsConfig cfg;
  cfg.min_degree = cfg.max_degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stats_table(u, cfg));
}
BENCHMARK(BM_StatsExhaustiveQ2R2)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_StatsMonteCarloQ3R4(benchmark::State& state) {
  const Universe u(Field::get(3), 4);
  StatsConfig cfg;
  cfg.min_degree = 1;
  cfg.max_degree = 3;
  cfg.samples = 1000;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(stats_table(u, cfg));
}
BENCHMARK(BM_StatsMonteCarloQ3R4)->Unit(benchmark::kMillisecond);

static void BM_OrdicValuation(benchmark::State& state) {
  const Field& f = Field::get(3);
  const auto m = DrinfeldModel::carlitz(f);
  const Place p(parse_poly(f, "t^6 + t^4 + t^3 + t^2 + 2*t + 2"));
  const Poly one = Poly::constant(f, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ordic_valuation(m, one, p));
}
BENCHMARK(BM_OrdicValuation);

static void BM_LpValueAt1(benchmark::State& state) {
  const Field& f = Field::get(3);
  const auto m = parse_model(f, "t + (t^2 + 2)*tau");
  const Place p(parse_poly(f, "t^2 + 1"));
  for (auto _ : state) benchmark::DoNotOptimize(lp_value_at_1(m, p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LpValueAt1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
