#include <random>

#include <benchmark/benchmark.h>

#include "folner/diagnostics.hpp"
#include "folner/search.hpp"
#include "folner/szego.hpp"
#include "folner/zoo.hpp"

namespace {

using namespace folner;

void BM_entry_toeplitz_power(benchmark::State& state) {
  const OperatorSpec t = op_power(make_toeplitz({1.0, 0.0, 1.0}).spec, int(state.range(0)));
  Index i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.entry(i, i));
    i = (i + 1) % 512;
  }
}
BENCHMARK(BM_entry_toeplitz_power)->Arg(2)->Arg(4)->Arg(8);

void BM_compress_almost_mathieu(benchmark::State& state) {
  const OperatorSpec am = make_almost_mathieu(1.0, 0.61803398874989484820, 0.0).spec;
  const Index d = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(compress(am, WindowProjection::interval(0, d)).entries.sum());
  state.SetComplexityN(d);
}
BENCHMARK(BM_compress_almost_mathieu)->Arg(256)->Arg(1024)->Arg(4096);

void BM_boundary_hs_cuntz(benchmark::State& state) {
  const OperatorSpec s0 = OperatorSpec::cuntz(2, 0);
  const WindowProjection w = WindowProjection::interval(0, state.range(0));
  for (auto _ : state) {
    const auto [b, c] = boundary_hs_sq(s0, w);
    benchmark::DoNotOptimize(b + c);
  }
}
BENCHMARK(BM_boundary_hs_cuntz)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_counting_measure_toeplitz(benchmark::State& state) {
  const OperatorSpec t = make_toeplitz({1.0, 0.0, 1.0}).spec;
  for (auto _ : state)
    benchmark::DoNotOptimize(counting_measure(t, state.range(0)).atoms.back());
}
BENCHMARK(BM_counting_measure_toeplitz)->Unit(benchmark::kMillisecond)->Arg(256)->Arg(1024);

void BM_kolmogorov_distance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> a(std::size_t(state.range(0))), b(a.size());
  for (double& x : a) x = u(rng);
  for (double& x : b) x = u(rng);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (auto _ : state) benchmark::DoNotOptimize(kolmogorov_distance(a, b));
}
BENCHMARK(BM_kolmogorov_distance)->Arg(4096)->Arg(65536);

void BM_subset_search_cuntz(benchmark::State& state) {
  const std::vector<ZooEntry> fam = make_cuntz_family(2);
  const std::vector<OperatorSpec> specs{fam[0].spec, fam[1].spec};
  for (auto _ : state) {
    const SearchResult res = subset_search(specs, 4 * state.range(0), state.range(0));
    benchmark::DoNotOptimize(res.best_ratio);
  }
}
BENCHMARK(BM_subset_search_cuntz)->Unit(benchmark::kMillisecond)->Arg(32)->Arg(128);

void BM_numerical_range(benchmark::State& state) {
  const OperatorSpec s = OperatorSpec::shift();
  const Eigen::MatrixXcd t = compress(s, WindowProjection::interval(0, 64)).entries;
  for (auto _ : state)
    benchmark::DoNotOptimize(numerical_range(t, int(state.range(0))).distance_to_origin);
}
BENCHMARK(BM_numerical_range)->Unit(benchmark::kMillisecond)->Arg(32)->Arg(180);

}  // namespace

BENCHMARK_MAIN();
