// Serial reference runners against the OpenMP ones on the same scalar lists.
#include <benchmark/benchmark.h>

#include <map>

#include "support.hpp"

using namespace glv4;

namespace {

const std::vector<Int>& scalars(std::size_t count) {
  static std::map<std::size_t, std::vector<Int>> cache;
  auto it = cache.find(count);
  if (it == cache.end()) {
    Rng rng(1);
    it = cache.emplace(count, random_scalars(test::p1().n, count, rng)).first;
  }
  return it->second;
}

DecompJob decomp_job() {
  DecompJob j;
  j.basis = &test::p1_ctx().basis4;
  j.B4 = bound_constants(1, 1).B4;
  return j;
}

void BM_decompose_serial(benchmark::State& st) {
  const auto& ks = scalars(std::size_t(st.range(0)));
  DecompJob j = decomp_job();
  for (auto _ : st) benchmark::DoNotOptimize(decomposition_campaign_serial(j, ks));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_decompose_omp(benchmark::State& st) {
  const auto& ks = scalars(std::size_t(st.range(0)));
  DecompJob j = decomp_job();
  for (auto _ : st) benchmark::DoNotOptimize(decomposition_campaign_omp(j, ks));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_mul_serial(benchmark::State& st) {
  const auto& ks = scalars(std::size_t(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mul_campaign_serial(test::p1_ctx(), Mode::glv4, 1, ks));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_mul_omp(benchmark::State& st) {
  const auto& ks = scalars(std::size_t(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mul_campaign_omp(test::p1_ctx(), Mode::glv4, 1, ks));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

// One 4-GLV multiplication with four streams, on one thread or on four.
void BM_split_streams(benchmark::State& st) {
  const Int& k = scalars(1)[0];
  bool parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(glv_multiply(k, test::p1_ctx(), Mode::glv4, 4, parallel));
}

}  // namespace

BENCHMARK(BM_decompose_serial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_decompose_omp)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mul_serial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mul_omp)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_split_streams)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
