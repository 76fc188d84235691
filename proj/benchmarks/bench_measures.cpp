#include <benchmark/benchmark.h>

#include <vector>

#include "colloc/measures.hpp"
#include "colloc/rng.hpp"

namespace {

std::vector<colloc::BigramStats> random_tables(std::size_t n) {
  colloc::Rng rng(1234);
  std::vector<colloc::BigramStats> out;
  out.reserve(n);
  while (out.size() < n) {
    colloc::BigramStats s;
    s.n = 2 + rng.uniform_index(100000);
    s.c1 = 1 + rng.uniform_index(s.n);
    s.c2 = 1 + rng.uniform_index(s.n);
    s.c12 = 1 + rng.uniform_index(std::min(s.c1, s.c2));
    if (s.valid() && s.consistent()) out.push_back(s);
  }
  return out;
}

void BM_pmi(benchmark::State& state) {
  const auto tables = random_tables(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::pmi(tables[i++ & 4095]));
  }
}
BENCHMARK(BM_pmi);

void BM_t_stat(benchmark::State& state) {
  const auto tables = random_tables(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::t_stat(tables[i++ & 4095]));
  }
}
BENCHMARK(BM_t_stat);

void BM_log_likelihood_ratio(benchmark::State& state) {
  const auto tables = random_tables(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::log_likelihood_ratio(tables[i++ & 4095]));
  }
}
BENCHMARK(BM_log_likelihood_ratio);

void BM_measure_all(benchmark::State& state) {
  const auto tables = random_tables(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::measure_all(tables[i++ & 4095]));
  }
}
BENCHMARK(BM_measure_all);

}  // namespace
