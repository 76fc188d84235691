#include <benchmark/benchmark.h>

#include "colloc/corpus.hpp"
#include "colloc/feature_space.hpp"
#include "colloc/synth.hpp"

namespace {

const std::string& sample_corpus() {
  static const std::string text =
      colloc::generate(colloc::make_default_spec(2000, 200000, 1.0, 20, 30.0, 0.05, 5)).text;
  return text;
}

void BM_tokenize(benchmark::State& state) {
  const std::string& text = sample_corpus();
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::tokenize(text));
  }
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_tokenize);

void BM_extract_bigrams(benchmark::State& state) {
  const auto toks = colloc::tokenize(sample_corpus());
  colloc::StopList sl;
  for (int i = 1; i <= 10; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "s%02d", i);
    sl.entries.insert(buf);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::extract_bigrams(toks, sl));
  }
  state.SetItemsProcessed(state.iterations() * toks.size());
}
BENCHMARK(BM_extract_bigrams);

void BM_build_points(benchmark::State& state) {
  const auto toks = colloc::tokenize(sample_corpus());
  colloc::StopList sl;
  for (int i = 1; i <= 10; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "s%02d", i);
    sl.entries.insert(buf);
  }
  const colloc::BigramTable table = colloc::extract_bigrams(toks, sl);
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::build_points(table));
  }
  state.SetItemsProcessed(state.iterations() * table.pairs.size());
}
BENCHMARK(BM_build_points);

}  // namespace

BENCHMARK_MAIN();
