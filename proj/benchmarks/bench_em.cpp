#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "colloc/em.hpp"
#include "colloc/rng.hpp"

namespace {

std::vector<colloc::Vec3> blobby_points(std::size_t n, int blobs) {
  colloc::Rng rng(77);
  std::vector<colloc::Vec3> centers;
  for (int b = 0; b < blobs; ++b) {
    centers.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
  }
  std::vector<colloc::Vec3> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const colloc::Vec3& c = centers[rng.uniform_index(centers.size())];
    const double u1 = std::max(rng.uniform(), 1e-12);
    const double u2 = rng.uniform();
    const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    pts.push_back({c[0] + 0.04 * g, c[1] + 0.04 * rng.uniform(), c[2] + 0.04 * rng.uniform()});
  }
  return pts;
}

void BM_em_fit(benchmark::State& state) {
  const auto pts = blobby_points(static_cast<std::size_t>(state.range(0)), 4);
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::em_fit(pts, k, 42));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_em_fit)->Args({1000, 3})->Args({1000, 9})->Args({10000, 3})->Args({10000, 9});

void BM_em_fit_threads(benchmark::State& state) {
  const auto pts = blobby_points(20000, 4);
  colloc::EmConfig cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::em_fit(pts, 8, 42, cfg));
  }
}
BENCHMARK(BM_em_fit_threads)->Arg(1)->Arg(2)->Arg(4);

void BM_assign(benchmark::State& state) {
  const auto pts = blobby_points(20000, 4);
  const colloc::MixtureModel m = colloc::em_fit(pts, 6, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(colloc::assign(m, pts));
  }
  state.SetItemsProcessed(state.iterations() * pts.size());
}
BENCHMARK(BM_assign);

}  // namespace
