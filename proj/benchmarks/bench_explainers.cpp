#include <benchmark/benchmark.h>

#include <random>

#include "cfx/hybrid.hpp"
#include "cfx/oracle.hpp"
#include "cfx/sedc.hpp"
#include "cfx/stats.hpp"

namespace {

// one positive instance with `actives` features, `strong` of which must be
// removed to flip
struct Fixture {
  cfx::Classifier c;
  cfx::SparseInstance x;
};

Fixture make_fixture(std::uint32_t actives, std::uint32_t strong) {
  cfx::LinearModel m;
  m.dimension = actives + 1;
  m.weights.emplace_back(0, -1.0);
  for (std::uint32_t j = 1; j <= actives; ++j) m.weights.emplace_back(j, 1.0);

  cfx::SparseInstance x;
  x.dimension = m.dimension;
  double eps = 0.001;
  double weak = static_cast<double>(actives - strong - 1);
  x.indices.push_back(0);
  x.values.push_back(0.5 + weak * eps);
  for (std::uint32_t j = 1; j <= actives; ++j) {
    x.indices.push_back(j);
    x.values.push_back(j <= strong ? 1.0 : eps);
  }
  return Fixture{cfx::Classifier{std::move(m), 0.0}, std::move(x)};
}

void BM_sedc(benchmark::State& state) {
  auto f = make_fixture(50, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(cfx::explain_sedc(f.c, f.x));
}
BENCHMARK(BM_sedc)->Arg(1)->Arg(4)->Arg(8);

void BM_lime_rank(benchmark::State& state) {
  auto f = make_fixture(static_cast<std::uint32_t>(state.range(0)), 3);
  cfx::AttributionConfig cfg;
  cfg.n_samples = 2000;
  for (auto _ : state)
    benchmark::DoNotOptimize(cfx::lime_rank(f.c, f.x, cfg));
}
BENCHMARK(BM_lime_rank)->Arg(20)->Arg(50);

void BM_shap_rank_exact(benchmark::State& state) {
  auto f = make_fixture(static_cast<std::uint32_t>(state.range(0)), 3);
  cfx::AttributionConfig cfg;
  cfg.n_samples = 5000;
  cfg.lasso_strength = 0.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(cfx::shap_rank(f.c, f.x, cfg));
}
BENCHMARK(BM_shap_rank_exact)->Arg(10)->Arg(13);

void BM_complete(benchmark::State& state) {
  auto f = make_fixture(static_cast<std::uint32_t>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(cfx::explain_complete(f.c, f.x, 30, 10000000));
}
BENCHMARK(BM_complete)->Arg(12)->Arg(16);

void BM_mcnemar(benchmark::State& state) {
  cfx::ContingencyTable t{0, 119, 92, 0};
  for (auto _ : state) benchmark::DoNotOptimize(cfx::mcnemar_mid_p(t));
}
BENCHMARK(BM_mcnemar);

}  // namespace

BENCHMARK_MAIN();
