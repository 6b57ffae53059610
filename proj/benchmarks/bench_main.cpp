#include <benchmark/benchmark.h>

#include <cmath>

#include "a52/integrate.hpp"
#include "a52/sampling.hpp"
#include "a52/symmetries.hpp"
#include "a52/verify.hpp"

using namespace a52;
using Q = ExactRational;

namespace {

const Parameters<double> kAlpha{0.125, 0.125, 0.0625, 0.125};

FPoint<Q> exact_point(const char* stream) {
  RationalSampler rng(SampleConfig{}, stream);
  return {sample_fstate(rng), sample_parameters(rng)};
}

}  // namespace

static void BM_PushforwardExact(benchmark::State& state) {
  const auto g = static_cast<Generator>(state.range(0));
  RationalSampler rng(SampleConfig{}, "bench");
  std::vector<FPoint<Q>> pts;
  while (pts.size() < 16) {
    FPoint<Q> p{sample_fstate(rng), sample_parameters(rng)};
    try {
      apply_generator(g, p);
      pts.push_back(p);
    } catch (const PoleHit&) {
    }
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pushforward_residual(g, pts[k++ % pts.size()]));
  state.SetLabel(name(g));
}
BENCHMARK(BM_PushforwardExact)->DenseRange(0, 4);

static void BM_PushforwardDouble(benchmark::State& state) {
  const auto p = exact_point("bench-double");
  const FPoint<double> pd{convert<double>(p.x), convert<double>(p.a)};
  for (auto _ : state) benchmark::DoNotOptimize(pushforward_residual(Generator::s0, pd));
}
BENCHMARK(BM_PushforwardDouble);

static void BM_RelationOrder(benchmark::State& state) {
  const auto p = exact_point("bench-word");
  const Word w{Generator::s2, Generator::s3};
  for (auto _ : state) {
    FPoint<Q> x = p;
    try {
      for (int k = 0; k < 4; ++k) x = apply_word(w, x);
    } catch (const PoleHit&) {
    }
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_RelationOrder);

static void BM_Suite(benchmark::State& state) {
  const auto suite = static_cast<Suite>(state.range(0));
  SampleConfig cfg;
  cfg.points_per_identity = 50;
  cfg.relation_points = 10;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(suite, cfg));
  state.SetLabel(name(suite));
}
BENCHMARK(BM_Suite)->DenseRange(0, 8)->Unit(benchmark::kMillisecond);

static void BM_IntegrateF(benchmark::State& state) {
  IntegratorConfig cfg;
  cfg.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  cfg.abs_tol = cfg.rel_tol / 100;
  const FState<double> x0{0.5, -0.25, 0.75, 0.1, -0.3, 0.2};
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto tr = integrate_f(x0, kAlpha, 0.0, 0.4, cfg);
    steps = tr.records.size();
    benchmark::DoNotOptimize(tr);
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_IntegrateF)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_CrossCheck(benchmark::State& state) {
  const QPState<double> x0{0.3, 0.2, -0.4, 0.1, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(cross_check_charts(x0, kAlpha, 1.0, std::exp(1.0)));
}
BENCHMARK(BM_CrossCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
