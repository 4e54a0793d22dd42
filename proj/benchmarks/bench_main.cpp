#include <polarcvx/convex_body.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/integration.hpp>
#include <polarcvx/level_sets.hpp>
#include <polarcvx/santalo.hpp>
#include <polarcvx/transforms.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace polarcvx;

namespace {

ConvexBody random_polytope(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> r(0.6, 1.4);
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(0.4 * Vec::Unit(n, i));
    pts.push_back(-0.4 * Vec::Unit(n, i));
  }
  for (int k = 0; k < 4 * n + 2; ++k) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    pts.push_back(r(rng) * v.normalized());
  }
  return ConvexBody::vertices(std::move(pts));
}

void BM_PolytopeSupport(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto K = random_polytope(n, 5);
  Vec u = Vec::Ones(n).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(K.support(u));
}
BENCHMARK(BM_PolytopeSupport)->Arg(2)->Arg(3);

void BM_PolytopeGauge(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto K = random_polytope(n, 5);
  Vec x = Vec::LinSpaced(n, 0.3, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(K.gauge(x));
}
BENCHMARK(BM_PolytopeGauge)->Arg(2)->Arg(3);

void BM_IntersectionSupport(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto K = ConvexBody::intersection({random_polytope(n, 7), ConvexBody::ball(n, 0.8)});
  Vec u = Vec::Ones(n).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(K.support(u));
}
BENCHMARK(BM_IntersectionSupport)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_PolarEvaluation(benchmark::State& state) {
  const auto polar = polar_transform(GeomCvxFn::hinged_gauge(ConvexBody::cube(3), 2.0));
  Vec y = Vec::Constant(3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(polar(y));
}
BENCHMARK(BM_PolarEvaluation);

void BM_LogconcaveIntegral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto phi = GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::cube(n), 1.0),
                                      GeomCvxFn::power_gauge(ConvexBody::ball(n), 2.0, 0.5)});
  for (auto _ : state) benchmark::DoNotOptimize(logconcave_integral(phi).value);
}
BENCHMARK(BM_LogconcaveIntegral)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PolarLevelsets(benchmark::State& state) {
  const auto dirs = default_levelset_directions(2);
  const auto phi = GeomCvxFn::gauge(random_polytope(2, 11), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_polar_levelsets(phi, 1.0, 1.0, dirs).verdict());
}
BENCHMARK(BM_PolarLevelsets)->Unit(benchmark::kMillisecond);

void BM_SantaloProduct(benchmark::State& state) {
  const auto phi = GeomCvxFn::power_gauge(ConvexBody::cross_polytope(3), 1.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(santalo_product(phi).product);
}
BENCHMARK(BM_SantaloProduct)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
