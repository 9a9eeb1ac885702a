#include <benchmark/benchmark.h>

#include "matgrow/classes.hpp"
#include "matgrow/geometry.hpp"
#include "matgrow/projection.hpp"
#include "matgrow/util.hpp"

using namespace matgrow;

namespace {

void BM_FieldMul(benchmark::State& state) {
  const Field& f = Field::get(static_cast<int>(state.range(0)));
  uint8_t acc = 1;
  for (auto _ : state) {
    for (int a = 1; a < f.order(); ++a) acc = f.mul(acc, static_cast<uint8_t>(a));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(9)->Arg(16);

void BM_MatRank(benchmark::State& state) {
  Matroid g = pg(static_cast<int>(state.range(0)), 2);
  const LinearData* ld = g.linear_data();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_rank(*ld->field, ld->cols));
  }
}
BENCHMARK(BM_MatRank)->Arg(4)->Arg(6);

void BM_RankOracle(benchmark::State& state) {
  Matroid g = pg(4, 2);
  Rng rng(7);
  std::vector<Bits> queries;
  for (int i = 0; i < 256; ++i) {
    Bits x;
    for (int e = 0; e < g.size(); ++e)
      if (rng.below(2)) x.set(e);
    queries.push_back(x);
  }
  for (auto _ : state) {
    int acc = 0;
    for (const Bits& x : queries) acc += g.rank(x);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RankOracle);

void BM_Closure(benchmark::State& state) {
  Matroid g = pg(5, 2);
  Bits pair = Bits::of({0, 5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.closure(pair));
  }
}
BENCHMARK(BM_Closure);

void BM_EpsilonTruncation(benchmark::State& state) {
  for (auto _ : state) {
    Matroid g = pg(static_cast<int>(state.range(0)), 2);
    auto cert = project(g, 2, {ModularCut::whole(g)});
    benchmark::DoNotOptimize(epsilon(cert.projected));
  }
}
BENCHMARK(BM_EpsilonTruncation)->Arg(4)->Arg(5);

void BM_HasMinorLine(benchmark::State& state) {
  Matroid host = pg(4, 2);
  Matroid pattern = Matroid::uniform(2, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(has_minor(host, pattern));
  }
}
BENCHMARK(BM_HasMinorLine);

void BM_EnumerateExtensions(benchmark::State& state) {
  Matroid f = pg(3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_extensions(f, false, SIZE_MAX));
  }
}
BENCHMARK(BM_EnumerateExtensions);

void BM_SeededCertificateDensity(benchmark::State& state) {
  int q = static_cast<int>(state.range(0));
  uint64_t seed = 99;
  for (auto _ : state) {
    auto cert = seeded_projection(q, 2, 3, seed++);
    benchmark::DoNotOptimize(density_params(cert));
  }
}
BENCHMARK(BM_SeededCertificateDensity)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
