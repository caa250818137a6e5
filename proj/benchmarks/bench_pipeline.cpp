#include <benchmark/benchmark.h>

#include <random>

#include "braidfield/pipeline.hpp"
#include "braidfield/project.hpp"
#include "braidfield/roots.hpp"
#include "braidfield/verify.hpp"

using namespace braidfield;

namespace {

const char* const kWords[] = {"1", "1 -2 1 -2", "2 -1 2 1 1 1", "1 -2 1 -2 -2 -2"};

void BM_Construct(benchmark::State& state) {
  const BraidWord word = parse_braid_word(kWords[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(construct(word));
  state.SetLabel(kWords[state.range(0)]);
}
BENCHMARK(BM_Construct)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_FindLambda(benchmark::State& state) {
  const Construction c = construct(parse_braid_word(kWords[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(find_lambda(c.poly, {.samples = 512, .conservative = false}, &c.fourier));
  state.SetLabel(kWords[state.range(0)]);
}
BENCHMARK(BM_FindLambda)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Roots(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<cplx> coeffs(static_cast<std::size_t>(state.range(0)) + 1);
  for (cplx& c : coeffs) c = cplx(g(rng), g(rng));
  for (auto _ : state) benchmark::DoNotOptimize(polynomial_roots(coeffs));
}
BENCHMARK(BM_Roots)->RangeMultiplier(2)->Range(2, 32);

void BM_Project(benchmark::State& state) {
  const Construction c = construct(parse_braid_word(kWords[2]));
  const SemiholoPoly f = rescale(c.poly, 0.0078125);
  for (auto _ : state) benchmark::DoNotOptimize(stereographic_project(f));
}
BENCHMARK(BM_Project)->Unit(benchmark::kMillisecond);

void BM_Integerize(benchmark::State& state) {
  const Construction c = construct(parse_braid_word(kWords[2]));
  const SemiholoPoly f = rescale(c.poly, 0.0078125);
  const RealPoly3 p = stereographic_project(f);
  const std::vector<Point3> samples = project_points(sample_nodal_set(c.poly, 0.0078125, 256));
  for (auto _ : state) benchmark::DoNotOptimize(integerize(p, samples));
}
BENCHMARK(BM_Integerize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
