#include <benchmark/benchmark.h>

#include <map>

#include "lkc/convolution.hpp"
#include "lkc/energy.hpp"
#include "lkc/rng.hpp"

using namespace lkc;

namespace {

const GreenKernel& kernel_for(int radius) {
  static std::map<int, GreenKernel> cache;
  auto it = cache.find(radius);
  if (it == cache.end()) it = cache.emplace(radius, build_kernel(1.0, 2 * radius)).first;
  return it->second;
}

void BM_ConvolveFft(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const LatticeBox box(r);
  const Convolver conv(kernel_for(r), box);
  Rng rng(1);
  const Field w = normal_field(box, rng);
  for (auto _ : state) benchmark::DoNotOptimize(conv.apply(w));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.size()));
}
BENCHMARK(BM_ConvolveFft)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_ConvolveDirect(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const LatticeBox box(r);
  const GreenKernel& k = kernel_for(r);
  Rng rng(1);
  const Field w = normal_field(box, rng);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(k, w, ConvolutionMethod::direct));
}
BENCHMARK(BM_ConvolveDirect)->Arg(3)->Arg(5);

void BM_KernelBuild(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel(1.0, radius));
}
BENCHMARK(BM_KernelBuild)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EnergyGradient(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  ProblemSpec spec;
  spec.box = LatticeBox(r);
  spec.potential = PotentialSpec::coercive(1.0, {0, 0, 0}, 1.0, 2.0);
  const EnergyModel model(spec, kernel_for(r));
  Rng rng(2);
  const Field u = random_field(spec.box, rng, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(model.gradient(u));
}
BENCHMARK(BM_EnergyGradient)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
