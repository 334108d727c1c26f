#include <benchmark/benchmark.h>

#include "kinemetrica/estimators.hpp"
#include "kinemetrica/sampling.hpp"

namespace {

using namespace kinemetrica;

void BM_HaarRotation(benchmark::State& state) {
  Rng rng(7);
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Rotation::haar(rng, dim));
  }
}
BENCHMARK(BM_HaarRotation)->Arg(2)->Arg(3)->Arg(4);

void BM_PearsonWalkDraw(benchmark::State& state) {
  Rng rng(7);
  const double target = static_cast<double>(state.range(0));
  for (auto _ : state) {
    const Curve c =
        Curve::pearson_walk(rng, StepLengthLaw::exponential(0.5), target, 2);
    benchmark::DoNotOptimize(c.circumradius());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_PearsonWalkDraw)->Arg(5)->Arg(2000);

void BM_HittingMotion(benchmark::State& state) {
  const Body disk = Body::ball(2, 1.0);
  const Curve seg = Curve::segment(2.0, 2);
  Rng rng(7);
  for (auto _ : state) {
    auto [motion, res] = sample_hitting_motion(rng, disk, seg);
    benchmark::DoNotOptimize(res.inside_length);
  }
}
BENCHMARK(BM_HittingMotion);

void BM_EstimatorThroughput(benchmark::State& state) {
  const Body disk = Body::ball(2, 1.0);
  auto process = make_segment_process(2.0, 2);
  for (auto _ : state) {
    RunConfig cfg;
    cfg.seed = 11;
    cfg.target_accepted = 20'000;
    const EstimatorResult r =
        estimate_mean_traversed_length(disk, *process, cfg);
    benchmark::DoNotOptimize(r.estimate);
  }
  state.SetItemsProcessed(state.iterations() * 20'000);
}
BENCHMARK(BM_EstimatorThroughput)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
