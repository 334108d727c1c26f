#include <benchmark/benchmark.h>

#include "kinemetrica/intersect.hpp"
#include "kinemetrica/sampling.hpp"

namespace {

using namespace kinemetrica;

void BM_SegmentDisk(benchmark::State& state) {
  const Body disk = Body::ball(2, 1.0);
  const Curve seg = Curve::segment(2.0, 2);
  Rng rng(42);
  IntersectScratch scratch;
  IntersectionResult res;
  for (auto _ : state) {
    RigidMotion g{Rotation::haar(rng, 2),
                  Vec(rng.uniform(-2, 2), rng.uniform(-2, 2))};
    intersect_into(disk, seg, g, scratch, res);
    benchmark::DoNotOptimize(res.inside_length);
  }
}
BENCHMARK(BM_SegmentDisk);

void BM_CircleLoopDisk(benchmark::State& state) {
  const Body disk = Body::ball(2, 1.0);
  const Curve loop = Curve::circle_loop(3.0, 2);
  Rng rng(42);
  IntersectScratch scratch;
  IntersectionResult res;
  for (auto _ : state) {
    RigidMotion g{Rotation::haar(rng, 2),
                  Vec(rng.uniform(-4, 4), rng.uniform(-4, 4))};
    intersect_into(disk, loop, g, scratch, res);
    benchmark::DoNotOptimize(res.inside_length);
  }
}
BENCHMARK(BM_CircleLoopDisk);

void BM_LongWalkDisk(benchmark::State& state) {
  const Body disk = Body::ball(2, 1.0);
  Rng rng(42);
  const Curve walk = Curve::pearson_walk(rng, StepLengthLaw::constant(0.5),
                                         static_cast<double>(state.range(0)),
                                         2);
  const SamplingWindow window(disk, walk.circumradius());
  IntersectScratch scratch;
  IntersectionResult res;
  for (auto _ : state) {
    RigidMotion g{Rotation::haar(rng, 2), window.sample(rng)};
    intersect_into(disk, walk, g, scratch, res);
    benchmark::DoNotOptimize(res.crossing_count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) / 2);
}
BENCHMARK(BM_LongWalkDisk)->Arg(100)->Arg(2000);

void BM_AnnulusSegment(benchmark::State& state) {
  const Body ring = Body::annulus(0.5, 1.0);
  const Curve seg = Curve::segment(4.0, 2);
  Rng rng(42);
  IntersectScratch scratch;
  IntersectionResult res;
  for (auto _ : state) {
    RigidMotion g{Rotation::haar(rng, 2),
                  Vec(rng.uniform(-3, 3), rng.uniform(-3, 3))};
    intersect_into(ring, seg, g, scratch, res);
    benchmark::DoNotOptimize(res.pieces.size());
  }
}
BENCHMARK(BM_AnnulusSegment);

}  // namespace
