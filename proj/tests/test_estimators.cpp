#include <doctest.h>

#include <cmath>
#include <cstring>

#include "kinemetrica/estimators.hpp"

using namespace kinemetrica;

namespace {

RunConfig quick(uint64_t seed, long accepted) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.target_accepted = accepted;
  return cfg;
}

}  // namespace

TEST_CASE("determinism across runs and worker counts") {
  const Body disk = Body::ball(2, 1.0);
  auto process = make_pearson_walk_process(StepLengthLaw::exponential(0.5),
                                           5.0, 2);
  RunConfig cfg = quick(42, 20000);
  const EngineResult a = run_placement_engine(disk, *process, cfg, 0);
  const EngineResult b = run_placement_engine(disk, *process, cfg, 0);
  RunConfig cfg4 = cfg;
  cfg4.workers = 4;
  const EngineResult c = run_placement_engine(disk, *process, cfg4, 0);

  REQUIRE(a.candidates == b.candidates);
  REQUIRE(a.accepted == b.accepted);
  REQUIRE(a.candidates == c.candidates);
  REQUIRE(a.accepted == c.accepted);
  const auto ra = a.stats.raw_state();
  const auto rb = b.stats.raw_state();
  const auto rc = c.stats.raw_state();
  CHECK(std::memcmp(ra.data(), rb.data(), ra.size_bytes()) == 0);
  CHECK(std::memcmp(ra.data(), rc.data(), ra.size_bytes()) == 0);
  for (int i = 0; i < kTallyCount; ++i) {
    CHECK(a.stats.mean(i) == b.stats.mean(i));
    CHECK(a.stats.mean(i) == c.stats.mean(i));
  }
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
  const Body disk = Body::ball(2, 1.0);
  auto process = make_segment_process(2.0, 2);
  double se_small = 0.0, se_big = 0.0;
  const int reps = 5;
  for (int r = 0; r < reps; ++r) {
    se_small +=
        estimate_mean_traversed_length(disk, *process, quick(100 + r, 40000))
            .std_error;
    se_big +=
        estimate_mean_traversed_length(disk, *process, quick(200 + r, 160000))
            .std_error;
  }
  const double ratio = se_big / se_small;
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.55);
}

TEST_CASE("mean traversed length matches oracles at small n") {
  const Body disk = Body::ball(2, 1.0);
  struct Case {
    double l;
    double oracle;
  };
  for (const Case c : {Case{0.5, 0.3792734964973881},
                       Case{2.0, 0.8798016929768852},
                       Case{8.0, 1.3129911227112534}}) {
    auto process = make_segment_process(c.l, 2);
    const EstimatorResult r =
        estimate_mean_traversed_length(disk, *process, quick(7, 100000));
    REQUIRE(r.theory.has_value());
    CHECK(r.theory->value == doctest::Approx(c.oracle).epsilon(1e-12));
    CHECK(std::abs(*r.z_score) < 4.0);
  }
}

TEST_CASE("harmonic law on a box window") {
  const Body box = Body::box({2.0, 3.0});
  auto process =
      make_pearson_walk_process(StepLengthLaw::exponential(0.5), 5.0, 2);
  const EstimatorResult r =
      estimate_mean_traversed_length(box, *process, quick(7, 80000));
  // sigma = pi 6/10, common value 1/(1/5 + 10/(6 pi)).
  CHECK(r.theory->value == doctest::Approx(1.3688945171280258).epsilon(1e-12));
  CHECK(std::abs(*r.z_score) < 4.0);
}

TEST_CASE("harmonic law on a spherical shell window") {
  const Body shell = Body::spherical_shell(0.5, 1.0);
  auto process = make_segment_process(2.0, 3);
  const EstimatorResult r =
      estimate_mean_traversed_length(shell, *process, quick(7, 80000));
  const double sigma = 4.0 * shell.volume() / shell.surface();
  CHECK(r.theory->value ==
        doctest::Approx(1.0 / (0.5 + 1.0 / sigma)).epsilon(1e-12));
  CHECK(std::abs(*r.z_score) < 4.0);
}

TEST_CASE("exponential walk of mean total 50 approaches the Cauchy value") {
  const Body disk = Body::ball(2, 1.0);
  auto process =
      make_pearson_walk_process(StepLengthLaw::exponential(0.2), 50.0, 2);
  const EstimatorResult r =
      estimate_mean_traversed_length(disk, *process, quick(7, 60000));
  CHECK(r.theory->value == doctest::Approx(1.522951397571061).epsilon(1e-12));
  CHECK(std::abs(*r.z_score) < 4.0);
}

TEST_CASE("small loop estimates at small n") {
  const Body disk2 = Body::ball(2, 2.0);
  const SmallLoopEstimates s = estimate_small_loop_quantities(
      disk2, Curve::circle_loop(0.25, 2), quick(7, 150000));
  CHECK(std::abs(*s.mean_length.z_score) < 4.0);
  CHECK(std::abs(*s.inclusion_p.z_score) < 4.0);
  CHECK(std::abs(*s.mean_arc.z_score) < 4.0);
  CHECK(std::abs(*s.mean_chi.z_score) < 4.0);
  // Exact decompositions at the tally level.
  CHECK(std::abs(s.identity_length_gap) < 1e-9);
  CHECK(std::abs(s.identity_chi_gap) < 1e-12);
}

TEST_CASE("small loop regime violations") {
  const Body disk1 = Body::ball(2, 1.0);
  CHECK_THROWS_AS(estimate_small_loop_quantities(
                      disk1, Curve::circle_loop(1.5, 2), quick(7, 1000)),
                  RegimeError);
  // Polygonal windows have corners (min curvature radius 0).
  const Body box = Body::box({4.0, 4.0});
  CHECK_THROWS_AS(estimate_small_loop_quantities(
                      box, Curve::circle_loop(0.25, 2), quick(7, 1000)),
                  RegimeError);
  // Polyline loops are excluded regardless of the window.
  const Body disk2 = Body::ball(2, 2.0);
  const Curve square = Curve::polyline(
      {Vec(-0.1, -0.1), Vec(0.1, -0.1), Vec(0.1, 0.1), Vec(-0.1, 0.1),
       Vec(-0.1, -0.1)},
      true);
  CHECK_THROWS_AS(estimate_small_loop_quantities(disk2, square, quick(7, 1000)),
                  RegimeError);
}

TEST_CASE("3d inclusion probability") {
  const Body s2 = Body::ball(3, 2.0);
  const EstimatorResult r = estimate_inclusion_probability_3d(
      s2, Body::ball(3, 1.0), quick(7, 150000));
  CHECK(r.theory->value == doctest::Approx(1.0 / 27.0).epsilon(1e-12));
  CHECK(std::abs(*r.z_score) < 4.0);

  // Shrinking moving sphere: containment almost sure given a hit.
  const EstimatorResult tiny = estimate_inclusion_probability_3d(
      s2, Body::ball(3, 1e-3), quick(7, 50000));
  CHECK(tiny.estimate > 0.995);

  // Equal radii: containment impossible.
  const EstimatorResult equal = estimate_inclusion_probability_3d(
      s2, Body::ball(3, 2.0), quick(7, 50000));
  CHECK(equal.estimate == 0.0);

  CHECK_THROWS_AS(estimate_inclusion_probability_3d(
                      s2, Body::spherical_shell(0.5, 1.0), quick(7, 100)),
                  CapabilityError);
}

TEST_CASE("infinite stand-in reports both theory references") {
  const Body disk = Body::ball(2, 1.0);
  RunConfig cfg = quick(7, 30000);
  cfg.truncation_factor = 100.0;  // short stand-in keeps this test quick
  const EstimatorResult r = estimate_infinite_curve_mean_length(
      disk, StepLengthLaw::constant(0.5), cfg);
  REQUIRE(r.theory.has_value());
  REQUIRE(r.theory_truncated.has_value());
  CHECK(r.theory->value == doctest::Approx(kPi / 2).epsilon(1e-12));
  // 1/<L> = 1/200 + 2/pi at kappa=100 on the unit disk.
  CHECK(r.theory_truncated->value ==
        doctest::Approx(1.0 / (1.0 / 200.0 + 2.0 / kPi)).epsilon(1e-12));
  const double allowance = r.theory->value - r.theory_truncated->value;
  CHECK(std::abs(r.estimate - r.theory->value) <
        4.0 * r.std_error + allowance);
}

TEST_CASE("ocd on a convex body equals the mean chord") {
  const Body disk = Body::ball(2, 1.0);
  RunConfig cfg = quick(7, 40000);
  cfg.truncation_factor = 200.0;
  const EstimatorResult r = estimate_ocd_mean_chord(disk, cfg);
  CHECK(r.theory->value == doctest::Approx(kPi / 2).epsilon(1e-12));
  const double allowance =
      std::abs(r.theory->value - r.theory_truncated->value);
  CHECK(std::abs(r.estimate - r.theory->value) <
        4.0 * r.std_error + allowance);
}

TEST_CASE("invariance suite pairwise structure") {
  const Body disk = Body::ball(2, 1.0);
  auto p1 = make_segment_process(5.0, 2);
  auto p2 = make_pearson_walk_process(StepLengthLaw::constant(0.5), 5.0, 2);
  auto p3 = make_pearson_walk_process(StepLengthLaw::gamma(2.0, 0.25), 5.0, 2);
  const std::vector<const CurveProcess*> procs = {p1.get(), p2.get(), p3.get()};
  const InvarianceReport rep = invariance_suite(disk, procs, quick(7, 50000));
  REQUIRE(rep.results.size() == 3);
  REQUIRE(rep.z_matrix.size() == 9);
  CHECK(rep.max_pairwise_z < 4.0);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(rep.z_matrix[i * 3 + i] == 0.0);
    for (size_t j = 0; j < 3; ++j)
      CHECK(rep.z_matrix[i * 3 + j] ==
            doctest::Approx(-rep.z_matrix[j * 3 + i]));
  }
}

TEST_CASE("scaling covariance of the estimator") {
  auto base_process = make_segment_process(2.0, 2);
  const EstimatorResult base = estimate_mean_traversed_length(
      Body::ball(2, 1.0), *base_process, quick(51, 80000));
  for (const double lambda : {0.5, 3.0}) {
    auto scaled_process = make_segment_process(2.0 * lambda, 2);
    const EstimatorResult scaled = estimate_mean_traversed_length(
        Body::ball(2, lambda), *scaled_process, quick(52, 80000));
    const double se = std::sqrt(std::pow(lambda * base.std_error, 2) +
                                std::pow(scaled.std_error, 2));
    CHECK(std::abs(scaled.estimate - lambda * base.estimate) < 4.0 * se);
  }
}

TEST_CASE("degenerate configurations raise errors") {
  const Body disk = Body::ball(2, 1.0);
  auto process = make_segment_process(2.0, 3);
  CHECK_THROWS_AS(
      estimate_mean_traversed_length(disk, *process, quick(7, 1000)),
      UsageError);  // dimension mismatch
  RunConfig bad = quick(7, 0);
  auto process2 = make_segment_process(2.0, 2);
  CHECK_THROWS_AS(estimate_mean_traversed_length(disk, *process2, bad),
                  ConfigError);
}
