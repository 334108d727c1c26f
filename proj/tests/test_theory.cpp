#include <doctest.h>

#include <cmath>

#include "kinemetrica/body.hpp"
#include "kinemetrica/theory.hpp"

using namespace kinemetrica;

namespace {
constexpr double kTight = 1e-12;
}

TEST_CASE("unit sphere areas") {
  CHECK(theory::unit_sphere_area(0) == doctest::Approx(2.0).epsilon(kTight));
  CHECK(theory::unit_sphere_area(1) == doctest::Approx(kTwoPi).epsilon(kTight));
  CHECK(theory::unit_sphere_area(2) ==
        doctest::Approx(4.0 * kPi).epsilon(kTight));
  CHECK_THROWS_AS(theory::unit_sphere_area(-1), UsageError);
}

TEST_CASE("eta values and cross identity") {
  CHECK(theory::eta(2) == doctest::Approx(kPi).epsilon(kTight));
  CHECK(theory::eta(3) == doctest::Approx(4.0).epsilon(kTight));
  CHECK(theory::eta(4) == doctest::Approx(1.5 * kPi).epsilon(kTight));
  for (int n = 2; n <= 10; ++n) {
    const double cross = kTwoPi * theory::unit_sphere_area(n - 1) /
                         theory::unit_sphere_area(n);
    CHECK(std::abs(theory::eta(n) - cross) < 1e-12);
  }
  CHECK_THROWS_AS(theory::eta(1), UsageError);
}

TEST_CASE("mean chord") {
  CHECK(theory::mean_chord(Body::ball(2, 1.0)).value ==
        doctest::Approx(kPi / 2).epsilon(kTight));
  CHECK(theory::mean_chord(Body::ball(3, 1.0)).value ==
        doctest::Approx(4.0 / 3.0).epsilon(kTight));
  // Multiple-chord convention counts the inner boundary in the perimeter.
  CHECK(theory::mean_chord(Body::annulus(0.5, 1.0)).value ==
        doctest::Approx(kPi / 4).epsilon(kTight));
}

TEST_CASE("harmonic mean length") {
  const Body disk = Body::ball(2, 1.0);
  CHECK(theory::harmonic_mean_length(MeanLength::of(2.0), disk).value ==
        doctest::Approx(0.8798016929768852).epsilon(kTight));
  CHECK(theory::harmonic_mean_length(MeanLength::infinite(), disk).value ==
        doctest::Approx(kPi / 2).epsilon(kTight));
  // l -> 0 limit: <L>/l -> 1.
  const double tiny = 1e-6;
  CHECK(theory::harmonic_mean_length(MeanLength::of(tiny), disk).value / tiny ==
        doctest::Approx(1.0).epsilon(1e-5));
  // Strictly increasing in l, bounded by the mean chord.
  double prev = 0.0;
  for (double l = 0.25; l < 300.0; l *= 2.0) {
    const double v =
        theory::harmonic_mean_length(MeanLength::of(l), disk).value;
    CHECK(v > prev);
    CHECK(v < kPi / 2);
    prev = v;
  }
}

TEST_CASE("small loop closed forms, R1=0.25 in disk(2)") {
  const Body disk2 = Body::ball(2, 2.0);
  const double l1 = kPi / 2, f1 = kPi / 16;
  // Independent evaluation of the same closed forms.
  const double f0 = 4 * kPi, l0 = 4 * kPi;
  const double den = kTwoPi * (f0 + f1) + l0 * l1;
  const double mean_len = kTwoPi * f0 * l1 / den;
  CHECK(mean_len == doctest::Approx(1.2411230236404123).epsilon(kTight));
  CHECK(theory::small_loop_mean_length(l1, f1, disk2).value ==
        doctest::Approx(mean_len).epsilon(kTight));

  const double p = theory::inclusion_probability_2d(disk2, l1, f1).value;
  CHECK(p ==
        doctest::Approx((kTwoPi * (f0 + f1) - l0 * l1) / den).epsilon(kTight));
  CHECK(p == doctest::Approx(49.0 / 81.0).epsilon(kTight));

  const double arc = theory::mean_arc(l1, f1, l0).value;
  CHECK(arc == doctest::Approx(15.0 * kPi / 64.0).epsilon(kTight));

  const double chi = theory::mean_chi_loop(l1, f1, disk2).value;
  CHECK(chi == doctest::Approx(1.0 - p).epsilon(kTight));

  // <L> = p L1 + (1-p) <s>
  CHECK(mean_len == doctest::Approx(p * l1 + (1 - p) * arc).epsilon(kTight));

  // Open-loop mean chi equals 1 + (1-p) <s>/L1.
  const double open_chi = theory::mean_chi_open_loop(l1, f1, disk2).value;
  CHECK(open_chi == doctest::Approx(1.0 + (1 - p) * arc / l1).epsilon(kTight));
  CHECK(open_chi ==
        doctest::Approx((kTwoPi * f0 + 2 * l0 * l1) / den).epsilon(kTight));
}

TEST_CASE("small loop degenerate and tiny limits") {
  const Body disk2 = Body::ball(2, 2.0);
  CHECK_THROWS_AS(theory::small_loop_mean_length(1.0, 0.0, disk2), UsageError);
  // L1 -> 0: <L>/L1 -> 1 and <chi> -> 0.
  const double l1 = 1e-8, f1 = l1 * l1 / (4 * kPi);
  CHECK(theory::small_loop_mean_length(l1, f1, disk2).value / l1 ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(theory::mean_chi_loop(l1, f1, disk2).value ==
        doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("two circles inclusion") {
  const Body disk2 = Body::ball(2, 2.0);
  const double l1 = kTwoPi, f1 = kPi;  // R1 = 1
  CHECK(theory::inclusion_probability_2d(disk2, l1, f1).value ==
        doctest::Approx(1.0 / 9.0).epsilon(kTight));
  // R1 = R0: exactly zero.
  CHECK(theory::inclusion_probability_2d(disk2, 4 * kPi, 4 * kPi).value ==
        doctest::Approx(0.0).epsilon(kTight));
  // R1 -> 0 given a hit: probability tends to one.
  CHECK(
      theory::inclusion_probability_2d(disk2, 2e-6 * kPi, kPi * 1e-12).value ==
      doctest::Approx(1.0).epsilon(1e-5));
  // Regime violation: a long thin loop drives the raw expression negative.
  CHECK_THROWS_AS(
      theory::inclusion_probability_2d(Body::ball(2, 1.0), 50.0, 1e-3),
      RegimeError);
}

TEST_CASE("two spheres inclusion") {
  struct Mfv {
    double v, f, m;
  };
  auto sphere_mfv = [](double r) {
    const Body b = Body::ball(3, r);
    return Mfv{b.volume(), b.surface(), *b.measures().mean_curvature_integral};
  };
  const auto [v0, f0, m0] = sphere_mfv(2.0);
  const auto [v1, f1, m1] = sphere_mfv(1.0);
  CHECK(m0 == doctest::Approx(8 * kPi).epsilon(kTight));
  CHECK(theory::inclusion_probability_3d(v0, f0, m0, v1, f1, m1).value ==
        doctest::Approx(1.0 / 27.0).epsilon(kTight));
  CHECK(theory::inclusion_probability_3d(v0, f0, m0, v0, f0, m0).value ==
        doctest::Approx(0.0).epsilon(kTight));
  // Sign condition: p > 0 iff 4 pi V0 + F1 M0 > 4 pi V1 + F0 M1.
  CHECK(4 * kPi * v0 + f1 * m0 > 4 * kPi * v1 + f0 * m1);
  CHECK_THROWS_AS(theory::inclusion_probability_3d(v1, f1, m1, v0, f0, m0),
                  RegimeError);
}

TEST_CASE("mean arc limits") {
  // F1 -> 0 (thin loop): <s> -> L1/2.
  CHECK(theory::mean_arc(3.0, 0.0, 5.0).value == doctest::Approx(1.5));
  CHECK(theory::mean_arc(kPi / 2, kPi / 16, 4 * kPi).value ==
        doctest::Approx(kPi / 4 - kPi / 64).epsilon(kTight));
}

TEST_CASE("ocd mean chord") {
  const Body ring = Body::annulus(0.5, 1.0);
  CHECK(theory::ocd_mean_chord(ring).value ==
        doctest::Approx(3 * kPi / 8).epsilon(kTight));
  // Convex body: hull = body, OCD = MCD.
  const Body disk = Body::ball(2, 1.0);
  CHECK(theory::ocd_mean_chord(disk).value ==
        doctest::Approx(theory::mean_chord(disk).value).epsilon(kTight));
  // OCD/MCD ratio on the annulus = L0 / L*.
  CHECK(theory::ocd_mean_chord(ring).value / theory::mean_chord(ring).value ==
        doctest::Approx(1.5).epsilon(kTight));
}

TEST_CASE("mean length type") {
  CHECK_THROWS_AS(MeanLength::of(0.0), UsageError);
  CHECK_THROWS_AS(MeanLength::of(-1.0), UsageError);
  CHECK(MeanLength::infinite().is_infinite());
  CHECK_THROWS_AS(MeanLength::infinite().value(), UsageError);
}
