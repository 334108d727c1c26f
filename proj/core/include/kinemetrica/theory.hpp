#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

class Body;

// Mean curve length of a process; the infinite case is an explicit variant
// rather than a sentinel float.
class MeanLength {
 public:
  static MeanLength of(double v) {
    if (!(v > 0.0)) throw UsageError("mean length must be positive");
    return MeanLength(v, false);
  }
  static MeanLength infinite() { return MeanLength(0.0, true); }

  bool is_infinite() const { return infinite_; }
  double value() const {
    if (infinite_) throw UsageError("mean length is infinite");
    return value_;
  }

 private:
  MeanLength(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

enum class FormulaId {
  unit_sphere_area,
  eta_n,
  cauchy_mean_chord,
  harmonic_mean_length,
  big_loop,
  small_loop,
  inclusion_2d,
  inclusion_3d,
  mean_arc,
  mean_chi_loop,
  mean_chi_open_loop,
  ocd_mean_chord,
};

const char* formula_name(FormulaId id);

struct TheoryValue {
  double value = 0.0;
  FormulaId formula = FormulaId::cauchy_mean_chord;
  std::vector<std::pair<std::string, double>> inputs;
};

namespace theory {

// Surface area of the unit m-sphere, O_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double unit_sphere_area(int m);

// Dimension constant of Cauchy's formula: eta_2 = pi, eta_3 = 4. Computed
// from the Gamma expression; equals 2 pi O_{n-1}/O_n.
double eta(int n);

// Mean chord length through the body: eta_n V/S.
TheoryValue mean_chord(const Body& body);

// Harmonic combination 1/<L> = 1/<s> + 1/<sigma>; an infinite mean curve
// length degenerates to the mean chord.
TheoryValue harmonic_mean_length(const MeanLength& mean_curve_length,
                                 const Body& body);

// Mean traversed length of a loop in the big-loop regime (loop min curvature
// radius above body max curvature radius): length-independent Cauchy value.
TheoryValue big_loop_mean_length(const Body& body);

// Small-loop regime (loop max curvature radius below body min curvature
// radius), 2D: <L> = 2 pi F0 L1 / (2 pi (F0+F1) + L0 L1).
TheoryValue small_loop_mean_length(double loop_perimeter, double loop_area,
                                   const Body& body2d);

// P[loop entirely inside | hit], 2D small-loop regime. Values outside [0,1]
// indicate the curvature hypotheses were violated and raise RegimeError.
TheoryValue inclusion_probability_2d(const Body& body2d, double loop_perimeter,
                                     double loop_area);

// 3D inclusion probability from (volume, surface, mean-curvature integral)
// of the fixed and moving convex bodies.
TheoryValue inclusion_probability_3d(double v0, double f0, double m0,
                                     double v1, double f1, double m1);

// Mean arc <s> = L1/2 - pi F1 / L0: mean inside-length of a loop conditioned
// on crossing the window boundary.
TheoryValue mean_arc(double loop_perimeter, double loop_area,
                     double body_perimeter);

// <chi(K1 ^ K0)> for a loop: 2 L0 L1 / (2 pi (F0+F1) + L0 L1); equals 1 - p.
TheoryValue mean_chi_loop(double loop_perimeter, double loop_area,
                          const Body& body2d);

// Same for the loop with one point removed (a contractible "open loop"):
// (2 pi F0 + 2 L0 L1) / (2 pi (F0+F1) + L0 L1).
TheoryValue mean_chi_open_loop(double loop_perimeter, double loop_area,
                               const Body& body2d);

// One-chord-distribution mean for straight lines through a (possibly
// non-convex) body: eta_n V / S(hull).
TheoryValue ocd_mean_chord(const Body& body);

}  // namespace theory

}  // namespace kinemetrica
