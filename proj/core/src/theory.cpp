// Closed forms for mean traversed lengths, inclusion probabilities and chord
// statistics under the uniform kinematic measure.
//
// The inside-length measure behind the harmonic law is the same whether
// derived from the manifold-intersection formula or from the mean-curvature
// integrals of a thin tube around the curve (those integrals are invariant
// under bending), so a single expression serves both routes.

#include "kinemetrica/theory.hpp"

#include <cmath>

#include "kinemetrica/body.hpp"

namespace kinemetrica {

const char* formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::unit_sphere_area: return "unit_sphere_area";
    case FormulaId::eta_n: return "eta_n";
    case FormulaId::cauchy_mean_chord: return "cauchy_mean_chord";
    case FormulaId::harmonic_mean_length: return "harmonic_mean_length";
    case FormulaId::big_loop: return "big_loop";
    case FormulaId::small_loop: return "small_loop";
    case FormulaId::inclusion_2d: return "inclusion_2d";
    case FormulaId::inclusion_3d: return "inclusion_3d";
    case FormulaId::mean_arc: return "mean_arc";
    case FormulaId::mean_chi_loop: return "mean_chi_loop";
    case FormulaId::mean_chi_open_loop: return "mean_chi_open_loop";
    case FormulaId::ocd_mean_chord: return "ocd_mean_chord";
  }
  return "unknown";
}

namespace theory {

double unit_sphere_area(int m) {
  if (m < 0) throw UsageError("unit_sphere_area: m must be >= 0");
  const double a = 0.5 * (m + 1);
  return 2.0 * std::pow(kPi, a) / std::tgamma(a);
}

double eta(int n) {
  if (n < 2) throw UsageError("eta: dimension must be >= 2");
  return std::sqrt(kPi) * (n - 1) * std::tgamma(0.5 * (n - 1)) /
         std::tgamma(0.5 * n);
}

TheoryValue mean_chord(const Body& body) {
  TheoryValue t;
  t.formula = FormulaId::cauchy_mean_chord;
  t.value = eta(body.dimension()) * body.volume() / body.surface();
  t.inputs = {{"V", body.volume()},
              {"S", body.surface()},
              {"n", static_cast<double>(body.dimension())}};
  return t;
}

TheoryValue harmonic_mean_length(const MeanLength& mean_curve_length,
                                 const Body& body) {
  const TheoryValue sigma = mean_chord(body);
  TheoryValue t;
  t.formula = FormulaId::harmonic_mean_length;
  if (mean_curve_length.is_infinite()) {
    t.value = sigma.value;
    t.inputs = {{"sigma", sigma.value}};
  } else {
    const double s = mean_curve_length.value();
    t.value = 1.0 / (1.0 / s + 1.0 / sigma.value);
    t.inputs = {{"mean_length", s}, {"sigma", sigma.value}};
  }
  return t;
}

TheoryValue big_loop_mean_length(const Body& body) {
  TheoryValue t = mean_chord(body);
  t.formula = FormulaId::big_loop;
  return t;
}

namespace {

void require_2d(const Body& body, const char* who) {
  if (body.dimension() != 2)
    throw UsageError(std::string(who) + ": body must be 2D");
}

double loop_denominator(double f0, double l0, double l1, double f1) {
  return kTwoPi * (f0 + f1) + l0 * l1;
}

}  // namespace

TheoryValue small_loop_mean_length(double loop_perimeter, double loop_area,
                                   const Body& body2d) {
  require_2d(body2d, "small_loop_mean_length");
  if (!(loop_perimeter > 0.0) || !(loop_area > 0.0))
    throw UsageError("small_loop_mean_length: loops have L1 > 0 and F1 > 0");
  const double f0 = body2d.volume(), l0 = body2d.surface();
  TheoryValue t;
  t.formula = FormulaId::small_loop;
  t.value = kTwoPi * f0 * loop_perimeter /
            loop_denominator(f0, l0, loop_perimeter, loop_area);
  t.inputs = {{"L1", loop_perimeter}, {"F1", loop_area},
              {"F0", f0}, {"L0", l0}};
  return t;
}

TheoryValue inclusion_probability_2d(const Body& body2d, double loop_perimeter,
                                     double loop_area) {
  require_2d(body2d, "inclusion_probability_2d");
  if (!(loop_perimeter > 0.0) || !(loop_area > 0.0))
    throw UsageError("inclusion_probability_2d: loops have L1 > 0 and F1 > 0");
  const double f0 = body2d.volume(), l0 = body2d.surface();
  const double den = loop_denominator(f0, l0, loop_perimeter, loop_area);
  const double p = (kTwoPi * (f0 + loop_area) - l0 * loop_perimeter) / den;
  if (p < 0.0 || p > 1.0)
    throw RegimeError(
        "inclusion_probability_2d: value outside [0,1]; the curvature-regime "
        "hypotheses do not hold for these inputs");
  TheoryValue t;
  t.formula = FormulaId::inclusion_2d;
  t.value = p;
  t.inputs = {{"L1", loop_perimeter}, {"F1", loop_area},
              {"F0", f0}, {"L0", l0}};
  return t;
}

TheoryValue inclusion_probability_3d(double v0, double f0, double m0,
                                     double v1, double f1, double m1) {
  const double den = 4.0 * kPi * (v0 + v1) + f1 * m0 + f0 * m1;
  if (!(den > 0.0))
    throw UsageError("inclusion_probability_3d: degenerate bodies");
  const double p = (4.0 * kPi * (v0 - v1) + f1 * m0 - f0 * m1) / den;
  if (p < 0.0 || p > 1.0)
    throw RegimeError(
        "inclusion_probability_3d: value outside [0,1]; the curvature-regime "
        "hypotheses do not hold for these inputs");
  TheoryValue t;
  t.formula = FormulaId::inclusion_3d;
  t.value = p;
  t.inputs = {{"V0", v0}, {"F0", f0}, {"M0", m0},
              {"V1", v1}, {"F1", f1}, {"M1", m1}};
  return t;
}

TheoryValue mean_arc(double loop_perimeter, double loop_area,
                     double body_perimeter) {
  if (!(body_perimeter > 0.0)) throw UsageError("mean_arc: L0 must be > 0");
  TheoryValue t;
  t.formula = FormulaId::mean_arc;
  t.value = 0.5 * loop_perimeter - kPi * loop_area / body_perimeter;
  t.inputs = {{"L1", loop_perimeter}, {"F1", loop_area},
              {"L0", body_perimeter}};
  return t;
}

TheoryValue mean_chi_loop(double loop_perimeter, double loop_area,
                          const Body& body2d) {
  require_2d(body2d, "mean_chi_loop");
  const double f0 = body2d.volume(), l0 = body2d.surface();
  TheoryValue t;
  t.formula = FormulaId::mean_chi_loop;
  t.value = 2.0 * l0 * loop_perimeter /
            loop_denominator(f0, l0, loop_perimeter, loop_area);
  t.inputs = {{"L1", loop_perimeter}, {"F1", loop_area},
              {"F0", f0}, {"L0", l0}};
  return t;
}

TheoryValue mean_chi_open_loop(double loop_perimeter, double loop_area,
                               const Body& body2d) {
  require_2d(body2d, "mean_chi_open_loop");
  const double f0 = body2d.volume(), l0 = body2d.surface();
  TheoryValue t;
  t.formula = FormulaId::mean_chi_open_loop;
  t.value = (kTwoPi * f0 + 2.0 * l0 * loop_perimeter) /
            loop_denominator(f0, l0, loop_perimeter, loop_area);
  t.inputs = {{"L1", loop_perimeter}, {"F1", loop_area},
              {"F0", f0}, {"L0", l0}};
  return t;
}

TheoryValue ocd_mean_chord(const Body& body) {
  const Body hull = body.convex_hull();
  TheoryValue t;
  t.formula = FormulaId::ocd_mean_chord;
  t.value = eta(body.dimension()) * body.volume() / hull.surface();
  t.inputs = {{"V", body.volume()}, {"S_hull", hull.surface()}};
  return t;
}

}  // namespace theory

}  // namespace kinemetrica
