#include "kinemetrica/suites.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "kinemetrica/report.hpp"

namespace kinemetrica {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

CheckLine z_line(std::string name, int criterion, EstimatorResult r,
                 double tol_sigma, double bias_allowance = 0.0) {
  CheckLine line;
  line.name = std::move(name);
  line.criterion = criterion;
  const double theory = r.theory ? r.theory->value : 0.0;
  const double gap = std::abs(r.estimate - theory);
  line.pass = gap <= tol_sigma * r.std_error + bias_allowance;
  line.detail = "estimate=" + fmt(r.estimate) + " +- " + fmt(r.std_error) +
                "  theory=" + fmt(theory) +
                (r.z_score ? "  z=" + fmt(*r.z_score) : "");
  if (bias_allowance > 0.0)
    line.detail += "  truncation_allowance=" + fmt(bias_allowance);
  line.result = std::move(r);
  return line;
}

CheckLine pairwise_line(std::string name, int criterion,
                        const EstimatorResult& a, const EstimatorResult& b,
                        double tol_sigma) {
  const double se =
      std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  const double z = se > 0.0 ? (a.estimate - b.estimate) / se : 0.0;
  CheckLine line;
  line.name = std::move(name);
  line.criterion = criterion;
  line.pass = std::abs(z) < tol_sigma;
  line.detail = "z=" + fmt(z);
  return line;
}

RunConfig with_seed(const RunConfig& base, uint64_t offset) {
  RunConfig cfg = base;
  cfg.seed = base.seed + offset;
  return cfg;
}

// ---------------------------------------------------------------------------

SuiteReport suite_cauchy2d(const RunConfig& base, double tol) {
  SuiteReport rep{"cauchy2d", {}, true};
  const Body disk = Body::ball(2, 1.0);
  uint64_t off = 1;
  for (const double l : {0.5, 2.0, 8.0}) {
    auto process = make_segment_process(l, 2);
    EstimatorResult r = estimate_mean_traversed_length(
        disk, *process, with_seed(base, off++));
    rep.lines.push_back(
        z_line("harmonic-law segment l=" + fmt(l) + " on disk(1)", 1,
               std::move(r), tol));
  }
  return rep;
}

SuiteReport suite_cauchy3d(const RunConfig& base, double tol) {
  SuiteReport rep{"cauchy3d", {}, true};
  const Body sphere = Body::ball(3, 1.0);
  {
    auto process = make_segment_process(2.0, 3);
    rep.lines.push_back(z_line(
        "harmonic-law segment l=2 on sphere(1)", 0,
        estimate_mean_traversed_length(sphere, *process, with_seed(base, 1)),
        tol));
  }
  {
    auto process = make_pearson_walk_process(StepLengthLaw::exponential(0.5),
                                             5.0, 3);
    rep.lines.push_back(z_line(
        "harmonic-law exp-walk s=5 on sphere(1)", 0,
        estimate_mean_traversed_length(sphere, *process, with_seed(base, 2)),
        tol));
  }
  return rep;
}

SuiteReport suite_invariance(const RunConfig& base, double tol) {
  SuiteReport rep{"invariance", {}, true};
  const Body disk = Body::ball(2, 1.0);
  std::vector<std::unique_ptr<CurveProcess>> owned;
  owned.push_back(
      make_pearson_walk_process(StepLengthLaw::constant(0.5), 5.0, 2));
  owned.push_back(
      make_pearson_walk_process(StepLengthLaw::exponential(0.5), 5.0, 2));
  owned.push_back(
      make_pearson_walk_process(StepLengthLaw::gamma(2.0, 0.25), 5.0, 2));
  owned.push_back(make_ramified_tree_process(
      7, StepLengthLaw::exponential(5.0 / 7.0), 2));
  owned.push_back(make_segment_process(5.0, 2));
  std::vector<const CurveProcess*> processes;
  for (const auto& p : owned) processes.push_back(p.get());

  const InvarianceReport inv = invariance_suite(disk, processes, base);
  for (const EstimatorResult& r : inv.results)
    rep.lines.push_back(z_line("invariance " + r.id, 2, r, tol));
  const size_t n = inv.results.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      rep.lines.push_back(pairwise_line(
          "invariance pairwise " + processes[i]->name() + " vs " +
              processes[j]->name(),
          2, inv.results[i], inv.results[j], tol));
  return rep;
}

SuiteReport suite_infinite(const RunConfig& base, double tol) {
  SuiteReport rep{"infinite", {}, true};
  {
    const Body disk = Body::ball(2, 1.0);
    EstimatorResult r = estimate_infinite_curve_mean_length(
        disk, StepLengthLaw::constant(0.5), with_seed(base, 1));
    const double allowance =
        std::abs(r.theory_truncated->value - r.theory->value);
    rep.lines.push_back(z_line("infinite-walk kappa=" +
                                   fmt(base.truncation_factor) + " on disk(1)",
                               3, std::move(r), tol, allowance));
  }
  {
    const Body sphere = Body::ball(3, 1.0);
    EstimatorResult r = estimate_infinite_curve_mean_length(
        sphere, StepLengthLaw::constant(0.05), with_seed(base, 2));
    const double allowance =
        std::abs(r.theory_truncated->value - r.theory->value);
    rep.lines.push_back(
        z_line("infinite-walk kappa=" + fmt(base.truncation_factor) +
                   " on sphere(1)",
               3, std::move(r), tol, allowance));
  }
  return rep;
}

SuiteReport suite_loops2d(const RunConfig& base, double tol) {
  SuiteReport rep{"loops2d", {}, true};
  const Body disk1 = Body::ball(2, 1.0);

  // Big-loop regime: length independence of the Cauchy value.
  std::vector<EstimatorResult> big;
  uint64_t off = 1;
  for (const double radius : {3.0, 10.0}) {
    auto process = make_circle_loop_process(radius, 2);
    big.push_back(estimate_mean_traversed_length(disk1, *process,
                                                 with_seed(base, off++)));
    rep.lines.push_back(z_line(
        "big-loop R=" + fmt(radius) + " on disk(1)", 4, big.back(), tol));
  }
  rep.lines.push_back(
      pairwise_line("big-loop R=3 vs R=10", 4, big[0], big[1], tol));

  // Small-loop suite in disk(2).
  const Body disk2 = Body::ball(2, 2.0);
  const SmallLoopEstimates small = estimate_small_loop_quantities(
      disk2, Curve::circle_loop(0.25, 2), with_seed(base, 3));
  rep.lines.push_back(
      z_line("small-loop mean-length R1=0.25 in disk(2)", 5,
             small.mean_length, tol));
  rep.lines.push_back(z_line("small-loop inclusion-p R1=0.25 in disk(2)", 5,
                             small.inclusion_p, tol));
  rep.lines.push_back(
      z_line("small-loop mean-arc R1=0.25 in disk(2)", 5, small.mean_arc, tol));
  rep.lines.push_back(
      z_line("small-loop mean-chi R1=0.25 in disk(2)", 5, small.mean_chi, tol));
  {
    CheckLine line;
    line.name = "small-loop identity <L> = p L1 + (1-p) <s>";
    line.criterion = 5;
    line.pass = std::abs(small.identity_length_gap) <=
                tol * small.identity_length_gap_se + 1e-9;
    line.detail = "gap=" + fmt(small.identity_length_gap) + " +- " +
                  fmt(small.identity_length_gap_se);
    rep.lines.push_back(std::move(line));
  }
  {
    CheckLine line;
    line.name = "small-loop identity <chi> = 1 - p";
    line.criterion = 5;
    line.pass = std::abs(small.identity_chi_gap) <=
                tol * small.identity_chi_gap_se + 1e-9;
    line.detail = "gap=" + fmt(small.identity_chi_gap) + " +- " +
                  fmt(small.identity_chi_gap_se);
    rep.lines.push_back(std::move(line));
  }

  // Two-circles inclusion probability (Hadwiger pair R0=2, R1=1).
  const SmallLoopEstimates circles = estimate_small_loop_quantities(
      disk2, Curve::circle_loop(1.0, 2), with_seed(base, 4));
  rep.lines.push_back(z_line("two-circles inclusion R0=2 R1=1", 6,
                             circles.inclusion_p, tol));
  return rep;
}

SuiteReport suite_inclusion3d(const RunConfig& base, double tol) {
  SuiteReport rep{"inclusion3d", {}, true};
  const Body s2 = Body::ball(3, 2.0);
  rep.lines.push_back(
      z_line("two-spheres inclusion R0=2 R1=1", 6,
             estimate_inclusion_probability_3d(s2, Body::ball(3, 1.0),
                                               with_seed(base, 1)),
             tol));
  rep.lines.push_back(
      z_line("two-spheres inclusion R0=2 R1=1e-3", 0,
             estimate_inclusion_probability_3d(s2, Body::ball(3, 1e-3),
                                               with_seed(base, 2)),
             tol));
  {
    // Equal radii: containment is impossible, the estimate is exactly zero.
    RunConfig small = with_seed(base, 3);
    small.target_accepted = std::min<long>(base.target_accepted, 100'000);
    EstimatorResult r = estimate_inclusion_probability_3d(
        s2, Body::ball(3, 2.0), small);
    CheckLine line;
    line.name = "two-spheres inclusion R1=R0";
    line.criterion = 0;
    line.pass = r.estimate == 0.0 && r.theory->value == 0.0;
    line.detail = "estimate=" + fmt(r.estimate);
    line.result = std::move(r);
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

SuiteReport suite_ocd(const RunConfig& base, double tol) {
  SuiteReport rep{"ocd", {}, true};
  const Body ring = Body::annulus(0.5, 1.0);

  EstimatorResult ocd = estimate_ocd_mean_chord(ring, with_seed(base, 1));
  const double ocd_allow =
      std::abs(ocd.theory_truncated->value - ocd.theory->value);
  rep.lines.push_back(z_line("ocd mean chord on annulus(0.5,1)", 7, ocd, tol,
                             ocd_allow));

  EstimatorResult mcd = estimate_infinite_curve_mean_length(
      ring, StepLengthLaw::constant(base.truncation_factor * ring.diameter()),
      with_seed(base, 2));
  const double mcd_allow =
      std::abs(mcd.theory_truncated->value - mcd.theory->value);
  rep.lines.push_back(z_line("mcd mean chord on annulus(0.5,1)", 7, mcd, tol,
                             mcd_allow));

  {
    const double ratio = ocd.estimate / mcd.estimate;
    const double ratio_theory = ocd.theory->value / mcd.theory->value;
    const double se =
        std::abs(ratio) *
        std::sqrt(std::pow(ocd.std_error / ocd.estimate, 2) +
                  std::pow(mcd.std_error / mcd.estimate, 2));
    const double allow = std::abs(ocd.theory_truncated->value /
                                      mcd.theory_truncated->value -
                                  ratio_theory);
    CheckLine line;
    line.name = "ocd/mcd ratio on annulus(0.5,1)";
    line.criterion = 7;
    line.pass = std::abs(ratio - ratio_theory) <= tol * se + allow;
    line.detail = "ratio=" + fmt(ratio) + " +- " + fmt(se) +
                  "  theory=" + fmt(ratio_theory);
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Property suite (structural checks)
// ---------------------------------------------------------------------------

bool bit_identical(const EngineResult& a, const EngineResult& b) {
  if (a.candidates != b.candidates || a.accepted != b.accepted ||
      a.clusters != b.clusters || a.chunks.size() != b.chunks.size())
    return false;
  for (int i = 0; i < kTallyCount; ++i) {
    if (std::memcmp(&a.stats.means()[static_cast<size_t>(i)],
                    &b.stats.means()[static_cast<size_t>(i)],
                    sizeof(double)) != 0)
      return false;
  }
  const auto ra = a.stats.raw_state();
  const auto rb = b.stats.raw_state();
  return std::memcmp(ra.data(), rb.data(), ra.size_bytes()) == 0;
}

SuiteReport suite_property(const RunConfig& base, double tol) {
  SuiteReport rep{"property", {}, true};
  const Body disk = Body::ball(2, 1.0);

  {
    // Bit-level determinism across runs and worker counts.
    auto process = make_segment_process(2.0, 2);
    RunConfig cfg = with_seed(base, 1);
    cfg.target_accepted = 20'000;
    cfg.workers = 1;
    const EngineResult a = run_placement_engine(disk, *process, cfg, 0);
    const EngineResult b = run_placement_engine(disk, *process, cfg, 0);
    RunConfig cfg4 = cfg;
    cfg4.workers = 4;
    const EngineResult c = run_placement_engine(disk, *process, cfg4, 0);
    CheckLine line;
    line.name = "determinism: fixed seed => bit-identical tallies";
    line.criterion = 8;
    line.pass = bit_identical(a, b) && bit_identical(a, c);
    line.detail = line.pass ? "tallies identical (1 and 4 workers)"
                            : "tallies differ";
    rep.lines.push_back(std::move(line));

    // Chunk-merge associativity.
    MultiWelford forward(kTallyCount), backward(kTallyCount),
        strided(kTallyCount);
    for (const ChunkPartial& cpart : a.chunks) forward.merge(cpart.stats);
    for (size_t i = a.chunks.size(); i-- > 0;)
      backward.merge(a.chunks[i].stats);
    for (size_t stride = 0; stride < 4; ++stride)
      for (size_t i = stride; i < a.chunks.size(); i += 4)
        strided.merge(a.chunks[i].stats);
    double worst = 0.0;
    for (int i = 0; i < kTallyCount; ++i) {
      const double scale =
          std::max({std::abs(forward.mean(i)), std::abs(backward.mean(i)),
                    1e-300});
      worst = std::max(worst,
                       std::abs(forward.mean(i) - backward.mean(i)) / scale);
      worst = std::max(worst,
                       std::abs(forward.mean(i) - strided.mean(i)) / scale);
      const double vscale = std::max(
          {std::abs(forward.variance(i)), std::abs(backward.variance(i)),
           1e-300});
      worst = std::max(
          worst, std::abs(forward.variance(i) - backward.variance(i)) / vscale);
    }
    CheckLine merge_line;
    merge_line.name = "chunk-merge associativity <= 1e-10";
    merge_line.criterion = 8;
    merge_line.pass = worst <= 1e-10;
    merge_line.detail = "max relative discrepancy=" + fmt(worst);
    rep.lines.push_back(std::move(merge_line));
  }

  {
    // Scaling covariance: <L> scales linearly with the configuration.
    RunConfig cfg = with_seed(base, 2);
    cfg.target_accepted = std::min<long>(base.target_accepted, 200'000);
    auto unit_process = make_segment_process(2.0, 2);
    const EstimatorResult unit =
        estimate_mean_traversed_length(disk, *unit_process, cfg);
    for (const double lambda : {0.5, 3.0}) {
      auto scaled_process = make_segment_process(2.0 * lambda, 2);
      const Body scaled_disk = Body::ball(2, lambda);
      const EstimatorResult scaled = estimate_mean_traversed_length(
          scaled_disk, *scaled_process, with_seed(cfg, 17 + (lambda > 1)));
      const double se = std::sqrt(std::pow(lambda * unit.std_error, 2) +
                                  std::pow(scaled.std_error, 2));
      const double gap = std::abs(scaled.estimate - lambda * unit.estimate);
      CheckLine line;
      line.name = "scaling covariance lambda=" + fmt(lambda);
      line.criterion = 8;
      line.pass = gap <= tol * se;
      line.detail = "scaled=" + fmt(scaled.estimate) +
                    "  lambda*unit=" + fmt(lambda * unit.estimate) +
                    "  gap/se=" + fmt(se > 0 ? gap / se : 0.0);
      rep.lines.push_back(std::move(line));
    }
  }

  {
    // Crossing parity over random fiber placements.
    Rng rng(base.seed + 901);
    const Body bodies[3] = {disk, Body::annulus(0.5, 1.0),
                            Body::box({2.0, 3.0})};
    long checked = 0;
    bool ok = true;
    std::vector<double> ts;
    for (int iter = 0; iter < 100'000 && ok; ++iter) {
      const Body& body = bodies[iter % 3];
      Vec p0(2), p1(2);
      const double span = 2.0 * body.circumradius();
      for (int i = 0; i < 2; ++i) {
        p0[i] = rng.uniform(-span, span);
        p1[i] = rng.uniform(-span, span);
      }
      if (p0.dist2(p1) == 0.0) continue;
      ts.clear();
      body.boundary_crossings(p0, p1, ts);
      const bool in0 = body.contains(p0);
      const bool in1 = body.contains(p1);
      const bool parity_even = ts.size() % 2 == 0;
      if ((in0 == in1) != parity_even) ok = false;
      ++checked;
    }
    CheckLine line;
    line.name = "even-crossing parity on random fibers";
    line.criterion = 8;
    line.pass = ok;
    line.detail = std::to_string(checked) + " segments checked";
    rep.lines.push_back(std::move(line));
  }

  {
    double worst = 0.0;
    for (int n = 2; n <= 10; ++n) {
      const double lhs = theory::eta(n);
      const double rhs = kTwoPi * theory::unit_sphere_area(n - 1) /
                         theory::unit_sphere_area(n);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CheckLine line;
    line.name = "eta identity |eta_n - 2 pi O_{n-1}/O_n| < 1e-12, n=2..10";
    line.criterion = 8;
    line.pass = worst < 1e-12;
    line.detail = "max gap=" + fmt(worst);
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"cauchy2d",    "cauchy3d", "invariance", "infinite",
          "loops2d",     "inclusion3d", "ocd",     "property"};
}

SuiteReport run_suite(const std::string& name, const RunConfig& base,
                      double tol_sigma) {
  SuiteReport rep;
  if (name == "cauchy2d")
    rep = suite_cauchy2d(base, tol_sigma);
  else if (name == "cauchy3d")
    rep = suite_cauchy3d(base, tol_sigma);
  else if (name == "invariance")
    rep = suite_invariance(base, tol_sigma);
  else if (name == "infinite")
    rep = suite_infinite(base, tol_sigma);
  else if (name == "loops2d")
    rep = suite_loops2d(base, tol_sigma);
  else if (name == "inclusion3d")
    rep = suite_inclusion3d(base, tol_sigma);
  else if (name == "ocd")
    rep = suite_ocd(base, tol_sigma);
  else if (name == "property")
    rep = suite_property(base, tol_sigma);
  else
    throw ConfigError("unknown suite '" + name +
                      "'; available: cauchy2d cauchy3d invariance infinite "
                      "loops2d inclusion3d ocd property");
  rep.suite = name;
  for (const CheckLine& line : rep.lines)
    if (!line.pass) rep.all_pass = false;
  return rep;
}

std::string format_suite_report(const SuiteReport& report) {
  std::string out;
  for (const CheckLine& line : report.lines) {
    out += line.pass ? "PASS  " : "FAIL  ";
    out += line.name;
    out += "  [";
    out += line.detail;
    out += "]\n";
  }
  out += report.all_pass ? "suite " + report.suite + ": all checks passed\n"
                         : "suite " + report.suite + ": FAILURES present\n";
  return out;
}

}  // namespace kinemetrica
