#include "kinemetrica/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

namespace {

long auto_placements(const CurveProcess& process) {
  if (process.deterministic()) return 64;
  const double segs = process.typical_segment_count();
  if (segs <= 2.0) return 64;  // line-like draws are distribution-identical
  if (segs < 64.0) return 1;   // cheap draws: fresh curve per placement
  // Amortize expensive generations over many placements; standard errors
  // stay honest because clusters are the error unit.
  return std::clamp<long>(static_cast<long>(segs) / 32, 2, 1024);
}

void set_z(EstimatorResult& r) {
  if (r.theory && r.std_error > 0.0)
    r.z_score = (r.estimate - r.theory->value) / r.std_error;
}

EstimatorResult finish_ratio(const EngineResult& eng, int num, int den,
                             std::string id) {
  if (eng.stats.count() == 0 || eng.stats.sum(den) == 0.0)
    throw ConfigError("estimator '" + id +
                      "': no accepted mass in the denominator tally "
                      "(degenerate configuration)");
  DerivedStatistic d = ratio_statistic(eng.stats, num, den);
  if (!std::isfinite(d.std_error) || d.std_error == 0.0) {
    // Bootstrap fallback over chunk aggregates when the plug-in covariance
    // degenerates.
    if (eng.chunks.size() >= 8) {
      Rng rng(0x9E3779B97F4A7C15ULL);
      Welford boot;
      const int n = static_cast<int>(eng.chunks.size());
      for (int rep = 0; rep < 200; ++rep) {
        double snum = 0.0, sden = 0.0;
        for (int i = 0; i < n; ++i) {
          const ChunkPartial& c =
              eng.chunks[static_cast<size_t>(rng.next_u64() % static_cast<uint64_t>(n))];
          snum += c.stats.sum(num);
          sden += c.stats.sum(den);
        }
        if (sden != 0.0) boot.add(snum / sden);
      }
      d.std_error = boot.count() > 1 ? std::sqrt(boot.variance()) : 0.0;
    }
  }
  EstimatorResult r;
  r.id = std::move(id);
  r.estimate = d.value;
  r.std_error = d.std_error;
  r.n_samples = eng.candidates;
  r.n_accepted = eng.accepted;
  r.n_clusters = eng.clusters;
  r.wall_time_s = eng.wall_time_s;
  return r;
}

}  // namespace

EngineResult run_cluster_engine(const RunConfig& cfg,
                                int placements_per_cluster,
                                const ClusterFnFactory& make_worker) {
  if (cfg.target_accepted < 1)
    throw ConfigError("target_accepted must be positive");
  const int k = std::max(1, placements_per_cluster);
  const long chunk_clusters =
      cfg.clusters_per_chunk > 0
          ? cfg.clusters_per_chunk
          : std::max<long>(1, 4096 / k);
  const int workers = std::max(1, cfg.workers);

  const auto t0 = std::chrono::steady_clock::now();
  EngineResult out;
  long clusters_done = 0;

  while (out.accepted < cfg.target_accepted) {
    if (out.accepted == 0 && out.candidates >= 10'000'000)
      throw ConfigError(
          "no accepted placement in 1e7 candidates; body and process scales "
          "are degenerate");

    // Deterministic round sizing from merged tallies only, so the chunk
    // schedule is a function of (seed, chunk size, target) alone and the
    // worker count never changes results.
    long round_clusters;
    if (out.accepted > 0) {
      const double rate =
          static_cast<double>(out.accepted) / static_cast<double>(clusters_done);
      round_clusters = static_cast<long>(
          std::ceil(static_cast<double>(cfg.target_accepted - out.accepted) /
                    rate * 1.05));
    } else {
      round_clusters = chunk_clusters * 8;
    }
    round_clusters = std::max(round_clusters, chunk_clusters);
    const long n_chunks =
        (round_clusters + chunk_clusters - 1) / chunk_clusters;

    const size_t chunk_base = out.chunks.size();
    out.chunks.resize(chunk_base + static_cast<size_t>(n_chunks));

    std::atomic<long> next_chunk{0};
    auto worker_loop = [&]() {
      ClusterFn cluster = make_worker();
      std::vector<double> frame(kTallyCount, 0.0);
      for (;;) {
        const long ci = next_chunk.fetch_add(1);
        if (ci >= n_chunks) break;
        ChunkPartial& partial = out.chunks[chunk_base + static_cast<size_t>(ci)];
        const long first = clusters_done + ci * chunk_clusters;
        for (long c = first; c < first + chunk_clusters; ++c) {
          std::fill(frame.begin(), frame.end(), 0.0);
          Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(c));
          cluster(static_cast<uint64_t>(c), rng, frame, partial.candidates,
                  partial.accepted);
          partial.stats.add(frame);
        }
      }
    };

    if (workers == 1) {
      worker_loop();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
      for (std::thread& t : pool) t.join();
    }

    for (size_t i = chunk_base; i < out.chunks.size(); ++i) {
      out.stats.merge(out.chunks[i].stats);
      out.candidates += out.chunks[i].candidates;
      out.accepted += out.chunks[i].accepted;
    }
    clusters_done += n_chunks * chunk_clusters;
  }

  out.clusters = clusters_done;
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

EngineResult run_placement_engine(const Body& body, const CurveProcess& process,
                                  const RunConfig& cfg,
                                  int placements_per_curve) {
  if (body.dimension() != process.dimension())
    throw UsageError("estimator: body and process dimensions differ");
  const int k = placements_per_curve > 0
                    ? placements_per_curve
                    : static_cast<int>(auto_placements(process));
  const int dim = body.dimension();
  const double body_r = body.circumradius();

  ClusterFnFactory factory = [&body, &process, k, dim, body_r]() -> ClusterFn {
    auto scratch = std::make_shared<IntersectScratch>();
    auto result = std::make_shared<IntersectionResult>();
    return [&body, &process, k, dim, body_r, scratch,
            result](uint64_t, Rng& rng, std::span<double> frame,
                    long& candidates, long& accepted) {
      const Curve curve = process.draw(rng);
      const SamplingWindow window(body, curve.circumradius());
      const double w = window.volume;
      const double reach = curve.circumradius() + body_r;
      const double reach2 = reach * reach;
      for (int j = 0; j < k; ++j) {
        ++candidates;
        Vec t = window.sample(rng);
        if (t.norm2() > reach2) continue;  // certain miss, skip the rotation
        RigidMotion g{Rotation::haar(rng, dim), std::move(t)};
        intersect_into(body, curve, g, *scratch, *result);
        if (result->fully_outside) continue;
        ++accepted;
        frame[kTallyHit] += w;
        frame[kTallyLength] += w * result->inside_length;
        frame[kTallyChi] += w * piece_count_as_chi(*result, curve);
        frame[kTallyHalfCross] += w * 0.5 * result->crossing_count;
        if (result->fully_inside) {
          frame[kTallyFull] += w;
        } else {
          frame[kTallyCrosser] += w;
          frame[kTallyLengthCrosser] += w * result->inside_length;
        }
      }
    };
  };

  return run_cluster_engine(cfg, k, factory);
}

EstimatorResult estimate_mean_traversed_length(const Body& body,
                                               const CurveProcess& process,
                                               const RunConfig& cfg) {
  const EngineResult eng =
      run_placement_engine(body, process, cfg, cfg.placements_per_curve);
  EstimatorResult r = finish_ratio(eng, kTallyLength, kTallyChi,
                                   "mean-traversed-length " + process.name());
  if (process.is_loop()) {
    // Per-piece normalization of a loop reproduces the Cauchy value for any
    // loop size.
    r.theory = theory::big_loop_mean_length(body);
  } else {
    r.theory = theory::harmonic_mean_length(process.mean_length(), body);
  }
  set_z(r);
  return r;
}

SmallLoopEstimates estimate_small_loop_quantities(const Body& body2d,
                                                  const Curve& loop,
                                                  const RunConfig& cfg) {
  if (body2d.dimension() != 2 || loop.dimension() != 2)
    throw UsageError("small-loop estimator is 2D");
  if (!loop.is_circle())
    throw RegimeError(
        "small-loop estimates need a circle loop: polyline loops have "
        "corners, violating the curvature hypotheses");
  const double r1 = loop.circle_radius();
  if (!(body2d.measures().min_curvature_radius > r1))
    throw RegimeError(
        "small-loop regime requires the loop max curvature radius below the "
        "body min curvature radius");

  const double loop_len = loop.total_length();
  const double loop_area = kPi * r1 * r1;
  auto process = make_circle_loop_process(r1, 2);
  const EngineResult eng =
      run_placement_engine(body2d, *process, cfg, cfg.placements_per_curve);

  SmallLoopEstimates out;
  out.mean_length = finish_ratio(eng, kTallyLength, kTallyHit,
                                 "small-loop mean-length " + process->name());
  out.mean_length.theory =
      theory::small_loop_mean_length(loop_len, loop_area, body2d);

  out.inclusion_p = finish_ratio(eng, kTallyFull, kTallyHit,
                                 "small-loop inclusion-p " + process->name());
  out.inclusion_p.theory =
      theory::inclusion_probability_2d(body2d, loop_len, loop_area);

  out.mean_arc = finish_ratio(eng, kTallyLengthCrosser, kTallyCrosser,
                              "small-loop mean-arc " + process->name());
  out.mean_arc.theory =
      theory::mean_arc(loop_len, loop_area, body2d.surface());

  out.mean_chi = finish_ratio(eng, kTallyChi, kTallyHit,
                              "small-loop mean-chi " + process->name());
  out.mean_chi.theory = theory::mean_chi_loop(loop_len, loop_area, body2d);

  for (EstimatorResult* r :
       {&out.mean_length, &out.inclusion_p, &out.mean_arc, &out.mean_chi})
    set_z(*r);

  // <L> = p L1 + (1-p) <s>  and  <chi> = 1 - p, evaluated on the same
  // cluster stream with full covariance.
  const DerivedStatistic len_gap = derived_statistic(
      eng.stats, [loop_len](std::span<const double> m) {
        const double hit = m[kTallyHit];
        if (hit == 0.0 || m[kTallyCrosser] == 0.0) return 0.0;
        const double mean_len = m[kTallyLength] / hit;
        const double p = m[kTallyFull] / hit;
        const double arc = m[kTallyLengthCrosser] / m[kTallyCrosser];
        return mean_len - (p * loop_len + (1.0 - p) * arc);
      });
  out.identity_length_gap = len_gap.value;
  out.identity_length_gap_se = len_gap.std_error;

  const DerivedStatistic chi_gap =
      derived_statistic(eng.stats, [](std::span<const double> m) {
        const double hit = m[kTallyHit];
        if (hit == 0.0) return 0.0;
        return m[kTallyChi] / hit - (1.0 - m[kTallyFull] / hit);
      });
  out.identity_chi_gap = chi_gap.value;
  out.identity_chi_gap_se = chi_gap.std_error;
  return out;
}

EstimatorResult estimate_inclusion_probability_3d(const Body& fixed_ball,
                                                  const Body& moving_ball,
                                                  const RunConfig& cfg) {
  const auto* b0 = std::get_if<shapes::Ball>(&fixed_ball.shape());
  const auto* b1 = std::get_if<shapes::Ball>(&moving_ball.shape());
  if (b0 == nullptr || b1 == nullptr || fixed_ball.dimension() != 3 ||
      moving_ball.dimension() != 3)
    throw CapabilityError(
        "inclusion-3d sampling supports pairs of 3D balls (the closed form "
        "accepts any smooth convex pair)");
  const double r0 = b0->radius, r1 = b1->radius;

  ClusterFnFactory factory = [&fixed_ball, r0, r1]() -> ClusterFn {
    return [&fixed_ball, r0, r1](uint64_t, Rng& rng, std::span<double> frame,
                                 long& candidates, long& accepted) {
      const SamplingWindow window(fixed_ball, r1);
      for (int j = 0; j < 64; ++j) {
        ++candidates;
        const double d = window.sample(rng).norm();
        if (d > r0 + r1) continue;  // no contact
        ++accepted;
        frame[kTallyHit] += 1.0;
        if (d <= r0 - r1) frame[kTallyFull] += 1.0;
      }
    };
  };

  const EngineResult eng = run_cluster_engine(cfg, 64, factory);
  EstimatorResult r = finish_ratio(eng, kTallyFull, kTallyHit,
                                   "inclusion-3d spheres");
  const auto m0 = fixed_ball.measures();
  const auto m1 = moving_ball.measures();
  r.theory = theory::inclusion_probability_3d(
      m0.volume, m0.surface, *m0.mean_curvature_integral, m1.volume,
      m1.surface, *m1.mean_curvature_integral);
  set_z(r);
  return r;
}

EstimatorResult estimate_infinite_curve_mean_length(const Body& body,
                                                    const StepLengthLaw& step,
                                                    const RunConfig& cfg) {
  const double target = cfg.truncation_factor * body.diameter();
  auto process =
      make_pearson_walk_process(step, target, body.dimension());
  const EngineResult eng =
      run_placement_engine(body, *process, cfg, cfg.placements_per_curve);
  EstimatorResult r =
      finish_ratio(eng, kTallyLength, kTallyHalfCross,
                   "infinite-mean-length " + process->name());
  r.theory = theory::mean_chord(body);
  r.theory_truncated =
      theory::harmonic_mean_length(MeanLength::of(target), body);
  set_z(r);
  return r;
}

EstimatorResult estimate_ocd_mean_chord(const Body& body,
                                        const RunConfig& cfg) {
  const double target = cfg.truncation_factor * body.convex_hull().diameter();
  auto process = make_segment_process(target, body.dimension());
  const EngineResult eng =
      run_placement_engine(body, *process, cfg, cfg.placements_per_curve);
  // One chord per hitting line: total inside length over hit count.
  EstimatorResult r =
      finish_ratio(eng, kTallyLength, kTallyHit, "ocd-mean-chord line");
  r.theory = theory::ocd_mean_chord(body);
  {
    // Finite-length reference: 2 pi F0 l / (2 pi F0* + 2 l L0*).
    const Body hull = body.convex_hull();
    TheoryValue t;
    t.formula = FormulaId::ocd_mean_chord;
    t.value = kTwoPi * body.volume() * target /
              (kTwoPi * hull.volume() + 2.0 * target * hull.surface());
    t.inputs = {{"l", target}};
    r.theory_truncated = t;
  }
  set_z(r);
  return r;
}

InvarianceReport invariance_suite(
    const Body& body, const std::vector<const CurveProcess*>& processes,
    const RunConfig& cfg) {
  if (processes.size() < 2)
    throw UsageError("invariance suite needs at least two processes");
  InvarianceReport report;
  RunConfig sub = cfg;
  for (size_t i = 0; i < processes.size(); ++i) {
    // Decorrelated seeds per process, still reproducible from cfg.seed.
    sub.seed = cfg.seed + 0x1000 * (i + 1);
    report.results.push_back(
        estimate_mean_traversed_length(body, *processes[i], sub));
  }
  const size_t n = report.results.size();
  report.z_matrix.assign(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const EstimatorResult& a = report.results[i];
      const EstimatorResult& b = report.results[j];
      const double se =
          std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
      const double z = se > 0.0 ? (a.estimate - b.estimate) / se : 0.0;
      report.z_matrix[i * n + j] = z;
      report.max_pairwise_z = std::max(report.max_pairwise_z, std::abs(z));
    }
  }
  return report;
}

}  // namespace kinemetrica
