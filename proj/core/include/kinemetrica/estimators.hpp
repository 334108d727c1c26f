#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kinemetrica/process.hpp"
#include "kinemetrica/sampling.hpp"
#include "kinemetrica/stats.hpp"
#include "kinemetrica/theory.hpp"

namespace kinemetrica {

struct RunConfig {
  uint64_t seed = 1;
  int workers = 0;  // <= 0 means one worker
  // Sampling stops at the first scheduling round where this many hits have
  // accumulated.
  long target_accepted = 1'000'000;
  // Candidate placements sharing one generated curve (0 = per-estimator
  // default). Standard errors are computed at curve level, so reuse never
  // distorts the error bars.
  int placements_per_curve = 0;
  int clusters_per_chunk = 0;  // 0 = auto
  // Length of "infinite" stand-in curves in units of the body diameter.
  double truncation_factor = 1000.0;
};

// Per-hit tallies accumulated by the placement engine. Every tally carries
// the sampling-window volume as importance weight, which corrects for the
// per-realization window of random processes; ratios of tallies estimate
// ratios of kinematic integrals.
enum TallyKind : int {
  kTallyHit = 0,        // w
  kTallyLength,         // w * inside length
  kTallyChi,            // w * piece count (loop convention)
  kTallyHalfCross,      // w * boundary crossings / 2
  kTallyFull,           // w * [curve entirely inside]
  kTallyCrosser,        // w * [hits and crosses the boundary]
  kTallyLengthCrosser,  // w * inside length * [crosser]
  kTallyCount
};

struct ChunkPartial {
  MultiWelford stats{kTallyCount};
  long candidates = 0;
  long accepted = 0;

  void merge(const ChunkPartial& o) {
    stats.merge(o.stats);
    candidates += o.candidates;
    accepted += o.accepted;
  }
};

struct EngineResult {
  MultiWelford stats{kTallyCount};  // cluster-level sums
  long candidates = 0;
  long accepted = 0;
  long clusters = 0;
  double wall_time_s = 0.0;
  // Ordered chunk partials (kept for merge-associativity checks and
  // bootstrap fallbacks).
  std::vector<ChunkPartial> chunks;
};

// One cluster = one generated curve and `placements_per_curve` candidate
// motions; fills the tally frame with the cluster's weighted sums.
using ClusterFn = std::function<void(uint64_t cluster_index, Rng& rng,
                                     std::span<double> frame, long& candidates,
                                     long& accepted)>;
using ClusterFnFactory = std::function<ClusterFn()>;

// Deterministic parallel driver: cluster i uses RNG stream(seed, i); chunks
// are merged in index order, so tallies depend only on (seed,
// clusters_per_chunk), not on the worker count or thread schedule.
EngineResult run_cluster_engine(const RunConfig& cfg, int placements_per_cluster,
                                const ClusterFnFactory& make_worker);

EngineResult run_placement_engine(const Body& body, const CurveProcess& process,
                                  const RunConfig& cfg,
                                  int placements_per_curve);

struct EstimatorResult {
  std::string id;
  double estimate = 0.0;
  double std_error = 0.0;
  long n_samples = 0;   // candidate placements
  long n_accepted = 0;  // hits
  long n_clusters = 0;
  std::optional<TheoryValue> theory;
  // Finite-truncation reference for infinite-curve stand-ins.
  std::optional<TheoryValue> theory_truncated;
  std::optional<double> z_score;
  double wall_time_s = 0.0;
};

// Ratio estimator  sum(inside length) / sum(piece count)  over hitting
// samples (multiple-chord convention), fresh curve per cluster.
EstimatorResult estimate_mean_traversed_length(const Body& body,
                                               const CurveProcess& process,
                                               const RunConfig& cfg);

struct SmallLoopEstimates {
  EstimatorResult mean_length;   // <L>
  EstimatorResult inclusion_p;   // P[loop inside | hit]
  EstimatorResult mean_arc;      // <s> over boundary-crossing hits
  EstimatorResult mean_chi;      // <chi>, loop convention
  // <L> - (p L1 + (1-p) <s>) and <chi> - (1 - p), with combined standard
  // errors: exact decompositions, so the gaps sit at rounding level.
  double identity_length_gap = 0.0;
  double identity_length_gap_se = 0.0;
  double identity_chi_gap = 0.0;
  double identity_chi_gap_se = 0.0;
};

// Four coupled estimates from one sample stream; requires the small-loop
// curvature regime (circle loop radius below the body's min curvature
// radius).
SmallLoopEstimates estimate_small_loop_quantities(const Body& body2d,
                                                  const Curve& loop,
                                                  const RunConfig& cfg);

// P[moving ball entirely inside | hit] by direct event counting.
EstimatorResult estimate_inclusion_probability_3d(const Body& fixed_ball,
                                                  const Body& moving_ball,
                                                  const RunConfig& cfg);

// Truncated stand-in for infinite trajectories: a Pearson walk of length
// truncation_factor * diameter(body), counted by the boundary-crossing
// convention  sum(L) / sum(N/2). Reports both the finite-length prediction
// and the asymptotic Cauchy value (used for the z-score).
EstimatorResult estimate_infinite_curve_mean_length(const Body& body,
                                                    const StepLengthLaw& step,
                                                    const RunConfig& cfg);

// One-chord-distribution mean: per hitting line, the summed inside length
// counts as a single chord.
EstimatorResult estimate_ocd_mean_chord(const Body& body, const RunConfig& cfg);

struct InvarianceReport {
  std::vector<EstimatorResult> results;
  // Row-major |results| x |results| pairwise z matrix.
  std::vector<double> z_matrix;
  double max_pairwise_z = 0.0;
};

// Runs estimate_mean_traversed_length for each process (same mean length)
// and reports all pairwise z values.
InvarianceReport invariance_suite(
    const Body& body, const std::vector<const CurveProcess*>& processes,
    const RunConfig& cfg);

}  // namespace kinemetrica
