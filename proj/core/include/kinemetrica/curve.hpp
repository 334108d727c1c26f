#pragma once

#include <vector>

#include "kinemetrica/geo.hpp"
#include "kinemetrica/rng.hpp"
#include "kinemetrica/theory.hpp"

namespace kinemetrica {

enum class CurveTopology { fiber, loop, tree };

// Step-length distribution of a Pearson walk (or tree edge law).
struct StepLengthLaw {
  enum class Kind { constant, exponential, gamma, pareto };

  Kind kind = Kind::constant;
  double a = 1.0;  // constant: c; exponential: mean; gamma: shape; pareto: x_min
  double b = 0.0;  // gamma: scale; pareto: alpha

  static StepLengthLaw constant(double c);
  static StepLengthLaw exponential(double mean);
  static StepLengthLaw gamma(double shape, double scale);
  static StepLengthLaw pareto(double x_min, double alpha);

  double sample(Rng& rng) const;
  // Analytic expectation; pareto with alpha <= 1 is infinite.
  MeanLength mean() const;
  const char* name() const;
};

struct TreeEdge {
  int u, v;          // vertex indices, u closer to the root
  double arc_begin;  // cumulative arc offset in depth-first order
  double length;
};

// Bounding-sphere hierarchy over runs of polyline segments, so intersection
// tests on long walks skip far-away stretches. levels[0] groups segments;
// each higher level groups nodes of the one below.
struct SegmentChunks {
  struct Node {
    Vec center;
    double radius;
    int child_first = 0;  // index into the level below (segments for level 0)
    int child_count = 0;
    int seg_first = 0;  // covered segment range
    int seg_count = 0;
  };
  std::vector<std::vector<Node>> levels;
  static constexpr int leaf_fan = 8;
  static constexpr int inner_fan = 8;
  bool empty() const { return levels.empty(); }
};

// The moving object K1: an immutable curve with exact arc-length
// bookkeeping. Generation draws from an explicit RNG owned by the caller.
class Curve {
 public:
  static Curve segment(double length, int dim);
  static Curve polyline(std::vector<Vec> vertices, bool closed);
  static Curve circle_loop(double radius, int dim);  // dim 2 or 3
  static Curve pearson_walk(Rng& rng, const StepLengthLaw& step_law,
                            double target_length, int dim);
  static Curve ramified_tree(Rng& rng, int branch_count,
                             const StepLengthLaw& edge_law, int dim);

  int dimension() const { return dim_; }
  CurveTopology topology() const { return topology_; }
  double total_length() const { return total_length_; }
  double circumradius() const { return circumradius_; }
  // Exact for circles; 0 for polylines and trees (corners).
  double min_curvature_radius() const { return min_curvature_radius_; }

  Vec arc_point(double s) const;

  bool is_circle() const { return is_circle_; }
  double circle_radius() const { return circle_radius_; }
  bool is_tree() const { return topology_ == CurveTopology::tree; }
  bool is_closed() const { return closed_; }

  // Polyline / tree access for the intersection kernels.
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<double>& cumulative_length() const { return cum_; }
  const std::vector<TreeEdge>& tree_edges() const { return edges_; }
  const SegmentChunks& chunks() const { return chunks_; }
  int segment_count() const {
    return is_circle_ ? 0 : static_cast<int>(vertices_.size()) - 1;
  }

 private:
  Curve() = default;
  void finish_polyline();
  void build_chunks();

  int dim_ = 2;
  CurveTopology topology_ = CurveTopology::fiber;
  double total_length_ = 0.0;
  double circumradius_ = 0.0;
  double min_curvature_radius_ = 0.0;
  bool closed_ = false;

  bool is_circle_ = false;
  double circle_radius_ = 0.0;

  std::vector<Vec> vertices_;   // polyline path or tree vertex pool
  std::vector<double> cum_;     // arc length at each polyline vertex
  std::vector<TreeEdge> edges_; // depth-first order, trees only
  SegmentChunks chunks_;
};

}  // namespace kinemetrica
