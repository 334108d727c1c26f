#pragma once

#include <vector>

#include "kinemetrica/body.hpp"
#include "kinemetrica/curve.hpp"
#include "kinemetrica/motion.hpp"

namespace kinemetrica {

// Arc-length interval of the curve lying inside the window. For closed
// curves the piece wrapping around s = 0 is merged and reported with
// end > total_length.
struct ArcInterval {
  double begin = 0.0;
  double end = 0.0;
  double length() const { return end - begin; }
};

struct IntersectionResult {
  double inside_length = 0.0;
  std::vector<ArcInterval> pieces;
  int crossing_count = 0;
  bool fully_inside = false;
  bool fully_outside = false;
  // Connected components of the inside part: equals the piece count for
  // polylines and circles; for trees, maximal connected inside sub-trees.
  int component_count = 0;

  void reset() {
    inside_length = 0.0;
    pieces.clear();
    crossing_count = 0;
    fully_inside = fully_outside = false;
    component_count = 0;
  }
};

// Reusable buffers for the hot sampling loop.
struct IntersectScratch {
  std::vector<double> ts;
  std::vector<double> angles;
  std::vector<Vec> points;
  std::vector<char> flags;
  std::vector<int> uf_parent;
  std::vector<int> vertex_slot;
};

void intersect_into(const Body& body, const Curve& curve,
                    const RigidMotion& motion, IntersectScratch& scratch,
                    IntersectionResult& out);

IntersectionResult intersect(const Body& body, const Curve& curve,
                             const RigidMotion& motion);

// chi(K1 ^ K0) as the kinematic formula counts it: number of components for
// fibers and trees; for loops, the piece count, except that a loop entirely
// inside the window counts 0.
int piece_count_as_chi(const IntersectionResult& result, const Curve& curve);

}  // namespace kinemetrica
