#pragma once

#include <utility>

#include "kinemetrica/intersect.hpp"

namespace kinemetrica {

// Translation proposal region: the body's bounding box dilated by the curve
// circumradius on every side. Covers all hitting translations for every
// rotation; oversampling only costs rejections, never bias.
struct SamplingWindow {
  std::array<double, kMaxDim> half{};
  int dim = 0;
  double volume = 0.0;

  SamplingWindow(const Body& body, double curve_circumradius) {
    dim = body.dimension();
    volume = 1.0;
    for (int i = 0; i < dim; ++i) {
      half[static_cast<size_t>(i)] =
          body.bbox_half()[static_cast<size_t>(i)] + curve_circumradius;
      volume *= 2.0 * half[static_cast<size_t>(i)];
    }
  }

  Vec sample(Rng& rng) const {
    Vec t(dim);
    for (int i = 0; i < dim; ++i)
      t[i] = rng.uniform(-half[static_cast<size_t>(i)],
                         half[static_cast<size_t>(i)]);
    return t;
  }
};

// Draws a rigid motion from the uniform kinematic density conditioned on
// {gK1 ^ K0 != 0}: Haar rotation, translation uniform on the sampling
// window, rejected until the placed curve hits the window. Throws
// ConfigError when the acceptance probability collapses (no hit within 1e7
// candidates).
std::pair<RigidMotion, IntersectionResult> sample_hitting_motion(
    Rng& rng, const Body& body, const Curve& curve);

}  // namespace kinemetrica
