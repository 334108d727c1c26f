#include "kinemetrica/sampling.hpp"

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

std::pair<RigidMotion, IntersectionResult> sample_hitting_motion(
    Rng& rng, const Body& body, const Curve& curve) {
  if (body.dimension() != curve.dimension())
    throw UsageError("sample_hitting_motion: dimension mismatch");
  const SamplingWindow window(body, curve.circumradius());
  const double quick_reject =
      curve.circumradius() + body.circumradius();
  IntersectScratch scratch;
  IntersectionResult result;
  constexpr long kMaxRejections = 10'000'000;
  for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
    RigidMotion g{Rotation::haar(rng, body.dimension()), window.sample(rng)};
    if (g.translation.norm2() > quick_reject * quick_reject) continue;
    intersect_into(body, curve, g, scratch, result);
    if (!result.fully_outside) return {g, result};
  }
  throw ConfigError(
      "sample_hitting_motion: no hit in 1e7 candidates; body and curve "
      "scales are degenerate");
}

}  // namespace kinemetrica
