#pragma once

#include <memory>
#include <string>

#include "kinemetrica/curve.hpp"

namespace kinemetrica {

// A law of moving curves: every estimator sample draws a fresh realization.
class CurveProcess {
 public:
  virtual ~CurveProcess() = default;
  virtual Curve draw(Rng& rng) const = 0;
  virtual int dimension() const = 0;
  virtual MeanLength mean_length() const = 0;
  // True when every draw yields the same geometry (the placement rotation
  // still randomizes its orientation).
  virtual bool deterministic() const = 0;
  // Rough number of segments per realization, used to pick how many
  // placements share one generated curve.
  virtual double typical_segment_count() const = 0;
  virtual bool is_loop() const { return false; }
  virtual std::string name() const = 0;
};

std::unique_ptr<CurveProcess> make_segment_process(double length, int dim);
std::unique_ptr<CurveProcess> make_pearson_walk_process(StepLengthLaw step_law,
                                                        double target_length,
                                                        int dim);
std::unique_ptr<CurveProcess> make_circle_loop_process(double radius, int dim);
std::unique_ptr<CurveProcess> make_ramified_tree_process(int branch_count,
                                                         StepLengthLaw edge_law,
                                                         int dim);

}  // namespace kinemetrica
