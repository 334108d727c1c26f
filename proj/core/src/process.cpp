#include "kinemetrica/process.hpp"

#include <cmath>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

class SegmentProcess final : public CurveProcess {
 public:
  SegmentProcess(double length, int dim)
      : curve_(Curve::segment(length, dim)), length_(length), dim_(dim) {}
  Curve draw(Rng&) const override { return curve_; }
  int dimension() const override { return dim_; }
  MeanLength mean_length() const override { return MeanLength::of(length_); }
  bool deterministic() const override { return true; }
  double typical_segment_count() const override { return 1.0; }
  std::string name() const override { return "segment(l=" + num(length_) + ")"; }

 private:
  Curve curve_;
  double length_;
  int dim_;
};

class PearsonWalkProcess final : public CurveProcess {
 public:
  PearsonWalkProcess(StepLengthLaw law, double target, int dim)
      : law_(law), target_(target), dim_(dim) {
    if (!(target > 0.0)) throw UsageError("walk target length must be positive");
  }
  Curve draw(Rng& rng) const override {
    return Curve::pearson_walk(rng, law_, target_, dim_);
  }
  int dimension() const override { return dim_; }
  MeanLength mean_length() const override { return MeanLength::of(target_); }
  bool deterministic() const override { return false; }
  double typical_segment_count() const override {
    const MeanLength m = law_.mean();
    if (m.is_infinite()) return 1.0;
    return std::max(1.0, target_ / m.value());
  }
  std::string name() const override {
    return std::string("pearson(") + law_.name() + ",l=" + num(target_) + ")";
  }

 private:
  StepLengthLaw law_;
  double target_;
  int dim_;
};

class CircleLoopProcess final : public CurveProcess {
 public:
  CircleLoopProcess(double radius, int dim)
      : curve_(Curve::circle_loop(radius, dim)), radius_(radius), dim_(dim) {}
  Curve draw(Rng&) const override { return curve_; }
  int dimension() const override { return dim_; }
  MeanLength mean_length() const override {
    return MeanLength::of(kTwoPi * radius_);
  }
  bool deterministic() const override { return true; }
  double typical_segment_count() const override { return 1.0; }
  bool is_loop() const override { return true; }
  std::string name() const override {
    return "circle-loop(R=" + num(radius_) + ")";
  }

 private:
  Curve curve_;
  double radius_;
  int dim_;
};

class RamifiedTreeProcess final : public CurveProcess {
 public:
  RamifiedTreeProcess(int branch_count, StepLengthLaw law, int dim)
      : branches_(branch_count), law_(law), dim_(dim) {
    if (branch_count < 1) throw UsageError("tree needs branch_count >= 1");
  }
  Curve draw(Rng& rng) const override {
    return Curve::ramified_tree(rng, branches_, law_, dim_);
  }
  int dimension() const override { return dim_; }
  MeanLength mean_length() const override {
    const MeanLength m = law_.mean();
    if (m.is_infinite()) return MeanLength::infinite();
    return MeanLength::of(branches_ * m.value());
  }
  bool deterministic() const override { return false; }
  double typical_segment_count() const override {
    return 2.0 * branches_;
  }
  std::string name() const override {
    return "tree(branches=" + std::to_string(branches_) + "," + law_.name() +
           ")";
  }

 private:
  int branches_;
  StepLengthLaw law_;
  int dim_;
};

}  // namespace

std::unique_ptr<CurveProcess> make_segment_process(double length, int dim) {
  return std::make_unique<SegmentProcess>(length, dim);
}

std::unique_ptr<CurveProcess> make_pearson_walk_process(StepLengthLaw step_law,
                                                        double target_length,
                                                        int dim) {
  return std::make_unique<PearsonWalkProcess>(step_law, target_length, dim);
}

std::unique_ptr<CurveProcess> make_circle_loop_process(double radius, int dim) {
  return std::make_unique<CircleLoopProcess>(radius, dim);
}

std::unique_ptr<CurveProcess> make_ramified_tree_process(
    int branch_count, StepLengthLaw edge_law, int dim) {
  return std::make_unique<RamifiedTreeProcess>(branch_count, edge_law, dim);
}

}  // namespace kinemetrica
