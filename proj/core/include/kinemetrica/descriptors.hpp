#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kinemetrica/body.hpp"
#include "kinemetrica/estimators.hpp"
#include "kinemetrica/process.hpp"

namespace kinemetrica {

// JSON experiment descriptors. The schema is strict: unknown keys are
// rejected so experiment definitions stay reproducible artifacts. All
// parsers throw ConfigError with a JSON-pointer style location.

Body body_from_json(const std::string& json_text);
StepLengthLaw step_law_from_json(const std::string& json_text);
std::unique_ptr<CurveProcess> process_from_json(const std::string& json_text,
                                                int default_dimension);

enum class EstimatorKind {
  mean_traversed_length,
  small_loop,
  inclusion_3d,
  infinite_mean_length,
  ocd_mean_chord,
  invariance,
};

struct ExperimentConfig {
  std::string experiment_id;
  EstimatorKind estimator = EstimatorKind::mean_traversed_length;
  std::optional<Body> body;
  std::vector<std::unique_ptr<CurveProcess>> processes;  // >= 1 unless noted
  std::optional<StepLengthLaw> step;      // infinite-mean-length
  std::optional<Body> moving;             // inclusion-3d
  std::optional<double> loop_radius;      // small-loop
  RunConfig run;
  bool seed_given = false;
};

ExperimentConfig experiment_from_json(const std::string& json_text);

// Supported descriptor summaries for the CLI listings.
std::string describe_shapes();
std::string describe_processes();

}  // namespace kinemetrica
