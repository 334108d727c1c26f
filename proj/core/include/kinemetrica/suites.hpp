#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinemetrica/estimators.hpp"

namespace kinemetrica {

// One verification line: an estimate checked against its closed form at a
// z tolerance, or a structural property (determinism, parity, identities).
struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
  int criterion = 0;  // acceptance criterion this line belongs to
  std::optional<EstimatorResult> result;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> lines;
  bool all_pass = true;
};

// cauchy2d, cauchy3d, invariance, infinite, loops2d, inclusion3d, ocd,
// property.
std::vector<std::string> suite_names();

// Runs a named verification batch. base.target_accepted applies per line;
// base.seed makes every line reproducible. tol_sigma is the |z| bound.
SuiteReport run_suite(const std::string& name, const RunConfig& base,
                      double tol_sigma);

std::string format_suite_report(const SuiteReport& report);

}  // namespace kinemetrica
