#pragma once

#include <string>
#include <vector>

#include "kinemetrica/body.hpp"
#include "kinemetrica/estimators.hpp"
#include "kinemetrica/motion.hpp"

namespace kinemetrica {

enum class ReportFormat { csv, jsonl };

// Canonical machine-readable report: one row per estimate. The CSV column
// order is gnuplot-ready; the JSON-lines mirror carries the same fields.
std::string report_header(ReportFormat format);
std::string report_row(const EstimatorResult& r, uint64_t seed,
                       ReportFormat format);

void write_report(const std::string& path, ReportFormat format,
                  const std::vector<EstimatorResult>& rows, uint64_t seed);

std::string describe(const Body& body);

// Debug dump of a sampled motion as one JSON line: {"rot":[...],"t":[...]}.
std::string motion_json(const RigidMotion& motion);

}  // namespace kinemetrica
