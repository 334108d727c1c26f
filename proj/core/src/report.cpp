#include "kinemetrica/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string report_header(ReportFormat format) {
  if (format == ReportFormat::jsonl) return "";
  return "experiment_id,estimate,std_error,theory,z_score,n_samples,"
         "n_accepted,wall_time_s,seed\n";
}

std::string report_row(const EstimatorResult& r, uint64_t seed,
                       ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string row = r.id;
    row += ',';
    row += fmt(r.estimate);
    row += ',';
    row += fmt(r.std_error);
    row += ',';
    row += r.theory ? fmt(r.theory->value) : "";
    row += ',';
    row += r.z_score ? fmt(*r.z_score) : "";
    row += ',';
    row += std::to_string(r.n_samples);
    row += ',';
    row += std::to_string(r.n_accepted);
    row += ',';
    row += fmt(r.wall_time_s);
    row += ',';
    row += std::to_string(seed);
    row += '\n';
    return row;
  }
  nlohmann::json j;
  j["experiment_id"] = r.id;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  if (r.theory) {
    j["theory"] = r.theory->value;
    j["formula"] = formula_name(r.theory->formula);
  }
  if (r.theory_truncated) j["theory_truncated"] = r.theory_truncated->value;
  if (r.z_score) j["z_score"] = *r.z_score;
  j["n_samples"] = r.n_samples;
  j["n_accepted"] = r.n_accepted;
  j["wall_time_s"] = r.wall_time_s;
  j["seed"] = seed;
  return j.dump() + "\n";
}

void write_report(const std::string& path, ReportFormat format,
                  const std::vector<EstimatorResult>& rows, uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << report_header(format);
  for (const EstimatorResult& r : rows) out << report_row(r, seed, format);
}

std::string motion_json(const RigidMotion& motion) {
  nlohmann::json j;
  const int dim = motion.rotation.dim();
  std::vector<double> rot;
  rot.reserve(static_cast<size_t>(dim * dim));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) rot.push_back(motion.rotation.at(r, c));
  std::vector<double> t;
  for (int i = 0; i < dim; ++i) t.push_back(motion.translation[i]);
  j["rot"] = rot;
  j["t"] = t;
  return j.dump();
}

std::string describe(const Body& body) {
  std::string s = body.shape_name();
  s += "(";
  using namespace shapes;
  std::visit(
      [&](const auto& sh) {
        using S = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<S, Ball>) {
          s += "R=" + fmt(sh.radius);
          if (body.dimension() > 3)
            s += ",n=" + std::to_string(body.dimension());
        } else if constexpr (std::is_same_v<S, Box>) {
          for (int i = 0; i < sh.dim; ++i) {
            if (i) s += "x";
            s += fmt(2.0 * sh.half[static_cast<size_t>(i)]);
          }
        } else if constexpr (std::is_same_v<S, Annulus>) {
          s += fmt(sh.r_in) + "," + fmt(sh.r_out);
        } else if constexpr (std::is_same_v<S, SphericalShell>) {
          s += fmt(sh.r_in) + "," + fmt(sh.r_out);
        } else {
          s += std::to_string(sh.vertices.size()) + " vertices";
        }
      },
      body.shape());
  s += ")";
  return s;
}

}  // namespace kinemetrica
