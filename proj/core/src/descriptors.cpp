#include "kinemetrica/descriptors.hpp"

#include <set>

#include <json.hpp>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("at " + (where.empty() ? "/" : where) + ": " + what);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected a JSON object");
  for (const auto& item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(where, "unknown key '" + item.key() + "'");
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  if (!obj[key].is_number()) fail(where + "/" + key, "expected a number");
  return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& where,
                     const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "/" + key, "expected a number");
  return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& where,
                       const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  if (!obj[key].is_string()) fail(where + "/" + key, "expected a string");
  return obj[key].get<std::string>();
}

Body body_from(const json& j, const std::string& where) {
  const std::string shape = get_string(j, where, "shape");
  if (shape == "ball" || shape == "disk" || shape == "sphere") {
    check_keys(j, where, {"shape", "radius", "dimension"});
    int dim = shape == "sphere" ? 3 : 2;
    if (j.contains("dimension")) dim = j["dimension"].get<int>();
    if (shape == "disk" && dim != 2) fail(where, "a disk is 2D");
    if (shape == "sphere" && dim != 3) fail(where, "a sphere is 3D");
    return Body::ball(dim, get_number(j, where, "radius"));
  }
  if (shape == "box") {
    check_keys(j, where, {"shape", "lengths"});
    if (!j.contains("lengths") || !j["lengths"].is_array())
      fail(where, "box needs a 'lengths' array");
    std::vector<double> lengths;
    for (const auto& v : j["lengths"]) lengths.push_back(v.get<double>());
    return Body::box(lengths);
  }
  if (shape == "annulus") {
    check_keys(j, where, {"shape", "r_in", "r_out"});
    return Body::annulus(get_number(j, where, "r_in"),
                         get_number(j, where, "r_out"));
  }
  if (shape == "polygon") {
    check_keys(j, where, {"shape", "vertices"});
    if (!j.contains("vertices") || !j["vertices"].is_array())
      fail(where, "polygon needs a 'vertices' array");
    std::vector<Vec> verts;
    for (const auto& v : j["vertices"]) {
      if (!v.is_array() || v.size() != 2)
        fail(where + "/vertices", "each vertex is [x, y]");
      verts.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return Body::polygon(std::move(verts));
  }
  if (shape == "spherical-shell") {
    check_keys(j, where, {"shape", "r_in", "r_out"});
    return Body::spherical_shell(get_number(j, where, "r_in"),
                                 get_number(j, where, "r_out"));
  }
  fail(where + "/shape", "unknown shape '" + shape +
                             "' (see `kinemetrica list-shapes`)");
}

StepLengthLaw step_law_from(const json& j, const std::string& where) {
  const std::string law = get_string(j, where, "law");
  if (law == "constant") {
    check_keys(j, where, {"law", "step"});
    return StepLengthLaw::constant(get_number(j, where, "step"));
  }
  if (law == "exponential") {
    check_keys(j, where, {"law", "mean"});
    return StepLengthLaw::exponential(get_number(j, where, "mean"));
  }
  if (law == "gamma") {
    check_keys(j, where, {"law", "shape", "scale"});
    return StepLengthLaw::gamma(get_number(j, where, "shape"),
                                get_number(j, where, "scale"));
  }
  if (law == "pareto") {
    check_keys(j, where, {"law", "x_min", "alpha"});
    return StepLengthLaw::pareto(get_number(j, where, "x_min"),
                                 get_number(j, where, "alpha"));
  }
  fail(where + "/law", "unknown step law '" + law + "'");
}

std::unique_ptr<CurveProcess> process_from(const json& j,
                                           const std::string& where,
                                           int default_dimension) {
  const std::string kind = get_string(j, where, "curve");
  auto dim_of = [&](const json& obj) {
    if (obj.contains("dimension")) return obj["dimension"].get<int>();
    if (default_dimension > 0) return default_dimension;
    fail(where, "missing 'dimension' and no body to inherit it from");
  };
  if (kind == "segment") {
    check_keys(j, where, {"curve", "length", "dimension"});
    return make_segment_process(get_number(j, where, "length"), dim_of(j));
  }
  if (kind == "pearson") {
    check_keys(j, where, {"curve", "step", "length", "dimension"});
    if (!j.contains("step")) fail(where, "missing key 'step'");
    return make_pearson_walk_process(step_law_from(j["step"], where + "/step"),
                                     get_number(j, where, "length"), dim_of(j));
  }
  if (kind == "circle-loop") {
    check_keys(j, where, {"curve", "radius", "dimension"});
    return make_circle_loop_process(get_number(j, where, "radius"), dim_of(j));
  }
  if (kind == "tree") {
    check_keys(j, where, {"curve", "branches", "edge_step", "dimension"});
    if (!j.contains("branches")) fail(where, "missing key 'branches'");
    if (!j.contains("edge_step")) fail(where, "missing key 'edge_step'");
    return make_ramified_tree_process(
        j["branches"].get<int>(),
        step_law_from(j["edge_step"], where + "/edge_step"), dim_of(j));
  }
  fail(where + "/curve", "unknown curve '" + kind +
                             "' (see `kinemetrica list-processes`)");
}

}  // namespace

Body body_from_json(const std::string& json_text) {
  return body_from(parse(json_text), "/");
}

StepLengthLaw step_law_from_json(const std::string& json_text) {
  return step_law_from(parse(json_text), "/");
}

std::unique_ptr<CurveProcess> process_from_json(const std::string& json_text,
                                                int default_dimension) {
  return process_from(parse(json_text), "/", default_dimension);
}

ExperimentConfig experiment_from_json(const std::string& json_text) {
  const json j = parse(json_text);
  check_keys(j, "/",
             {"experiment_id", "estimator", "body", "process", "processes",
              "step", "moving", "loop_radius", "samples", "seed", "workers",
              "truncation_factor", "placements_per_curve"});

  ExperimentConfig cfg;
  if (j.contains("experiment_id"))
    cfg.experiment_id = get_string(j, "/", "experiment_id");

  const std::string est =
      j.contains("estimator") ? get_string(j, "/", "estimator")
                              : "mean-traversed-length";
  if (est == "mean-traversed-length")
    cfg.estimator = EstimatorKind::mean_traversed_length;
  else if (est == "small-loop")
    cfg.estimator = EstimatorKind::small_loop;
  else if (est == "inclusion-3d")
    cfg.estimator = EstimatorKind::inclusion_3d;
  else if (est == "infinite-mean-length")
    cfg.estimator = EstimatorKind::infinite_mean_length;
  else if (est == "ocd-mean-chord")
    cfg.estimator = EstimatorKind::ocd_mean_chord;
  else if (est == "invariance")
    cfg.estimator = EstimatorKind::invariance;
  else
    fail("/estimator", "unknown estimator '" + est + "'");

  if (!j.contains("body")) fail("/", "missing key 'body'");
  cfg.body = body_from(j["body"], "/body");
  const int dim = cfg.body->dimension();

  if (j.contains("process"))
    cfg.processes.push_back(process_from(j["process"], "/process", dim));
  if (j.contains("processes")) {
    if (!j["processes"].is_array()) fail("/processes", "expected an array");
    size_t i = 0;
    for (const auto& p : j["processes"])
      cfg.processes.push_back(
          process_from(p, "/processes/" + std::to_string(i++), dim));
  }
  if (j.contains("step"))
    cfg.step = step_law_from(j["step"], "/step");
  if (j.contains("moving")) cfg.moving = body_from(j["moving"], "/moving");
  if (j.contains("loop_radius"))
    cfg.loop_radius = get_number(j, "/", "loop_radius");

  if (j.contains("samples")) {
    cfg.run.target_accepted = j["samples"].get<long>();
    if (cfg.run.target_accepted < 1) fail("/samples", "must be positive");
  }
  if (j.contains("seed")) {
    cfg.run.seed = j["seed"].get<uint64_t>();
    cfg.seed_given = true;
  }
  if (j.contains("workers")) cfg.run.workers = j["workers"].get<int>();
  cfg.run.truncation_factor =
      get_number_or(j, "/", "truncation_factor", cfg.run.truncation_factor);
  if (j.contains("placements_per_curve"))
    cfg.run.placements_per_curve = j["placements_per_curve"].get<int>();

  // Per-estimator required pieces.
  switch (cfg.estimator) {
    case EstimatorKind::mean_traversed_length:
      if (cfg.processes.size() != 1)
        fail("/", "mean-traversed-length needs exactly one 'process'");
      break;
    case EstimatorKind::small_loop:
      if (!cfg.loop_radius && cfg.processes.empty())
        fail("/", "small-loop needs 'loop_radius' or a circle-loop 'process'");
      break;
    case EstimatorKind::inclusion_3d:
      if (!cfg.moving) fail("/", "inclusion-3d needs a 'moving' ball");
      break;
    case EstimatorKind::infinite_mean_length:
      if (!cfg.step) fail("/", "infinite-mean-length needs a 'step' law");
      break;
    case EstimatorKind::ocd_mean_chord:
      break;
    case EstimatorKind::invariance:
      if (cfg.processes.size() < 2)
        fail("/", "invariance needs a 'processes' array (>= 2 entries)");
      break;
  }
  return cfg;
}

std::string describe_shapes() {
  return
      "ball             {\"shape\":\"ball\",\"radius\":1.0,\"dimension\":n}   "
      "n-ball; aliases: disk (2D), sphere (3D)\n"
      "box              {\"shape\":\"box\",\"lengths\":[2,3]}                "
      "axis-aligned box, dimension = #lengths\n"
      "annulus          {\"shape\":\"annulus\",\"r_in\":0.5,\"r_out\":1.0}    "
      "2D ring, Euler characteristic 0\n"
      "polygon          {\"shape\":\"polygon\",\"vertices\":[[0,0],...]}     "
      "2D simple polygon (convex or not)\n"
      "spherical-shell  {\"shape\":\"spherical-shell\",\"r_in\":..,\"r_out\":..} "
      "3D hollow ball\n";
}

std::string describe_processes() {
  return
      "segment      {\"curve\":\"segment\",\"length\":2.0}                    "
      "straight fiber of fixed length\n"
      "pearson      {\"curve\":\"pearson\",\"step\":{...},\"length\":50.0}      "
      "isotropic random walk truncated at 'length'\n"
      "circle-loop  {\"curve\":\"circle-loop\",\"radius\":0.25}              "
      "analytic circle (loop topology)\n"
      "tree         {\"curve\":\"tree\",\"branches\":7,\"edge_step\":{...}}     "
      "ramified fiber (acyclic, connected)\n"
      "step laws    {\"law\":\"constant\",\"step\":c} | "
      "{\"law\":\"exponential\",\"mean\":m} | {\"law\":\"gamma\",\"shape\":k,"
      "\"scale\":s} | {\"law\":\"pareto\",\"x_min\":x,\"alpha\":a}\n";
}

}  // namespace kinemetrica
