// kinemetrica: Monte Carlo engine for kinematic-measure geometry.
//
// Exit codes: 0 ok, 2 configuration error, 3 curvature-regime violation,
// 4 statistical failure in `verify`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kinemetrica/descriptors.hpp"
#include "kinemetrica/report.hpp"
#include "kinemetrica/suites.hpp"

namespace {

using namespace kinemetrica;

int default_workers() {
  if (const char* env = std::getenv("KINEMETRICA_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<EstimatorResult> execute(const ExperimentConfig& cfg) {
  const Body& body = *cfg.body;
  std::vector<EstimatorResult> rows;
  switch (cfg.estimator) {
    case EstimatorKind::mean_traversed_length:
      rows.push_back(
          estimate_mean_traversed_length(body, *cfg.processes[0], cfg.run));
      break;
    case EstimatorKind::small_loop: {
      double radius = 0.0;
      if (cfg.loop_radius) {
        radius = *cfg.loop_radius;
      } else {
        const auto* loop = cfg.processes.at(0).get();
        if (!loop->is_loop())
          throw ConfigError("small-loop needs a circle-loop process");
        const MeanLength len = loop->mean_length();
        radius = len.value() / kTwoPi;
      }
      const SmallLoopEstimates s = estimate_small_loop_quantities(
          body, Curve::circle_loop(radius, 2), cfg.run);
      rows = {s.mean_length, s.inclusion_p, s.mean_arc, s.mean_chi};
      break;
    }
    case EstimatorKind::inclusion_3d:
      rows.push_back(
          estimate_inclusion_probability_3d(body, *cfg.moving, cfg.run));
      break;
    case EstimatorKind::infinite_mean_length:
      rows.push_back(
          estimate_infinite_curve_mean_length(body, *cfg.step, cfg.run));
      break;
    case EstimatorKind::ocd_mean_chord:
      rows.push_back(estimate_ocd_mean_chord(body, cfg.run));
      break;
    case EstimatorKind::invariance: {
      std::vector<const CurveProcess*> procs;
      for (const auto& p : cfg.processes) procs.push_back(p.get());
      InvarianceReport rep = invariance_suite(body, procs, cfg.run);
      rows = std::move(rep.results);
      std::cerr << "max pairwise |z| = " << rep.max_pairwise_z << "\n";
      break;
    }
  }
  if (!cfg.experiment_id.empty())
    for (size_t i = 0; i < rows.size(); ++i)
      rows[i].id = rows.size() == 1
                       ? cfg.experiment_id
                       : cfg.experiment_id + "/" + std::to_string(i);
  return rows;
}

int cmd_run(const std::string& config_path, long samples_flag,
            long seed_flag, bool seed_set, int workers_flag,
            const std::string& out_path, const std::string& format_name) {
  ExperimentConfig cfg = experiment_from_json(slurp(config_path));
  if (samples_flag > 0) cfg.run.target_accepted = samples_flag;
  if (seed_set) {
    cfg.run.seed = static_cast<uint64_t>(seed_flag);
    cfg.seed_given = true;
  }
  if (!cfg.seed_given)
    throw ConfigError("a seed is required (config key 'seed' or --seed)");
  // Precedence: --workers flag, then config key, then environment.
  if (workers_flag > 0)
    cfg.run.workers = workers_flag;
  else if (cfg.run.workers <= 0)
    cfg.run.workers = default_workers();

  const ReportFormat format =
      format_name == "jsonl" ? ReportFormat::jsonl : ReportFormat::csv;
  if (format_name != "csv" && format_name != "jsonl")
    throw ConfigError("unknown --format '" + format_name + "' (csv|jsonl)");

  const std::vector<EstimatorResult> rows = execute(cfg);
  if (!out_path.empty()) {
    write_report(out_path, format, rows, cfg.run.seed);
  } else {
    std::cout << report_header(format);
    for (const EstimatorResult& r : rows)
      std::cout << report_row(r, cfg.run.seed, format);
  }
  return 0;
}

int cmd_verify(const std::string& suite, double tol_sigma, long seed_flag,
               long samples_flag, int workers_flag,
               const std::string& out_path) {
  RunConfig base;
  base.seed = static_cast<uint64_t>(seed_flag);
  base.workers = workers_flag > 0 ? workers_flag : default_workers();
  if (samples_flag > 0) base.target_accepted = samples_flag;

  const SuiteReport rep = run_suite(suite, base, tol_sigma);
  std::cout << format_suite_report(rep);
  if (!out_path.empty()) {
    std::vector<EstimatorResult> rows;
    for (const CheckLine& line : rep.lines)
      if (line.result) rows.push_back(*line.result);
    write_report(out_path, ReportFormat::csv, rows, base.seed);
  }
  return rep.all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo sampler and verifier for mean traversed lengths, "
               "inclusion probabilities and chord statistics of random "
               "curves in bounded windows"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name = "csv", suite_name;
  long samples = 0, seed = 0;
  bool seed_set = false;
  int workers = 0;
  double tol_sigma = 4.0;

  CLI::App* run = app.add_subcommand("run", "execute one experiment config");
  run->add_option("--config", config_path, "JSON experiment config")
      ->required();
  run->add_option("--samples", samples, "accepted-sample target");
  run->add_option("--seed", seed, "root RNG seed")->each([&](const std::string&) {
    seed_set = true;
  });
  run->add_option("--workers", workers,
                  "worker threads (default $KINEMETRICA_WORKERS or 1)");
  run->add_option("--out", out_path, "output path (default stdout)");
  run->add_option("--format", format_name, "csv|jsonl");

  CLI::App* verify = app.add_subcommand(
      "verify", "run a named verification suite against the closed forms");
  verify->add_option("--suite", suite_name, "suite name")->required();
  verify->add_option("--tol-sigma", tol_sigma, "|z| tolerance (default 4)");
  verify->add_option("--seed", seed, "root RNG seed")->required();
  verify->add_option("--samples", samples, "accepted samples per line");
  verify->add_option("--workers", workers, "worker threads");
  verify->add_option("--out", out_path, "optional CSV of estimate rows");

  CLI::App* list_shapes =
      app.add_subcommand("list-shapes", "supported body descriptors");
  CLI::App* list_processes =
      app.add_subcommand("list-processes", "supported process descriptors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(config_path, samples, seed, seed_set, workers, out_path,
                     format_name);
    if (verify->parsed())
      return cmd_verify(suite_name, tol_sigma, seed, samples, workers,
                        out_path);
    if (list_shapes->parsed()) {
      std::cout << kinemetrica::describe_shapes();
      return 0;
    }
    if (list_processes->parsed()) {
      std::cout << kinemetrica::describe_processes();
      return 0;
    }
  } catch (const kinemetrica::RegimeError& e) {
    std::cerr << "regime violation: " << e.what() << "\n";
    return 3;
  } catch (const kinemetrica::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const kinemetrica::UsageError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
