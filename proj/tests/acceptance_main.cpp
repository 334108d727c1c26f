// Acceptance gate: runs every criterion at full scale against the closed
// forms and prints one PASS/FAIL line per criterion (sub-checks indented).
// Exit code 0 iff everything passed.
//
// Defaults follow the verification contract: 1e6 accepted samples per
// estimate, |z| <= 4, fixed seed. Override with --samples/--seed/--workers
// for exploratory runs.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "kinemetrica/suites.hpp"

using namespace kinemetrica;

namespace {

const char* criterion_title(int c) {
  switch (c) {
    case 1: return "harmonic law for segments on disk(1)";
    case 2: return "process invariance at equal mean length";
    case 3: return "infinite-curve Cauchy via crossing counts";
    case 4: return "big-loop Cauchy, length independence";
    case 5: return "small-loop suite and internal identities";
    case 6: return "two-circles and two-spheres inclusion";
    case 7: return "OCD vs MCD chords on the annulus";
    case 8: return "determinism, merge, scaling, parity, eta properties";
  }
  return "supplementary checks";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig base;
  base.seed = 20250808;
  base.target_accepted = 1'000'000;
  base.workers = 1;
  if (const char* env = std::getenv("KINEMETRICA_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) base.workers = w;
  }
  double tol = 4.0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", arg.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--samples") base.target_accepted = std::atol(next());
    else if (arg == "--seed") base.seed = std::strtoull(next(), nullptr, 10);
    else if (arg == "--workers") base.workers = std::atoi(next());
    else if (arg == "--tol-sigma") tol = std::atof(next());
    else {
      std::fprintf(stderr, "usage: %s [--samples N] [--seed S] [--workers W] "
                           "[--tol-sigma X]\n", argv[0]);
      return 2;
    }
  }

  std::printf("acceptance run: %ld accepted samples per estimate, seed %llu, "
              "tolerance %.1f sigma, %d worker(s)\n\n",
              base.target_accepted,
              static_cast<unsigned long long>(base.seed), tol, base.workers);

  const std::vector<std::string> suites = {
      "cauchy2d", "invariance", "infinite", "loops2d",
      "inclusion3d", "ocd", "property"};

  std::map<int, std::vector<CheckLine>> by_criterion;
  bool all_pass = true;
  for (const std::string& name : suites) {
    const SuiteReport rep = run_suite(name, base, tol);
    for (const CheckLine& line : rep.lines) {
      by_criterion[line.criterion].push_back(line);
      if (!line.pass) all_pass = false;
    }
  }

  for (int criterion = 1; criterion <= 8; ++criterion) {
    const auto it = by_criterion.find(criterion);
    bool pass = true;
    if (it != by_criterion.end())
      for (const CheckLine& line : it->second) pass = pass && line.pass;
    std::printf("[%d/8] %s ... %s\n", criterion, criterion_title(criterion),
                pass ? "PASS" : "FAIL");
    if (it != by_criterion.end())
      for (const CheckLine& line : it->second)
        std::printf("    %s  %s  [%s]\n", line.pass ? "ok  " : "FAIL",
                    line.name.c_str(), line.detail.c_str());
  }
  if (by_criterion.count(0)) {
    std::printf("supplementary:\n");
    for (const CheckLine& line : by_criterion[0])
      std::printf("    %s  %s  [%s]\n", line.pass ? "ok  " : "FAIL",
                  line.name.c_str(), line.detail.c_str());
  }

  std::printf("\n%s\n", all_pass ? "ACCEPTANCE: all criteria passed"
                                 : "ACCEPTANCE: FAILURES present");
  return all_pass ? 0 : 1;
}
