// One line per acceptance criterion: PASS/FAIL, measured time against its budget, detail.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psg/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance battery"};
  psg::SuiteOptions o;
  std::vector<int> only;
  app.add_option("--seed", o.seed, "instance seed");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--scale", o.scale, "1 for full sizes, 0 for a smoke run");
  app.add_option("--only", only, "criteria to run");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& r : psg::run_acceptance(o, only)) {
    const bool in_time = r.seconds < r.budget;
    const bool pass = r.passed && in_time;
    all = all && pass;
    std::printf("criterion %2d %-32s %s  %7.2fs / %.0fs%s  %s\n", r.id, r.name.c_str(), pass ? "PASS" : "FAIL",
                r.seconds, r.budget, in_time ? "" : " (over budget)", r.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
