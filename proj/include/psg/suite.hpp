#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psg/commands.hpp"
#include "psg/config.hpp"

namespace psg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;     // deterministic: counts and measured values only
  double seconds = 0;     // wall clock, never written to artifacts
  double budget = 0;      // seconds allowed
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t cap_elements = 20'000'000;
  int scale = 1;  // 0 shrinks instance counts and sizes for smoke runs
};

CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_acceptance(const SuiteOptions& options, const std::vector<int>& only = {});

// The configs the determinism criterion reruns; also the shipped examples.
std::vector<std::pair<std::string, ExperimentConfig>> reference_configs();

Artifacts run_suite_command(const ExperimentConfig& config);

}  // namespace psg
