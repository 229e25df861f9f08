#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace brp::suite {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double budget = 0;  // seconds
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::vector<int> only;  // empty: all ten
  std::ostream* log = nullptr;
};

constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, const SuiteOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt = {});

bool all_pass(const std::vector<CriterionResult>& results);
std::string format_line(const CriterionResult& r);
std::string results_json(const std::vector<CriterionResult>& results);

}  // namespace brp::suite
