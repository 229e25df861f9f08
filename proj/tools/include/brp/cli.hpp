#pragma once

#include <brp/models.hpp>
#include <brp/riemann.hpp>
#include <brp/viscous.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace brp::cli {

enum class Problem { Riemann, BoundaryRiemann, ClassicalSim, SelfSimilarSim, CompareLimits, BDependence, Validate, Suite };

const char* to_string(Problem p);
Problem problem_from_string(const std::string& s);  // ValidationError on unknown names
std::vector<std::string> problem_names();

struct RunConfig {
  Problem problem = Problem::Riemann;
  models::ModelSpec system;
  int n = 1;
  std::optional<State> u_minus, u_plus, u0, ud;
  RiemannOptions riemann;
  GridConfig grid;
  double eps = 0.02;
  std::vector<double> eps_list{0.08, 0.04, 0.02};
  Matrix b1, b2;  // b-dependence; empty: identity / required
  int samples = 801;
  std::optional<double> xi_min, xi_max;
  std::vector<int> criteria;  // suite: empty runs all
  std::string output_dir;     // empty: from BRK_OUTPUT_DIR
  bool csv = true;
  bool json = true;
  std::uint64_t seed = 1;
  // Resolved section.key = value pairs, defaults included, in a fixed order.
  std::vector<std::pair<std::string, std::string>> effective;

  std::string effective_text() const;
};

// `overrides` are "section.key=value" strings and win over the text.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides = {});

struct RunResult {
  int exit_code = 0;
  std::string output_dir;
  std::string summary;  // summary.json contents
  std::vector<std::string> files;
};

// Hook for the acceptance battery (`suite`): returns exit status and fills the summary.
using SuiteRunner = std::function<int(const RunConfig&, std::ostream& log, std::string& summary_json)>;
void set_suite_runner(SuiteRunner runner);

RunResult run(const RunConfig& cfg, std::ostream& log);

}  // namespace brp::cli
