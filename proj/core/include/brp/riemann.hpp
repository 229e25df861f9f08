#pragma once

#include <brp/layers.hpp>
#include <brp/system.hpp>
#include <brp/waves.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace brp {

struct RiemannOptions {
  WaveOptions waves;
  LayerOptions layers;
  double tol_newton = 1e-12;
  int newton_max_iter = 100;
  double fd_step = 1e-6;
  std::optional<double> data_max;  // default: diagonal of the working region
  double tv_factor = 10.0;
  double tol_fan = 1e-6;
  double zero_speed = 1e-8;
  int liu_steps = 200;
  SamplingPlan classify_plan{5, 50, 1};
  std::optional<BoundaryRegime> regime;        // skip classification
  std::optional<std::vector<double>> initial;  // tried before the default guesses
  bool fallback_guesses = true;                // false: only `initial` (when given)
};

struct BoundaryGroup {
  State underline_U;
  std::vector<Wave> zero_speed_waves;
  BoundaryLayerProfile layer;
  bool s_underline_ambiguous = false;
};

struct WaveFan {
  bool boundary = false;
  State left_state;   // U- or U_D
  State right_state;  // U+ or U_0
  std::vector<Wave> waves;      // left to right
  std::vector<State> plateaus;  // plateaus[i] is left of waves[i]; one extra at the end
  State trace;
  std::optional<BoundaryGroup> boundary_group;
  std::optional<BoundaryRegime> regime;
  std::vector<double> strengths;  // Newton unknowns
  double newton_residual = 0;
  int newton_iterations = 0;
  double total_variation = 0;
};

WaveFan solve_riemann(const HyperbolicSystem& sys, const State& uminus, const State& uplus,
                      const RiemannOptions& opt = {});
WaveFan solve_boundary_riemann(const HyperbolicSystem& sys, const State& u0, const State& ud,
                               const RiemannOptions& opt = {});

// V(xi), right-continuous at shock speeds.
State evaluate(const WaveFan& fan, double xi);

struct CheckResult {
  std::string name;
  bool pass = true;
  double residual = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double max_rh = 0;
  double min_liu_margin = 0;
  double max_fan_residual = 0;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

ValidationReport validate_solution(const HyperbolicSystem& sys, const WaveFan& fan, const RiemannOptions& opt = {});

// Liu margin of a shock or contact, measured on the Hugoniot locus of its right state.
LiuResult wave_liu(const HyperbolicSystem& sys, const Wave& wave, const RiemannOptions& opt = {});

// Wave-by-wave distance (infinite when the wave structure differs).
double fan_distance(const WaveFan& a, const WaveFan& b);

std::string fan_json(const WaveFan& fan, const ValidationReport* report = nullptr, int indent = 2);
void write_fan_samples_csv(std::ostream& os, const WaveFan& fan, double xi_min, double xi_max, int count);

}  // namespace brp
