#pragma once

#include <brp/riemann.hpp>
#include <brp/system.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace brp {

struct GridConfig {
  double T = 2.0;             // final / comparison time
  double margin = 0.2;        // window X = (lambda_max + margin) T
  double dx_per_eps = 0.125;  // classical grid: dx = dx_per_eps * eps
  double h_per_eps = 0.125;   // BVP grid in xi
  double cfl = 0.9;
  double dt = 0;              // 0: from the CFL bound
  double length = 0;          // 0: automatic
  double xi_max = 0;          // 0: automatic
  std::vector<double> save_times;  // empty: {T}
  double tv_factor = 10.0;
  double escape_tol = 1e-6;
  // self-similar BVP
  double eps0 = 0.5;
  double newton_tol = 1e-11;
  int newton_max_iter = 60;
  int refinements = 6;
  bool time_march = false;  // march the eps*t problem instead of the xi-BVP
  int threads = 1;          // parallel map over eps
  RiemannOptions riemann;   // fan used in comparisons
};

// One x (or xi) profile.
struct Slice {
  std::vector<double> x;
  std::vector<State> U;

  State at(double x) const;  // linear interpolation, clamped
};

struct GridSolution {
  enum class Kind { TimeDependent, SelfSimilar };
  Kind kind = Kind::TimeDependent;
  double epsilon = 0;
  GridConfig config;
  double dx = 0;     // or h in xi
  double dt = 0;     // last step used
  double length = 0; // L or Xi
  long steps = 0;
  std::vector<double> x;       // x or xi nodes
  std::vector<double> t;       // saved times (TimeDependent)
  std::vector<std::vector<State>> U;  // U[slice][node]; SelfSimilar: one slice
  std::vector<double> tv;      // per slice
  double max_drift = 0;        // max |U^{k+1} - U^k| per step
  // Entropy bookkeeping (TimeDependent with an entropy pair).
  std::vector<double> entropy;  // int eta dx - accumulated boundary flux, per slice
  double entropy_increase = 0;  // largest increase between consecutive steps
  // Continuation (SelfSimilar).
  std::vector<double> eps_stages;
  int newton_iterations = 0;
  double newton_residual = 0;

  Slice slice(std::size_t i) const;
  Slice final_slice() const;
  // Profile at time T in x = T xi (SelfSimilar), or the saved slice nearest T.
  Slice at_time(double T) const;
};

GridSolution simulate_classical(const HyperbolicSystem& sys, const State& u0, const State& ud, double eps,
                                const GridConfig& cfg = {});
GridSolution simulate_selfsimilar(const HyperbolicSystem& sys, const State& u0, const State& ud, double eps,
                                  const GridConfig& cfg = {});

// Trapezoidal L1 norm of |a - b| on [lo, hi] after resampling onto the finer grid.
double l1_distance(const Slice& a, const Slice& b, double lo, double hi);

// The fan V(x / T) sampled on x.
Slice fan_slice(const WaveFan& fan, const std::vector<double>& x, double T);

struct ComparisonRow {
  double epsilon = 0;
  double d_UZ = 0;
  double d_Ufan = 0;
  double d_Zfan = 0;
  double p_hat = 0;  // NaN on the first row
  bool ok = true;
  std::string error;
};

struct ComparisonTable {
  double T = 0;
  double window = 0;
  std::vector<ComparisonRow> rows;
};

ComparisonTable compare_limits(const HyperbolicSystem& sys, const State& u0, const State& ud,
                               const std::vector<double>& eps_list, const GridConfig& cfg = {});

struct BDependence {
  State trace_1;
  State trace_2;
  double gap = 0;
  double xi = 0;
};

BDependence viscosity_dependence_experiment(const HyperbolicSystem& sys, const State& u0, const State& ud,
                                            const Matrix& b1, const Matrix& b2, double eps,
                                            const GridConfig& cfg = {});

void write_slice_csv(std::ostream& os, const Slice& s, const std::string& xname = "x");
void write_solution_csv(std::ostream& os, const GridSolution& sol);
void write_comparison_csv(std::ostream& os, const ComparisonTable& table);

}  // namespace brp
