#pragma once

#include <brp/ode.hpp>
#include <brp/system.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace brp {

struct LayerOptions {
  SpectralOptions spectral;
  ode::Options ode{1e-13, 1e-12, 1e-3, 0.0, 4'000'000};
  double tol_layer = 1e-7;
  double tol_tail = 1e-6;
  double fit_slack = 0.2;
  double eps_seed = 1e-4;
  double y_cap = 1e9;        // longest layer considered
  int output_nodes = 1001;
  int newton_max_iter = 50;
  int restarts = 8;
  std::uint64_t seed = 1;
};

// Linearization of the layer ODE W' = B(W)^-1 (F(W) - F(E)) at E.
struct LayerSpectrum {
  Matrix J;                   // B(E)^-1 DF(E)
  Eigen::VectorXd rates;      // real parts, increasing
  Matrix basis;               // real invariant basis matching rates (columns)
  Matrix coords;              // basis^-1
  int stable = 0;             // Re < -tol
  int centre = 0;             // |Re| <= tol
  int unstable = 0;
};

LayerSpectrum layer_spectrum(const HyperbolicSystem& sys, const State& equilibrium, const SpectralOptions& opt = {});

// Orthonormal basis of the stable subspace of B^-1 DF at `equilibrium`.
struct StableSubspace {
  Matrix basis;            // n x m, orthonormal columns
  Eigen::VectorXd rates;   // Re of the stable eigenvalues
  int dim = 0;
};

StableSubspace stable_subspace(const HyperbolicSystem& sys, const State& equilibrium,
                               const SpectralOptions& opt = {}, bool allow_centre = false);

struct BoundaryLayerProfile {
  std::vector<double> y;
  std::vector<State> W;
  State equilibrium;
  State boundary_value;
  double decay_rate = 0;
  double residual = 0;            // transport defect between nodes
  double algebraic_residual = 0;  // max |B W' - F(W) + F(E)| with W' from differences
  double tail_error = 0;          // |W(y_M) - E|
  int stable_dim = 0;
  bool shot_backward = false;

  bool trivial() const { return W.size() <= 1; }
};

BoundaryLayerProfile shoot_layer(const HyperbolicSystem& sys, const State& equilibrium, const State& boundary_value,
                                 const LayerOptions& opt = {});

// Point on the stable manifold with stable spectral coordinates `coords`.
State layer_map_phi(const HyperbolicSystem& sys, const State& equilibrium, const Eigen::VectorXd& coords,
                    const LayerOptions& opt = {});

struct LayerDecomposition {
  std::vector<double> y;
  std::vector<State> U_k;  // slow component (a state)
  std::vector<State> U_s;  // fast stable part (an offset)
  std::vector<State> U_p;  // remainder
  double rate_s = 0;
  double rate_p = 0;
  double C1 = 0;
  double C2 = 0;
  double r2_s = 1;
  double r2_p = 1;
  double max_s = 0;
  double max_p = 0;
};

LayerDecomposition decompose_layer(const HyperbolicSystem& sys, const BoundaryLayerProfile& profile,
                                   const State& usharp, int k, const LayerOptions& opt = {});

// Exponential fit |x(y)| ~ C e^{-rate y} on the tail half of the samples above the noise floor.
struct DecayFit {
  double rate = 0;
  double C = 0;
  double r2 = 1;
  std::size_t used = 0;
};

DecayFit fit_decay(const std::vector<double>& y, const std::vector<double>& norms, double floor);

void write_layer_csv(std::ostream& os, const BoundaryLayerProfile& profile, const LayerDecomposition* dec = nullptr);

}  // namespace brp
