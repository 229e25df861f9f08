#pragma once

// Reference solutions that share no code with the solvers they check.

#include <brp/envelope.hpp>
#include <brp/types.hpp>

#include <random>
#include <vector>

namespace brp::oracle {

// Random piecewise-linear data on a dyadic grid with integer values, so every
// chord evaluation is a single rounding of an exact quantity.
SampledFunction random_pl(std::mt19937_64& rng, int max_nodes = 100);

// Envelopes from the supporting-line characterization, O(m^3):
// value at node i = best line through two nodes (or a horizontal line for the
// monotone case) that stays on the right side of every node.
std::vector<double> brute_convex(const SampledFunction& f);
std::vector<double> brute_concave(const SampledFunction& f);
std::vector<double> brute_monotone_convex(const SampledFunction& f);

// Entropy solution of u_t + (u^2/2)_x = 0 with u(x,0) = ul (x<0), ur (x>0), at x/t = xi.
double burgers_riemann(double ul, double ur, double xi);

// Layer of B w' = (w^2 - e^2)/2 from w(0) = ud to e < 0, b > 0:
// w = e tanh(|e| y / (2 b) + atanh(ud / e)).
double burgers_layer(double e, double ud, double y, double b = 1.0);

// DF = diag(-1, 1), B = I: trace (u0_1, ud_2), contact to u0 at speed 1,
// layer (u0_1 + (ud_1 - u0_1) e^{-y}, ud_2).
struct LinearBoundaryOracle {
  State trace;
  double contact_speed = 1.0;
  State layer(double y) const;
  State u0, ud;
};
LinearBoundaryOracle linear_diag_boundary(const State& u0, const State& ud);

// p-system Hugoniot speed: sigma^2 = -(p(v) - p(v0)) / (v - v0), p = kp v^-gamma.
double psystem_hugoniot_speed2(double kp, double gamma, double v0, double v);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace brp::oracle
