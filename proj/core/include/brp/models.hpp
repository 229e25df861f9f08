#pragma once

#include <brp/system.hpp>

#include <map>
#include <string>
#include <vector>

namespace brp::models {

// F(u) = u^2/2, B = b.
HyperbolicSystem burgers(double b = 1.0, double half_width = 3.0);

// F(u) = u^3, B = 1. Not genuinely nonlinear at 0.
HyperbolicSystem cubic(double half_width = 3.0);

// F(U) = A U with constant viscosity B.
HyperbolicSystem linear2(const Matrix& a, const Matrix& b, double half_width = 10.0);

struct PSystemParams {
  double kp = 1.0;
  double gamma = 1.4;
  double frame_speed = 0.0;  // adds a*U to the flux
  double v_min = 0.5;
  double v_max = 2.0;
  double u_bound = 1.0;
};

// F(v, u) = (-u, p(v)) + a (v, u), p(v) = kp v^-gamma.
HyperbolicSystem p_system(const PSystemParams& params, const Matrix& b);
HyperbolicSystem p_system(const PSystemParams& params = {});

double p_system_pressure(const PSystemParams& params, double v);
double p_system_sound_speed(const PSystemParams& params, double v);

// Name-keyed construction used by configs: "burgers", "cubic", "linear2", "p-system".
struct ModelSpec {
  std::string name = "burgers";
  std::map<std::string, double> scalars;   // kp, gamma, frame_speed, b, ...
  std::vector<double> flux_matrix;         // linear2: row-major 2x2
  std::vector<double> viscosity;           // empty, n entries (diagonal) or n*n (row-major)
};

HyperbolicSystem make(const ModelSpec& spec);
std::vector<std::string> names();
int dimension_of(const std::string& name);

Matrix viscosity_from_values(const std::vector<double>& values, int n);

}  // namespace brp::models
