#pragma once

#include <brp/system.hpp>

#include <cstddef>
#include <functional>
#include <vector>

namespace brp::ode {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  double dt0 = 1e-3;
  double max_dt = 0.0;  // 0: unbounded
  std::size_t max_steps = 2'000'000;
};

enum class Stop { End, Event, Guard, Done, MaxSteps };

struct Hooks {
  std::function<double(const State&)> event;       // stop at its first sign change
  std::function<bool(const State&)> guard;         // false: stop with Stop::Guard
  std::function<bool(double, const State&)> done;  // checked at accepted steps
  const std::vector<double>* sample_times = nullptr;  // increasing, >= 0
  std::vector<State>* samples = nullptr;
};

struct Result {
  Stop stop = Stop::End;
  double t = 0;
  State y;
  std::size_t steps = 0;
};

// Adaptive Dormand-Prince integration of y' = f(y) on [0, t_end].
Result integrate(const VectorField& f, const State& y0, double t_end, const Options& opt = {},
                 const Hooks& hooks = {});

// Classical fixed-step RK4 step.
State rk4_step(const VectorField& f, const State& y, double h);

}  // namespace brp::ode
