#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace brp {

using State = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Axis-aligned box in state space.
struct Box {
  State lower;
  State upper;

  bool contains(const State& u, double slack = 0.0) const;
  State center() const { return 0.5 * (lower + upper); }
  Box around(const State& u, double radius) const;  // intersected with *this
  int dim() const { return static_cast<int>(lower.size()); }
};

Box make_box(const State& lower, const State& upper);

std::string format_state(const State& u);

}  // namespace brp
