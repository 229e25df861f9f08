#include <brp/error.hpp>
#include <brp/models.hpp>

#include <cmath>

namespace brp::models {

namespace {

State vec1(double x) { return State::Constant(1, x); }
Matrix mat1(double x) { return Matrix::Constant(1, 1, x); }

double scalar_or(const ModelSpec& spec, const std::string& key, double fallback) {
  auto it = spec.scalars.find(key);
  return it == spec.scalars.end() ? fallback : it->second;
}

}  // namespace

Matrix viscosity_from_values(const std::vector<double>& values, int n) {
  if (values.empty()) return Matrix::Identity(n, n);
  Matrix b = Matrix::Zero(n, n);
  if (static_cast<int>(values.size()) == n) {
    for (int i = 0; i < n; ++i) b(i, i) = values[static_cast<std::size_t>(i)];
  } else if (static_cast<int>(values.size()) == n * n) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = values[static_cast<std::size_t>(i * n + j)];
  } else {
    fail(ErrorKind::ValidationError, "viscosity needs n (diagonal) or n*n entries");
  }
  return b;
}

HyperbolicSystem burgers(double b, double half_width) {
  HyperbolicSystem::Definition d;
  d.name = "burgers";
  d.n = 1;
  d.flux = [](const State& u) { return vec1(0.5 * u[0] * u[0]); };
  d.jacobian = [](const State& u) { return mat1(u[0]); };
  d.viscosity = [b](const State&) { return mat1(b); };
  EntropyPair e;
  e.eta = [](const State& u) { return 0.5 * u[0] * u[0]; };
  e.q = [](const State& u) { return u[0] * u[0] * u[0] / 3.0; };
  e.grad_eta = [](const State& u) { return vec1(u[0]); };
  e.grad_q = [](const State& u) { return vec1(u[0] * u[0]); };
  e.hess_eta = [](const State&) { return mat1(1.0); };
  d.entropy = e;
  d.region = make_box(vec1(-half_width), vec1(half_width));
  return HyperbolicSystem(std::move(d));
}

HyperbolicSystem cubic(double half_width) {
  HyperbolicSystem::Definition d;
  d.name = "cubic";
  d.n = 1;
  d.flux = [](const State& u) { return vec1(u[0] * u[0] * u[0]); };
  d.jacobian = [](const State& u) { return mat1(3 * u[0] * u[0]); };
  EntropyPair e;
  e.eta = [](const State& u) { return 0.5 * u[0] * u[0]; };
  e.q = [](const State& u) { return 0.75 * std::pow(u[0], 4); };
  e.grad_eta = [](const State& u) { return vec1(u[0]); };
  e.grad_q = [](const State& u) { return vec1(3 * std::pow(u[0], 3)); };
  e.hess_eta = [](const State&) { return mat1(1.0); };
  d.entropy = e;
  d.region = make_box(vec1(-half_width), vec1(half_width));
  return HyperbolicSystem(std::move(d));
}

HyperbolicSystem linear2(const Matrix& a, const Matrix& b, double half_width) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    fail(ErrorKind::InvalidArgument, "linear2 needs 2x2 matrices");
  HyperbolicSystem::Definition d;
  d.name = "linear2";
  d.n = 2;
  d.flux = [a](const State& u) -> State { return a * u; };
  d.jacobian = [a](const State&) { return a; };
  d.viscosity = [b](const State&) { return b; };
  // Quadratic entropy eta = U^T S U / 2 with S = R^-T R^-1, which symmetrizes A.
  try {
    const SpectralData sd = eigen_decompose_matrix(a);
    const Matrix s = sd.left.transpose() * sd.left;
    const Matrix sa = s * a;
    EntropyPair e;
    e.eta = [s](const State& u) { return 0.5 * u.dot(s * u); };
    e.q = [sa](const State& u) { return 0.5 * u.dot(sa * u); };
    e.grad_eta = [s](const State& u) -> State { return s * u; };
    e.grad_q = [sa](const State& u) -> State { return 0.5 * (sa + sa.transpose()) * u; };
    e.hess_eta = [s](const State&) { return s; };
    d.entropy = e;
  } catch (const Error&) {
    // not strictly hyperbolic: no symmetrizer, hypotheses will report it
  }
  d.region = make_box(State::Constant(2, -half_width), State::Constant(2, half_width));
  return HyperbolicSystem(std::move(d));
}

double p_system_pressure(const PSystemParams& p, double v) { return p.kp * std::pow(v, -p.gamma); }

double p_system_sound_speed(const PSystemParams& p, double v) {
  return std::sqrt(p.gamma * p.kp * std::pow(v, -p.gamma - 1));
}

HyperbolicSystem p_system(const PSystemParams& params, const Matrix& b) {
  if (!(params.kp > 0) || !(params.gamma > 0)) fail(ErrorKind::ValidationError, "p-system needs kp > 0 and gamma > 0");
  if (!(params.v_min > 0) || !(params.v_min < params.v_max)) fail(ErrorKind::ValidationError, "p-system needs 0 < v_min < v_max");
  HyperbolicSystem::Definition d;
  d.name = "p-system";
  d.n = 2;
  const PSystemParams p = params;
  const double a = p.frame_speed;
  d.flux = [p, a](const State& w) {
    State f(2);
    f << -w[1] + a * w[0], p_system_pressure(p, w[0]) + a * w[1];
    return f;
  };
  d.jacobian = [p, a](const State& w) {
    Matrix j(2, 2);
    j << a, -1.0, -p.gamma * p.kp * std::pow(w[0], -p.gamma - 1), a;
    return j;
  };
  d.viscosity = [b](const State&) { return b; };
  auto big_p = [p](double v) {
    return std::abs(p.gamma - 1) < 1e-14 ? -p.kp * std::log(v) : p.kp * std::pow(v, 1 - p.gamma) / (p.gamma - 1);
  };
  EntropyPair e;
  e.eta = [big_p](const State& w) { return 0.5 * w[1] * w[1] + big_p(w[0]); };
  e.q = [p, a, big_p](const State& w) {
    return w[1] * p_system_pressure(p, w[0]) + a * (0.5 * w[1] * w[1] + big_p(w[0]));
  };
  e.grad_eta = [p](const State& w) {
    State g(2);
    g << -p_system_pressure(p, w[0]), w[1];
    return g;
  };
  e.grad_q = [p, a](const State& w) {
    const double pv = p_system_pressure(p, w[0]);
    const double dp = -p.gamma * p.kp * std::pow(w[0], -p.gamma - 1);
    State g(2);
    g << w[1] * dp - a * pv, pv + a * w[1];
    return g;
  };
  e.hess_eta = [p](const State& w) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = p.gamma * p.kp * std::pow(w[0], -p.gamma - 1);
    h(1, 1) = 1.0;
    return h;
  };
  d.entropy = e;
  State lo(2), hi(2);
  lo << p.v_min, -p.u_bound;
  hi << p.v_max, p.u_bound;
  d.region = make_box(lo, hi);
  return HyperbolicSystem(std::move(d));
}

HyperbolicSystem p_system(const PSystemParams& params) { return p_system(params, Matrix::Identity(2, 2)); }

std::vector<std::string> names() { return {"burgers", "cubic", "linear2", "p-system"}; }

int dimension_of(const std::string& name) {
  if (name == "burgers" || name == "cubic") return 1;
  if (name == "linear2" || name == "p-system") return 2;
  fail(ErrorKind::ValidationError, "unknown system '" + name + "'");
}

HyperbolicSystem make(const ModelSpec& spec) {
  const int n = dimension_of(spec.name);
  const Matrix b = viscosity_from_values(spec.viscosity, n);
  if (spec.name == "burgers") {
    const double hw = scalar_or(spec, "half_width", 3.0);
    return burgers(1.0, hw).with_constant_viscosity(b);
  }
  if (spec.name == "cubic") {
    return cubic(scalar_or(spec, "half_width", 3.0)).with_constant_viscosity(b);
  }
  if (spec.name == "linear2") {
    Matrix a(2, 2);
    if (spec.flux_matrix.empty()) {
      a << -1, 0, 0, 1;
    } else if (spec.flux_matrix.size() == 4) {
      a << spec.flux_matrix[0], spec.flux_matrix[1], spec.flux_matrix[2], spec.flux_matrix[3];
    } else {
      fail(ErrorKind::ValidationError, "system.matrix needs 4 entries");
    }
    return linear2(a, b, scalar_or(spec, "half_width", 10.0));
  }
  PSystemParams p;
  p.kp = scalar_or(spec, "kp", p.kp);
  p.gamma = scalar_or(spec, "gamma", p.gamma);
  p.frame_speed = scalar_or(spec, "frame_speed", p.frame_speed);
  p.v_min = scalar_or(spec, "v_min", p.v_min);
  p.v_max = scalar_or(spec, "v_max", p.v_max);
  p.u_bound = scalar_or(spec, "u_bound", p.u_bound);
  return p_system(p, b);
}

}  // namespace brp::models
