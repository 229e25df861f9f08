#include <brp/error.hpp>
#include <brp/viscous.hpp>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

namespace brp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Largest characteristic speed (absolute and signed maximum) along the data segment.
struct SpeedBounds {
  double abs_max = 0;
  double max = 0;
  double b_norm = 1;
};

SpeedBounds speed_bounds(const HyperbolicSystem& sys, const State& u0, const State& ud, const SpectralOptions& so) {
  SpeedBounds sb;
  sb.max = -std::numeric_limits<double>::infinity();
  sb.b_norm = 0;
  for (int i = 0; i <= 8; ++i) {
    const State u = u0 + (ud - u0) * (i / 8.0);
    const SpectralData sd = eigen_decompose(sys, u, so);
    sb.abs_max = std::max({sb.abs_max, std::abs(sd.eigenvalues[0]), std::abs(sd.eigenvalues[sd.eigenvalues.size() - 1])});
    sb.max = std::max(sb.max, sd.eigenvalues[sd.eigenvalues.size() - 1]);
    sb.b_norm = std::max(sb.b_norm, Eigen::JacobiSVD<Matrix>(sys.viscosity(u)).singularValues()[0]);
  }
  sb.max = std::max(sb.max, 0.0);
  return sb;
}

double total_variation(const std::vector<State>& u) {
  double tv = 0;
  for (std::size_t j = 1; j < u.size(); ++j) tv += (u[j] - u[j - 1]).norm();
  return tv;
}

void check_finite(const std::vector<State>& u, const char* what) {
  for (const State& v : u)
    if (!v.allFinite()) fail(ErrorKind::BlowUp, std::string(what) + " produced a non-finite value");
}

// Method of lines for U_t + F(U)_x = nu(t) (B(U) U_x)_x on [0, L] with Dirichlet ends.
class Marcher {
 public:
  Marcher(const HyperbolicSystem& sys, double dx, double eps, bool dafermos)
      : sys_(sys), dx_(dx), eps_(eps), dafermos_(dafermos) {}

  double nu(double t) const { return dafermos_ ? eps_ * t : eps_; }

  // Returns dU/dt; tracks the largest |lambda| and |B| seen at interfaces.
  void rhs(const std::vector<State>& u, double t, std::vector<State>& du) {
    const std::size_t N = u.size() - 1;
    node_flux_.resize(N + 1);
    for (std::size_t j = 0; j <= N; ++j) node_flux_[j] = sys_.flux(u[j]);
    flux_.resize(N);
    diff_.resize(N);
    lam_seen_ = 0;
    b_seen_ = 0;
    for (std::size_t j = 0; j < N; ++j) {
      const State mid = 0.5 * (u[j] + u[j + 1]);
      const State jump = u[j + 1] - u[j];
      flux_[j] = 0.5 * (node_flux_[j] + node_flux_[j + 1]) - 0.5 * abs_times(sys_.jacobian(mid), jump);
      const Matrix b = sys_.viscosity(mid);
      b_seen_ = std::max(b_seen_, spectral_norm(b));
      diff_[j] = b * jump;
    }
    const double k = nu(t) / (dx_ * dx_);
    du.assign(u.size(), State::Zero(u[0].size()));
    for (std::size_t j = 1; j < N; ++j) du[j] = -(flux_[j] - flux_[j - 1]) / dx_ + k * (diff_[j] - diff_[j - 1]);
  }

  double lam_seen() const { return lam_seen_; }
  double b_seen() const { return b_seen_; }
  const std::vector<State>& diffusive() const { return diff_; }

 private:
  const HyperbolicSystem& sys_;
  double dx_, eps_;
  bool dafermos_;
  // |A| v, with |A| = R |Lambda| R^-1; closed form for n <= 2
  State abs_times(const Matrix& a, const State& v) {
    const auto n = a.rows();
    if (n == 1) {
      lam_seen_ = std::max(lam_seen_, std::abs(a(0, 0)));
      return std::abs(a(0, 0)) * v;
    }
    if (n == 2) {
      const double m = 0.5 * (a(0, 0) + a(1, 1));
      const double h = 0.5 * (a(0, 0) - a(1, 1));
      const double disc = h * h + a(0, 1) * a(1, 0);
      if (!(disc > 0)) fail(ErrorKind::NonHyperbolic, "upwind flux at a non-hyperbolic state");
      const double sq = std::sqrt(disc);
      const double l1 = m - sq, l2 = m + sq;
      const double a1 = std::abs(l1), a2 = std::abs(l2);
      lam_seen_ = std::max({lam_seen_, a1, a2});
      // |A| = alpha A + beta I interpolates |.| on the spectrum
      const double alpha = (a2 - a1) / (l2 - l1);
      const double beta = (l2 * a1 - l1 * a2) / (l2 - l1);
      return alpha * (a * v) + beta * v;
    }
    const SpectralData sd = eigen_decompose_matrix(a);
    const Eigen::VectorXd ab = sd.eigenvalues.cwiseAbs();
    lam_seen_ = std::max(lam_seen_, ab.maxCoeff());
    return sd.right * (ab.asDiagonal() * (sd.left * v));
  }

  // |B|_2, recomputed only when B changes
  double spectral_norm(const Matrix& b) {
    if (b.rows() != last_b_.rows() || b != last_b_) {
      last_b_ = b;
      last_norm_ = Eigen::JacobiSVD<Matrix>(b).singularValues()[0];
    }
    return last_norm_;
  }

  std::vector<State> node_flux_, flux_, diff_;
  double lam_seen_ = 0, b_seen_ = 0;
  Matrix last_b_;
  double last_norm_ = 0;
};

double entropy_integral(const HyperbolicSystem& sys, const std::vector<State>& u, double dx) {
  const auto& eta = sys.entropy().eta;
  double s = 0.5 * (eta(u.front()) + eta(u.back()));
  for (std::size_t j = 1; j + 1 < u.size(); ++j) s += eta(u[j]);
  return s * dx;
}

// Entropy flowing out through both ends: q and the viscous flux nu grad(eta) B U_x.
double entropy_outflow(const HyperbolicSystem& sys, const std::vector<State>& u, double dx, double nu) {
  const auto& e = sys.entropy();
  const std::size_t N = u.size() - 1;
  const State ux0 = (u[1] - u[0]) / dx;
  const State uxL = (u[N] - u[N - 1]) / dx;
  const double visc_L = e.grad_eta(u[N]).dot(sys.viscosity(u[N]) * uxL);
  const double visc_0 = e.grad_eta(u[0]).dot(sys.viscosity(u[0]) * ux0);
  return e.q(u[N]) - e.q(u[0]) - nu * (visc_L - visc_0);
}

GridSolution march(const HyperbolicSystem& sys, const State& u0, const State& ud, double eps, const GridConfig& cfg,
                   bool dafermos) {
  if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
  if (u0.size() != sys.dim() || ud.size() != sys.dim()) fail(ErrorKind::InvalidArgument, "data dimension mismatch");
  const SpeedBounds sb = speed_bounds(sys, u0, ud, cfg.riemann.waves.spectral);
  const double T = cfg.T;
  const double nu_max = dafermos ? eps * T : eps;
  const double window = (sb.max + cfg.margin) * T;
  double L = cfg.length;
  if (L <= 0) L = window + 0.1 * T + 6.0 * std::sqrt(2.0 * nu_max * T * sb.b_norm);
  const long N = std::max<long>(16, static_cast<long>(std::ceil(L / (cfg.dx_per_eps * eps))));
  const double dx = L / N;

  GridSolution sol;
  sol.kind = GridSolution::Kind::TimeDependent;
  sol.epsilon = eps;
  sol.config = cfg;
  sol.dx = dx;
  sol.length = L;
  sol.x.resize(N + 1);
  for (long j = 0; j <= N; ++j) sol.x[j] = j * dx;

  std::vector<State> u(N + 1, u0);
  u[0] = ud;
  std::vector<double> saves = cfg.save_times.empty() ? std::vector<double>{T} : cfg.save_times;
  std::sort(saves.begin(), saves.end());
  if (saves.front() < 0 || saves.back() > T + 1e-14) fail(ErrorKind::InvalidArgument, "save time outside [0, T]");

  const bool track_entropy = sys.has_entropy();
  const double tv_budget = cfg.tv_factor * std::max((u0 - ud).norm(), 1e-300);
  Marcher m(sys, dx, eps, dafermos);
  std::vector<State> k1, k2, u1(N + 1);
  double t = 0;
  double outflow_acc = 0;
  double e_prev = track_entropy ? entropy_integral(sys, u, dx) : 0;
  std::size_t next_save = 0;
  auto save = [&] {
    sol.t.push_back(t);
    sol.U.push_back(u);
    const double tv = total_variation(u);
    sol.tv.push_back(tv);
    if (tv > tv_budget * 1.05 + 1e-14) fail(ErrorKind::BlowUp, "discrete total variation exceeds the budget");
    if (track_entropy) sol.entropy.push_back(entropy_integral(sys, u, dx) + outflow_acc);
  };
  while (next_save < saves.size() && saves[next_save] <= 0) {
    save();
    ++next_save;
  }
  m.rhs(u, t, k1);
  while (next_save < saves.size()) {
    const double lam = std::max(m.lam_seen(), 1e-12);
    const double bn = std::max(m.b_seen(), 1e-300);
    const double nu_next = std::max(m.nu(t), m.nu(std::min(T, t + dx / lam)));
    double bound = dx / lam;
    if (nu_next > 0) bound = std::min(bound, dx * dx / (2.0 * nu_next * bn));
    double dt;
    if (cfg.dt > 0) {
      if (cfg.dt > bound * (1 + 1e-12)) fail(ErrorKind::CFLViolation, "dt exceeds the CFL bound " + std::to_string(bound));
      dt = cfg.dt;
    } else {
      dt = cfg.cfl * bound;
    }
    bool hit = false;
    if (t + dt >= saves[next_save] - 1e-14 * T) {
      dt = saves[next_save] - t;
      hit = true;
    }
    const double q0 = track_entropy ? entropy_outflow(sys, u, dx, m.nu(t)) : 0;
    for (long j = 0; j <= N; ++j) u1[j] = u[j] + dt * k1[j];
    m.rhs(u1, t + dt, k2);
    double drift = 0;
    for (long j = 1; j < N; ++j) {
      const State next = 0.5 * (u[j] + u1[j] + dt * k2[j]);
      drift = std::max(drift, (next - u[j]).norm());
      u[j] = next;
    }
    sol.max_drift = std::max(sol.max_drift, drift);
    t = hit ? saves[next_save] : t + dt;
    ++sol.steps;
    sol.dt = dt;
    if (track_entropy) {
      const double q1 = entropy_outflow(sys, u, dx, m.nu(t));
      outflow_acc += 0.5 * dt * (q0 + q1);
      const double e = entropy_integral(sys, u, dx) + outflow_acc;
      sol.entropy_increase = std::max(sol.entropy_increase, e - e_prev);
      e_prev = e;
    }
    if (sol.steps % 256 == 0) check_finite(u, "classical march");
    m.rhs(u, t, k1);
    if (hit) {
      check_finite(u, "classical march");
      save();
      ++next_save;
    }
  }
  // waves must not have reached the far end
  const double tol = cfg.escape_tol * std::max(1.0, (u0 - ud).norm());
  for (long j = static_cast<long>(0.95 * N); j <= N; ++j)
    if ((u[j] - u0).norm() > tol)
      fail(ErrorKind::DomainEscape, "waves reached x = L before T; enlarge the domain");
  return sol;
}

// Residual of the xi-BVP on interior nodes, flux-difference form scaled by h.
class SelfSimilarProblem {
 public:
  SelfSimilarProblem(const HyperbolicSystem& sys, const std::vector<double>& xi, const State& ud, const State& u0)
      : sys_(sys), xi_(xi), ud_(ud), u0_(u0), n_(sys.dim()), N_(static_cast<long>(xi.size()) - 1),
        h_(xi[1] - xi[0]) {}

  long unknowns() const { return n_ * (N_ - 1); }

  State node(const Eigen::VectorXd& z, long j) const {
    if (j == 0) return ud_;
    if (j == N_) return u0_;
    return z.segment(n_ * (j - 1), n_);
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& z, double eps) const {
    std::vector<State> v(N_ + 1), f(N_ + 1), d(N_);
    for (long j = 0; j <= N_; ++j) {
      v[j] = node(z, j);
      f[j] = sys_.flux(v[j]);
    }
    for (long j = 0; j < N_; ++j) d[j] = sys_.viscosity(0.5 * (v[j] + v[j + 1])) * (v[j + 1] - v[j]);
    Eigen::VectorXd r(unknowns());
    for (long j = 1; j < N_; ++j)
      r.segment(n_ * (j - 1), n_) =
          eps * (d[j] - d[j - 1]) / h_ - 0.5 * (f[j + 1] - f[j - 1]) + 0.5 * xi_[j] * (v[j + 1] - v[j - 1]);
    return r;
  }

  // Block-tridiagonal Jacobian from 3n coloured differences.
  Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& z, const Eigen::VectorXd& r0, double eps) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(3 * n_ * unknowns()));
    const long M = N_ - 1;
    for (int colour = 0; colour < 3; ++colour) {
      for (int c = 0; c < n_; ++c) {
        Eigen::VectorXd zp = z;
        std::vector<double> step(M, 0.0);
        for (long i = colour; i < M; i += 3) {
          const long idx = n_ * i + c;
          step[i] = 1e-7 * (1.0 + std::abs(z[idx]));
          zp[idx] += step[i];
        }
        const Eigen::VectorXd rp = residual(zp, eps);
        for (long i = colour; i < M; i += 3) {
          for (long row = std::max<long>(0, i - 1); row <= std::min(M - 1, i + 1); ++row)
            for (int rc = 0; rc < n_; ++rc) {
              const long ri = n_ * row + rc;
              const double val = (rp[ri] - r0[ri]) / step[i];
              if (val != 0.0) trip.emplace_back(ri, n_ * i + c, val);
            }
        }
      }
    }
    Eigen::SparseMatrix<double> jac(unknowns(), unknowns());
    jac.setFromTriplets(trip.begin(), trip.end());
    return jac;
  }

 private:
  const HyperbolicSystem& sys_;
  const std::vector<double>& xi_;
  State ud_, u0_;
  int n_;
  long N_;
  double h_;
};

struct StageResult {
  bool ok = false;
  int iterations = 0;
  double residual = 0;
};

StageResult newton_stage(const SelfSimilarProblem& p, Eigen::VectorXd& z, double eps, const GridConfig& cfg) {
  StageResult sr;
  Eigen::VectorXd r = p.residual(z, eps);
  double rn = r.norm();
  for (int it = 0; it <= cfg.newton_max_iter; ++it) {
    sr.iterations = it;
    sr.residual = r.lpNorm<Eigen::Infinity>();
    if (!(sr.residual == sr.residual)) return sr;
    if (sr.residual <= cfg.newton_tol) {
      sr.ok = true;
      return sr;
    }
    if (it == cfg.newton_max_iter) break;
    Eigen::SparseMatrix<double> jac = p.jacobian(z, r, eps);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success) return sr;
    const Eigen::VectorXd dz = lu.solve(-r);
    if (lu.info() != Eigen::Success || !dz.allFinite()) return sr;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 25; ++ls, alpha *= 0.5) {
      const Eigen::VectorXd zn = z + alpha * dz;
      const Eigen::VectorXd rn_vec = p.residual(zn, eps);
      const double nn = rn_vec.norm();
      if (std::isfinite(nn) && nn < (1.0 - 1e-4 * alpha) * rn) {
        z = zn;
        r = rn_vec;
        rn = nn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // stagnation at rounding level counts as converged
      sr.residual = r.lpNorm<Eigen::Infinity>();
      sr.ok = sr.residual <= 100 * cfg.newton_tol;
      return sr;
    }
  }
  return sr;
}

GridSolution solve_bvp(const HyperbolicSystem& sys, const State& u0, const State& ud, double eps, const GridConfig& cfg) {
  if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
  if (u0.size() != sys.dim() || ud.size() != sys.dim()) fail(ErrorKind::InvalidArgument, "data dimension mismatch");
  const SpeedBounds sb = speed_bounds(sys, u0, ud, cfg.riemann.waves.spectral);
  double Xi = cfg.xi_max;
  if (Xi <= 0) Xi = sb.max + cfg.margin + 0.1 + 8.0 * std::sqrt(eps * sb.b_norm);
  const long N = std::max<long>(16, static_cast<long>(std::ceil(Xi / (cfg.h_per_eps * eps))));
  const double h = Xi / N;
  const int n = sys.dim();

  GridSolution sol;
  sol.kind = GridSolution::Kind::SelfSimilar;
  sol.epsilon = eps;
  sol.config = cfg;
  sol.dx = h;
  sol.length = Xi;
  sol.x.resize(N + 1);
  for (long j = 0; j <= N; ++j) sol.x[j] = j * h;

  SelfSimilarProblem prob(sys, sol.x, ud, u0);
  Eigen::VectorXd z(prob.unknowns());
  for (long j = 1; j < N; ++j) z.segment(n * (j - 1), n) = u0 + (ud - u0) * (1.0 - sol.x[j] / Xi);

  double good = 0;  // last converged eps
  double e = std::max(eps, cfg.eps0);
  double ratio = 2.0;
  int refine = 0;
  Eigen::VectorXd z_good = z;
  while (true) {
    Eigen::VectorXd trial = z_good;
    const StageResult sr = newton_stage(prob, trial, e, cfg);
    sol.newton_iterations += sr.iterations;
    if (sr.ok) {
      good = e;
      z_good = trial;
      sol.eps_stages.push_back(e);
      sol.newton_residual = sr.residual;
      if (e == eps) break;
      e = std::max(eps, e / ratio);
      continue;
    }
    if (good == 0 || ++refine > cfg.refinements)
      fail(ErrorKind::NewtonDiverged, "self-similar BVP failed at eps = " + std::to_string(e) +
                                          "; last converged eps = " + (good > 0 ? std::to_string(good) : "none"));
    ratio = ratio > 1.3 ? 1.3 : std::sqrt(ratio);
    e = std::max(eps, good / ratio);
  }
  std::vector<State> v(N + 1);
  for (long j = 0; j <= N; ++j) v[j] = prob.node(z_good, j);
  check_finite(v, "self-similar BVP");
  sol.tv.push_back(total_variation(v));
  sol.U.push_back(std::move(v));
  return sol;
}

}  // namespace

State Slice::at(double xq) const {
  if (x.empty()) fail(ErrorKind::InvalidArgument, "empty slice");
  if (xq <= x.front()) return U.front();
  if (xq >= x.back()) return U.back();
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double w = (xq - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - w) * U[j - 1] + w * U[j];
}

Slice GridSolution::slice(std::size_t i) const {
  if (i >= U.size()) fail(ErrorKind::OutOfRange, "no such slice");
  return Slice{x, U[i]};
}

Slice GridSolution::final_slice() const { return slice(U.size() - 1); }

Slice GridSolution::at_time(double T) const {
  if (kind == Kind::SelfSimilar) {
    Slice s{x, U.front()};
    for (double& v : s.x) v *= T;
    return s;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs(t[i] - T) < std::abs(t[best] - T)) best = i;
  return slice(best);
}

GridSolution simulate_classical(const HyperbolicSystem& sys, const State& u0, const State& ud, double eps,
                                const GridConfig& cfg) {
  return march(sys, u0, ud, eps, cfg, false);
}

GridSolution simulate_selfsimilar(const HyperbolicSystem& sys, const State& u0, const State& ud, double eps,
                                  const GridConfig& cfg) {
  if (cfg.time_march) return march(sys, u0, ud, eps, cfg, true);
  return solve_bvp(sys, u0, ud, eps, cfg);
}

double l1_distance(const Slice& a, const Slice& b, double lo, double hi) {
  if (a.x.size() < 2 || b.x.size() < 2) fail(ErrorKind::WindowMismatch, "slice has fewer than two nodes");
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (a.x.front() > lo + slack || b.x.front() > lo + slack || a.x.back() < hi - slack || b.x.back() < hi - slack)
    fail(ErrorKind::WindowMismatch, "slices do not cover the window");
  const Slice& fine = (a.x.size() - 1) / (a.x.back() - a.x.front()) >= (b.x.size() - 1) / (b.x.back() - b.x.front()) ? a : b;
  std::vector<double> pts{lo};
  for (double v : fine.x)
    if (v > lo && v < hi) pts.push_back(v);
  pts.push_back(hi);
  double s = 0;
  double prev = (a.at(pts[0]) - b.at(pts[0])).norm();
  for (std::size_t j = 1; j < pts.size(); ++j) {
    const double cur = (a.at(pts[j]) - b.at(pts[j])).norm();
    s += 0.5 * (pts[j] - pts[j - 1]) * (prev + cur);
    prev = cur;
  }
  return s;
}

Slice fan_slice(const WaveFan& fan, const std::vector<double>& x, double T) {
  Slice s;
  s.x = x;
  s.U.reserve(x.size());
  for (double v : x) s.U.push_back(v <= 0 && fan.boundary ? fan.trace : evaluate(fan, v / T));
  return s;
}

ComparisonTable compare_limits(const HyperbolicSystem& sys, const State& u0, const State& ud,
                               const std::vector<double>& eps_list, const GridConfig& cfg) {
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1])) fail(ErrorKind::InvalidArgument, "eps list must be decreasing");
  const SpeedBounds sb = speed_bounds(sys, u0, ud, cfg.riemann.waves.spectral);
  ComparisonTable table;
  table.T = cfg.T;
  table.window = (sb.max + cfg.margin) * cfg.T;
  const WaveFan fan = solve_boundary_riemann(sys, u0, ud, cfg.riemann);

  auto row_for = [&](double eps) {
    ComparisonRow row;
    row.epsilon = eps;
    try {
      const GridSolution cls = simulate_classical(sys, u0, ud, eps, cfg);
      const GridSolution ss = simulate_selfsimilar(sys, u0, ud, eps, cfg);
      const Slice u = cls.at_time(cfg.T);
      const Slice z = ss.at_time(cfg.T);
      row.d_UZ = l1_distance(u, z, 0.0, table.window);
      row.d_Ufan = l1_distance(u, fan_slice(fan, u.x, cfg.T), 0.0, table.window);
      row.d_Zfan = l1_distance(z, fan_slice(fan, z.x, cfg.T), 0.0, table.window);
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
      row.d_UZ = row.d_Ufan = row.d_Zfan = kNaN;
    }
    return row;
  };

  if (cfg.threads > 1) {
    std::vector<std::future<ComparisonRow>> jobs;
    for (double e : eps_list) jobs.push_back(std::async(std::launch::async, row_for, e));
    for (auto& j : jobs) table.rows.push_back(j.get());
  } else {
    for (double e : eps_list) table.rows.push_back(row_for(e));
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto& r = table.rows[i];
    r.p_hat = kNaN;
    if (i > 0 && r.ok && table.rows[i - 1].ok && r.d_UZ > 0 && table.rows[i - 1].d_UZ > 0)
      r.p_hat = std::log(table.rows[i - 1].d_UZ / r.d_UZ) / std::log(table.rows[i - 1].epsilon / r.epsilon);
  }
  return table;
}

BDependence viscosity_dependence_experiment(const HyperbolicSystem& sys, const State& u0, const State& ud,
                                            const Matrix& b1, const Matrix& b2, double eps, const GridConfig& cfg) {
  const HyperbolicSystem s1 = sys.with_constant_viscosity(b1);
  const HyperbolicSystem s2 = sys.with_constant_viscosity(b2);
  if (sys.has_entropy()) {
    for (const HyperbolicSystem* s : {&s1, &s2}) {
      const HypothesisReport rep = check_hypotheses(*s, SamplingPlan{3, 20, 1});
      if (!rep.dissipative_ok) fail(ErrorKind::InvalidArgument, "viscosity matrix fails the dissipativity hypothesis");
    }
  }
  BDependence out;
  out.xi = std::sqrt(eps);
  const GridSolution v1 = simulate_selfsimilar(s1, u0, ud, eps, cfg);
  const GridSolution v2 = simulate_selfsimilar(s2, u0, ud, eps, cfg);
  const double T = cfg.T;
  const double pos = v1.kind == GridSolution::Kind::SelfSimilar ? out.xi : out.xi * T;
  out.trace_1 = v1.at_time(v1.kind == GridSolution::Kind::SelfSimilar ? 1.0 : T).at(pos);
  out.trace_2 = v2.at_time(v2.kind == GridSolution::Kind::SelfSimilar ? 1.0 : T).at(pos);
  out.gap = (out.trace_1 - out.trace_2).norm();
  return out;
}

void write_slice_csv(std::ostream& os, const Slice& s, const std::string& xname) {
  const auto old = os.precision(17);
  os << xname;
  const Eigen::Index n = s.U.empty() ? 0 : s.U.front().size();
  for (Eigen::Index i = 0; i < n; ++i) os << ",U" << i;
  os << '\n';
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    os << s.x[j];
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << s.U[j][i];
    os << '\n';
  }
  os.precision(old);
}

void write_solution_csv(std::ostream& os, const GridSolution& sol) {
  const auto old = os.precision(17);
  const Eigen::Index n = sol.U.empty() ? 0 : sol.U.front().front().size();
  const bool ss = sol.kind == GridSolution::Kind::SelfSimilar;
  os << (ss ? "xi" : "t,x");
  for (Eigen::Index i = 0; i < n; ++i) os << (ss ? ",V" : ",U") << i;
  os << '\n';
  for (std::size_t s = 0; s < sol.U.size(); ++s)
    for (std::size_t j = 0; j < sol.x.size(); ++j) {
      if (!ss) os << sol.t[s] << ',';
      os << sol.x[j];
      for (Eigen::Index i = 0; i < n; ++i) os << ',' << sol.U[s][j][i];
      os << '\n';
    }
  os.precision(old);
}

void write_comparison_csv(std::ostream& os, const ComparisonTable& table) {
  const auto old = os.precision(17);
  os << "epsilon,d_UZ,d_Ufan,d_Zfan,p_hat,ok\n";
  for (const auto& r : table.rows)
    os << r.epsilon << ',' << r.d_UZ << ',' << r.d_Ufan << ',' << r.d_Zfan << ',' << r.p_hat << ',' << (r.ok ? 1 : 0)
       << '\n';
  os.precision(old);
}

}  // namespace brp
