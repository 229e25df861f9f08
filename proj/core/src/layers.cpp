#include <brp/error.hpp>
#include <brp/layers.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

namespace brp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VectorField layer_rhs(const HyperbolicSystem& sys, const State& e, double sign) {
  const State fe = sys.flux(e);
  return [&sys, fe, sign](const State& w) -> State {
    const State rhs = sys.flux(w) - fe;
    if (w.size() == 1) return State::Constant(1, sign * rhs[0] / sys.viscosity(w)(0, 0));
    return sign * sys.viscosity(w).partialPivLu().solve(rhs);
  };
}

std::vector<double> uniform_grid(double y_max, int nodes) {
  nodes = std::max(nodes, 2);
  std::vector<double> y(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) y[static_cast<std::size_t>(j)] = y_max * j / (nodes - 1);
  y.back() = y_max;
  return y;
}

// Max over consecutive nodes of |Phi_{dy}(W_j) - W_{j+1}| under a tight forward integration.
double transport_defect(const VectorField& g, const std::vector<double>& y, const std::vector<State>& w,
                        const LayerOptions& opt) {
  double worst = 0;
  ode::Options tight = opt.ode;
  for (std::size_t j = 0; j + 1 < y.size(); ++j) {
    const double dy = y[j + 1] - y[j];
    tight.dt0 = std::min(opt.ode.dt0, dy);
    const ode::Result r = ode::integrate(g, w[j], dy, tight);
    worst = std::max(worst, r.stop == ode::Stop::End ? (r.y - w[j + 1]).norm() : kInf);
  }
  return worst;
}

double algebraic_defect(const HyperbolicSystem& sys, const State& e, const std::vector<double>& y,
                        const std::vector<State>& w) {
  const State fe = sys.flux(e);
  double worst = 0;
  for (std::size_t j = 1; j + 1 < y.size(); ++j) {
    const State dw = (w[j + 1] - w[j - 1]) / (y[j + 1] - y[j - 1]);
    worst = std::max(worst, (sys.viscosity(w[j]) * dw - sys.flux(w[j]) + fe).norm());
  }
  return worst;
}

void finish_profile(const HyperbolicSystem& sys, BoundaryLayerProfile& p, const LayerOptions& opt) {
  const VectorField g = layer_rhs(sys, p.equilibrium, 1.0);
  p.residual = transport_defect(g, p.y, p.W, opt);
  p.algebraic_residual = algebraic_defect(sys, p.equilibrium, p.y, p.W);
  p.tail_error = (p.W.back() - p.equilibrium).norm();
  std::vector<double> norms(p.W.size());
  for (std::size_t j = 0; j < p.W.size(); ++j) norms[j] = (p.W[j] - p.equilibrium).norm();
  const DecayFit fit = fit_decay(p.y, norms, 1e-13 * (1.0 + p.equilibrium.norm()));
  p.decay_rate = fit.rate;
}

BoundaryLayerProfile shoot_forward(const HyperbolicSystem& sys, const State& e, const State& ud,
                                   const LayerOptions& opt, int stable_dim) {
  const VectorField g = layer_rhs(sys, e, 1.0);
  const double target = 0.1 * opt.tol_tail;
  bool stalled = false;
  ode::Hooks hooks;
  hooks.guard = [&](const State& w) { return w.allFinite() && sys.region().contains(w, 1e-9); };
  hooks.done = [&](double, const State& w) {
    const double d = (w - e).norm();
    if (d <= target) return true;
    if (d > 10 * opt.tol_tail && g(w).norm() <= 1e-15 * (1.0 + d)) {
      stalled = true;
      return true;
    }
    return false;
  };
  const ode::Result r = ode::integrate(g, ud, opt.y_cap, opt.ode, hooks);
  if (r.stop != ode::Stop::Done || stalled)
    fail(ErrorKind::NoConnection, "layer orbit from " + format_state(ud) + " does not converge to " + format_state(e));
  BoundaryLayerProfile p;
  p.equilibrium = e;
  p.boundary_value = ud;
  p.stable_dim = stable_dim;
  p.y = uniform_grid(r.t, opt.output_nodes);
  ode::Hooks samp;
  samp.sample_times = &p.y;
  samp.samples = &p.W;
  ode::integrate(g, ud, r.t, opt.ode, samp);
  while (p.W.size() < p.y.size()) p.W.push_back(r.y);
  p.W.resize(p.y.size());
  p.W.front() = ud;
  finish_profile(sys, p, opt);
  return p;
}

struct BackwardHit {
  bool found = false;
  double z = 0;
  State w;
};

// Backward orbit from seed, stopped where it crosses the sphere through U_D.
BackwardHit backward_to_sphere(const HyperbolicSystem& sys, const State& e, const State& seed, const State& ud,
                               const LayerOptions& opt) {
  const VectorField gb = layer_rhs(sys, e, -1.0);
  const double radius = (ud - e).norm();
  ode::Hooks hooks;
  hooks.event = [&](const State& w) { return (w - e).norm() - radius; };
  hooks.guard = [&](const State& w) { return w.allFinite() && sys.region().contains(w, 1e-9); };
  const ode::Result r = ode::integrate(gb, seed, opt.y_cap, opt.ode, hooks);
  BackwardHit h;
  if (r.stop == ode::Stop::Event) {
    h.found = true;
    h.z = r.t;
    h.w = r.y;
  } else if (r.stop == ode::Stop::Guard) {
    h.w = r.y;
  }
  return h;
}

ode::Result backward_for(const HyperbolicSystem& sys, const State& e, const State& seed, double z,
                         const LayerOptions& opt) {
  const VectorField gb = layer_rhs(sys, e, -1.0);
  ode::Hooks hooks;
  hooks.guard = [&](const State& w) { return w.allFinite() && sys.region().contains(w, 1e-9); };
  return ode::integrate(gb, seed, z, opt.ode, hooks);
}

State sphere_point(const Eigen::VectorXd& theta) {
  const Eigen::Index m = theta.size() + 1;
  State c(m);
  double prod = 1;
  for (Eigen::Index i = 0; i < m - 1; ++i) {
    c[i] = prod * std::cos(theta[i]);
    prod *= std::sin(theta[i]);
  }
  c[m - 1] = prod;
  return c;
}

Eigen::VectorXd sphere_angles(const State& c) {
  const Eigen::Index m = c.size();
  Eigen::VectorXd th(m - 1);
  for (Eigen::Index i = 0; i < m - 1; ++i) {
    const double tail = c.tail(m - i).norm();
    th[i] = tail > 0 ? std::acos(std::clamp(c[i] / tail, -1.0, 1.0)) : 0.0;
    if (i == m - 2 && c[m - 1] < 0) th[i] = -th[i];
  }
  return th;
}

BoundaryLayerProfile shoot_backward(const HyperbolicSystem& sys, const State& e, const State& ud,
                                    const LayerSpectrum& sp, const LayerOptions& opt) {
  const int n = sys.dim();
  const int m = sp.stable;
  if (m == 0) fail(ErrorKind::NoConnection, "equilibrium " + format_state(e) + " has no stable directions");
  const Matrix S = sp.basis.leftCols(m);
  const double dist = (ud - e).norm();
  const double eps = std::min(opt.eps_seed, 0.5 * dist);
  const double accept = 0.1 * opt.tol_layer;

  State seed_dir;
  double Y = 0;
  double best = kInf;

  if (m == 1) {
    const State v = S.col(0).normalized();
    for (double sign : {1.0, -1.0}) {
      const BackwardHit h = backward_to_sphere(sys, e, e + sign * eps * v, ud, opt);
      if (!h.found) continue;
      const double d = (h.w - ud).norm();
      if (d < best) {
        best = d;
        seed_dir = sign * v;
        Y = h.z;
      }
    }
  } else {
    const Eigen::VectorXd a = sp.coords.topRows(m) * (ud - e);
    double slow = kInf;
    for (int j = 0; j < m; ++j) slow = std::min(slow, std::abs(sp.rates[j]));
    const double y0 = std::log(std::max(dist / eps, 1.0 + 1e-12)) / slow;
    State c0(m);
    for (int j = 0; j < m; ++j) c0[j] = a[j] * std::exp(sp.rates[j] * y0);
    if (c0.norm() == 0) c0.setOnes();
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd(0.0, 0.3);
    auto residual = [&](const Eigen::VectorXd& x, bool& ok) -> State {
      const State c = sphere_point(x.head(m - 1));
      const ode::Result r = backward_for(sys, e, e + eps * (S * c), std::max(x[m - 1], 0.0), opt);
      ok = r.stop == ode::Stop::End;
      return r.y - ud;
    };
    for (int attempt = 0; attempt <= opt.restarts && best > accept; ++attempt) {
      Eigen::VectorXd x(m);
      x.head(m - 1) = sphere_angles(c0.normalized());
      x[m - 1] = y0;
      if (attempt > 0)
        for (int i = 0; i < m; ++i) x[i] += nd(rng) * (i == m - 1 ? std::max(1.0, y0) : 1.0);
      bool ok = false;
      State r = residual(x, ok);
      if (!ok) continue;
      double mu = 1e-3;
      for (int it = 0; it < opt.newton_max_iter && r.norm() > accept; ++it) {
        Matrix jac(n, m);
        for (int i = 0; i < m; ++i) {
          Eigen::VectorXd xp = x;
          const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
          xp[i] += h;
          bool okp = false;
          jac.col(i) = (residual(xp, okp) - r) / h;
          if (!okp) jac.col(i).setZero();
        }
        bool improved = false;
        for (int ls = 0; ls < 12 && !improved; ++ls) {
          const Matrix A = jac.transpose() * jac + mu * Matrix::Identity(m, m);
          const Eigen::VectorXd dx = A.ldlt().solve(-jac.transpose() * r);
          Eigen::VectorXd xn = x + dx;
          bool okn = false;
          const State rn = residual(xn, okn);
          if (okn && rn.norm() < r.norm()) {
            x = xn;
            r = rn;
            mu = std::max(mu * 0.3, 1e-12);
            improved = true;
          } else {
            mu *= 10;
          }
        }
        if (!improved) break;
      }
      if (r.norm() < best) {
        best = r.norm();
        seed_dir = S * sphere_point(x.head(m - 1));
        Y = std::max(x[m - 1], 0.0);
      }
    }
  }
  if (!(best <= accept))
    fail(ErrorKind::NoConnection, format_state(ud) + " is not on the stable manifold of " + format_state(e));

  const State seed = e + eps * seed_dir;
  double slow = kInf;
  for (int j = 0; j < m; ++j) slow = std::min(slow, std::abs(sp.rates[j]));
  const double y_tail = eps > 0.1 * opt.tol_tail ? std::log(eps / (0.1 * opt.tol_tail)) / slow : 0.0;

  BoundaryLayerProfile p;
  p.equilibrium = e;
  p.boundary_value = ud;
  p.stable_dim = m;
  p.shot_backward = true;
  p.y = uniform_grid(Y + y_tail, opt.output_nodes);
  p.W.resize(p.y.size());
  std::vector<double> z;
  std::vector<std::size_t> idx;
  for (std::size_t j = p.y.size(); j-- > 0;) {
    if (p.y[j] <= Y) {
      z.push_back(Y - p.y[j]);
      idx.push_back(j);
    }
  }
  std::vector<State> back;
  ode::Hooks samp;
  samp.sample_times = &z;
  samp.samples = &back;
  const ode::Result r = ode::integrate(layer_rhs(sys, e, -1.0), seed, Y, opt.ode, samp);
  while (back.size() < z.size()) back.push_back(r.y);
  for (std::size_t i = 0; i < idx.size(); ++i) p.W[idx[i]] = back[i];
  for (std::size_t j = 0; j < p.y.size(); ++j)
    if (p.y[j] > Y) p.W[j] = e + (sp.J * (p.y[j] - Y)).exp() * (seed - e);
  p.W.front() = ud;
  finish_profile(sys, p, opt);
  return p;
}

}  // namespace

LayerSpectrum layer_spectrum(const HyperbolicSystem& sys, const State& equilibrium, const SpectralOptions& opt) {
  const int n = sys.dim();
  const Matrix b = sys.viscosity(equilibrium);
  Eigen::FullPivLU<Matrix> lu(b);
  if (!lu.isInvertible()) fail(ErrorKind::NearSingular, "viscosity matrix is singular at the equilibrium");
  LayerSpectrum sp;
  sp.J = lu.solve(sys.jacobian(equilibrium));
  Eigen::EigenSolver<Matrix> es(sp.J);
  if (es.info() != Eigen::Success) fail(ErrorKind::NonHyperbolic, "eigensolver failed on the layer matrix");
  const Eigen::VectorXcd ev = es.eigenvalues();
  const Eigen::MatrixXcd vecs = es.eigenvectors();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    if (ev[a].real() != ev[c].real()) return ev[a].real() < ev[c].real();
    return ev[a].imag() > ev[c].imag();
  });
  sp.rates.resize(n);
  sp.basis.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const int o = order[static_cast<std::size_t>(j)];
    sp.rates[j] = ev[o].real();
    const double im = ev[o].imag();
    if (im > 1e-14 * (1.0 + std::abs(ev[o]))) {
      sp.basis.col(j) = vecs.col(o).real();
    } else if (im < -1e-14 * (1.0 + std::abs(ev[o]))) {
      sp.basis.col(j) = vecs.col(o).imag();
    } else {
      sp.basis.col(j) = vecs.col(o).real();
    }
    const double nn = sp.basis.col(j).norm();
    if (nn > 0) sp.basis.col(j) /= nn;
    int big = 0;
    sp.basis.col(j).cwiseAbs().maxCoeff(&big);
    if (sp.basis(big, j) < 0) sp.basis.col(j) *= -1.0;
    if (sp.rates[j] < -opt.tol_eig) {
      ++sp.stable;
    } else if (sp.rates[j] > opt.tol_eig) {
      ++sp.unstable;
    } else {
      ++sp.centre;
    }
  }
  Eigen::FullPivLU<Matrix> blu(sp.basis);
  if (!blu.isInvertible()) fail(ErrorKind::NearSingular, "layer matrix is not diagonalizable");
  sp.coords = blu.inverse();
  return sp;
}

StableSubspace stable_subspace(const HyperbolicSystem& sys, const State& equilibrium, const SpectralOptions& opt,
                               bool allow_centre) {
  const LayerSpectrum sp = layer_spectrum(sys, equilibrium, opt);
  if (sp.centre > 0 && !allow_centre)
    fail(ErrorKind::NearSingular, "layer matrix has an eigenvalue with |Re| <= tol_eig");
  StableSubspace s;
  s.dim = sp.stable;
  s.rates = sp.rates.head(sp.stable);
  if (s.dim > 0) {
    Eigen::HouseholderQR<Matrix> qr(sp.basis.leftCols(s.dim));
    s.basis = qr.householderQ() * Matrix::Identity(sys.dim(), s.dim);
    for (int j = 0; j < s.dim; ++j)
      if (s.basis.col(j).dot(sp.basis.col(j)) < 0) s.basis.col(j) *= -1.0;
  } else {
    s.basis.resize(sys.dim(), 0);
  }
  return s;
}

BoundaryLayerProfile shoot_layer(const HyperbolicSystem& sys, const State& equilibrium, const State& boundary_value,
                                 const LayerOptions& opt) {
  if (equilibrium.size() != sys.dim() || boundary_value.size() != sys.dim())
    fail(ErrorKind::InvalidArgument, "layer states have the wrong dimension");
  if (!sys.region().contains(equilibrium, 1e-12) || !sys.region().contains(boundary_value, 1e-12))
    fail(ErrorKind::LeftRegion, "layer states outside the region");
  const LayerSpectrum sp = layer_spectrum(sys, equilibrium, opt.spectral);
  if ((boundary_value - equilibrium).norm() <= 1e-14 * (1.0 + equilibrium.norm())) {
    BoundaryLayerProfile p;
    p.equilibrium = equilibrium;
    p.boundary_value = boundary_value;
    p.stable_dim = sp.stable;
    p.y = {0.0};
    p.W = {boundary_value};
    p.decay_rate = sp.stable ? -sp.rates[sp.stable - 1] : 0.0;
    return p;
  }
  if (sp.unstable == 0) return shoot_forward(sys, equilibrium, boundary_value, opt, sp.stable);
  return shoot_backward(sys, equilibrium, boundary_value, sp, opt);
}

State layer_map_phi(const HyperbolicSystem& sys, const State& equilibrium, const Eigen::VectorXd& coords,
                    const LayerOptions& opt) {
  const LayerSpectrum sp = layer_spectrum(sys, equilibrium, opt.spectral);
  const int m = sp.stable;
  if (coords.size() != m) fail(ErrorKind::InvalidArgument, "layer_map_phi needs one coordinate per stable direction");
  if (m == 0 || coords.norm() == 0) return equilibrium;
  const Matrix S = sp.basis.leftCols(m);
  const Matrix L = sp.coords.topRows(m);
  auto check = [&](const State& w) {
    if (!w.allFinite() || !sys.region().contains(w, 1e-12)) fail(ErrorKind::LeftRegion, "layer chart left the region");
    return w;
  };
  if (sp.unstable == 0 && sp.centre == 0) return check(equilibrium + S * coords);
  double slow = kInf;
  for (int j = 0; j < m; ++j) slow = std::min(slow, std::abs(sp.rates[j]));
  const double T = std::log(1.0 / opt.eps_seed) / slow;
  const Matrix Js = L * sp.J * S;
  Eigen::VectorXd c = (Js * T).exp() * coords;
  auto image = [&](const Eigen::VectorXd& cc) {
    const ode::Result r = backward_for(sys, equilibrium, equilibrium + S * cc, T, opt);
    if (r.stop != ode::Stop::End) fail(ErrorKind::LeftRegion, "layer chart left the region");
    return r.y;
  };
  State w = image(c);
  for (int it = 0; it < opt.newton_max_iter; ++it) {
    const Eigen::VectorXd res = L * (w - equilibrium) - coords;
    if (res.norm() <= 1e-14 * (1.0 + coords.norm())) break;
    Matrix jac(m, m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd cp = c;
      const double h = 1e-7 * std::max(c.norm(), 1e-300);
      cp[i] += h;
      jac.col(i) = (L * (image(cp) - equilibrium) - L * (w - equilibrium)) / h;
    }
    const Eigen::VectorXd dc = jac.partialPivLu().solve(-res);
    if (!dc.allFinite()) break;
    c += dc;
    w = image(c);
  }
  return check(w);
}

DecayFit fit_decay(const std::vector<double>& y, const std::vector<double>& norms, double floor) {
  DecayFit fit;
  std::vector<std::size_t> above;
  for (std::size_t j = 0; j < y.size(); ++j)
    if (norms[j] > floor && std::isfinite(norms[j])) above.push_back(j);
  if (above.size() < 3) {
    fit.rate = kInf;
    fit.C = 0;
    for (double v : norms) fit.C = std::max(fit.C, v);
    fit.used = above.size();
    return fit;
  }
  const std::size_t start = above.size() / 2;
  const std::size_t cnt = above.size() - start;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = start; i < above.size(); ++i) {
    const double xv = y[above[i]], yv = std::log(norms[above[i]]);
    sx += xv;
    sy += yv;
    sxx += xv * xv;
    sxy += xv * yv;
    syy += yv * yv;
  }
  const double nn = static_cast<double>(cnt);
  const double vx = sxx - sx * sx / nn, vy = syy - sy * sy / nn, cxy = sxy - sx * sy / nn;
  const double slope = vx > 0 ? cxy / vx : 0.0;
  fit.rate = -slope;
  fit.r2 = (vx > 0 && vy > 0) ? cxy * cxy / (vx * vy) : 1.0;
  fit.used = cnt;
  // smallest C with |x(y)| <= C e^{-rate y} at every sample above the floor
  double logc = -kInf;
  for (std::size_t j : above) logc = std::max(logc, std::log(norms[j]) + fit.rate * y[j]);
  fit.C = std::exp(logc);
  return fit;
}

LayerDecomposition decompose_layer(const HyperbolicSystem& sys, const BoundaryLayerProfile& profile,
                                   const State& usharp, int k, const LayerOptions& opt) {
  const int n = sys.dim();
  if (k < 1 || k > n) fail(ErrorKind::InvalidArgument, "family must be in 1..n");
  if (profile.W.empty()) fail(ErrorKind::InvalidArgument, "empty layer profile");
  const State& e = profile.equilibrium;
  const LayerSpectrum sp = layer_spectrum(sys, e, opt.spectral);
  const std::size_t M = profile.y.size();

  // slow mode: the one along r_k(U#)
  const State rk = eigenpair(sys, usharp, k - 1, nullptr, opt.spectral).r;
  int ic = 0;
  double best = -1;
  for (int j = 0; j < n; ++j) {
    const double c = std::abs(sp.basis.col(j).normalized().dot(rk));
    if (c > best + 1e-12) {
      best = c;
      ic = j;
    }
  }

  const State w0 = profile.W.front();
  const double scale = (w0 - e).norm();
  for (int j = 0; j < n; ++j) {
    if (j == ic || sp.rates[j] <= opt.spectral.tol_eig) continue;
    if (std::abs(sp.coords.row(j).dot(w0 - e)) > 1e-12 * (1.0 + scale))
      fail(ErrorKind::Unsupported, "layer has a component along an unstable direction");
  }

  LayerDecomposition d;
  d.y = profile.y;
  d.U_k.assign(M, e);
  d.U_s.assign(M, State::Zero(n));
  d.U_p.assign(M, State::Zero(n));

  auto slow_coord = [&](const State& w) { return sp.coords.row(ic).dot(w - e); };
  double fast = kInf;
  for (int j = 0; j < n; ++j)
    if (j != ic) fast = std::min(fast, std::abs(sp.rates[j]));
  const bool has_fast = std::isfinite(fast);
  const double t_tr = has_fast ? 12.0 / fast : 0.0;

  const double xi0 = slow_coord(w0);
  const bool slow_active = std::abs(xi0) > 1e-13 * (1.0 + scale) && sp.rates[ic] <= opt.spectral.tol_eig && M > 1;
  if (slow_active) {
    const VectorField g = layer_rhs(sys, e, 1.0);
    const double y_end = profile.y.back();
    const double y_goal = has_fast ? std::min(0.5 * y_end, 40.0 / fast) : 0.0;
    std::size_t jr = 0;
    while (jr + 1 < M && profile.y[jr] < y_goal) ++jr;
    while (jr > 0 && std::abs(slow_coord(profile.W[jr])) <= 1e-9 * std::abs(xi0)) --jr;
    const double y_ref = profile.y[jr];
    const double xi_ref = slow_coord(profile.W[jr]);
    const double xi_dot = sp.coords.row(ic).dot(g(profile.W[jr]));
    const State rc = sp.basis.col(ic);
    ode::Hooks hooks;
    hooks.event = [&](const State& w) { return slow_coord(w) - xi_ref; };
    hooks.guard = [&](const State& w) { return w.allFinite() && sys.region().contains(w, 1e-9); };
    double extra = y_ref + 2 * t_tr + 1.0;
    double t_star = -1;
    State p0;
    for (int attempt = 0; attempt < 40; ++attempt, extra *= 1.6) {
      double xs = xi_ref - extra * xi_dot;
      if (std::abs(xs) < std::abs(xi_ref)) xs = xi_ref * (1.0 + 1e-3 * (attempt + 1));
      p0 = e + xs * rc;
      if (!sys.region().contains(p0, 1e-12)) break;
      const ode::Result r = ode::integrate(g, p0, opt.y_cap, opt.ode, hooks);
      if (r.stop != ode::Stop::Event) continue;
      if (r.t - y_ref >= t_tr) {
        t_star = r.t - y_ref;
        break;
      }
    }
    if (t_star < 0) fail(ErrorKind::PoorFit, "could not place the slow orbit of the layer");
    std::vector<double> times(M);
    for (std::size_t j = 0; j < M; ++j) times[j] = t_star + profile.y[j];
    std::vector<State> z;
    ode::Hooks samp;
    samp.sample_times = &times;
    samp.samples = &z;
    const ode::Result r = ode::integrate(g, p0, times.back(), opt.ode, samp);
    while (z.size() < M) z.push_back(r.y);
    d.U_k = std::move(z);
  }

  // fast part: linear modes of the equilibrium matched at y = 0
  Matrix mask = Matrix::Identity(n, n);
  mask(ic, ic) = 0.0;
  const Matrix Pf = sp.basis * mask * sp.coords;
  const State a = Pf * (w0 - d.U_k.front());
  if (a.norm() > 0) {
    for (std::size_t j = 0; j < M; ++j) d.U_s[j] = (sp.J * profile.y[j]).exp() * a;
  }
  for (std::size_t j = 0; j < M; ++j) d.U_p[j] = profile.W[j] - d.U_k[j] - d.U_s[j];

  std::vector<double> ns(M), np(M);
  for (std::size_t j = 0; j < M; ++j) {
    ns[j] = d.U_s[j].norm();
    np[j] = d.U_p[j].norm();
    d.max_s = std::max(d.max_s, ns[j]);
    d.max_p = std::max(d.max_p, np[j]);
  }
  const double floor_s = 1e-13 * (1.0 + e.norm());
  const double floor_p = std::max(1e-10 * (1.0 + e.norm()), 1e-6 * d.max_p);
  const DecayFit fs = fit_decay(d.y, ns, floor_s);
  const DecayFit fp = fit_decay(d.y, np, floor_p);
  d.rate_s = fs.rate;
  d.C1 = fs.C;
  d.r2_s = fs.r2;
  d.rate_p = fp.rate;
  d.C2 = fp.C;
  d.r2_p = fp.r2;
  if ((fs.used >= 3 && fs.r2 < 0.9) || (fp.used >= 3 && fp.r2 < 0.9))
    fail(ErrorKind::PoorFit, "decay regression has R^2 below 0.9");
  return d;
}

void write_layer_csv(std::ostream& os, const BoundaryLayerProfile& profile, const LayerDecomposition* dec) {
  const auto old = os.precision(17);
  const Eigen::Index n = profile.equilibrium.size();
  os << "y";
  for (Eigen::Index i = 0; i < n; ++i) os << ",W" << i;
  if (dec) os << ",norm_Uk,norm_Us,norm_Up";
  os << '\n';
  for (std::size_t j = 0; j < profile.y.size(); ++j) {
    os << profile.y[j];
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << profile.W[j][i];
    if (dec) os << ',' << dec->U_k[j].norm() << ',' << dec->U_s[j].norm() << ',' << dec->U_p[j].norm();
    os << '\n';
  }
  os.precision(old);
}

}  // namespace brp
