#include <brp/error.hpp>
#include <brp/ode.hpp>
#include <brp/waves.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace brp {

const char* to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::Shock: return "shock";
    case WaveKind::ContactDiscontinuity: return "contact";
    case WaveKind::Rarefaction: return "rarefaction";
  }
  return "?";
}

State Wave::fan_state(double xi) const {
  if (kind != WaveKind::Rarefaction || fan_states.empty()) return xi < speed ? left : right;
  const std::size_t m = fan_speeds.size();
  if (xi <= fan_speeds.front()) return fan_states.front();
  if (xi >= fan_speeds.back()) return fan_states.back();
  const auto it = std::upper_bound(fan_speeds.begin(), fan_speeds.end(), xi);
  std::size_t j = static_cast<std::size_t>(it - fan_speeds.begin());
  j = std::min(std::max<std::size_t>(j, 1), m - 1) - 1;
  const double dl = fan_speeds[j + 1] - fan_speeds[j];
  const double th = dl > 0 ? (xi - fan_speeds[j]) / dl : 0.5;
  const double dt = fan_tau[j + 1] - fan_tau[j];
  const double t2 = th * th, t3 = t2 * th;
  return (2 * t3 - 3 * t2 + 1) * fan_states[j] + (t3 - 2 * t2 + th) * dt * fan_tangents[j] +
         (-2 * t3 + 3 * t2) * fan_states[j + 1] + (t3 - t2) * dt * fan_tangents[j + 1];
}

const HugoniotSample& HugoniotLocus::at_zero() const {
  for (const auto& s : samples)
    if (s.s == 0.0) return s;
  fail(ErrorKind::InvalidArgument, "locus has no s = 0 sample");
}

double rh_residual(const HyperbolicSystem& sys, const State& left, const State& right, double sigma) {
  return (sys.flux(left) - sys.flux(right) - sigma * (left - right)).norm();
}

namespace {

void check_family(const HyperbolicSystem& sys, int family) {
  if (family < 1 || family > sys.dim()) fail(ErrorKind::InvalidArgument, "family must be in 1..n");
}

}  // namespace

HugoniotPoint hugoniot_point(const HyperbolicSystem& sys, const State& uplus, double h, const State& w_guess,
                             double sigma_guess, const WaveOptions& opt) {
  const int n = sys.dim();
  HugoniotPoint hp;
  State w = w_guess.normalized();
  double sigma = sigma_guess;
  if (h == 0.0) {
    hp.W = uplus;
    hp.w = w;
    hp.sigma = sigma;
    hp.converged = true;
    return hp;
  }
  const State fp = sys.flux(uplus);
  Matrix jac(n + 1, n + 1);
  Eigen::VectorXd g(n + 1);
  double gnorm = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.newton_max_iter; ++it) {
    const State W = uplus + h * w;
    const State fw = sys.flux(W);
    g.head(n) = (fw - fp) / h - sigma * w;
    g[n] = 0.5 * (w.squaredNorm() - 1.0);
    if (!g.allFinite()) break;
    gnorm = g.norm();
    jac.topLeftCorner(n, n) = sys.jacobian(W);
    jac.topLeftCorner(n, n).diagonal().array() -= sigma;
    jac.topRightCorner(n, 1) = -w;
    jac.bottomLeftCorner(1, n) = w.transpose();
    jac(n, n) = 0.0;
    Eigen::VectorXd delta = jac.partialPivLu().solve(-g);
    if (!delta.allFinite()) break;
    const double dn = delta.norm();
    if (dn > 0.25) delta *= 0.25 / dn;
    w += delta.head(n);
    sigma += delta[n];
    if (dn <= 1e-15 * (1.0 + std::abs(sigma))) {
      gnorm = 0;
      break;
    }
  }
  w.normalize();
  hp.W = uplus + h * w;
  hp.w = w;
  hp.sigma = sigma;
  const double rh = rh_residual(sys, hp.W, uplus, sigma);
  const double scale = 1.0 + sys.flux(hp.W).norm() + fp.norm();
  hp.converged = std::isfinite(rh) && rh <= std::max(1e-3 * opt.tol_rh, 64 * 2.2e-16 * scale) &&
                 w.dot(w_guess) > 0.5 && std::isfinite(gnorm);
  return hp;
}

namespace {

// Continue a Hugoniot branch from (h0, w0, sigma0) to h1 with step halving.
HugoniotPoint continue_branch(const HyperbolicSystem& sys, const State& uplus, double h0, const State& w0,
                              double sigma0, double h1, const WaveOptions& opt) {
  double h = h0;
  State w = w0;
  double sigma = sigma0;
  double step = h1 - h0;
  HugoniotPoint hp;
  hp.W = uplus + h * w;
  hp.w = w;
  hp.sigma = sigma;
  hp.converged = true;
  while (h != h1) {
    double target = h + step;
    if ((step > 0 && target > h1) || (step < 0 && target < h1)) target = h1;
    HugoniotPoint trial = hugoniot_point(sys, uplus, target, w, sigma, opt);
    if (trial.converged) {
      h = target;
      w = trial.w;
      sigma = trial.sigma;
      hp = trial;
      step *= 2;
    } else {
      step *= 0.5;
      if (std::abs(step) < opt.ds_min) fail(ErrorKind::ContinuationStall, "Hugoniot continuation stalled");
    }
  }
  return hp;
}

}  // namespace

HugoniotLocus hugoniot_locus_to(const HyperbolicSystem& sys, const State& uplus, int family, double s_end,
                                int steps, const WaveOptions& opt) {
  check_family(sys, family);
  if (steps < 1) fail(ErrorKind::InvalidArgument, "locus needs at least one step");
  HugoniotLocus loc;
  loc.family = family;
  loc.reference = uplus;
  const Eigenpair e0 = eigenpair(sys, uplus, family - 1, nullptr, opt.spectral);
  std::vector<HugoniotSample> out;
  out.push_back({0.0, uplus, e0.lambda});
  State w = e0.r;
  double sigma = e0.lambda;
  double h = 0;
  for (int j = 1; j <= steps; ++j) {
    const double target = j == steps ? s_end : s_end * static_cast<double>(j) / steps;
    HugoniotPoint hp = continue_branch(sys, uplus, h, w, sigma, target, opt);
    h = target;
    w = hp.w;
    sigma = hp.sigma;
    out.push_back({target, hp.W, hp.sigma});
  }
  if (s_end < 0) std::reverse(out.begin(), out.end());
  loc.samples = std::move(out);
  return loc;
}

HugoniotLocus hugoniot_locus(const HyperbolicSystem& sys, const State& uplus, int family, double s_max,
                             double ds, const WaveOptions& opt) {
  if (!(s_max > 0) || !(ds > 0)) fail(ErrorKind::InvalidArgument, "locus needs s_max > 0 and ds > 0");
  const int steps = std::max(1, static_cast<int>(std::ceil(s_max / ds - 1e-9)));
  HugoniotLocus neg = hugoniot_locus_to(sys, uplus, family, -s_max, steps, opt);
  HugoniotLocus pos = hugoniot_locus_to(sys, uplus, family, s_max, steps, opt);
  HugoniotLocus loc;
  loc.family = family;
  loc.reference = uplus;
  loc.samples = neg.samples;
  loc.samples.insert(loc.samples.end(), pos.samples.begin() + 1, pos.samples.end());
  return loc;
}

LiuResult liu_admissible(const HugoniotLocus& locus, double s_bar, double tol_liu) {
  const auto& sm = locus.samples;
  const double slack = 1e-12 * (1.0 + std::abs(s_bar));
  if (sm.empty() || s_bar < locus.s_min() - slack || s_bar > locus.s_max() + slack)
    fail(ErrorKind::OutOfRange, "s_bar outside the locus extent");
  double sigma_bar = sm.back().sigma;
  for (std::size_t j = 0; j + 1 < sm.size(); ++j) {
    if (std::abs(sm[j].s - s_bar) <= slack) {
      sigma_bar = sm[j].sigma;
      break;
    }
    if (sm[j].s <= s_bar && s_bar <= sm[j + 1].s) {
      const double th = (s_bar - sm[j].s) / (sm[j + 1].s - sm[j].s);
      sigma_bar = (1 - th) * sm[j].sigma + th * sm[j + 1].sigma;
      if (std::abs(sm[j + 1].s - s_bar) <= slack) sigma_bar = sm[j + 1].sigma;
      break;
    }
  }
  LiuResult res;
  res.worst_margin = std::numeric_limits<double>::infinity();
  const double lo = std::min(0.0, s_bar), hi = std::max(0.0, s_bar);
  for (const auto& p : sm) {
    if (p.s <= lo + slack || p.s >= hi - slack) continue;
    const double margin = sigma_bar - p.sigma;
    if (margin < res.worst_margin) {
      res.worst_margin = margin;
      res.worst_s = p.s;
    }
  }
  if (!std::isfinite(res.worst_margin)) res.worst_margin = 0;
  res.admissible = res.worst_margin >= -tol_liu;
  return res;
}

std::vector<RarefactionSample> rarefaction_curve(const HyperbolicSystem& sys, const State& u0, int family,
                                                 double s, double ds, const WaveOptions& opt) {
  check_family(sys, family);
  if (!(ds > 0)) fail(ErrorKind::InvalidArgument, "rarefaction step must be positive");
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(s) / ds - 1e-9)));
  const double h = s / steps;
  const int idx = family - 1;
  std::vector<RarefactionSample> out;
  Eigenpair e = eigenpair(sys, u0, idx, nullptr, opt.spectral);
  State ref = e.r;
  State u = u0;
  out.push_back({0.0, u, e.lambda});
  for (int j = 1; j <= steps; ++j) {
    const State r0 = ref;
    VectorField field = [&](const State& x) { return eigenpair(sys, x, idx, &r0, opt.spectral).r; };
    u = ode::rk4_step(field, u, h);
    if (!sys.region().contains(u)) fail(ErrorKind::LeftRegion, "rarefaction curve left the region");
    e = eigenpair(sys, u, idx, &r0, opt.spectral);
    ref = e.r;
    out.push_back({h * j, u, e.lambda});
  }
  return out;
}

State WaveCurveResult::state_at(double t) const {
  if (tau.empty()) return base;
  if (t <= tau.front()) return U.front();
  if (t >= tau.back()) return U.back();
  const auto it = std::upper_bound(tau.begin(), tau.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - tau.begin()) - 1;
  const double th = (t - tau[j]) / (tau[j + 1] - tau[j]);
  return (1 - th) * U[j] + th * U[j + 1];
}

namespace {

// Detachment interval in outward node indices: cells b..e-1. A terminal
// interval runs to the far end and is not closed by a contact node.
struct Interval {
  std::size_t b = 0;
  std::size_t e = 0;
  bool terminal = false;
  bool operator==(const Interval& o) const { return b == o.b && e == o.e && terminal == o.terminal; }
};

struct Sweep {
  std::vector<State> U;
  std::vector<double> f;
  std::vector<State> r;       // oriented eigenvector at each node
  std::vector<double> lam;    // eigenvalue at each node
  std::vector<double> shock;  // RH speed at nodes inside detachment intervals
};

struct CurveBuilder {
  const HyperbolicSystem& sys;
  State base;
  int idx;
  double s;
  bool monotone;
  const WaveOptions& opt;
  std::vector<double> tau;  // outward: tau[0] = 0, tau[N] = s
  State r_ref;

  std::size_t N() const { return tau.size() - 1; }

  void check_region(const State& u) const {
    if (!u.allFinite() || !sys.region().contains(u)) fail(ErrorKind::LeftRegion, "wave curve left the region");
  }

  Sweep sweep(const std::vector<Interval>& structure) const {
    const std::size_t n = N();
    Sweep sw;
    sw.U.resize(n + 1);
    sw.f.assign(n + 1, 0.0);
    sw.r.resize(n + 1);
    sw.lam.resize(n + 1);
    sw.shock.assign(n + 1, std::numeric_limits<double>::quiet_NaN());
    sw.U[0] = base;
    Eigenpair e0 = eigenpair(sys, base, idx, &r_ref, opt.spectral);
    sw.r[0] = e0.r;
    sw.lam[0] = e0.lambda;
    std::size_t iv = 0;
    State hw;
    double hsigma = 0;
    for (std::size_t k = 0; k < n; ++k) {
      while (iv < structure.size() && structure[iv].e <= k && !structure[iv].terminal) ++iv;
      const Interval* in = nullptr;
      if (iv < structure.size() && !structure[iv].terminal && structure[iv].b <= k && k < structure[iv].e)
        in = &structure[iv];
      if (in) {
        const std::size_t b = in->b;
        double h_prev = tau[k] - tau[b];
        if (k == b) {
          hw = sw.r[b];
          hsigma = sw.lam[b];
          h_prev = 0;
        }
        const double h = tau[k + 1] - tau[b];
        HugoniotPoint hp = continue_branch(sys, sw.U[b], h_prev, hw, hsigma, h, opt);
        hw = hp.w;
        hsigma = hp.sigma;
        sw.U[k + 1] = hp.W;
        sw.f[k + 1] = sw.f[b] + h * hp.sigma;
        sw.shock[k + 1] = hp.sigma;
      } else {
        const State r0 = sw.r[k];
        const int n_state = sys.dim();
        VectorField field = [&](const State& x) {
          const Eigenpair e = eigenpair(sys, x.head(n_state), idx, &r0, opt.spectral);
          State out(n_state + 1);
          out.head(n_state) = e.r;
          out[n_state] = e.lambda;
          return out;
        };
        State x(n_state + 1);
        x.head(n_state) = sw.U[k];
        x[n_state] = sw.f[k];
        const State y = ode::rk4_step(field, x, tau[k + 1] - tau[k]);
        sw.U[k + 1] = y.head(n_state);
        sw.f[k + 1] = y[n_state];
      }
      check_region(sw.U[k + 1]);
      const Eigenpair e = eigenpair(sys, sw.U[k + 1], idx, &sw.r[k], opt.spectral);
      sw.r[k + 1] = e.r;
      sw.lam[k + 1] = e.lambda;
    }
    return sw;
  }

  EnvelopeKind kind() const {
    if (s < 0) return monotone ? EnvelopeKind::MonotoneConvex : EnvelopeKind::Convex;
    return monotone ? EnvelopeKind::MonotoneConcave : EnvelopeKind::Concave;
  }

  // outward index k <-> ascending index
  std::size_t asc(std::size_t k) const { return s < 0 ? N() - k : k; }

  PiecewiseLinearEnvelope envelope(const Sweep& sw) const {
    SampledFunction fn;
    const std::size_t n = N();
    fn.grid.resize(n + 1);
    fn.values.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      fn.grid[asc(k)] = tau[k];
      fn.values[asc(k)] = sw.f[k];
    }
    return make_envelope(kind(), fn, opt.envelope);
  }

  std::vector<Interval> structure_of(const PiecewiseLinearEnvelope& env) const {
    const std::size_t n = N();
    std::vector<Interval> out;
    std::size_t k = 1;
    while (k <= n) {
      if (env.contact[asc(k)]) {
        ++k;
        continue;
      }
      const std::size_t k1 = k;
      while (k <= n && !env.contact[asc(k)]) ++k;
      Interval in;
      in.b = k1 - 1;
      if (k > n) {
        in.e = n;
        in.terminal = true;
        if (!monotone) fail(ErrorKind::FixedPointDiverged, "envelope detached from the curve endpoint");
      } else {
        in.e = k;
      }
      out.push_back(in);
    }
    return out;
  }

  // Cell slope (speed) in outward cell k.
  double cell_speed(const PiecewiseLinearEnvelope& env, std::size_t k) const {
    const std::size_t a = std::min(asc(k), asc(k + 1));
    return env.slopes[a] / opt.d;
  }
};

struct Converged {
  Sweep sw;
  PiecewiseLinearEnvelope env;
  std::vector<Interval> structure;
  int iterations = 0;
  std::vector<double> history;
};

Converged solve_fixed_point(const CurveBuilder& cb, std::vector<Interval> structure) {
  Converged c;
  Sweep prev;
  std::vector<std::vector<Interval>> seen;
  for (int it = 1; it <= cb.opt.max_iter; ++it) {
    Sweep sw = cb.sweep(structure);
    PiecewiseLinearEnvelope env = cb.envelope(sw);
    std::vector<Interval> next = cb.structure_of(env);
    double change = std::numeric_limits<double>::infinity();
    if (!prev.U.empty()) {
      change = 0;
      for (std::size_t k = 0; k < sw.U.size(); ++k) {
        change = std::max(change, (sw.U[k] - prev.U[k]).cwiseAbs().maxCoeff());
        change = std::max(change, std::abs(sw.f[k] - prev.f[k]));
      }
    }
    c.history.push_back(change);
    if (next == structure) {
      c.sw = std::move(sw);
      c.env = std::move(env);
      c.structure = std::move(structure);
      c.iterations = it;
      return c;
    }
    if (std::find(seen.begin(), seen.end(), next) != seen.end()) {
      // Two structures alternate: keep the current one if the envelope
      // contact set only differs by nodes within tolerance of contact.
      fail(ErrorKind::FixedPointDiverged, "wave-fan structure cycles");
    }
    seen.push_back(structure);
    prev = std::move(sw);
    structure = std::move(next);
  }
  fail(ErrorKind::FixedPointDiverged, "wave-fan fixed point did not converge within max_iter");
}

Wave make_rarefaction(const CurveBuilder& cb, const Sweep& sw, std::size_t ka, std::size_t kb) {
  // nodes ka (inner) .. kb (outer); left state is the outer one
  Wave w;
  w.family = cb.idx + 1;
  w.left = sw.U[kb];
  w.right = sw.U[ka];
  w.strength = std::abs(cb.tau[kb] - cb.tau[ka]);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t k = ka; k <= kb; ++k) {
    lo = std::min(lo, sw.lam[k]);
    hi = std::max(hi, sw.lam[k]);
  }
  if (hi - lo <= cb.opt.tol_ld) {
    w.kind = WaveKind::ContactDiscontinuity;
    w.speed = 0.5 * (sw.lam[ka] + sw.lam[kb]);
    return w;
  }
  w.kind = WaveKind::Rarefaction;
  w.speed_lo = sw.lam[kb];
  w.speed_hi = sw.lam[ka];
  for (std::size_t k = kb + 1; k-- > ka;) {
    w.fan_tau.push_back(cb.tau[k]);
    w.fan_speeds.push_back(sw.lam[k]);
    w.fan_states.push_back(sw.U[k]);
    w.fan_tangents.push_back(sw.r[k]);
  }
  // enforce a nondecreasing speed table for lookup
  for (std::size_t j = 1; j < w.fan_speeds.size(); ++j)
    w.fan_speeds[j] = std::max(w.fan_speeds[j], w.fan_speeds[j - 1]);
  return w;
}

// Waves on outward cells [c0, c1), returned left to right.
std::vector<Wave> extract_waves(const CurveBuilder& cb, const Converged& c, std::size_t c0, std::size_t c1) {
  std::vector<Wave> out;
  std::size_t k = c0;
  while (k < c1) {
    const Interval* in = nullptr;
    for (const auto& iv : c.structure)
      if (!iv.terminal && iv.b <= k && k < iv.e) in = &iv;
    if (in) {
      Wave w;
      w.kind = WaveKind::Shock;
      w.family = cb.idx + 1;
      w.left = c.sw.U[in->e];
      w.right = c.sw.U[in->b];
      w.speed = c.sw.shock[in->e];
      w.strength = std::abs(cb.tau[in->e] - cb.tau[in->b]);
      out.push_back(std::move(w));
      k = in->e;
      continue;
    }
    std::size_t kb = k;
    while (kb < c1) {
      bool inside = false;
      for (const auto& iv : c.structure)
        if (!iv.terminal && iv.b <= kb && kb < iv.e) inside = true;
      if (inside) break;
      ++kb;
    }
    out.push_back(make_rarefaction(cb, c.sw, k, kb));
    k = kb;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void fill_profile(const CurveBuilder& cb, const Converged& c, WaveCurveResult& res) {
  const std::size_t n = cb.N();
  res.tau.resize(n + 1);
  res.U.resize(n + 1);
  res.f.resize(n + 1);
  res.envelope.resize(n + 1);
  res.v.resize(n + 1);
  res.contact.resize(n + 1);
  res.sigma.resize(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t a = cb.asc(k);
    res.tau[a] = cb.tau[k];
    res.U[a] = c.sw.U[k];
    res.f[a] = c.sw.f[k];
    res.envelope[a] = c.env.values[a];
    res.v[a] = c.sw.f[k] - c.env.values[a];
    res.contact[a] = c.env.contact[a];
  }
  for (std::size_t j = 0; j < n; ++j) res.sigma[j] = c.env.slopes[j] / cb.opt.d;
  res.endpoint = c.sw.U[n];
  res.iterations = c.iterations;
  res.change_history = c.history;
}

CurveBuilder make_builder(const HyperbolicSystem& sys, const State& base, int family, double s, bool monotone,
                          const WaveOptions& opt) {
  CurveBuilder cb{sys, base, family - 1, s, monotone, opt, {}, {}};
  const double cells = std::max<double>(opt.min_cells, std::ceil(opt.cells_per_unit * std::abs(s)));
  const std::size_t n = static_cast<std::size_t>(cells);
  cb.tau.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) cb.tau[k] = s * static_cast<double>(k) / static_cast<double>(n);
  cb.tau[n] = s;
  cb.r_ref = eigenpair(sys, base, family - 1, nullptr, opt.spectral).r;
  return cb;
}

WaveCurveResult trivial_curve(const HyperbolicSystem& sys, const State& base, int family, bool characteristic) {
  WaveCurveResult res;
  res.family = family;
  res.base = base;
  res.strength = 0;
  res.endpoint = base;
  res.characteristic = characteristic;
  res.trace = base;
  res.underline_U = base;
  res.tau = {0.0};
  res.U = {base};
  res.f = {0.0};
  res.envelope = {0.0};
  res.v = {0.0};
  res.contact = {true};
  (void)sys;
  return res;
}

// First outward cell of the zero-speed suffix (N if there is none).
std::size_t zero_region_start(const CurveBuilder& cb, const Converged& c) {
  std::size_t k0 = cb.N();
  while (k0 > 0 && std::abs(cb.cell_speed(c.env, k0 - 1)) <= cb.opt.zero_speed) --k0;
  return k0;
}

bool is_contact_cell(const Converged& c, std::size_t k) {
  for (const auto& iv : c.structure)
    if (iv.b <= k && k < iv.e) return false;
  return true;
}

// Moves the node where a sonic rarefaction meets the zero-speed plateau onto
// the root of lambda. Returns true if the grid changed.
bool refine_sonic(CurveBuilder& cb, const Converged& c) {
  const std::size_t n = cb.N();
  const std::size_t k0 = zero_region_start(cb, c);
  if (k0 == 0 || k0 >= n) return false;
  if (!is_contact_cell(c, k0 - 1)) return false;
  const double l0 = c.sw.lam[k0];
  const double scale = 1.0 + std::abs(c.sw.lam[0]);
  if (std::abs(l0) <= 1e-13 * scale) return false;
  const int ns = cb.sys.dim();
  const State u0 = c.sw.U[k0];
  const State r0 = c.sw.r[k0];
  auto lam_at = [&](double h) {
    VectorField field = [&](const State& x) { return eigenpair(cb.sys, x, cb.idx, &r0, cb.opt.spectral).r; };
    const State u = ode::rk4_step(field, u0, h);
    return eigenpair(cb.sys, u, cb.idx, &r0, cb.opt.spectral).lambda;
  };
  // lambda decreases outward on the positive-speed side
  const double dir = cb.s < 0 ? -1.0 : 1.0;
  const double cell = std::abs(cb.tau[1] - cb.tau[0]);
  double a = 0, b = (l0 > 0 ? dir : -dir) * cell;
  double la = l0, lb = lam_at(b);
  if (la * lb > 0) return false;
  for (int it = 0; it < 100 && std::abs(b - a) > 1e-16 * (1.0 + std::abs(cb.tau[k0])); ++it) {
    const double m = a + (b - a) * (la / (la - lb));
    const double mm = (std::abs(m - a) < 1e-3 * std::abs(b - a) || std::abs(m - b) < 1e-3 * std::abs(b - a))
                          ? 0.5 * (a + b)
                          : m;
    const double lm = lam_at(mm);
    if (lm == 0) {
      a = b = mm;
      break;
    }
    if ((lm > 0) == (la > 0)) {
      a = mm;
      la = lm;
    } else {
      b = mm;
      lb = lm;
    }
  }
  const double target = cb.tau[k0] + 0.5 * (a + b);
  // move the grid node nearest the root
  std::size_t kk = k0;
  double best = std::abs(cb.tau[k0] - target);
  for (std::size_t k : {k0 - 1, k0 + 1}) {
    if (k == 0 || k >= n) continue;
    if (std::abs(cb.tau[k] - target) < best) {
      best = std::abs(cb.tau[k] - target);
      kk = k;
    }
  }
  const double lo = std::min(cb.tau[kk - 1], cb.tau[kk + 1]);
  const double hi = std::max(cb.tau[kk - 1], cb.tau[kk + 1]);
  const double margin = 1e-6 * cell;
  if (!(target > lo + margin && target < hi - margin)) return false;
  if (cb.tau[kk] == target) return false;
  cb.tau[kk] = target;
  (void)ns;
  return true;
}

}  // namespace

WaveCurveResult wave_fan_curve(const HyperbolicSystem& sys, const State& uplus, int family, double s,
                               const WaveOptions& opt) {
  check_family(sys, family);
  if (!sys.region().contains(uplus)) fail(ErrorKind::LeftRegion, "base state outside the region");
  if (s == 0.0) return trivial_curve(sys, uplus, family, false);
  CurveBuilder cb = make_builder(sys, uplus, family, s, false, opt);
  const Converged c = solve_fixed_point(cb, {});
  WaveCurveResult res;
  res.family = family;
  res.base = uplus;
  res.strength = s;
  fill_profile(cb, c, res);
  res.waves = extract_waves(cb, c, 0, cb.N());
  res.trace = res.endpoint;
  res.underline_U = res.endpoint;
  res.s_bar = s;
  res.s_underline = s;
  return res;
}

WaveCurveResult characteristic_wave_fan_curve(const HyperbolicSystem& sys, const State& usharp, int family,
                                              double s, const WaveOptions& opt) {
  check_family(sys, family);
  if (!sys.region().contains(usharp)) fail(ErrorKind::LeftRegion, "base state outside the region");
  if (s == 0.0) return trivial_curve(sys, usharp, family, true);
  CurveBuilder cb = make_builder(sys, usharp, family, s, true, opt);
  Converged c = solve_fixed_point(cb, {});
  if (opt.refine_sonic) {
    for (int pass = 0; pass < 4; ++pass) {
      if (!refine_sonic(cb, c)) break;
      c = solve_fixed_point(cb, c.structure);
    }
  }
  WaveCurveResult res;
  res.family = family;
  res.base = usharp;
  res.strength = s;
  res.characteristic = true;
  fill_profile(cb, c, res);
  const std::size_t n = cb.N();
  const std::size_t k0 = zero_region_start(cb, c);
  std::size_t kt = n;
  for (const auto& iv : c.structure) {
    if (iv.terminal) kt = iv.b;
    else if (iv.b >= k0) res.s_underline_ambiguous = true;
  }
  if (kt < k0) kt = k0;
  res.s_bar = cb.tau[k0];
  res.s_underline = cb.tau[kt];
  res.trace = c.sw.U[k0];
  res.underline_U = c.sw.U[kt];
  res.waves = extract_waves(cb, c, 0, k0);
  res.zero_speed_waves = extract_waves(cb, c, k0, kt);
  return res;
}

void write_curve_csv(std::ostream& os, const WaveCurveResult& curve) {
  const auto old = os.precision(17);
  const int n = static_cast<int>(curve.base.size());
  os << "tau";
  for (int i = 0; i < n; ++i) os << ",U" << i;
  os << ",f,envelope,v,sigma,contact\n";
  for (std::size_t j = 0; j < curve.tau.size(); ++j) {
    os << curve.tau[j];
    for (int i = 0; i < n; ++i) os << ',' << curve.U[j][i];
    const double sig = curve.sigma.empty() ? 0.0 : curve.sigma[std::min(j, curve.sigma.size() - 1)];
    os << ',' << curve.f[j] << ',' << curve.envelope[j] << ',' << curve.v[j] << ',' << sig << ','
       << (curve.contact[j] ? 1 : 0) << '\n';
  }
  os.precision(old);
}

}  // namespace brp
