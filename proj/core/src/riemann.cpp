#include <brp/error.hpp>
#include <brp/riemann.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

namespace brp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One evaluation of a composed wave map.
struct Composition {
  State value;                 // the state compared against the data
  std::vector<Wave> waves;     // positive part, left to right
  State trace;
  State underline;
  std::vector<Wave> zero_waves;
  bool ambiguous = false;
};

using ComposedMap = std::function<Composition(const Eigen::VectorXd&)>;

struct NewtonResult {
  Eigen::VectorXd x;
  Composition comp;
  double residual = kInf;
  int iterations = 0;
};

bool try_eval(const ComposedMap& map, const Eigen::VectorXd& x, Composition& out) {
  try {
    out = map(x);
    return out.value.allFinite();
  } catch (const Error&) {
    return false;
  }
}

NewtonResult newton(const ComposedMap& map, const State& target, Eigen::VectorXd x, const RiemannOptions& opt) {
  NewtonResult nr;
  const Eigen::Index n = x.size();
  const double tol = opt.tol_newton * (1.0 + target.norm());
  Composition c;
  if (!try_eval(map, x, c)) return nr;
  State r = c.value - target;
  int it = 0;
  for (; it < opt.newton_max_iter && r.norm() > tol; ++it) {
    Matrix jac(target.size(), n);
    bool ok = true;
    for (Eigen::Index j = 0; j < n && ok; ++j) {
      Eigen::VectorXd xp = x;
      const double h = opt.fd_step * std::max(1.0, std::abs(x[j]));
      xp[j] += h;
      Composition cp;
      ok = try_eval(map, xp, cp);
      if (ok) jac.col(j) = (cp.value - c.value) / h;
    }
    if (!ok) break;
    const Eigen::VectorXd dx = jac.fullPivLu().solve(-r);
    if (!dx.allFinite()) break;
    bool accepted = false;
    double alpha = 1.0;
    for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
      Eigen::VectorXd xn = x + alpha * dx;
      Composition cn;
      if (!try_eval(map, xn, cn)) continue;
      const State rn = cn.value - target;
      if (rn.norm() < (1.0 - 1e-4 * alpha) * r.norm()) {
        x = xn;
        c = std::move(cn);
        r = rn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  nr.x = x;
  nr.comp = std::move(c);
  nr.residual = r.norm();
  nr.iterations = it;
  return nr;
}

NewtonResult solve_with_guesses(const ComposedMap& map, const State& target, const std::vector<Eigen::VectorXd>& guesses,
                                const RiemannOptions& opt) {
  const double tol = opt.tol_newton * (1.0 + target.norm());
  NewtonResult best;
  for (const auto& g : guesses) {
    NewtonResult nr = newton(map, target, g, opt);
    if (nr.residual < best.residual) best = std::move(nr);
    if (best.residual <= tol) return best;
  }
  fail(ErrorKind::NewtonDiverged, "Newton on the composed wave map did not converge (residual " +
                                      std::to_string(best.residual) + ")");
}

// A boundary value that Newton put on the equilibrium only up to its tolerance
// gets the one-node layer; shooting across a round-off gap can fail outright.
BoundaryLayerProfile boundary_layer(const HyperbolicSystem& sys, const State& eq, const State& ud,
                                    const RiemannOptions& opt) {
  const double gap = (ud - eq).norm();
  if (gap > 10.0 * opt.tol_newton * (1.0 + ud.norm())) return shoot_layer(sys, eq, ud, opt.layers);
  BoundaryLayerProfile p = shoot_layer(sys, eq, eq, opt.layers);
  p.W = {ud};
  p.boundary_value = ud;
  p.tail_error = gap;
  return p;
}

std::vector<Eigen::VectorXd> guesses(const RiemannOptions& opt, const Eigen::VectorXd& linear) {
  std::vector<Eigen::VectorXd> g;
  if (opt.initial) {
    const auto& v = *opt.initial;
    if (static_cast<Eigen::Index>(v.size()) != linear.size())
      fail(ErrorKind::InvalidArgument, "initial guess has the wrong length");
    g.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), linear.size()));
    if (!opt.fallback_guesses) return g;
  }
  g.push_back(Eigen::VectorXd::Zero(linear.size()));
  if (linear.allFinite()) g.push_back(linear);
  return g;
}

// T_from(...T_n(s_n, u0)...) for families from..n, returning waves left to right.
State outgoing(const HyperbolicSystem& sys, const State& u0, int from, const Eigen::VectorXd& s, int offset,
               const WaveOptions& wo, std::vector<Wave>& waves) {
  State base = u0;
  const int n = sys.dim();
  std::vector<std::vector<Wave>> groups;
  for (int i = n; i >= from; --i) {
    const WaveCurveResult c = wave_fan_curve(sys, base, i, s[offset + (i - from)], wo);
    groups.push_back(c.waves);
    base = c.endpoint;
  }
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) waves.insert(waves.end(), it->begin(), it->end());
  return base;
}

void fill_plateaus(WaveFan& fan, const State& leftmost) {
  fan.plateaus.clear();
  fan.plateaus.push_back(leftmost);
  fan.total_variation = 0;
  for (const Wave& w : fan.waves) {
    fan.plateaus.push_back(w.right);
    if (w.kind == WaveKind::Rarefaction && w.fan_states.size() > 1) {
      for (std::size_t j = 1; j < w.fan_states.size(); ++j)
        fan.total_variation += (w.fan_states[j] - w.fan_states[j - 1]).norm();
    } else {
      fan.total_variation += (w.left - w.right).norm();
    }
  }
}

void check_data(const HyperbolicSystem& sys, const State& a, const State& b, const RiemannOptions& opt) {
  if (a.size() != sys.dim() || b.size() != sys.dim()) fail(ErrorKind::InvalidArgument, "data dimension mismatch");
  const double limit = opt.data_max ? *opt.data_max : (sys.region().upper - sys.region().lower).norm();
  if ((a - b).norm() > limit)
    fail(ErrorKind::DataTooLarge, "|U_0 - U_D| exceeds data_max for this system");
  if (!sys.region().contains(a) || !sys.region().contains(b)) fail(ErrorKind::LeftRegion, "data outside the region");
}

}  // namespace

WaveFan solve_riemann(const HyperbolicSystem& sys, const State& uminus, const State& uplus, const RiemannOptions& opt) {
  check_data(sys, uminus, uplus, opt);
  const int n = sys.dim();
  ComposedMap map = [&](const Eigen::VectorXd& s) {
    Composition c;
    c.value = outgoing(sys, uplus, 1, s, 0, opt.waves, c.waves);
    return c;
  };
  const SpectralData sd = eigen_decompose(sys, uplus, opt.waves.spectral);
  const Eigen::VectorXd lin = sd.left * (uminus - uplus);
  NewtonResult nr = solve_with_guesses(map, uminus, guesses(opt, lin), opt);
  WaveFan fan;
  fan.left_state = uminus;
  fan.right_state = uplus;
  fan.waves = std::move(nr.comp.waves);
  fan.strengths.assign(nr.x.data(), nr.x.data() + n);
  fan.newton_residual = nr.residual;
  fan.newton_iterations = nr.iterations;
  // the composed endpoint equals U- to Newton tolerance; the fan starts at the reached state
  fill_plateaus(fan, fan.waves.empty() ? uplus : fan.waves.front().left);
  fan.trace = evaluate(fan, 0.0);
  return fan;
}

WaveFan solve_boundary_riemann(const HyperbolicSystem& sys, const State& u0, const State& ud, const RiemannOptions& opt) {
  check_data(sys, u0, ud, opt);
  const int n = sys.dim();
  BoundaryRegime regime;
  if (opt.regime) {
    regime = *opt.regime;
  } else if (n == 1) {
    regime.kind = Characteristic{1};
  } else {
    const double radius = std::max(2.0 * (ud - u0).norm(), 1e-6);
    regime = classify_boundary(sys, sys.region().around(u0, radius), opt.classify_plan, opt.waves.spectral);
  }

  WaveFan fan;
  fan.boundary = true;
  fan.left_state = ud;
  fan.right_state = u0;
  fan.regime = regime;

  if (!regime.characteristic()) {
    const int p = regime.p();
    const int m = n - p;
    ComposedMap map = [&, p, m](const Eigen::VectorXd& x) {
      Composition c;
      State ubar = p > 0 ? outgoing(sys, u0, m + 1, x, m, opt.waves, c.waves) : u0;
      c.trace = ubar;
      c.underline = ubar;
      c.value = m > 0 ? layer_map_phi(sys, ubar, x.head(m), opt.layers) : ubar;
      return c;
    };
    const LayerSpectrum sp = layer_spectrum(sys, u0, opt.waves.spectral);
    if (sp.stable != m) fail(ErrorKind::Ambiguous, "stable layer dimension differs from n - p");
    const SpectralData sd = eigen_decompose(sys, u0, opt.waves.spectral);
    Matrix basis(n, n);
    for (int j = 0; j < m; ++j) basis.col(j) = sp.basis.col(j);
    for (int j = m; j < n; ++j) basis.col(j) = sd.right.col(j);
    const Eigen::VectorXd lin = basis.fullPivLu().solve(ud - u0);
    NewtonResult nr = solve_with_guesses(map, ud, guesses(opt, lin), opt);
    fan.waves = std::move(nr.comp.waves);
    fan.trace = nr.comp.trace;
    fan.strengths.assign(nr.x.data(), nr.x.data() + n);
    fan.newton_residual = nr.residual;
    fan.newton_iterations = nr.iterations;
    BoundaryGroup bg;
    bg.underline_U = fan.trace;
    bg.layer = boundary_layer(sys, fan.trace, ud, opt);
    fan.boundary_group = std::move(bg);
  } else {
    const int k = regime.k();
    if (k < n) fail(ErrorKind::Unsupported, "characteristic field below n needs a centre-stable layer chart");
    // W(0) = T_k endpoint + stable corrections at underline-U (identity centre-stable chart)
    ComposedMap map = [&, k](const Eigen::VectorXd& x) {
      Composition c;
      const State usharp = k < n ? outgoing(sys, u0, k + 1, x, k, opt.waves, c.waves) : u0;
      const WaveCurveResult ch = characteristic_wave_fan_curve(sys, usharp, k, x[k - 1], opt.waves);
      std::vector<Wave> w = ch.waves;
      w.insert(w.end(), c.waves.begin(), c.waves.end());
      c.waves = std::move(w);
      c.trace = ch.trace;
      c.underline = ch.underline_U;
      c.zero_waves = ch.zero_speed_waves;
      c.ambiguous = ch.s_underline_ambiguous;
      c.value = ch.endpoint;
      if (k > 1) {
        const LayerSpectrum sp = layer_spectrum(sys, ch.underline_U, opt.waves.spectral);
        c.value += sp.basis.leftCols(k - 1) * x.head(k - 1);
      }
      return c;
    };
    const SpectralData sd = eigen_decompose(sys, u0, opt.waves.spectral);
    const LayerSpectrum sp = layer_spectrum(sys, u0, opt.waves.spectral);
    Matrix basis(n, n);
    for (int j = 0; j < k - 1; ++j) basis.col(j) = sp.basis.col(j);
    for (int j = k - 1; j < n; ++j) basis.col(j) = sd.right.col(j);
    const Eigen::VectorXd lin = basis.fullPivLu().solve(ud - u0);
    NewtonResult nr = solve_with_guesses(map, ud, guesses(opt, lin), opt);
    fan.waves = std::move(nr.comp.waves);
    fan.trace = nr.comp.trace;
    fan.strengths.assign(nr.x.data(), nr.x.data() + n);
    fan.newton_residual = nr.residual;
    fan.newton_iterations = nr.iterations;
    BoundaryGroup bg;
    bg.underline_U = nr.comp.underline;
    bg.zero_speed_waves = std::move(nr.comp.zero_waves);
    bg.s_underline_ambiguous = nr.comp.ambiguous;
    bg.layer = boundary_layer(sys, bg.underline_U, ud, opt);
    fan.boundary_group = std::move(bg);
  }
  fill_plateaus(fan, fan.trace);
  return fan;
}

State evaluate(const WaveFan& fan, double xi) {
  for (const Wave& w : fan.waves) {
    if (xi < w.min_speed()) return w.left;
    if (w.kind == WaveKind::Rarefaction && xi <= w.speed_hi) return w.fan_state(xi);
  }
  return fan.waves.empty() ? (fan.boundary ? fan.trace : fan.right_state) : fan.waves.back().right;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

LiuResult wave_liu(const HyperbolicSystem& sys, const Wave& wave, const RiemannOptions& opt) {
  const double d = (wave.left - wave.right).norm();
  if (d == 0) return {};
  LiuResult best;
  best.admissible = false;
  best.worst_margin = -kInf;
  double closest = kInf;
  for (double sign : {1.0, -1.0}) {
    HugoniotLocus loc;
    try {
      loc = hugoniot_locus_to(sys, wave.right, wave.family, sign * d, opt.liu_steps, opt.waves);
    } catch (const Error&) {
      continue;
    }
    const HugoniotSample& end = sign > 0 ? loc.samples.back() : loc.samples.front();
    const double miss = (end.W - wave.left).norm();
    if (miss < closest) {
      closest = miss;
      best = liu_admissible(loc, sign * d, opt.waves.tol_liu);
    }
  }
  if (!(closest <= 1e-8 * (1.0 + d))) {
    best.admissible = false;
    best.worst_margin = -kInf;
  }
  return best;
}

ValidationReport validate_solution(const HyperbolicSystem& sys, const WaveFan& fan, const RiemannOptions& opt) {
  ValidationReport rep;
  const int n = sys.dim();
  const double tol_rh = opt.waves.tol_rh, tol_liu = opt.waves.tol_liu;
  rep.min_liu_margin = kInf;

  // (1) far field and boundary value at the slow side
  {
    CheckResult c{"far_field", true, 0, ""};
    double lmax = -kInf, lmin = kInf;
    for (const State& p : fan.plateaus) {
      try {
        const SpectralData sd = eigen_decompose(sys, p, opt.waves.spectral);
        lmax = std::max(lmax, sd.eigenvalues[n - 1]);
        lmin = std::min(lmin, sd.eigenvalues[0]);
      } catch (const Error& e) {
        c.pass = false;
        c.detail = e.what();
      }
    }
    for (const Wave& w : fan.waves) lmax = std::max(lmax, w.max_speed());
    const double far = std::max(lmax, 0.0) + 1.0;
    c.residual = (evaluate(fan, far) - fan.right_state).norm();
    if (!fan.boundary) {
      const double near = std::min(lmin, 0.0) - 1.0;
      c.residual = std::max(c.residual, (evaluate(fan, near) - fan.left_state).norm());
    }
    c.pass = c.pass && c.residual <= 10.0 * opt.tol_newton * (1.0 + fan.left_state.norm() + fan.right_state.norm());
    if (!c.pass && c.detail.empty()) c.detail = "V differs from the data outside the fan";
    rep.checks.push_back(c);
  }
  // (2) total variation
  {
    const double budget = opt.tv_factor * (fan.left_state - fan.right_state).norm();
    CheckResult c{"total_variation", fan.total_variation <= budget + 1e-14, fan.total_variation, ""};
    if (!c.pass) c.detail = "TV " + std::to_string(fan.total_variation) + " exceeds budget " + std::to_string(budget);
    rep.checks.push_back(c);
  }
  auto check_jumps = [&](const std::vector<Wave>& waves, const std::string& name, bool zero_speed) {
    CheckResult c{name, true, 0, ""};
    for (std::size_t i = 0; i < waves.size(); ++i) {
      const Wave& w = waves[i];
      if (w.kind == WaveKind::Rarefaction) continue;
      const double rh = rh_residual(sys, w.left, w.right, w.speed);
      rep.max_rh = std::max(rep.max_rh, rh);
      c.residual = std::max(c.residual, rh);
      const LiuResult liu = wave_liu(sys, w, opt);
      rep.min_liu_margin = std::min(rep.min_liu_margin, liu.worst_margin);
      bool ok = rh <= tol_rh && liu.worst_margin >= -tol_liu;
      if (w.kind == WaveKind::ContactDiscontinuity) {
        const double ll = eigenpair(sys, w.left, w.family - 1, nullptr, opt.waves.spectral).lambda;
        const double lr = eigenpair(sys, w.right, w.family - 1, nullptr, opt.waves.spectral).lambda;
        ok = ok && std::abs(ll - w.speed) <= opt.waves.tol_ld + tol_rh && std::abs(lr - w.speed) <= opt.waves.tol_ld + tol_rh;
      }
      if (zero_speed) ok = ok && std::abs(w.speed) <= opt.zero_speed;
      if (!ok && c.pass) {
        c.detail = "wave " + std::to_string(i) + " (" + to_string(w.kind) + ", family " + std::to_string(w.family) +
                   "): rh " + std::to_string(rh) + ", liu margin " + std::to_string(liu.worst_margin);
      }
      c.pass = c.pass && ok;
    }
    rep.checks.push_back(c);
  };
  // (3) jumps and speed ordering
  check_jumps(fan.waves, "jumps", false);
  {
    CheckResult c{"ordering", true, 0, ""};
    for (std::size_t i = 0; i + 1 < fan.waves.size(); ++i) {
      const double gap = fan.waves[i + 1].min_speed() - fan.waves[i].max_speed();
      if (gap < -1e-12) {
        c.pass = false;
        c.residual = std::max(c.residual, -gap);
        c.detail = "speeds decrease between waves " + std::to_string(i) + " and " + std::to_string(i + 1);
      }
      if ((fan.waves[i].right - fan.waves[i + 1].left).norm() > 1e-12 * (1.0 + fan.waves[i].right.norm())) {
        c.pass = false;
        c.detail = "plateau mismatch after wave " + std::to_string(i);
      }
    }
    if (fan.boundary && !fan.waves.empty() && fan.waves.front().min_speed() < -opt.zero_speed) {
      c.pass = false;
      c.detail = "negative-speed wave in a boundary fan";
    }
    if (fan.boundary && !fan.waves.empty() && !(fan.waves.front().left == fan.trace)) {
      c.pass = false;
      c.detail = "trace differs from the left state of the slowest wave";
    }
    rep.checks.push_back(c);
  }
  // (4) rarefaction fans
  {
    CheckResult c{"fans", true, 0, ""};
    for (const Wave& w : fan.waves) {
      if (w.kind != WaveKind::Rarefaction) continue;
      for (std::size_t j = 0; j < w.fan_speeds.size(); ++j) {
        std::vector<double> xs{w.fan_speeds[j]};
        if (j + 1 < w.fan_speeds.size()) xs.push_back(0.5 * (w.fan_speeds[j] + w.fan_speeds[j + 1]));
        for (double xi : xs) {
          const State v = w.fan_state(xi);
          const double lam = eigenpair(sys, v, w.family - 1, nullptr, opt.waves.spectral).lambda;
          c.residual = std::max(c.residual, std::abs(lam - xi));
        }
      }
    }
    rep.max_fan_residual = c.residual;
    c.pass = c.residual <= opt.tol_fan;
    if (!c.pass) c.detail = "lambda(V(xi)) differs from xi";
    rep.checks.push_back(c);
  }
  if (fan.boundary && fan.boundary_group) {
    const BoundaryGroup& bg = *fan.boundary_group;
    // (5a) zero-speed group
    CheckResult c{"boundary_flux", true, 0, ""};
    c.residual = (sys.flux(bg.underline_U) - sys.flux(fan.trace)).norm();
    c.pass = c.residual <= tol_rh;
    if (!bg.zero_speed_waves.empty()) {
      if (!(bg.zero_speed_waves.front().left == bg.underline_U) || !(bg.zero_speed_waves.back().right == fan.trace)) {
        c.pass = false;
        c.detail = "zero-speed waves do not connect underline-U to the trace";
      }
    }
    if (!c.pass && c.detail.empty()) c.detail = "F(underline-U) differs from F(trace)";
    rep.checks.push_back(c);
    check_jumps(bg.zero_speed_waves, "zero_speed_jumps", true);
    // (5b) layer
    CheckResult l{"layer", true, 0, ""};
    const BoundaryLayerProfile& p = bg.layer;
    l.residual = p.residual;
    l.pass = p.residual <= opt.layers.tol_layer && p.tail_error <= opt.layers.tol_tail &&
             (p.equilibrium - bg.underline_U).norm() == 0 && (p.W.front() - fan.left_state).norm() == 0;
    if (!l.pass)
      l.detail = "layer residual " + std::to_string(p.residual) + ", tail " + std::to_string(p.tail_error);
    rep.checks.push_back(l);
  }
  if (!std::isfinite(rep.min_liu_margin)) rep.min_liu_margin = 0;
  return rep;
}

double fan_distance(const WaveFan& a, const WaveFan& b) {
  if (a.waves.size() != b.waves.size()) return kInf;
  double d = 0;
  for (std::size_t i = 0; i < a.waves.size(); ++i) {
    const Wave& x = a.waves[i];
    const Wave& y = b.waves[i];
    if (x.kind != y.kind || x.family != y.family) return kInf;
    d = std::max({d, (x.left - y.left).norm(), (x.right - y.right).norm(), std::abs(x.min_speed() - y.min_speed()),
                  std::abs(x.max_speed() - y.max_speed())});
  }
  if (a.trace.size() == b.trace.size() && a.trace.size() > 0) d = std::max(d, (a.trace - b.trace).norm());
  if (a.boundary_group && b.boundary_group) {
    const auto& ga = *a.boundary_group;
    const auto& gb = *b.boundary_group;
    d = std::max(d, (ga.underline_U - gb.underline_U).norm());
    if (ga.zero_speed_waves.size() != gb.zero_speed_waves.size()) return kInf;
    for (std::size_t i = 0; i < ga.zero_speed_waves.size(); ++i)
      d = std::max({d, (ga.zero_speed_waves[i].left - gb.zero_speed_waves[i].left).norm(),
                    (ga.zero_speed_waves[i].right - gb.zero_speed_waves[i].right).norm()});
  } else if (a.boundary_group.has_value() != b.boundary_group.has_value()) {
    return kInf;
  }
  return d;
}

namespace {

nlohmann::json vec_json(const State& u) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < u.size(); ++i) j.push_back(u[i]);
  return j;
}

nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json wave_json(const Wave& w) {
  nlohmann::json j;
  j["kind"] = to_string(w.kind);
  j["family"] = w.family;
  j["left"] = vec_json(w.left);
  j["right"] = vec_json(w.right);
  if (w.kind == WaveKind::Rarefaction) {
    j["speed_lo"] = num(w.speed_lo);
    j["speed_hi"] = num(w.speed_hi);
    j["fan_samples"] = w.fan_states.size();
  } else {
    j["speed"] = num(w.speed);
  }
  j["strength"] = num(w.strength);
  return j;
}

}  // namespace

std::string fan_json(const WaveFan& fan, const ValidationReport* report, int indent) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = fan.boundary ? "boundary-riemann" : "riemann";
  j[fan.boundary ? "U_D" : "U_minus"] = vec_json(fan.left_state);
  j[fan.boundary ? "U_0" : "U_plus"] = vec_json(fan.right_state);
  j["strengths"] = fan.strengths;
  j["newton"] = {{"residual", num(fan.newton_residual)}, {"iterations", fan.newton_iterations}};
  if (fan.regime) {
    if (fan.regime->characteristic()) {
      j["regime"] = {{"kind", "characteristic"}, {"k", fan.regime->k()}, {"c", num(fan.regime->c)}, {"Kdelta", num(fan.regime->Kdelta)}};
    } else {
      j["regime"] = {{"kind", "non-characteristic"}, {"p", fan.regime->p()}, {"c", num(fan.regime->c)}};
    }
  }
  j["waves"] = nlohmann::json::array();
  for (const Wave& w : fan.waves) j["waves"].push_back(wave_json(w));
  j["plateaus"] = nlohmann::json::array();
  for (const State& p : fan.plateaus) j["plateaus"].push_back(vec_json(p));
  j["trace"] = vec_json(fan.trace);
  j["total_variation"] = num(fan.total_variation);
  if (fan.boundary_group) {
    const auto& bg = *fan.boundary_group;
    nlohmann::json g;
    g["underline_U"] = vec_json(bg.underline_U);
    g["zero_speed_waves"] = nlohmann::json::array();
    for (const Wave& w : bg.zero_speed_waves) g["zero_speed_waves"].push_back(wave_json(w));
    g["s_underline_ambiguous"] = bg.s_underline_ambiguous;
    const auto& p = bg.layer;
    g["layer"] = {{"equilibrium", vec_json(p.equilibrium)},
                  {"boundary_value", vec_json(p.boundary_value)},
                  {"nodes", p.y.size()},
                  {"y_max", p.y.empty() ? 0.0 : p.y.back()},
                  {"residual", num(p.residual)},
                  {"algebraic_residual", num(p.algebraic_residual)},
                  {"tail_error", num(p.tail_error)},
                  {"decay_rate", num(p.decay_rate)},
                  {"stable_dim", p.stable_dim},
                  {"shot_backward", p.shot_backward}};
    j["boundary_group"] = g;
  } else {
    j["boundary_group"] = nullptr;
  }
  if (report) {
    nlohmann::json r;
    r["all_pass"] = report->all_pass();
    r["max_rh"] = num(report->max_rh);
    r["min_liu_margin"] = num(report->min_liu_margin);
    r["max_fan_residual"] = num(report->max_fan_residual);
    r["checks"] = nlohmann::json::array();
    for (const auto& c : report->checks)
      r["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"residual", num(c.residual)}, {"detail", c.detail}});
    j["validation"] = r;
  }
  return j.dump(indent);
}

void write_fan_samples_csv(std::ostream& os, const WaveFan& fan, double xi_min, double xi_max, int count) {
  const auto old = os.precision(17);
  const Eigen::Index n = fan.right_state.size();
  os << "xi";
  for (Eigen::Index i = 0; i < n; ++i) os << ",V" << i;
  os << '\n';
  count = std::max(count, 2);
  for (int j = 0; j < count; ++j) {
    const double xi = xi_min + (xi_max - xi_min) * j / (count - 1);
    const State v = evaluate(fan, xi);
    os << xi;
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << v[i];
    os << '\n';
  }
  os.precision(old);
}

}  // namespace brp
