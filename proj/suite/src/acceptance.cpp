#include <brp/suite/acceptance.hpp>
#include <brp/suite/oracles.hpp>

#include <brp/envelope.hpp>
#include <brp/error.hpp>
#include <brp/layers.hpp>
#include <brp/models.hpp>
#include <brp/riemann.hpp>
#include <brp/viscous.hpp>
#include <brp/waves.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace brp::suite {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

State v1(double a) {
  State u(1);
  u << a;
  return u;
}
State v2(double a, double b) {
  State u(2);
  u << a, b;
  return u;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

struct Ctx {
  CriterionResult& r;
  bool ok = true;
  std::vector<std::string> failures;

  void metric(const std::string& k, double v) { r.metrics.emplace_back(k, v); }
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (failures.size() < 4) failures.push_back(what);
    }
  }
};

// 1. Envelopes against the brute-force oracle, plus the splice identity.
void envelope_suite(Ctx& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  long nodes = 0, mismatches = 0, splice_mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const SampledFunction f = oracle::random_pl(rng, 100);
    nodes += static_cast<long>(f.size());
    const auto conv = convex_envelope(f);
    const auto conc = concave_envelope(f);
    const auto mono = monotone_convex_envelope(f);
    const auto bc = oracle::brute_convex(f);
    const auto bk = oracle::brute_concave(f);
    const auto bm = oracle::brute_monotone_convex(f);
    const std::size_t t0 = splice_point(conv);
    for (std::size_t i = 0; i < f.size(); ++i) {
      mismatches += conv.values[i] != bc[i];
      mismatches += conc.values[i] != bk[i];
      mismatches += mono.values[i] != bm[i];
      const double spliced = i <= t0 ? conv.values[t0] : conv.values[i];
      splice_mismatches += mono.values[i] != spliced;
    }
  }
  c.metric("nodes", static_cast<double>(nodes));
  c.metric("hull_mismatches", static_cast<double>(mismatches));
  c.metric("splice_mismatches", static_cast<double>(splice_mismatches));
  c.require(mismatches == 0, std::to_string(mismatches) + " node(s) differ from the brute-force hull");
  c.require(splice_mismatches == 0, std::to_string(splice_mismatches) + " node(s) break the splice identity");
}

// 2. Burgers shock, rarefaction, and the tanh layer.
void burgers_oracles(Ctx& c) {
  const HyperbolicSystem b = models::burgers();
  double err = 0;
  const WaveFan shock = solve_riemann(b, v1(1), v1(0));
  c.require(shock.waves.size() == 1 && shock.waves[0].kind == WaveKind::Shock, "1 -> 0 is not a single shock");
  if (!shock.waves.empty()) err = std::max(err, std::abs(shock.waves[0].speed - 0.5));
  const WaveFan rare = solve_riemann(b, v1(-1), v1(1));
  c.require(rare.waves.size() == 1 && rare.waves[0].kind == WaveKind::Rarefaction, "-1 -> 1 is not a rarefaction");
  for (int j = 0; j <= 600; ++j) {
    const double xi = -1.5 + 3.0 * j / 600;
    err = std::max(err, std::abs(evaluate(rare, xi)[0] - oracle::burgers_riemann(-1, 1, xi)));
    if (std::abs(xi - 0.5) > 1e-8) err = std::max(err, std::abs(evaluate(shock, xi)[0] - oracle::burgers_riemann(1, 0, xi)));
  }
  c.metric("evaluation_error", err);
  c.require(err <= 1e-8, "wave-fan evaluation error " + fmt(err) + " > 1e-8");

  const BoundaryLayerProfile p = shoot_layer(b, v1(-1), v1(0));
  double lerr = 0;
  for (std::size_t j = 0; j < p.y.size(); ++j) lerr = std::max(lerr, std::abs(p.W[j][0] + std::tanh(p.y[j] / 2)));
  c.metric("layer_error", lerr);
  c.require(lerr <= 1e-6, "layer differs from -tanh(y/2) by " + fmt(lerr));
}

// 3. Linear closed form.
void linear_closed_form(Ctx& c) {
  Matrix a(2, 2);
  a << -1, 0, 0, 1;
  const HyperbolicSystem sys = models::linear2(a, Matrix::Identity(2, 2));
  const State u0 = v2(1, 2), ud = v2(3, 4);
  const auto o = oracle::linear_diag_boundary(u0, ud);
  const WaveFan fan = solve_boundary_riemann(sys, u0, ud);
  double err = (fan.trace - o.trace).norm();
  c.require(fan.waves.size() == 1, "expected one wave, got " + std::to_string(fan.waves.size()));
  if (fan.waves.size() == 1) {
    const Wave& w = fan.waves[0];
    c.require(w.kind == WaveKind::ContactDiscontinuity, std::string("wave is a ") + to_string(w.kind));
    err = std::max({err, std::abs(w.speed - o.contact_speed), (w.left - o.trace).norm(), (w.right - u0).norm()});
  }
  double lerr = 0;
  if (fan.boundary_group) {
    const auto& p = fan.boundary_group->layer;
    for (std::size_t j = 0; j < p.y.size(); ++j) lerr = std::max(lerr, (p.W[j] - o.layer(p.y[j])).norm());
  } else {
    lerr = kInf;
  }
  c.metric("trace_contact_error", err);
  c.metric("layer_error", lerr);
  c.require(err <= 1e-8, "trace/contact error " + fmt(err));
  c.require(lerr <= 1e-8, "layer error " + fmt(lerr));
}

// Random small-data problems shared by 4 and 5.
struct Problem {
  const HyperbolicSystem* sys;
  State u0, ud;
};

std::vector<Problem> small_data(const HyperbolicSystem& ps, const HyperbolicSystem& bu, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Problem> out;
  for (int i = 0; i < 50; ++i) {
    const State u0 = v2(1.0 + 0.2 * u(rng), 0.2 * u(rng));
    const double ang = M_PI * u(rng);
    const double r = 0.01 + 0.09 * (0.5 + 0.5 * u(rng));
    out.push_back({&ps, u0, u0 + r * v2(std::cos(ang), std::sin(ang))});
  }
  for (int i = 0; i < 50; ++i) {
    const State u0 = v1(0.1 * u(rng));
    out.push_back({&bu, u0, u0 + v1(0.1 * u(rng))});
  }
  return out;
}

// 4. Structural contract on 100 random problems.
void structural(Ctx& c, std::uint64_t seed) {
  const HyperbolicSystem ps = models::p_system();
  const HyperbolicSystem bu = models::burgers();
  double max_rh = 0, min_liu = kInf, max_fan = 0;
  int passed = 0, idx = 0;
  for (const Problem& p : small_data(ps, bu, seed)) {
    ++idx;
    try {
      const WaveFan fan = solve_boundary_riemann(*p.sys, p.u0, p.ud);
      const ValidationReport rep = validate_solution(*p.sys, fan);
      max_rh = std::max(max_rh, rep.max_rh);
      min_liu = std::min(min_liu, rep.min_liu_margin);
      max_fan = std::max(max_fan, rep.max_fan_residual);
      bool ok = rep.all_pass() && rep.max_rh <= 1e-10 && rep.min_liu_margin >= -1e-8 && rep.max_fan_residual <= 1e-6;
      if (p.sys == &ps) ok = ok && fan.regime && !fan.regime->characteristic();
      else ok = ok && fan.regime && fan.regime->characteristic();
      if (ok) ++passed;
      std::string why;
      for (const auto& ch : rep.checks)
        if (!ch.pass) why += " " + ch.name + ": " + ch.detail;
      c.require(ok, p.sys->name() + " problem " + std::to_string(idx) + " failed:" + why);
    } catch (const Error& e) {
      c.require(false, p.sys->name() + " problem " + std::to_string(idx) + ": " + e.what());
    }
  }
  c.metric("passed", passed);
  c.metric("max_rh", max_rh);
  c.metric("min_liu_margin", min_liu);
  c.metric("max_fan_residual", max_fan);
}

// 5. Two Newton starts per problem, no fallback guesses.
void uniqueness(Ctx& c, std::uint64_t seed) {
  const HyperbolicSystem ps = models::p_system();
  const HyperbolicSystem bu = models::burgers();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0;
  int idx = 0, agreed = 0;
  for (const Problem& p : small_data(ps, bu, seed)) {
    ++idx;
    const int n = p.sys->dim();
    const double scale = (p.ud - p.u0).norm();
    RiemannOptions a, b;
    a.initial = std::vector<double>(n, 0.0);
    std::vector<double> start(n);
    for (double& x : start) x = scale * u(rng);
    b.initial = start;
    a.fallback_guesses = b.fallback_guesses = false;
    try {
      const WaveFan fa = solve_boundary_riemann(*p.sys, p.u0, p.ud, a);
      const WaveFan fb = solve_boundary_riemann(*p.sys, p.u0, p.ud, b);
      const double d = fan_distance(fa, fb);
      worst = std::max(worst, d);
      if (d <= 1e-8) ++agreed;
      c.require(d <= 1e-8, p.sys->name() + " problem " + std::to_string(idx) + ": distance " + fmt(d));
    } catch (const Error& e) {
      c.require(false, p.sys->name() + " problem " + std::to_string(idx) + ": " + e.what());
    }
  }
  c.metric("agreed", agreed);
  c.metric("max_distance", worst);
}

// 6. Classical vs self-similar viscous limits.
void viscous_limits(Ctx& c) {
  Matrix a(2, 2);
  a << -1, 0, 0, 1;
  const HyperbolicSystem lin = models::linear2(a, Matrix::Identity(2, 2));
  const HyperbolicSystem ps = models::p_system();
  struct Case {
    const char* name;
    const HyperbolicSystem* sys;
    State u0, ud;
  };
  const std::vector<Case> cases = {{"linear2", &lin, v2(1, 2), v2(1.03, 2.04)},
                                   {"p-system", &ps, v2(1, 0), v2(1.03, -0.04)}};
  for (const Case& k : cases) {
    const ComparisonTable t = compare_limits(*k.sys, k.u0, k.ud, {0.08, 0.04, 0.02});
    const std::string tag = k.name;
    bool rows_ok = true;
    for (const auto& r : t.rows) {
      rows_ok = rows_ok && r.ok;
      c.metric(tag + ".d_UZ(" + fmt(r.epsilon) + ")", r.d_UZ);
      if (!r.ok) c.require(false, tag + " eps " + fmt(r.epsilon) + ": " + r.error);
    }
    if (!rows_ok) continue;
    const auto& R = t.rows;
    c.metric(tag + ".ratio", R[2].d_UZ / R[1].d_UZ);
    c.metric(tag + ".d_Ufan(0.02)", R[2].d_Ufan);
    c.metric(tag + ".d_Zfan(0.02)", R[2].d_Zfan);
    c.require(R[0].d_UZ > R[1].d_UZ && R[1].d_UZ > R[2].d_UZ, tag + ": d_UZ not strictly decreasing");
    c.require(R[2].d_UZ <= 0.7 * R[1].d_UZ, tag + ": d_UZ(0.02)/d_UZ(0.04) = " + fmt(R[2].d_UZ / R[1].d_UZ));
    c.require(R[2].d_UZ <= 3.0 * std::max(R[2].d_Ufan, R[2].d_Zfan), tag + ": d_UZ(0.02) exceeds 3 max(d_Ufan, d_Zfan)");
  }
}

// 7. Sign counts of DF and B^-1 DF under dissipative B.
void signature(Ctx& c, std::uint64_t seed) {
  Matrix a(2, 2);
  a << 0.5, 1.0, 0.3, -0.7;
  models::PSystemParams shifted;
  shifted.frame_speed = -0.6;
  const std::vector<HyperbolicSystem> systems = {models::burgers(), models::cubic(),
                                                 models::linear2(a, Matrix::Identity(2, 2)), models::p_system(),
                                                 models::p_system(shifted)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0), g(-1.0, 1.0);
  int draws = 0, consistent = 0, skipped = 0;
  while (draws < 1000) {
    const HyperbolicSystem& sys = systems[static_cast<std::size_t>(draws + skipped) % systems.size()];
    const int n = sys.dim();
    const Box& box = sys.region();
    State s(n);
    for (int i = 0; i < n; ++i) s[i] = box.lower[i] + u(rng) * (box.upper[i] - box.lower[i]);
    // B = H^-1 (P + K), P symmetric positive definite, K skew: sym(H B) = P > 0
    Matrix m(n, n), k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m(i, j) = g(rng);
        k(i, j) = 2.0 * g(rng);
      }
    const Matrix pm = m * m.transpose() + 0.1 * Matrix::Identity(n, n);
    const Matrix km = 0.5 * (k - k.transpose());
    const Matrix h = sys.entropy().hess_eta(s);
    const Matrix b = h.inverse() * (pm + km);
    const Matrix df = sys.jacobian(s);
    const double sym_min = Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h * b + (h * b).transpose())).eigenvalues()[0];
    const double lam_min = Eigen::EigenSolver<Matrix>(df).eigenvalues().cwiseAbs().minCoeff();
    if (!(sym_min > 0) || lam_min < 1e-6) {
      ++skipped;
      continue;
    }
    ++draws;
    try {
      const SignatureCounts sc = eigen_signature_compare(df, b);
      if (sc.consistent()) ++consistent;
      else c.require(false, sys.name() + ": sign counts differ at draw " + std::to_string(draws));
    } catch (const Error& e) {
      c.require(false, sys.name() + ": " + e.what());
    }
  }
  c.metric("draws", draws);
  c.metric("consistent", consistent);
  c.metric("skipped", skipped);
}

// 8. Decomposition of characteristic p-system layers.
void decay_verifier(Ctx& c) {
  models::PSystemParams prm;
  prm.frame_speed = -std::sqrt(1.4);
  const HyperbolicSystem fs = models::p_system(prm);
  for (double sign : {1.0, -1.0}) {
    std::vector<double> deltas, maxp;
    const std::string tag = sign > 0 ? "plus" : "minus";
    for (double d : {0.02, 0.04, 0.08}) {
      const State e = v2(1.0 + d, 0.0);
      const SpectralData sd = eigen_decompose(fs, e);
      const State ud = e + d * (0.5 * sd.right.col(0) + sign * 0.5 * sd.right.col(1));
      const BoundaryRegime reg = classify_boundary(fs, fs.region().around(e, 2 * d));
      c.require(reg.characteristic() && reg.k() == 2, tag + ": regime at delta " + fmt(d) + " is not characteristic k = 2");
      const BoundaryLayerProfile p = shoot_layer(fs, e, ud);
      const LayerDecomposition dec = decompose_layer(fs, p, e, 2);
      c.metric(tag + ".rate_s(" + fmt(d) + ")", dec.rate_s);
      c.metric(tag + ".max_p(" + fmt(d) + ")", dec.max_p);
      c.require(dec.rate_s >= 0.8 * (reg.c / 2), tag + ": U_s rate " + fmt(dec.rate_s) + " < 0.8 c/2 = " + fmt(0.4 * reg.c));
      deltas.push_back(d);
      maxp.push_back(dec.max_p);
    }
    const double slope = oracle::loglog_slope(deltas, maxp);
    c.metric(tag + ".slope", slope);
    c.require(slope >= 1.7 && slope <= 2.3, tag + ": max|U_p| slope " + fmt(slope) + " outside [1.7, 2.3]");
  }
}

// 9. Trace dependence on the viscosity matrix.
void b_dependence(Ctx& c) {
  Matrix a(2, 2), mix(2, 2);
  a << -1, 0, 0, 1;
  mix << 1, 0.8, 0.8, 1;
  const Matrix id = Matrix::Identity(2, 2);
  const HyperbolicSystem lin = models::linear2(a, id);
  const State u0 = v2(1, 2), ud = v2(1.3, 2.4);
  const BDependence differ = viscosity_dependence_experiment(lin, u0, ud, id, mix, 0.02);
  const BDependence same = viscosity_dependence_experiment(lin, u0, ud, id, id, 0.02);
  c.metric("gap_mixing", differ.gap);
  c.metric("gap_same", same.gap);
  c.require(differ.gap > 0 && differ.gap >= 10.0 * same.gap, "mixing gap " + fmt(differ.gap) + " < 10 x control gap " + fmt(same.gap));
  const HyperbolicSystem bu = models::burgers();
  std::vector<double> gaps;
  for (double eps : {0.08, 0.04, 0.02}) {
    const BDependence s = viscosity_dependence_experiment(bu, v1(0.5), v1(1.0), Matrix::Identity(1, 1),
                                                          2.0 * Matrix::Identity(1, 1), eps);
    gaps.push_back(s.gap);
    c.metric("scalar_gap(" + fmt(eps) + ")", s.gap);
  }
  c.require(gaps[0] > gaps[1] && gaps[1] > gaps[2], "scalar gap does not decrease with eps");
  c.require(gaps[2] < 0.1 * differ.gap, "scalar gap at eps = 0.02 is not small against the system gap");
}

// 10. Third-order contact and monotone speed profiles.
void curve_geometry(Ctx& c) {
  const HyperbolicSystem ps = models::p_system();
  const State base = v2(1, 0);
  WaveOptions wo;
  for (int fam : {1, 2}) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> ss, ds;
      for (int k = 0; k < 7; ++k) {
        const double s = 0.02 * std::pow(2.0, k / 2.0);
        const HugoniotLocus h = hugoniot_locus_to(ps, base, fam, sign * s, 64, wo);
        const State hw = sign > 0 ? h.samples.back().W : h.samples.front().W;
        const auto r = rarefaction_curve(ps, base, fam, sign * s, s / 256, wo);
        ss.push_back(s);
        ds.push_back((hw - r.back().U).norm());
      }
      const double slope = oracle::loglog_slope(ss, ds);
      const std::string tag = "family" + std::to_string(fam) + (sign > 0 ? "+" : "-");
      c.metric(tag + ".contact_slope", slope);
      c.require(slope >= 2.6 && slope <= 3.4, tag + ": contact slope " + fmt(slope) + " outside [2.6, 3.4]");
    }
  }
  // speeds nondecreasing from the left state to the right state
  struct Curve {
    const HyperbolicSystem* sys;
    State base;
    int family;
    double s;
    bool characteristic;
  };
  const HyperbolicSystem bu = models::burgers();
  const HyperbolicSystem cu = models::cubic();
  std::vector<Curve> curves;
  for (int fam : {1, 2})
    for (double s : {-0.4, -0.2, -0.1, 0.1, 0.2, 0.4}) curves.push_back({&ps, base, fam, s, false});
  for (double s : {-1.5, -0.5, 0.5, 1.5}) {
    curves.push_back({&bu, v1(0.2), 1, s, false});
    curves.push_back({&cu, v1(1.0), 1, s, false});
    curves.push_back({&cu, v1(-0.5), 1, s, false});
  }
  for (double s : {-0.3, -0.1, 0.1, 0.3}) curves.push_back({&bu, v1(0.1), 1, s, true});
  int checked = 0, monotone = 0;
  for (const Curve& k : curves) {
    try {
      const WaveCurveResult w = k.characteristic ? characteristic_wave_fan_curve(*k.sys, k.base, k.family, k.s, wo)
                                                 : wave_fan_curve(*k.sys, k.base, k.family, k.s, wo);
      ++checked;
      // profile runs in increasing tau; the left state sits at tau = s
      std::vector<double> sig = w.sigma;
      if (k.s > 0) std::reverse(sig.begin(), sig.end());
      bool ok = std::is_sorted(sig.begin(), sig.end());
      if (ok) ++monotone;
      c.require(ok, k.sys->name() + " family " + std::to_string(k.family) + " s = " + fmt(k.s) + ": speeds not monotone");
    } catch (const Error& e) {
      c.require(false, k.sys->name() + " s = " + fmt(k.s) + ": " + e.what());
    }
  }
  c.metric("curves", checked);
  c.metric("monotone", monotone);
}

struct Entry {
  const char* title;
  double budget;
  std::function<void(Ctx&, std::uint64_t)> body;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"envelope suite", 5, [](Ctx& c, std::uint64_t s) { envelope_suite(c, s); }},
      {"Burgers oracles", 10, [](Ctx& c, std::uint64_t) { burgers_oracles(c); }},
      {"linear closed form", 5, [](Ctx& c, std::uint64_t) { linear_closed_form(c); }},
      {"structural contract", 120, [](Ctx& c, std::uint64_t s) { structural(c, s); }},
      {"uniqueness surrogate", 120, [](Ctx& c, std::uint64_t s) { uniqueness(c, s); }},
      {"classical vs self-similar limits", 600, [](Ctx& c, std::uint64_t) { viscous_limits(c); }},
      {"eigenvalue sign counts", 10, [](Ctx& c, std::uint64_t s) { signature(c, s); }},
      {"layer decay verifier", 60, [](Ctx& c, std::uint64_t) { decay_verifier(c); }},
      {"viscosity dependence", 120, [](Ctx& c, std::uint64_t) { b_dependence(c); }},
      {"wave-curve geometry", 30, [](Ctx& c, std::uint64_t) { curve_geometry(c); }},
  };
  return e;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  if (id < 1 || id > kCriteria) fail(ErrorKind::InvalidArgument, "criterion id out of range");
  const Entry& e = entries()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  r.budget = e.budget;
  Ctx c{r, true, {}};
  const auto t0 = Clock::now();
  try {
    e.body(c, opt.seed);
  } catch (const Error& err) {
    c.require(false, err.what());
  } catch (const std::exception& err) {
    c.require(false, std::string("unexpected: ") + err.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.seconds > r.budget) c.require(false, "took " + fmt(r.seconds) + " s, budget " + fmt(r.budget) + " s");
  r.pass = c.ok;
  for (std::size_t i = 0; i < c.failures.size(); ++i) r.detail += (i ? "; " : "") + c.failures[i];
  if (opt.log) *opt.log << format_line(r) << std::endl;
  return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
  }
  return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << r.title << " (" << fmt(r.seconds)
     << " s / " << r.budget << " s)";
  for (const auto& [k, v] : r.metrics) os << ' ' << k << '=' << fmt(v);
  if (!r.detail.empty()) os << " -- " << r.detail;
  return os.str();
}

std::string results_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : r.metrics) m[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds}, {"budget", r.budget},
                 {"detail", r.detail}, {"metrics", m}});
  }
  return nlohmann::json({{"all_pass", all_pass(results)}, {"criteria", j}}).dump();
}

}  // namespace brp::suite
