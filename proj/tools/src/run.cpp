#include <brp/cli.hpp>
#include <brp/error.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace brp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

SuiteRunner& suite_runner() {
  static SuiteRunner r;
  return r;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json vec(const State& u) {
  json j = json::array();
  for (Eigen::Index i = 0; i < u.size(); ++i) j.push_back(u[i]);
  return j;
}

json report_json(const ValidationReport& r) {
  json j;
  j["all_pass"] = r.all_pass();
  j["max_rh"] = num(r.max_rh);
  j["min_liu_margin"] = num(r.min_liu_margin);
  j["max_fan_residual"] = num(r.max_fan_residual);
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"residual", num(c.residual)}, {"detail", c.detail}});
  return j;
}

json hypotheses_json(const HypothesisReport& h) {
  return {{"samples", h.samples},
          {"hyperbolic", h.hyperbolic},
          {"min_gap", num(h.min_gap)},
          {"viscosity_invertible", h.viscosity_invertible},
          {"entropy_checked", h.entropy_checked},
          {"entropy_residual", num(h.entropy_residual)},
          {"convex_ok", h.convex_ok},
          {"alpha", num(h.alpha)},
          {"dissipative_ok", h.dissipative_ok},
          {"all_ok", h.all_ok()},
          {"failures", h.failures}};
}

// FNV-1a, for per-config output directories.
std::string short_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 12);
}

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  template <class F>
  void file(const std::string& name, F&& body) {
    std::ofstream os(dir_ / name);
    if (!os) fail(ErrorKind::InvalidArgument, "cannot write " + (dir_ / name).string());
    body(os);
    files_.push_back(name);
  }

  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::pair<double, double> sample_window(const HyperbolicSystem& sys, const WaveFan& fan, const RunConfig& cfg) {
  double lo = 0, hi = 0;
  for (const State& p : fan.plateaus) {
    const SpectralData sd = eigen_decompose(sys, p, cfg.riemann.waves.spectral);
    lo = std::min(lo, sd.eigenvalues[0]);
    hi = std::max(hi, sd.eigenvalues[sd.eigenvalues.size() - 1]);
  }
  if (fan.boundary) lo = 0;
  else lo -= 0.5;
  hi += 0.5;
  return {cfg.xi_min.value_or(lo), cfg.xi_max.value_or(hi)};
}

int solve_fan(const HyperbolicSystem& sys, const RunConfig& cfg, bool boundary, Writer& out, json& result,
              std::ostream& log) {
  const WaveFan fan = boundary ? solve_boundary_riemann(sys, *cfg.u0, *cfg.ud, cfg.riemann)
                               : solve_riemann(sys, *cfg.u_minus, *cfg.u_plus, cfg.riemann);
  const ValidationReport rep = validate_solution(sys, fan, cfg.riemann);
  result["fan"] = json::parse(fan_json(fan, &rep, -1));
  result["validation"] = report_json(rep);
  if (cfg.json) out.file("fan.json", [&](std::ostream& os) { os << fan_json(fan, &rep, 2) << '\n'; });
  if (cfg.csv) {
    const auto [lo, hi] = sample_window(sys, fan, cfg);
    out.file("fan_samples.csv", [&](std::ostream& os) { write_fan_samples_csv(os, fan, lo, hi, cfg.samples); });
    if (fan.boundary_group && !fan.boundary_group->layer.trivial())
      out.file("layer.csv", [&](std::ostream& os) { write_layer_csv(os, fan.boundary_group->layer); });
  }
  log << fan.waves.size() << " wave(s), Newton residual " << fan.newton_residual << ", validation "
      << (rep.all_pass() ? "pass" : "FAIL") << '\n';
  for (const auto& c : rep.checks)
    if (!c.pass) log << "  " << c.name << ": " << c.detail << '\n';
  return rep.all_pass() ? 0 : 1;
}

json solution_json(const GridSolution& s) {
  json j;
  j["kind"] = s.kind == GridSolution::Kind::SelfSimilar ? "self-similar" : "time-dependent";
  j["epsilon"] = s.epsilon;
  j["nodes"] = s.x.size();
  j["dx"] = num(s.dx);
  j["length"] = num(s.length);
  j["tv"] = s.tv;
  if (s.kind == GridSolution::Kind::TimeDependent) {
    j["steps"] = s.steps;
    j["dt_last"] = num(s.dt);
    j["times"] = s.t;
    j["max_drift"] = num(s.max_drift);
    if (!s.entropy.empty()) {
      j["entropy_balance"] = s.entropy;
      j["entropy_increase"] = num(s.entropy_increase);
    }
  } else {
    j["eps_stages"] = s.eps_stages;
    j["newton_iterations"] = s.newton_iterations;
    j["newton_residual"] = num(s.newton_residual);
  }
  return j;
}

}  // namespace

void set_suite_runner(SuiteRunner runner) { suite_runner() = std::move(runner); }

RunResult run(const RunConfig& cfg, std::ostream& log) {
  RunResult res;
  fs::path dir;
  if (!cfg.output_dir.empty()) {
    dir = cfg.output_dir;
  } else {
    const char* env = std::getenv("BRK_OUTPUT_DIR");
    dir = fs::path(env && *env ? env : "brk_out") / (std::string(to_string(cfg.problem)) + "-" + short_hash(cfg.effective_text()));
  }
  Writer out(dir);
  res.output_dir = dir.string();
  out.file("effective_config.ini", [&](std::ostream& os) { os << cfg.effective_text().substr(1); });

  json summary;
  summary["schema"] = 1;
  summary["problem"] = to_string(cfg.problem);
  summary["system"] = cfg.system.name;
  json result;
  int code = 0;
  try {
    if (cfg.problem == Problem::Suite) {
      if (!suite_runner()) fail(ErrorKind::Unsupported, "no acceptance battery linked into this binary");
      std::string s;
      code = suite_runner()(cfg, log, s);
      result = json::parse(s);
      if (cfg.json) out.file("suite.json", [&](std::ostream& os) { os << result.dump(2) << '\n'; });
    } else {
      const HyperbolicSystem sys = models::make(cfg.system);
      switch (cfg.problem) {
        case Problem::Riemann:
          code = solve_fan(sys, cfg, false, out, result, log);
          break;
        case Problem::BoundaryRiemann:
          code = solve_fan(sys, cfg, true, out, result, log);
          break;
        case Problem::ClassicalSim:
        case Problem::SelfSimilarSim: {
          const bool classical = cfg.problem == Problem::ClassicalSim;
          const GridSolution s = classical ? simulate_classical(sys, *cfg.u0, *cfg.ud, cfg.eps, cfg.grid)
                                           : simulate_selfsimilar(sys, *cfg.u0, *cfg.ud, cfg.eps, cfg.grid);
          result["solution"] = solution_json(s);
          if (cfg.csv) out.file("solution.csv", [&](std::ostream& os) { write_solution_csv(os, s); });
          log << s.x.size() << " nodes, eps " << cfg.eps << '\n';
          break;
        }
        case Problem::CompareLimits: {
          const ComparisonTable t = compare_limits(sys, *cfg.u0, *cfg.ud, cfg.eps_list, cfg.grid);
          json rows = json::array();
          for (const auto& r : t.rows) {
            rows.push_back({{"epsilon", r.epsilon}, {"d_UZ", num(r.d_UZ)}, {"d_Ufan", num(r.d_Ufan)},
                            {"d_Zfan", num(r.d_Zfan)}, {"p_hat", num(r.p_hat)}, {"ok", r.ok}, {"error", r.error}});
            log << "eps " << r.epsilon << "  d_UZ " << r.d_UZ << "  d_Ufan " << r.d_Ufan << "  d_Zfan " << r.d_Zfan
                << (r.ok ? "" : "  FAILED: " + r.error) << '\n';
            if (!r.ok) code = 1;
          }
          const WaveFan fan = solve_boundary_riemann(sys, *cfg.u0, *cfg.ud, cfg.riemann);
          const ValidationReport rep = validate_solution(sys, fan, cfg.riemann);
          if (!rep.all_pass()) code = 1;
          result = {{"T", t.T}, {"window", t.window}, {"rows", rows}, {"validation", report_json(rep)}};
          if (cfg.csv) out.file("comparison.csv", [&](std::ostream& os) { write_comparison_csv(os, t); });
          break;
        }
        case Problem::BDependence: {
          const Matrix b1 = cfg.b1.size() ? cfg.b1 : Matrix::Identity(cfg.n, cfg.n);
          const BDependence d = viscosity_dependence_experiment(sys, *cfg.u0, *cfg.ud, b1, cfg.b2, cfg.eps, cfg.grid);
          result = {{"xi", d.xi}, {"trace_1", vec(d.trace_1)}, {"trace_2", vec(d.trace_2)}, {"gap", d.gap}};
          if (cfg.csv)
            out.file("b_dependence.csv", [&](std::ostream& os) {
              os.precision(17);
              os << "viscosity,xi";
              for (int i = 0; i < cfg.n; ++i) os << ",U" << i;
              os << '\n';
              for (int k = 0; k < 2; ++k) {
                const State& tr = k == 0 ? d.trace_1 : d.trace_2;
                os << "B_" << k + 1 << ',' << d.xi;
                for (int i = 0; i < cfg.n; ++i) os << ',' << tr[i];
                os << '\n';
              }
            });
          log << "trace gap " << d.gap << " at xi = " << d.xi << '\n';
          break;
        }
        case Problem::Validate: {
          HypothesisOptions ho;
          ho.spectral = cfg.riemann.waves.spectral;
          const HypothesisReport h = check_hypotheses(sys, SamplingPlan{5, 200, cfg.seed}, ho);
          result["hypotheses"] = hypotheses_json(h);
          log << "hypotheses " << (h.all_ok() ? "ok" : "FAIL") << '\n';
          for (const auto& f : h.failures) log << "  " << f << '\n';
          json fan_result;
          code = solve_fan(sys, cfg, !(cfg.u_minus && cfg.u_plus), out, fan_result, log);
          result.update(fan_result);
          if (!h.all_ok()) code = 1;
          break;
        }
        case Problem::Suite:
          break;
      }
    }
    summary["status"] = code == 0 ? "ok" : "failed";
  } catch (const Error& e) {
    code = 2;
    summary["status"] = "error";
    summary["error"] = {{"kind", std::string(brp::to_string(e.kind()))}, {"message", e.what()}};
    log << "error: " << e.what() << '\n';
  }
  summary["exit_code"] = code;
  summary["result"] = result;
  auto files = out.files();
  files.push_back("summary.json");
  summary["files"] = files;
  res.summary = summary.dump(2);
  out.file("summary.json", [&](std::ostream& os) { os << res.summary << '\n'; });
  res.files = out.files();
  res.exit_code = code;
  return res;
}

}  // namespace brp::cli
