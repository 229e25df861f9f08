#include <brp/cli.hpp>
#include <brp/error.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace brp::cli {

namespace {

enum class Kind { Positive, NonNegative, Real, Count, Bool, Text, Vector, OptPositive };

struct KeySpec {
  const char* section;  // "" for top level
  const char* name;
  const char* def;
  Kind kind;
};

// Every accepted key, in echo order.
const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> keys = {
      {"", "problem", "riemann", Kind::Text},
      {"system", "name", "burgers", Kind::Text},
      {"system", "viscosity", "", Kind::Vector},
      {"system", "b", "", Kind::OptPositive},
      {"system", "matrix", "", Kind::Vector},
      {"system", "half_width", "", Kind::OptPositive},
      {"system", "kp", "", Kind::OptPositive},
      {"system", "gamma", "", Kind::OptPositive},
      {"system", "frame_speed", "", Kind::Vector},
      {"system", "v_min", "", Kind::OptPositive},
      {"system", "v_max", "", Kind::OptPositive},
      {"system", "u_bound", "", Kind::OptPositive},
      {"data", "U_minus", "", Kind::Vector},
      {"data", "U_plus", "", Kind::Vector},
      {"data", "U_0", "", Kind::Vector},
      {"data", "U_D", "", Kind::Vector},
      {"numerics", "tol_rh", "1e-10", Kind::Positive},
      {"numerics", "tol_liu", "1e-8", Kind::Positive},
      {"numerics", "tol_fp", "1e-10", Kind::Positive},
      {"numerics", "tol_ld", "1e-9", Kind::Positive},
      {"numerics", "tol_eig", "1e-10", Kind::Positive},
      {"numerics", "gap_min", "1e-6", Kind::Positive},
      {"numerics", "c_min", "1e-3", Kind::Positive},
      {"numerics", "cells_per_unit", "400", Kind::Positive},
      {"numerics", "min_cells", "128", Kind::Count},
      {"numerics", "max_iter", "500", Kind::Count},
      {"numerics", "hugoniot_newton_tol", "1e-14", Kind::Positive},
      {"numerics", "ds_min", "1e-9", Kind::Positive},
      {"numerics", "refine_sonic", "true", Kind::Bool},
      {"numerics", "tol_newton", "1e-12", Kind::Positive},
      {"numerics", "newton_max_iter", "100", Kind::Count},
      {"numerics", "fd_step", "1e-6", Kind::Positive},
      {"numerics", "data_max", "", Kind::OptPositive},
      {"numerics", "tv_factor", "10", Kind::Positive},
      {"numerics", "tol_fan", "1e-6", Kind::Positive},
      {"numerics", "zero_speed", "1e-8", Kind::Positive},
      {"numerics", "liu_steps", "200", Kind::Count},
      {"numerics", "regime", "auto", Kind::Text},
      {"numerics", "tol_layer", "1e-7", Kind::Positive},
      {"numerics", "tol_tail", "1e-6", Kind::Positive},
      {"numerics", "eps_seed", "1e-4", Kind::Positive},
      {"numerics", "y_cap", "1e9", Kind::Positive},
      {"numerics", "output_nodes", "1001", Kind::Count},
      {"numerics", "layer_abs_tol", "1e-13", Kind::Positive},
      {"numerics", "layer_rel_tol", "1e-12", Kind::Positive},
      {"numerics", "layer_max_steps", "4000000", Kind::Count},
      {"numerics", "eps", "0.02", Kind::Positive},
      {"numerics", "eps_list", "0.08 0.04 0.02", Kind::Vector},
      {"numerics", "T", "2", Kind::Positive},
      {"numerics", "margin", "0.2", Kind::Positive},
      {"numerics", "dx_per_eps", "0.125", Kind::Positive},
      {"numerics", "h_per_eps", "0.125", Kind::Positive},
      {"numerics", "cfl", "0.9", Kind::Positive},
      {"numerics", "dt", "0", Kind::NonNegative},
      {"numerics", "length", "0", Kind::NonNegative},
      {"numerics", "xi_max", "0", Kind::NonNegative},
      {"numerics", "escape_tol", "1e-6", Kind::Positive},
      {"numerics", "eps0", "0.5", Kind::Positive},
      {"numerics", "bvp_newton_tol", "1e-11", Kind::Positive},
      {"numerics", "bvp_newton_max_iter", "60", Kind::Count},
      {"numerics", "refinements", "6", Kind::Count},
      {"numerics", "time_march", "false", Kind::Bool},
      {"numerics", "threads", "1", Kind::Count},
      {"experiment", "B_1", "", Kind::Vector},
      {"experiment", "B_2", "", Kind::Vector},
      {"experiment", "initial", "", Kind::Vector},
      {"experiment", "save_times", "", Kind::Vector},
      {"experiment", "samples", "801", Kind::Count},
      {"experiment", "xi_min", "", Kind::Vector},
      {"experiment", "xi_max", "", Kind::Vector},
      {"experiment", "criteria", "", Kind::Vector},
      {"output", "dir", "", Kind::Text},
      {"output", "formats", "csv,json", Kind::Text},
      {"output", "seed", "1", Kind::Count},
  };
  return keys;
}

std::string full_name(const KeySpec& k) {
  return *k.section ? std::string(k.section) + "." + k.name : std::string(k.name);
}

const KeySpec* find_key(const std::string& full) {
  for (const auto& k : schema())
    if (full_name(k) == full) return &k;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  fail(ErrorKind::ValidationError, key + " " + what);
}

double parse_number(const std::string& key, const std::string& tok) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty()) invalid(key, "cannot parse '" + tok + "' as a number");
  if (!std::isfinite(v)) invalid(key, "must be finite");
  return v;
}

std::vector<double> parse_vector(const std::string& key, const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(key, tok));
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  invalid(key, "must be a boolean, got '" + v + "'");
}

void check_kind(const KeySpec& k, const std::string& v) {
  const std::string key = full_name(k);
  switch (k.kind) {
    case Kind::Positive:
    case Kind::OptPositive: {
      if (v.empty()) {
        if (k.kind == Kind::Positive) invalid(key, "must be > 0");
        return;
      }
      if (!(parse_number(key, v) > 0)) invalid(key, "must be > 0");
      return;
    }
    case Kind::NonNegative:
      if (!(parse_number(key, v) >= 0)) invalid(key, "must be >= 0");
      return;
    case Kind::Real:
      parse_number(key, v);
      return;
    case Kind::Count: {
      const double d = parse_number(key, v);
      if (!(d >= 1) || d != std::floor(d)) invalid(key, "must be a positive integer");
      return;
    }
    case Kind::Bool:
      parse_bool(key, v);
      return;
    case Kind::Vector:
      parse_vector(key, v);
      return;
    case Kind::Text:
      return;
  }
}

int first_column(const std::string& text, unsigned long line) {
  std::istringstream in(text);
  std::string l;
  for (unsigned long i = 0; i < line && std::getline(in, l); ++i) {
  }
  const auto p = l.find_first_not_of(" \t");
  return p == std::string::npos ? 1 : static_cast<int>(p) + 1;
}

using Assignments = std::map<std::string, std::string>;

void assign(Assignments& a, std::string key, const std::string& value) {
  if (key == "system") key = "system.name";
  if (!find_key(key)) fail(ErrorKind::ValidationError, "unknown key " + key);
  a[key] = value;
}

Assignments read_text(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::ParseError, "line " + std::to_string(e.line()) + ", column " +
                                    std::to_string(first_column(text, e.line())) + ": " + e.message());
  }
  Assignments a;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      assign(a, name, trim(node.data()));
      continue;
    }
    static const std::set<std::string> sections{"system", "data", "numerics", "experiment", "output"};
    if (!sections.count(name)) fail(ErrorKind::ValidationError, "unknown section [" + name + "]");
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) fail(ErrorKind::ParseError, "nested value under " + name + "." + key);
      assign(a, name + "." + key, trim(leaf.data()));
    }
  }
  return a;
}

State to_state(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

const char* to_string(Problem p) {
  switch (p) {
    case Problem::Riemann: return "riemann";
    case Problem::BoundaryRiemann: return "boundary-riemann";
    case Problem::ClassicalSim: return "classical-sim";
    case Problem::SelfSimilarSim: return "selfsimilar-sim";
    case Problem::CompareLimits: return "compare-limits";
    case Problem::BDependence: return "b-dependence";
    case Problem::Validate: return "validate";
    case Problem::Suite: return "suite";
  }
  return "?";
}

std::vector<std::string> problem_names() {
  return {"riemann", "boundary-riemann", "classical-sim", "selfsimilar-sim", "compare-limits", "b-dependence",
          "validate", "suite"};
}

Problem problem_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Problem::Suite); ++i)
    if (s == to_string(static_cast<Problem>(i))) return static_cast<Problem>(i);
  fail(ErrorKind::ValidationError, "problem '" + s + "' is not one of the known problems");
}

std::string RunConfig::effective_text() const {
  std::ostringstream os;
  std::string section = "";
  for (const auto& [key, value] : effective) {
    const auto dot = key.find('.');
    const std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (sec != section) {
      os << "\n[" << sec << "]\n";
      section = sec;
    }
    os << name << " = " << value << '\n';
  }
  return os.str();
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  Assignments a = read_text(text);
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) fail(ErrorKind::ValidationError, "override '" + o + "' is not key=value");
    assign(a, trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }

  RunConfig cfg;
  std::map<std::string, std::string> v;
  for (const auto& k : schema()) {
    const std::string key = full_name(k);
    const auto it = a.find(key);
    v[key] = it != a.end() ? it->second : k.def;
    check_kind(k, v[key]);
    cfg.effective.emplace_back(key, v[key]);
  }
  auto num = [&](const std::string& key) { return parse_number(key, v[key]); };
  auto count = [&](const std::string& key) { return static_cast<int>(num(key)); };
  auto vec = [&](const std::string& key) { return parse_vector(key, v[key]); };
  auto flag = [&](const std::string& key) { return parse_bool(key, v[key]); };

  cfg.problem = problem_from_string(v["problem"]);

  // system
  auto& sys = cfg.system;
  sys.name = v["system.name"];
  const auto names = models::names();
  if (std::find(names.begin(), names.end(), sys.name) == names.end())
    invalid("system.name", "'" + sys.name + "' is not a bundled model");
  cfg.n = models::dimension_of(sys.name);
  const std::map<std::string, std::vector<std::string>> applies = {
      {"burgers", {"half_width", "b"}},
      {"cubic", {"half_width"}},
      {"linear2", {"half_width", "matrix"}},
      {"p-system", {"kp", "gamma", "frame_speed", "v_min", "v_max", "u_bound"}},
  };
  for (const char* key : {"b", "matrix", "half_width", "kp", "gamma", "frame_speed", "v_min", "v_max", "u_bound"}) {
    const std::string full = std::string("system.") + key;
    if (v[full].empty()) continue;
    const auto& ok = applies.at(sys.name);
    if (std::find(ok.begin(), ok.end(), key) == ok.end()) invalid(full, "does not apply to " + sys.name);
    if (std::string(key) == "matrix") {
      sys.flux_matrix = vec(full);
      if (sys.flux_matrix.size() != 4) invalid(full, "needs 4 entries (row-major 2x2)");
    } else if (std::string(key) == "b") {
      sys.viscosity = {num(full)};
    } else {
      const auto fv = vec(full);
      if (fv.size() != 1) invalid(full, "must be a single number");
      sys.scalars[key] = fv[0];
    }
  }
  if (!v["system.viscosity"].empty()) {
    if (!v["system.b"].empty()) invalid("system.viscosity", "conflicts with system.b");
    sys.viscosity = vec("system.viscosity");
    const std::size_t nn = static_cast<std::size_t>(cfg.n);
    if (sys.viscosity.size() != nn && sys.viscosity.size() != nn * nn)
      invalid("system.viscosity", "needs n or n*n entries for n = " + std::to_string(cfg.n));
  }

  // data
  for (const char* key : {"U_minus", "U_plus", "U_0", "U_D"}) {
    const std::string full = std::string("data.") + key;
    if (v[full].empty()) continue;
    const auto d = vec(full);
    if (static_cast<int>(d.size()) != cfg.n)
      invalid(full, "has " + std::to_string(d.size()) + " components but system " + sys.name + " has n = " +
                        std::to_string(cfg.n) + " (dimension mismatch)");
    State s = to_state(d);
    if (std::string(key) == "U_minus") cfg.u_minus = s;
    if (std::string(key) == "U_plus") cfg.u_plus = s;
    if (std::string(key) == "U_0") cfg.u0 = s;
    if (std::string(key) == "U_D") cfg.ud = s;
  }
  const bool riemann_data = cfg.u_minus && cfg.u_plus;
  const bool boundary_data = cfg.u0 && cfg.ud;
  switch (cfg.problem) {
    case Problem::Riemann:
      if (!riemann_data) invalid("data.U_minus", "and data.U_plus are required for riemann");
      break;
    case Problem::Validate:
      if (!riemann_data && !boundary_data) invalid("data", "needs U_minus/U_plus or U_0/U_D for validate");
      break;
    case Problem::Suite:
      break;
    default:
      if (!boundary_data) invalid("data.U_0", std::string("and data.U_D are required for ") + to_string(cfg.problem));
  }

  // numerics
  auto& w = cfg.riemann.waves;
  w.tol_rh = num("numerics.tol_rh");
  w.tol_liu = num("numerics.tol_liu");
  w.tol_fp = num("numerics.tol_fp");
  w.tol_ld = num("numerics.tol_ld");
  w.spectral.tol_eig = num("numerics.tol_eig");
  w.spectral.gap_min = num("numerics.gap_min");
  w.spectral.c_min = num("numerics.c_min");
  w.cells_per_unit = num("numerics.cells_per_unit");
  w.min_cells = count("numerics.min_cells");
  w.max_iter = count("numerics.max_iter");
  w.newton_tol = num("numerics.hugoniot_newton_tol");
  w.ds_min = num("numerics.ds_min");
  w.refine_sonic = flag("numerics.refine_sonic");
  w.zero_speed = num("numerics.zero_speed");
  auto& r = cfg.riemann;
  r.tol_newton = num("numerics.tol_newton");
  r.newton_max_iter = count("numerics.newton_max_iter");
  r.fd_step = num("numerics.fd_step");
  if (!v["numerics.data_max"].empty()) r.data_max = num("numerics.data_max");
  r.tv_factor = num("numerics.tv_factor");
  r.tol_fan = num("numerics.tol_fan");
  r.zero_speed = num("numerics.zero_speed");
  r.liu_steps = count("numerics.liu_steps");
  r.classify_plan.seed = static_cast<std::uint64_t>(num("output.seed"));
  const std::string regime = v["numerics.regime"];
  if (regime != "auto") {
    const auto eq = regime.find('=');
    const std::string tag = eq == std::string::npos ? "" : trim(regime.substr(0, eq));
    const double idx = eq == std::string::npos ? 0 : parse_number("numerics.regime", trim(regime.substr(eq + 1)));
    if ((tag != "p" && tag != "k") || idx != std::floor(idx) || idx < 0 || idx > cfg.n || (tag == "k" && idx < 1))
      invalid("numerics.regime", "must be auto, p=<0..n> or k=<1..n>");
    BoundaryRegime br;
    if (tag == "p") br.kind = NonCharacteristic{static_cast<int>(idx)};
    else br.kind = Characteristic{static_cast<int>(idx)};
    r.regime = br;
  }
  auto& l = r.layers;
  l.spectral = w.spectral;
  l.tol_layer = num("numerics.tol_layer");
  l.tol_tail = num("numerics.tol_tail");
  l.eps_seed = num("numerics.eps_seed");
  l.y_cap = num("numerics.y_cap");
  l.output_nodes = count("numerics.output_nodes");
  l.ode.abs_tol = num("numerics.layer_abs_tol");
  l.ode.rel_tol = num("numerics.layer_rel_tol");
  l.ode.max_steps = static_cast<std::size_t>(num("numerics.layer_max_steps"));
  l.seed = static_cast<std::uint64_t>(num("output.seed"));
  if (l.output_nodes < 2) invalid("numerics.output_nodes", "must be >= 2");

  cfg.eps = num("numerics.eps");
  cfg.eps_list = vec("numerics.eps_list");
  if (cfg.eps_list.empty()) invalid("numerics.eps_list", "must not be empty");
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
    if (!(cfg.eps_list[i] > 0)) invalid("numerics.eps_list", "entries must be > 0");
    if (i > 0 && !(cfg.eps_list[i] < cfg.eps_list[i - 1])) invalid("numerics.eps_list", "must be decreasing");
  }
  auto& g = cfg.grid;
  g.T = num("numerics.T");
  g.margin = num("numerics.margin");
  g.dx_per_eps = num("numerics.dx_per_eps");
  g.h_per_eps = num("numerics.h_per_eps");
  g.cfl = num("numerics.cfl");
  if (g.cfl > 1) invalid("numerics.cfl", "must be <= 1");
  g.dt = num("numerics.dt");
  g.length = num("numerics.length");
  g.xi_max = num("numerics.xi_max");
  g.escape_tol = num("numerics.escape_tol");
  g.eps0 = num("numerics.eps0");
  g.newton_tol = num("numerics.bvp_newton_tol");
  g.newton_max_iter = count("numerics.bvp_newton_max_iter");
  g.refinements = count("numerics.refinements");
  g.time_march = flag("numerics.time_march");
  g.threads = count("numerics.threads");
  g.tv_factor = r.tv_factor;
  g.riemann = r;

  // experiment
  auto matrix = [&](const std::string& key) -> Matrix {
    if (v[key].empty()) return Matrix();
    const auto m = vec(key);
    try {
      return models::viscosity_from_values(m, cfg.n);
    } catch (const Error&) {
      invalid(key, "needs n or n*n entries for n = " + std::to_string(cfg.n));
    }
  };
  cfg.b1 = matrix("experiment.B_1");
  cfg.b2 = matrix("experiment.B_2");
  if (cfg.problem == Problem::BDependence && cfg.b2.size() == 0)
    invalid("experiment.B_2", "is required for b-dependence");
  if (!v["experiment.initial"].empty()) {
    const auto init = vec("experiment.initial");
    if (static_cast<int>(init.size()) != cfg.n) invalid("experiment.initial", "must have n entries");
    cfg.riemann.initial = init;
    cfg.grid.riemann.initial = init;
  }
  g.save_times = vec("experiment.save_times");
  for (double t : g.save_times)
    if (t < 0 || t > g.T) invalid("experiment.save_times", "entries must lie in [0, T]");
  cfg.samples = count("experiment.samples");
  if (cfg.samples < 2) invalid("experiment.samples", "must be >= 2");
  for (const char* key : {"xi_min", "xi_max"}) {
    const std::string full = std::string("experiment.") + key;
    if (v[full].empty()) continue;
    const auto x = vec(full);
    if (x.size() != 1) invalid(full, "must be a single number");
    (std::string(key) == "xi_min" ? cfg.xi_min : cfg.xi_max) = x[0];
  }
  if (cfg.xi_min && cfg.xi_max && !(*cfg.xi_min < *cfg.xi_max)) invalid("experiment.xi_min", "must be < xi_max");
  for (double c : vec("experiment.criteria")) {
    if (c != std::floor(c) || c < 1 || c > 10) invalid("experiment.criteria", "entries must be integers in 1..10");
    cfg.criteria.push_back(static_cast<int>(c));
  }

  // output
  cfg.output_dir = v["output.dir"];
  cfg.seed = static_cast<std::uint64_t>(num("output.seed"));
  std::string formats = v["output.formats"];
  std::replace(formats.begin(), formats.end(), ',', ' ');
  std::istringstream fin(formats);
  cfg.csv = cfg.json = false;
  std::string f;
  while (fin >> f) {
    if (f == "csv") cfg.csv = true;
    else if (f == "json") cfg.json = true;
    else invalid("output.formats", "entries must be csv or json, got '" + f + "'");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace brp::cli
