#include <brp/envelope.hpp>
#include <brp/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace brp {

void SampledFunction::validate() const {
  if (grid.size() != values.size()) fail(ErrorKind::InvalidArgument, "grid and values differ in length");
  if (grid.size() < 2) fail(ErrorKind::EmptyInterval, "sampled function needs at least two nodes");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!std::isfinite(grid[j]) || !std::isfinite(values[j])) fail(ErrorKind::InvalidArgument, "non-finite sample");
    if (j && !(grid[j] > grid[j - 1])) fail(ErrorKind::InvalidArgument, "grid not strictly increasing");
  }
}

double chord_value(double ta, double fa, double tb, double fb, double t) {
  if (t == ta) return fa;
  if (t == tb) return fb;
  if (fa == fb) return fa;
  return (fa * (tb - t) + fb * (t - ta)) / (tb - ta);
}

double PiecewiseLinearEnvelope::operator()(double tau) const {
  if (tau <= grid.front()) return values.front();
  if (tau >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), tau);
  const std::size_t j = static_cast<std::size_t>(it - grid.begin()) - 1;
  return chord_value(grid[j], values[j], grid[j + 1], values[j + 1], tau);
}

namespace {

std::size_t locate(const std::vector<double>& grid, double x) {
  const double tol = 1e-12 * (1.0 + std::abs(x));
  const auto it = std::lower_bound(grid.begin(), grid.end(), x - tol);
  if (it == grid.end() || std::abs(*it - x) > tol)
    fail(ErrorKind::InvalidArgument, "interval endpoint is not a grid node");
  return static_cast<std::size_t>(it - grid.begin());
}

// Hull vertex indices of (t, y); sign = +1 lower hull, -1 upper hull.
std::vector<std::size_t> hull(const std::vector<double>& t, const std::vector<double>& y, double sign) {
  std::vector<std::size_t> h;
  h.reserve(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    while (h.size() >= 2) {
      const std::size_t o = h[h.size() - 2];
      const std::size_t a = h.back();
      const double p1 = (t[a] - t[o]) * (y[j] - y[o]);
      const double p2 = (y[a] - y[o]) * (t[j] - t[o]);
      const double cross = sign * (p1 - p2);
      // rounding of the inputs themselves, so re-hulling an envelope keeps its vertices
      const double tol = 4 * std::numeric_limits<double>::epsilon() *
                         ((t[a] - t[o]) * (std::abs(y[j]) + std::abs(y[o])) +
                          (t[j] - t[o]) * (std::abs(y[a]) + std::abs(y[o])));
      if (cross <= tol) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(j);
  }
  return h;
}

PiecewiseLinearEnvelope build(EnvelopeKind kind, const std::vector<double>& t, const std::vector<double>& f,
                              const std::vector<double>& g, double sign, const EnvelopeOptions& opt) {
  PiecewiseLinearEnvelope env;
  env.kind = kind;
  env.grid = t;
  env.f = f;
  env.breakpoints = hull(t, g, sign);
  const std::size_t m = t.size();
  env.values.resize(m);
  env.slopes.resize(m - 1);
  for (std::size_t k = 0; k + 1 < env.breakpoints.size(); ++k) {
    const std::size_t a = env.breakpoints[k];
    const std::size_t b = env.breakpoints[k + 1];
    const double slope = g[a] == g[b] ? 0.0 : (g[b] - g[a]) / (t[b] - t[a]);
    for (std::size_t j = a; j <= b; ++j) env.values[j] = chord_value(t[a], g[a], t[b], g[b], t[j]);
    for (std::size_t j = a; j < b; ++j) env.slopes[j] = slope;
  }
  env.contact.resize(m);
  for (std::size_t j = 0; j < m; ++j) env.contact[j] = std::abs(f[j] - env.values[j]) <= opt.tol_contact;
  return env;
}

struct Slice {
  std::vector<double> t, f;
};

Slice slice(const SampledFunction& fn, double a, double b) {
  fn.validate();
  if (!(a < b)) fail(ErrorKind::EmptyInterval, "envelope interval is empty");
  const std::size_t ia = locate(fn.grid, a);
  const std::size_t ib = locate(fn.grid, b);
  Slice s;
  s.t.assign(fn.grid.begin() + static_cast<long>(ia), fn.grid.begin() + static_cast<long>(ib) + 1);
  s.f.assign(fn.values.begin() + static_cast<long>(ia), fn.values.begin() + static_cast<long>(ib) + 1);
  return s;
}

}  // namespace

PiecewiseLinearEnvelope convex_envelope(const SampledFunction& fn, double a, double b, const EnvelopeOptions& opt) {
  const Slice s = slice(fn, a, b);
  return build(EnvelopeKind::Convex, s.t, s.f, s.f, 1.0, opt);
}

PiecewiseLinearEnvelope concave_envelope(const SampledFunction& fn, double a, double b, const EnvelopeOptions& opt) {
  const Slice s = slice(fn, a, b);
  return build(EnvelopeKind::Concave, s.t, s.f, s.f, -1.0, opt);
}

PiecewiseLinearEnvelope monotone_convex_envelope(const SampledFunction& fn, double a, double b,
                                                 const EnvelopeOptions& opt) {
  const Slice s = slice(fn, a, b);
  // The largest nondecreasing minorant at the nodes is the suffix minimum;
  // its lower hull is the monotone convex envelope of the PL interpolant.
  std::vector<double> m = s.f;
  for (std::size_t j = m.size() - 1; j-- > 0;) m[j] = std::min(m[j], m[j + 1]);
  return build(EnvelopeKind::MonotoneConvex, s.t, s.f, m, 1.0, opt);
}

PiecewiseLinearEnvelope monotone_concave_envelope(const SampledFunction& fn, double a, double b,
                                                  const EnvelopeOptions& opt) {
  const Slice s = slice(fn, a, b);
  std::vector<double> m = s.f;
  for (std::size_t j = 1; j < m.size(); ++j) m[j] = std::max(m[j], m[j - 1]);
  return build(EnvelopeKind::MonotoneConcave, s.t, s.f, m, -1.0, opt);
}

PiecewiseLinearEnvelope convex_envelope(const SampledFunction& f, const EnvelopeOptions& opt) {
  f.validate();
  return convex_envelope(f, f.grid.front(), f.grid.back(), opt);
}

PiecewiseLinearEnvelope concave_envelope(const SampledFunction& f, const EnvelopeOptions& opt) {
  f.validate();
  return concave_envelope(f, f.grid.front(), f.grid.back(), opt);
}

PiecewiseLinearEnvelope monotone_convex_envelope(const SampledFunction& f, const EnvelopeOptions& opt) {
  f.validate();
  return monotone_convex_envelope(f, f.grid.front(), f.grid.back(), opt);
}

PiecewiseLinearEnvelope monotone_concave_envelope(const SampledFunction& f, const EnvelopeOptions& opt) {
  f.validate();
  return monotone_concave_envelope(f, f.grid.front(), f.grid.back(), opt);
}

PiecewiseLinearEnvelope make_envelope(EnvelopeKind kind, const SampledFunction& f, const EnvelopeOptions& opt) {
  switch (kind) {
    case EnvelopeKind::Convex: return convex_envelope(f, opt);
    case EnvelopeKind::Concave: return concave_envelope(f, opt);
    case EnvelopeKind::MonotoneConvex: return monotone_convex_envelope(f, opt);
    case EnvelopeKind::MonotoneConcave: return monotone_concave_envelope(f, opt);
  }
  fail(ErrorKind::InvalidArgument, "unknown envelope kind");
}

double StepFunction::operator()(double tau) const {
  if (values.empty()) return 0.0;
  if (tau < knots.front()) return values.front();
  const auto it = std::upper_bound(knots.begin(), knots.end(), tau);
  std::size_t j = static_cast<std::size_t>(it - knots.begin());
  j = j == 0 ? 0 : j - 1;
  return values[std::min(j, values.size() - 1)];
}

StepFunction envelope_derivative(const PiecewiseLinearEnvelope& env, double d) {
  StepFunction s;
  s.knots = env.grid;
  s.values.resize(env.slopes.size());
  for (std::size_t j = 0; j < env.slopes.size(); ++j) s.values[j] = env.slopes[j] / d;
  return s;
}

std::size_t splice_point(const PiecewiseLinearEnvelope& conv, const EnvelopeOptions& opt) {
  for (std::size_t j = 0; j < conv.slopes.size(); ++j) {
    if (conv.slopes[j] >= -opt.slope_zero) return j;
  }
  return conv.grid.size() - 1;
}

void write_envelope_csv(std::ostream& os, const PiecewiseLinearEnvelope& env, double d) {
  const auto old = os.precision(17);
  os << "tau,f,envelope,sigma,contact\n";
  for (std::size_t j = 0; j < env.size(); ++j) {
    const double sigma = env.slopes[std::min(j, env.slopes.size() - 1)] / d;
    os << env.grid[j] << ',' << env.f[j] << ',' << env.values[j] << ',' << sigma << ','
       << (env.contact[j] ? 1 : 0) << '\n';
  }
  os.precision(old);
}

}  // namespace brp
