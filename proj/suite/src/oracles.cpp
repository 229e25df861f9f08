#include <brp/suite/oracles.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace brp::oracle {

SampledFunction random_pl(std::mt19937_64& rng, int max_nodes) {
  std::uniform_int_distribution<int> count(2, max_nodes);
  std::uniform_int_distribution<int> gap(1, 4);
  std::uniform_int_distribution<int> value(-40, 40);
  std::uniform_int_distribution<int> start(-64, 0);
  SampledFunction f;
  const int m = count(rng);
  int k = start(rng);
  for (int i = 0; i < m; ++i) {
    f.grid.push_back(k / 16.0);
    f.values.push_back(value(rng) / 4.0);
    k += gap(rng);
  }
  return f;
}

namespace {

// Cross product sign of (b - a) x (c - a); exact for the random_pl data.
double orient(const SampledFunction& f, std::size_t a, std::size_t b, std::size_t c) {
  return (f.grid[b] - f.grid[a]) * (f.values[c] - f.values[a]) - (f.values[b] - f.values[a]) * (f.grid[c] - f.grid[a]);
}

double line_at(const SampledFunction& f, std::size_t a, std::size_t b, std::size_t i) {
  return chord_value(f.grid[a], f.values[a], f.grid[b], f.values[b], f.grid[i]);
}

// below = true: line through a,b below every node (convex case).
std::vector<double> brute(const SampledFunction& f, bool below, bool monotone) {
  const std::size_t m = f.size();
  std::vector<double> out(m, below ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity());
  if (monotone) {
    // the horizontal line at min f is always an admissible minorant
    const double lo = *std::min_element(f.values.begin(), f.values.end());
    std::fill(out.begin(), out.end(), lo);
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (monotone && f.values[b] < f.values[a]) continue;
      bool ok = true;
      for (std::size_t c = 0; c < m && ok; ++c) {
        const double o = orient(f, a, b, c);
        ok = below ? o >= 0 : o <= 0;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < m; ++i) {
        const double v = line_at(f, a, b, i);
        out[i] = below ? std::max(out[i], v) : std::min(out[i], v);
      }
    }
  }
  if (m == 1) out[0] = f.values[0];
  return out;
}

}  // namespace

std::vector<double> brute_convex(const SampledFunction& f) { return brute(f, true, false); }
std::vector<double> brute_concave(const SampledFunction& f) { return brute(f, false, false); }
std::vector<double> brute_monotone_convex(const SampledFunction& f) { return brute(f, true, true); }

double burgers_riemann(double ul, double ur, double xi) {
  if (ul > ur) return xi < 0.5 * (ul + ur) ? ul : ur;
  if (xi <= ul) return ul;
  if (xi >= ur) return ur;
  return xi;
}

double burgers_layer(double e, double ud, double y, double b) {
  return e * std::tanh(std::abs(e) * y / (2.0 * b) + std::atanh(ud / e));
}

State LinearBoundaryOracle::layer(double y) const {
  State w(2);
  w << u0[0] + (ud[0] - u0[0]) * std::exp(-y), ud[1];
  return w;
}

LinearBoundaryOracle linear_diag_boundary(const State& u0, const State& ud) {
  LinearBoundaryOracle o;
  o.u0 = u0;
  o.ud = ud;
  o.trace = State(2);
  o.trace << u0[0], ud[1];
  return o;
}

double psystem_hugoniot_speed2(double kp, double gamma, double v0, double v) {
  const double p0 = kp * std::pow(v0, -gamma);
  const double p1 = kp * std::pow(v, -gamma);
  return -(p1 - p0) / (v - v0);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace brp::oracle
