#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace brp {

struct SampledFunction {
  std::vector<double> grid;  // strictly increasing
  std::vector<double> values;

  std::size_t size() const { return grid.size(); }
  void validate() const;
};

enum class EnvelopeKind { Convex, Concave, MonotoneConvex, MonotoneConcave };

// Piecewise-linear envelope on the grid nodes of the interval it was built on.
struct PiecewiseLinearEnvelope {
  EnvelopeKind kind = EnvelopeKind::Convex;
  std::vector<double> grid;             // interval nodes
  std::vector<double> f;                // input values at those nodes
  std::vector<double> values;           // envelope at every node
  std::vector<std::size_t> breakpoints; // vertices, indices into grid
  std::vector<bool> contact;            // |f - envelope| <= tol_contact
  std::vector<double> slopes;           // one per cell [grid[j], grid[j+1]]

  std::size_t size() const { return grid.size(); }
  double operator()(double tau) const;  // linear interpolation
};

struct EnvelopeOptions {
  double tol_contact = 1e-12;
  double slope_zero = 1e-12;  // slopes >= -slope_zero count as nonnegative
};

PiecewiseLinearEnvelope convex_envelope(const SampledFunction& f, double a, double b,
                                        const EnvelopeOptions& opt = {});
PiecewiseLinearEnvelope concave_envelope(const SampledFunction& f, double a, double b,
                                         const EnvelopeOptions& opt = {});
PiecewiseLinearEnvelope monotone_convex_envelope(const SampledFunction& f, double a, double b,
                                                 const EnvelopeOptions& opt = {});
// Smallest concave nondecreasing majorant.
PiecewiseLinearEnvelope monotone_concave_envelope(const SampledFunction& f, double a, double b,
                                                  const EnvelopeOptions& opt = {});

// Whole-grid shorthands.
PiecewiseLinearEnvelope convex_envelope(const SampledFunction& f, const EnvelopeOptions& opt = {});
PiecewiseLinearEnvelope concave_envelope(const SampledFunction& f, const EnvelopeOptions& opt = {});
PiecewiseLinearEnvelope monotone_convex_envelope(const SampledFunction& f, const EnvelopeOptions& opt = {});
PiecewiseLinearEnvelope monotone_concave_envelope(const SampledFunction& f, const EnvelopeOptions& opt = {});

PiecewiseLinearEnvelope make_envelope(EnvelopeKind kind, const SampledFunction& f,
                                      const EnvelopeOptions& opt = {});

// Right-continuous step function of segment slopes.
struct StepFunction {
  std::vector<double> knots;   // size m+1
  std::vector<double> values;  // size m, values[j] on [knots[j], knots[j+1])

  double operator()(double tau) const;
};

StepFunction envelope_derivative(const PiecewiseLinearEnvelope& env, double d = 1.0);

// First node index where the convex-envelope slope is >= -slope_zero
// (last node if there is none).
std::size_t splice_point(const PiecewiseLinearEnvelope& conv, const EnvelopeOptions& opt = {});

// Interpolated value at grid[j] of the chord between vertices a and b.
double chord_value(double ta, double fa, double tb, double fb, double t);

void write_envelope_csv(std::ostream& os, const PiecewiseLinearEnvelope& env, double d = 1.0);

}  // namespace brp
