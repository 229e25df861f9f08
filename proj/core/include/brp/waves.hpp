#pragma once

#include <brp/envelope.hpp>
#include <brp/system.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace brp {

enum class WaveKind { Shock, ContactDiscontinuity, Rarefaction };

const char* to_string(WaveKind kind);

struct Wave {
  WaveKind kind = WaveKind::Shock;
  int family = 1;  // 1-based
  State left;
  State right;
  double speed = 0;     // shocks and contacts
  double speed_lo = 0;  // rarefactions: [speed_lo, speed_hi]
  double speed_hi = 0;
  double strength = 0;  // length in the curve parameter
  // Rarefaction fan samples, left to right.
  std::vector<double> fan_tau;
  std::vector<double> fan_speeds;
  std::vector<State> fan_states;
  std::vector<State> fan_tangents;  // dU/dtau

  double min_speed() const { return kind == WaveKind::Rarefaction ? speed_lo : speed; }
  double max_speed() const { return kind == WaveKind::Rarefaction ? speed_hi : speed; }
  // State inside a rarefaction fan at speed xi (clamped to the fan).
  State fan_state(double xi) const;
};

struct WaveOptions {
  SpectralOptions spectral;
  EnvelopeOptions envelope;
  double tol_rh = 1e-10;
  double tol_liu = 1e-8;
  double tol_fp = 1e-10;
  double tol_ld = 1e-9;
  double d = 1.0;
  double zero_speed = 1e-8;
  int max_iter = 500;
  double cells_per_unit = 400;
  int min_cells = 128;
  double newton_tol = 1e-14;
  int newton_max_iter = 60;
  double ds_min = 1e-9;
  bool refine_sonic = true;
};

struct HugoniotSample {
  double s;
  State W;
  double sigma;
};

struct HugoniotLocus {
  int family = 1;
  State reference;
  std::vector<HugoniotSample> samples;  // increasing s, contains s = 0

  double s_min() const { return samples.front().s; }
  double s_max() const { return samples.back().s; }
  const HugoniotSample& at_zero() const;
};

// Single point W = U+ + h w, |w| = 1, with F(W) - F(U+) = sigma (W - U+).
struct HugoniotPoint {
  State W;
  State w;
  double sigma = 0;
  bool converged = false;
};

HugoniotPoint hugoniot_point(const HyperbolicSystem& sys, const State& uplus, double h, const State& w_guess,
                             double sigma_guess, const WaveOptions& opt = {});

HugoniotLocus hugoniot_locus(const HyperbolicSystem& sys, const State& uplus, int family, double s_max,
                             double ds, const WaveOptions& opt = {});
// Locus on [min(0, s_end), max(0, s_end)] with `steps` uniform steps, s_end sampled exactly.
HugoniotLocus hugoniot_locus_to(const HyperbolicSystem& sys, const State& uplus, int family, double s_end,
                                int steps, const WaveOptions& opt = {});

double rh_residual(const HyperbolicSystem& sys, const State& left, const State& right, double sigma);

struct LiuResult {
  bool admissible = true;
  double worst_margin = 0;
  double worst_s = 0;
};

LiuResult liu_admissible(const HugoniotLocus& locus, double s_bar, double tol_liu = 1e-8);

struct RarefactionSample {
  double s;
  State U;
  double lambda;
};

std::vector<RarefactionSample> rarefaction_curve(const HyperbolicSystem& sys, const State& u0, int family,
                                                 double s, double ds, const WaveOptions& opt = {});

struct WaveCurveResult {
  int family = 1;
  State base;
  double strength = 0;
  State endpoint;
  bool characteristic = false;
  // Profile in increasing tau; sigma has one entry per cell.
  std::vector<double> tau;
  std::vector<State> U;
  std::vector<double> f;
  std::vector<double> envelope;
  std::vector<double> v;
  std::vector<double> sigma;
  std::vector<bool> contact;
  // Waves ordered left to right. For characteristic curves only the
  // positive-speed waves; the zero-speed ones are in zero_speed_waves.
  std::vector<Wave> waves;
  std::vector<Wave> zero_speed_waves;
  int iterations = 0;
  std::vector<double> change_history;
  // Characteristic curves.
  double s_bar = 0;
  double s_underline = 0;
  bool s_underline_ambiguous = false;
  State trace;        // U(s_bar)
  State underline_U;  // U(s_underline)

  State state_at(double t) const;  // linear interpolation of the profile
};

WaveCurveResult wave_fan_curve(const HyperbolicSystem& sys, const State& uplus, int family, double s,
                               const WaveOptions& opt = {});
WaveCurveResult characteristic_wave_fan_curve(const HyperbolicSystem& sys, const State& usharp, int family,
                                              double s, const WaveOptions& opt = {});

void write_curve_csv(std::ostream& os, const WaveCurveResult& curve);

}  // namespace brp
