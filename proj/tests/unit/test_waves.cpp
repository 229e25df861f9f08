#include <brp/error.hpp>
#include <brp/models.hpp>
#include <brp/waves.hpp>

#include <brp/suite/oracles.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace brp;

namespace {

State vec(std::initializer_list<double> v) {
  State u(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) u[i++] = x;
  return u;
}

HyperbolicSystem diag_linear() {
  Matrix a(2, 2);
  a << -1, 0, 0, 1;
  return models::linear2(a, Matrix::Identity(2, 2));
}

}  // namespace

TEST(Hugoniot, Burgers) {
  const HugoniotLocus h = hugoniot_locus(models::burgers(), vec({0}), 1, 1.0, 0.05);
  ASSERT_GT(h.samples.size(), 10u);
  for (const auto& s : h.samples) {
    EXPECT_NEAR(std::abs(s.W[0]), std::abs(s.s), 1e-10);
    EXPECT_NEAR(s.sigma, s.W[0] / 2, 1e-10);
  }
  EXPECT_EQ(h.at_zero().s, 0.0);
}

TEST(Hugoniot, LinearFamilyTwo) {
  const HugoniotLocus h = hugoniot_locus(diag_linear(), vec({0, 0}), 2, 0.5, 0.05);
  for (const auto& s : h.samples) {
    EXPECT_NEAR(s.W[0], 0, 1e-12);
    EXPECT_NEAR(std::abs(s.W[1]), std::abs(s.s), 1e-12);
    EXPECT_NEAR(s.sigma, 1, 1e-10);
  }
}

TEST(Hugoniot, PSystemClosedFormSpeed) {
  const HugoniotLocus h = hugoniot_locus(models::p_system(), vec({1, 0}), 1, 0.2, 0.01);
  for (const auto& s : h.samples) {
    if (s.s == 0) continue;
    EXPECT_LE(rh_residual(models::p_system(), s.W, vec({1, 0}), s.sigma), 1e-10);
    const double s2 = oracle::psystem_hugoniot_speed2(1.0, 1.4, 1.0, s.W[0]);
    EXPECT_NEAR(s.sigma * s.sigma, s2, 1e-9);
    EXPECT_LT(s.sigma, 0);
  }
}

TEST(Liu, BurgersOrientation) {
  const auto bu = models::burgers();
  const HugoniotLocus h = hugoniot_locus(bu, vec({0}), 1, 1.5, 0.01);
  // the parameter value whose state is 1 (resp. -1)
  double s_up = 0, s_down = 0;
  for (const auto& s : h.samples) {
    if (std::abs(s.W[0] - 1) < 1e-9) s_up = s.s;
    if (std::abs(s.W[0] + 1) < 1e-9) s_down = s.s;
  }
  ASSERT_NE(s_up, 0);
  ASSERT_NE(s_down, 0);
  EXPECT_TRUE(liu_admissible(h, s_up).admissible);
  EXPECT_FALSE(liu_admissible(h, s_down).admissible);
  EXPECT_THROW(liu_admissible(h, 10.0), Error);
}

// Locus based at the right state; Oleinik: sigma(u, u_R) <= sigma(u_L, u_R) for u between.
TEST(Liu, CubicAgainstClosedForm) {
  const auto cu = models::cubic();
  for (double ur : {-1.0, -0.5}) {
    const double span = 1.0 - ur;
    const HugoniotLocus h = hugoniot_locus_to(cu, vec({ur}), 1, span, 400);
    ASSERT_NEAR(h.samples.back().W[0], 1.0, 1e-9);
    const double sigma_bar = 1.0 + ur + ur * ur;
    double brute = INFINITY;
    for (const auto& s : h.samples) {
      ASSERT_NEAR(s.sigma, s.W[0] * s.W[0] + s.W[0] * ur + ur * ur, 1e-9);
      if (s.s > 1e-12 && s.s < span - 1e-12) brute = std::min(brute, sigma_bar - s.sigma);
    }
    const LiuResult r = liu_admissible(h, span);
    EXPECT_EQ(r.admissible, brute >= -1e-8) << "u_R = " << ur;
    EXPECT_NEAR(r.worst_margin, brute, 1e-12);
  }
  EXPECT_FALSE(liu_admissible(hugoniot_locus_to(cu, vec({-1.0}), 1, 2.0, 400), 2.0).admissible);
}

TEST(Rarefaction, BurgersAndLinear) {
  const auto r = rarefaction_curve(models::burgers(), vec({0}), 1, 0.5, 0.01);
  EXPECT_NEAR(std::abs(r.back().U[0]), 0.5, 1e-12);
  for (const auto& s : r) EXPECT_NEAR(s.lambda, s.U[0], 1e-12);
  const auto l = rarefaction_curve(diag_linear(), vec({1, 1}), 2, 0.3, 0.01);
  for (const auto& s : l) {
    EXPECT_NEAR(s.U[0], 1, 1e-14);
    EXPECT_NEAR(s.lambda, 1, 1e-12);
  }
}

TEST(Rarefaction, PSystemRichardson) {
  const auto ps = models::p_system();
  const auto a = rarefaction_curve(ps, vec({1, 0}), 2, 0.2, 0.01);
  const auto b = rarefaction_curve(ps, vec({1, 0}), 2, 0.2, 0.005);
  EXPECT_LE((a.back().U - b.back().U).norm(), 1e-8);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_GT(std::abs(a[i].lambda - a[0].lambda), std::abs(a[i - 1].lambda - a[0].lambda));
}

TEST(Rarefaction, LeavesRegion) {
  try {
    rarefaction_curve(models::burgers(1.0, 1.0), vec({0}), 1, 2.0, 0.01);
    FAIL() << "expected LeftRegion";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LeftRegion);
  }
}

TEST(WaveCurve, BurgersShockSide) {
  const WaveCurveResult w = wave_fan_curve(models::burgers(), vec({0}), 1, 1.0);
  EXPECT_NEAR(w.endpoint[0], 1.0, 1e-10);
  ASSERT_EQ(w.waves.size(), 1u);
  EXPECT_EQ(w.waves[0].kind, WaveKind::Shock);
  EXPECT_NEAR(w.waves[0].speed, 0.5, 1e-10);
}

TEST(WaveCurve, BurgersRarefactionSide) {
  const WaveCurveResult w = wave_fan_curve(models::burgers(), vec({0}), 1, -1.0);
  EXPECT_NEAR(w.endpoint[0], -1.0, 1e-10);
  ASSERT_EQ(w.waves.size(), 1u);
  EXPECT_EQ(w.waves[0].kind, WaveKind::Rarefaction);
  EXPECT_NEAR(w.waves[0].speed_lo, -1.0, 1e-10);
  EXPECT_NEAR(w.waves[0].speed_hi, 0.0, 1e-10);
}

TEST(WaveCurve, CubicComposite) {
  // left state -1, right 1: shock from -1 to the tangency point 1/2, then a fan
  const WaveCurveResult w = wave_fan_curve(models::cubic(), vec({1.0}), 1, -2.0);
  // envelope of the converged f from the envelope module
  SampledFunction f{w.tau, w.f};
  const auto env = concave_envelope(f);
  const auto conv = convex_envelope(f);
  (void)env;
  for (std::size_t i = 0; i < w.tau.size(); ++i) EXPECT_NEAR(w.envelope[i], conv.values[i], 1e-12);
  bool shock = false, fan = false;
  for (const Wave& x : w.waves) {
    shock |= x.kind == WaveKind::Shock;
    fan |= x.kind == WaveKind::Rarefaction;
  }
  EXPECT_TRUE(shock);
  EXPECT_TRUE(fan);
  EXPECT_NEAR(w.endpoint[0], -1.0, 1e-9);
  for (const Wave& x : w.waves)
    if (x.kind == WaveKind::Shock) EXPECT_NEAR(x.speed, 0.75, 1e-3);
}

TEST(WaveCurve, CharacteristicBurgers) {
  const WaveCurveResult w = characteristic_wave_fan_curve(models::burgers(), vec({0.1}), 1, -0.3);
  for (double s : w.sigma) EXPECT_GE(s, 0.0);
  // f(tau) = 0.1 tau + tau^2 / 2 in the curve parameter; monconv turns at lambda = 0
  EXPECT_NEAR(std::abs(w.trace[0]), 0.0, 1e-6);
  EXPECT_LE(w.s_underline, w.s_bar);
  for (const Wave& x : w.waves) EXPECT_GE(x.min_speed(), 0.0);
}

TEST(WaveCurve, CharacteristicNonnegativeSlope) {
  const WaveCurveResult w = characteristic_wave_fan_curve(models::burgers(), vec({0.5}), 1, 0.2);
  const WaveCurveResult v = wave_fan_curve(models::burgers(), vec({0.5}), 1, 0.2);
  EXPECT_NEAR((w.endpoint - v.endpoint).norm(), 0, 1e-12);
  // no zero-speed part: the trace is the far end of the curve
  EXPECT_EQ(w.s_bar, 0.2);
  EXPECT_NEAR((w.trace - w.endpoint).norm(), 0, 1e-12);
  EXPECT_TRUE(w.zero_speed_waves.empty());
}

TEST(WaveCurve, CharacteristicContact) {
  Matrix a(2, 2);
  a << -1, 0, 0, 0;
  const auto sys = models::linear2(a, Matrix::Identity(2, 2));
  const WaveCurveResult w = characteristic_wave_fan_curve(sys, vec({0, 0}), 2, -0.4);
  for (double s : w.sigma) EXPECT_NEAR(s, 0.0, 1e-12);
  for (double v : w.v) EXPECT_NEAR(v, 0.0, 1e-12);
  // all of the curve is zero-speed: trace at U#, underline-U at the far end
  EXPECT_EQ(w.s_bar, 0.0);
  EXPECT_NEAR(w.s_underline, -0.4, 1e-12);
  EXPECT_NEAR((w.trace - vec({0, 0})).norm(), 0, 1e-14);
  EXPECT_NEAR((w.underline_U - w.endpoint).norm(), 0, 1e-12);
  EXPECT_TRUE(w.waves.empty());
  EXPECT_EQ(w.zero_speed_waves.size(), 1u);
}
