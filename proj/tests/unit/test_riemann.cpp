#include <brp/error.hpp>
#include <brp/models.hpp>
#include <brp/riemann.hpp>

#include <brp/suite/oracles.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

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

TEST(Riemann, BurgersStationaryShock) {
  const auto bu = models::burgers();
  const WaveFan fan = solve_riemann(bu, vec({1}), vec({-1}));
  ASSERT_EQ(fan.waves.size(), 1u);
  EXPECT_EQ(fan.waves[0].kind, WaveKind::Shock);
  EXPECT_NEAR(fan.waves[0].speed, 0, 1e-12);
  EXPECT_TRUE(validate_solution(bu, fan).all_pass());
}

TEST(Riemann, BurgersRarefaction) {
  const auto bu = models::burgers();
  const WaveFan fan = solve_riemann(bu, vec({-1}), vec({1}));
  for (double xi : {-0.9, -0.3, 0.0, 0.3, 0.9}) EXPECT_NEAR(evaluate(fan, xi)[0], xi, 1e-8);
  EXPECT_NEAR(evaluate(fan, -2)[0], -1, 1e-12);
  EXPECT_NEAR(evaluate(fan, 2)[0], 1, 1e-12);
}

TEST(Riemann, ShockEvaluation) {
  const WaveFan fan = solve_riemann(models::burgers(), vec({1}), vec({0}));
  EXPECT_NEAR(evaluate(fan, 0.49)[0], 1, 1e-12);
  EXPECT_NEAR(evaluate(fan, 0.51)[0], 0, 1e-12);
  EXPECT_NEAR(evaluate(fan, fan.waves[0].speed)[0], 0, 1e-12);
}

TEST(Riemann, PSystemTwoWaves) {
  const auto ps = models::p_system();
  const WaveFan fan = solve_riemann(ps, vec({1, 0}), vec({1.05, 0.02}));
  EXPECT_EQ(fan.waves.size(), 2u);
  EXPECT_LE(fan.newton_residual, 1e-10);
  const ValidationReport rep = validate_solution(ps, fan);
  EXPECT_TRUE(rep.all_pass());
  for (const Wave& w : fan.waves)
    if (w.kind == WaveKind::Shock) EXPECT_TRUE(wave_liu(ps, w).admissible);
}

TEST(Riemann, DataTooLarge) {
  RiemannOptions opt;
  opt.data_max = 0.1;
  try {
    solve_riemann(models::burgers(), vec({1}), vec({0}), opt);
    FAIL() << "expected DataTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DataTooLarge);
  }
}

TEST(Boundary, LinearClosedForm) {
  const auto lin = diag_linear();
  const WaveFan fan = solve_boundary_riemann(lin, vec({1, 2}), vec({3, 4}));
  EXPECT_NEAR((fan.trace - vec({1, 4})).norm(), 0, 1e-10);
  EXPECT_NEAR((evaluate(fan, 1e-9) - vec({1, 4})).norm(), 0, 1e-10);
  ASSERT_EQ(fan.waves.size(), 1u);
  EXPECT_NEAR(fan.waves[0].speed, 1, 1e-10);
  ASSERT_TRUE(fan.boundary_group.has_value());
  const auto& p = fan.boundary_group->layer;
  for (std::size_t j = 0; j < p.y.size(); ++j) EXPECT_NEAR(p.W[j][0], 1 + 2 * std::exp(-p.y[j]), 1e-8);
  EXPECT_TRUE(validate_solution(lin, fan).all_pass());
}

TEST(Boundary, BurgersCharacteristic) {
  const auto bu = models::burgers();
  const WaveFan fan = solve_boundary_riemann(bu, vec({0.1}), vec({-0.2}));
  ASSERT_TRUE(fan.regime.has_value());
  EXPECT_TRUE(fan.regime->characteristic());
  const ValidationReport rep = validate_solution(bu, fan);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  // zero-speed part meets lambda = 0, the fan rises from there to U_0
  EXPECT_NEAR(fan.trace[0], 0, 1e-6);
}

TEST(Boundary, IdentityData) {
  const auto ps = models::p_system();
  const WaveFan fan = solve_boundary_riemann(ps, vec({1, 0.1}), vec({1, 0.1}));
  EXPECT_TRUE(fan.waves.empty());
  ASSERT_TRUE(fan.boundary_group.has_value());
  EXPECT_TRUE(fan.boundary_group->layer.trivial());
  EXPECT_TRUE(validate_solution(ps, fan).all_pass());
}

TEST(Boundary, NoConnectionOutsideBasin) {
  RiemannOptions opt;
  opt.regime = BoundaryRegime{NonCharacteristic{0}, 1.0, 0.0};
  try {
    solve_boundary_riemann(models::burgers(), vec({-1}), vec({1.5}), opt);
    FAIL() << "expected NoConnection";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConnection);
  }
}

TEST(Validate, InadmissibleShockNamed) {
  const auto bu = models::burgers();
  WaveFan fan = solve_riemann(bu, vec({1}), vec({0}));
  Wave& w = fan.waves[0];
  w.left = vec({-1});
  w.right = vec({0});
  w.speed = -0.5;
  fan.left_state = vec({-1});
  fan.plateaus.front() = vec({-1});
  const ValidationReport rep = validate_solution(bu, fan);
  const CheckResult* jumps = rep.find("jumps");
  ASSERT_NE(jumps, nullptr);
  EXPECT_FALSE(jumps->pass);
  EXPECT_NE(jumps->detail.find("wave 0"), std::string::npos) << jumps->detail;
}

TEST(Validate, RandomPSystemBoundaryData) {
  const auto ps = models::p_system();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 10; ++i) {
    const State u0 = vec({1 + 0.2 * u(rng), 0.2 * u(rng)});
    const State ud = u0 + 0.05 * vec({u(rng), u(rng)});
    const WaveFan fan = solve_boundary_riemann(ps, u0, ud);
    EXPECT_TRUE(validate_solution(ps, fan).all_pass()) << "draw " << i;
  }
}

TEST(Fan, DistanceAndOutput) {
  const auto bu = models::burgers();
  const WaveFan a = solve_riemann(bu, vec({1}), vec({0}));
  const WaveFan b = solve_riemann(bu, vec({-1}), vec({1}));
  EXPECT_EQ(fan_distance(a, a), 0);
  EXPECT_TRUE(std::isinf(fan_distance(a, b)));
  const std::string j = fan_json(a);
  EXPECT_NE(j.find("\"schema\""), std::string::npos);
  EXPECT_NE(j.find("shock"), std::string::npos);
  std::ostringstream os;
  write_fan_samples_csv(os, a, -1, 1, 5);
  int lines = 0;
  for (char c : os.str()) lines += c == '\n';
  EXPECT_EQ(lines, 6);
}
