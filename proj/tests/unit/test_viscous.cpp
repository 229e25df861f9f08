#include <brp/error.hpp>
#include <brp/models.hpp>
#include <brp/viscous.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
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

Slice line(std::vector<double> x, std::function<double(double)> f) {
  Slice s;
  s.x = std::move(x);
  for (double v : s.x) s.U.push_back(vec({f(v)}));
  return s;
}

std::vector<double> uniform(double a, double b, int m) {
  std::vector<double> x;
  for (int i = 0; i < m; ++i) x.push_back(a + (b - a) * i / (m - 1));
  return x;
}

// first x where the scalar profile falls through `level`, linear interpolation
double crossing(const Slice& s, double level) {
  for (std::size_t j = 0; j + 1 < s.x.size(); ++j) {
    const double a = s.U[j][0] - level, b = s.U[j + 1][0] - level;
    if (a >= 0 && b < 0) return s.x[j] + a / (a - b) * (s.x[j + 1] - s.x[j]);
  }
  return NAN;
}

}  // namespace

TEST(L1, Examples) {
  const Slice a = line(uniform(0, 1, 11), [](double) { return 1.0; });
  const Slice z = line(uniform(0, 1, 37), [](double) { return 0.0; });
  const Slice x = line(uniform(0, 1, 2001), [](double t) { return t; });
  EXPECT_EQ(l1_distance(a, a, 0, 1), 0);
  EXPECT_NEAR(l1_distance(a, z, 0, 1), 1, 1e-14);
  EXPECT_NEAR(l1_distance(x, z, 0, 1), 0.5, 1e-6);
  try {
    l1_distance(a, z, 0, 2);
    FAIL() << "expected WindowMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowMismatch);
  }
}

TEST(Classical, Equilibrium) {
  const auto ps = models::p_system();
  GridConfig cfg;
  cfg.T = 0.5;
  const GridSolution s = simulate_classical(ps, vec({1, 0.2}), vec({1, 0.2}), 0.05, cfg);
  EXPECT_LE(s.max_drift, 1e-12);
  for (const State& u : s.final_slice().U) EXPECT_EQ(u, vec({1, 0.2}));
}

TEST(Classical, BurgersShockSpeed) {
  GridConfig cfg;
  cfg.T = 1.0;
  cfg.save_times = {0.5, 1.0};
  const GridSolution s = simulate_classical(models::burgers(), vec({0}), vec({1}), 0.02, cfg);
  ASSERT_EQ(s.t.size(), 2u);
  EXPECT_EQ(s.final_slice().U.front()[0], 1.0);
  const double x1 = crossing(s.slice(0), 0.5), x2 = crossing(s.slice(1), 0.5);
  // level set moves at the Rankine-Hugoniot speed 1/2
  EXPECT_NEAR(x2 - x1, 0.25, 5 * s.dx);
  EXPECT_LE(s.entropy_increase, 1e-10);
}

TEST(Classical, LinearApproachesFan) {
  const auto lin = diag_linear();
  const double eps = 0.01;
  GridConfig cfg;
  cfg.T = 1.0;
  const GridSolution s = simulate_classical(lin, vec({1, 2}), vec({3, 4}), eps, cfg);
  const WaveFan fan = solve_boundary_riemann(lin, vec({1, 2}), vec({3, 4}));
  const Slice f = fan_slice(fan, s.x, 1.0);
  // diffused contact of jump 2: 2 * 2 sqrt(eps T / pi); layer 2 e^{-x/eps}: 2 eps
  const double predicted = 4 * std::sqrt(eps / M_PI) + 2 * eps;
  EXPECT_NEAR(l1_distance(s.final_slice(), f, 0, 1.2), predicted, 0.1 * predicted);
}

TEST(Classical, CflViolation) {
  GridConfig cfg;
  cfg.T = 0.1;
  cfg.dt = 1.0;
  try {
    simulate_classical(models::burgers(), vec({0}), vec({1}), 0.05, cfg);
    FAIL() << "expected CFLViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CFLViolation);
  }
}

TEST(Classical, DomainEscape) {
  GridConfig cfg;
  cfg.T = 1.0;
  cfg.length = 0.2;
  try {
    simulate_classical(models::burgers(), vec({0}), vec({1}), 0.05, cfg);
    FAIL() << "expected DomainEscape";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainEscape);
  }
}

TEST(SelfSimilar, Equilibrium) {
  const GridSolution s = simulate_selfsimilar(models::burgers(), vec({0.4}), vec({0.4}), 0.02);
  for (const State& u : s.final_slice().U) EXPECT_NEAR(u[0], 0.4, 1e-14);
}

TEST(SelfSimilar, BurgersShockLocation) {
  const GridSolution s = simulate_selfsimilar(models::burgers(), vec({0}), vec({1}), 0.02);
  const Slice v = s.final_slice();
  EXPECT_EQ(v.U.front()[0], 1.0);
  EXPECT_EQ(v.U.back()[0], 0.0);
  EXPECT_NEAR(crossing(v, 0.5), 0.5, std::sqrt(0.02));
  ASSERT_FALSE(s.eps_stages.empty());
  EXPECT_DOUBLE_EQ(s.eps_stages.back(), 0.02);
}

TEST(SelfSimilar, LinearLayerAndFan) {
  const auto lin = diag_linear();
  const GridSolution s = simulate_selfsimilar(lin, vec({1, 2}), vec({3, 4}), 0.01);
  const WaveFan fan = solve_boundary_riemann(lin, vec({1, 2}), vec({3, 4}));
  const Slice v = s.final_slice();
  // outside the layer and the smeared contact V is the fan
  for (std::size_t j = 0; j < v.x.size(); ++j) {
    const double xi = v.x[j];
    if (xi > 0.3 && std::abs(xi - 1) > 0.4) EXPECT_NEAR((v.U[j] - evaluate(fan, xi)).norm(), 0, 1e-3) << xi;
  }
}

TEST(Compare, IdentityDataGivesZeros) {
  const ComparisonTable t = compare_limits(models::burgers(), vec({0.3}), vec({0.3}), {0.08, 0.04});
  ASSERT_EQ(t.rows.size(), 2u);
  for (const auto& r : t.rows) {
    EXPECT_TRUE(r.ok) << r.error;
    EXPECT_LE(r.d_UZ, 1e-14);
    EXPECT_LE(r.d_Ufan, 1e-14);
    EXPECT_LE(r.d_Zfan, 1e-14);
  }
  std::ostringstream os;
  write_comparison_csv(os, t);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "epsilon,d_UZ,d_Ufan,d_Zfan,p_hat,ok");
}

TEST(Compare, RowFailureDoesNotAbort) {
  GridConfig cfg;
  cfg.T = 1.0;
  cfg.length = 0.1;
  const ComparisonTable t = compare_limits(models::burgers(), vec({0}), vec({1}), {0.08, 0.04}, cfg);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_FALSE(t.rows[0].ok);
  EXPECT_FALSE(t.rows[0].error.empty());
}

TEST(BDependence, SameViscosityNoGap) {
  const auto lin = diag_linear();
  const Matrix id = Matrix::Identity(2, 2);
  const BDependence d = viscosity_dependence_experiment(lin, vec({1, 2}), vec({1.3, 2.4}), id, id, 0.04);
  EXPECT_LE(d.gap, 1e-12);
  EXPECT_NEAR(d.xi, 0.2, 1e-12);
}

TEST(BDependence, RejectsNonDissipativeViscosity) {
  const auto lin = diag_linear();
  EXPECT_THROW(viscosity_dependence_experiment(lin, vec({1, 2}), vec({1.3, 2.4}), Matrix::Identity(2, 2),
                                               -Matrix::Identity(2, 2), 0.04),
               Error);
}
