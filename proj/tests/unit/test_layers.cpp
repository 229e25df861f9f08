#include <brp/error.hpp>
#include <brp/layers.hpp>
#include <brp/models.hpp>

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

TEST(Stable, LinearAndBurgers) {
  const StableSubspace a = stable_subspace(diag_linear(), vec({0, 0}));
  ASSERT_EQ(a.dim, 1);
  EXPECT_NEAR(std::abs(a.basis(0, 0)), 1, 1e-14);
  const StableSubspace b = stable_subspace(models::burgers(), vec({-1}));
  EXPECT_EQ(b.dim, 1);
}

TEST(Stable, PSystemDiagonalViscosity) {
  Matrix b(2, 2);
  b << 1, 0, 0, 2;
  const auto sys = models::p_system().with_constant_viscosity(b);
  const StableSubspace s = stable_subspace(sys, vec({1, 0}));
  ASSERT_EQ(s.dim, 1);
  // B^-1 DF = [[0,-1],[-1.4/2,0]]: stable eigenvalue -sqrt(0.7), eigenvector (1, sqrt(0.7))
  const double r = std::sqrt(0.7);
  EXPECT_NEAR(s.rates[0], -r, 1e-10);
  EXPECT_NEAR(std::abs(s.basis(1, 0) / s.basis(0, 0)), r, 1e-10);
}

TEST(Shoot, BurgersTanh) {
  const BoundaryLayerProfile p = shoot_layer(models::burgers(), vec({-1}), vec({0}));
  ASSERT_GT(p.y.size(), 10u);
  for (std::size_t j = 0; j < p.y.size(); ++j) EXPECT_NEAR(p.W[j][0], -std::tanh(p.y[j] / 2), 1e-6);
  EXPECT_EQ(p.W.front()[0], 0.0);
}

TEST(Shoot, BurgersGeneralTanh) {
  const BoundaryLayerProfile p = shoot_layer(models::burgers(2.0), vec({-0.5}), vec({0.3}));
  for (std::size_t j = 0; j < p.y.size(); ++j)
    EXPECT_NEAR(p.W[j][0], oracle::burgers_layer(-0.5, 0.3, p.y[j], 2.0), 1e-6);
}

TEST(Shoot, LinearExponential) {
  const BoundaryLayerProfile p = shoot_layer(diag_linear(), vec({1, 4}), vec({3, 4}));
  for (std::size_t j = 0; j < p.y.size(); ++j) {
    EXPECT_NEAR(p.W[j][0], 1 + 2 * std::exp(-p.y[j]), 1e-8);
    EXPECT_NEAR(p.W[j][1], 4, 1e-12);
  }
  EXPECT_NEAR(p.decay_rate, 1, 1e-8);
}

TEST(Shoot, OutsideTheBasin) {
  try {
    shoot_layer(models::burgers(), vec({-1}), vec({1.5}));
    FAIL() << "expected NoConnection";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConnection);
  }
}

TEST(Shoot, TrivialLayer) {
  const BoundaryLayerProfile p = shoot_layer(models::burgers(), vec({-1}), vec({-1}));
  EXPECT_TRUE(p.trivial());
}

TEST(Phi, ZeroAndLinear) {
  const auto lin = diag_linear();
  Eigen::VectorXd c(1);
  c << 0;
  EXPECT_EQ((layer_map_phi(lin, vec({1, 4}), c) - vec({1, 4})).norm(), 0);
  c << 0.7;
  const StableSubspace s = stable_subspace(lin, vec({1, 4}));
  const State w = layer_map_phi(lin, vec({1, 4}), c);
  EXPECT_NEAR((w - vec({1, 4}) - 0.7 * s.basis.col(0)).norm(), 0, 1e-12);
}

TEST(Phi, BurgersRoundTrip) {
  const auto bu = models::burgers();
  Eigen::VectorXd c(1);
  c << 0.5;
  const State w = layer_map_phi(bu, vec({-1}), c);
  EXPECT_GT(w[0], -1);
  EXPECT_LT(w[0], 1);
  const BoundaryLayerProfile p = shoot_layer(bu, vec({-1}), w);
  EXPECT_LE(p.residual, LayerOptions{}.tol_layer);
  // derivative at zero along the stable direction
  c << 1e-6;
  const State d = (layer_map_phi(bu, vec({-1}), c) - vec({-1})) / 1e-6;
  EXPECT_NEAR(std::abs(d[0]), 1, 1e-4);
}

TEST(Decompose, PurelyStable) {
  const auto lin = diag_linear();
  const BoundaryLayerProfile p = shoot_layer(lin, vec({1, 4}), vec({3, 4}));
  const LayerDecomposition d = decompose_layer(lin, p, vec({1, 4}), 2);
  EXPECT_NEAR(d.rate_s, 1, 0.05);
  double uk = 0, up = 0;
  for (std::size_t j = 0; j < d.y.size(); ++j) {
    uk = std::max(uk, (d.U_k[j] - vec({1, 4})).norm());
    up = std::max(up, d.U_p[j].norm());
  }
  EXPECT_LE(uk, 1e-8);
  EXPECT_LE(up, 1e-8);
}

TEST(Decompose, BurgersSlowTail) {
  const auto bu = models::burgers();
  for (double delta : {0.05, 0.1}) {
    const BoundaryLayerProfile p = shoot_layer(bu, vec({-delta}), vec({0.0}));
    EXPECT_NEAR(p.decay_rate, delta, 1e-3 * delta);
    for (std::size_t j = 0; j < p.y.size(); ++j) ASSERT_NEAR(p.W[j][0], oracle::burgers_layer(-delta, 0.0, p.y[j]), 1e-6);
    const LayerDecomposition d = decompose_layer(bu, p, vec({-delta}), 1);
    EXPECT_LE(d.max_s, 1e-6);
    EXPECT_LE(d.max_p, 1e-6);
  }
}

TEST(Fit, ExponentialRecovered) {
  std::vector<double> y, v;
  for (int i = 0; i < 100; ++i) {
    y.push_back(0.1 * i);
    v.push_back(3.0 * std::exp(-0.7 * y.back()));
  }
  const DecayFit f = fit_decay(y, v, 1e-14);
  EXPECT_NEAR(f.rate, 0.7, 1e-10);
  EXPECT_NEAR(f.C, 3.0, 1e-8);
  EXPECT_GT(f.r2, 0.999);
}
