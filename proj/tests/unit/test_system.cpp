#include <brp/error.hpp>
#include <brp/models.hpp>
#include <brp/system.hpp>

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

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Spectral, BurgersScalar) {
  const SpectralData sd = eigen_decompose(models::burgers(), vec({0.7}));
  EXPECT_DOUBLE_EQ(sd.eigenvalues[0], 0.7);
  EXPECT_DOUBLE_EQ(std::abs(sd.right(0, 0)), 1.0);
}

TEST(Spectral, DiagonalLinear) {
  const auto sys = models::linear2(mat2(-1, 0, 0, 1), Matrix::Identity(2, 2));
  const SpectralData sd = eigen_decompose(sys, vec({0.3, -2}));
  EXPECT_NEAR(sd.eigenvalues[0], -1, 1e-14);
  EXPECT_NEAR(sd.eigenvalues[1], 1, 1e-14);
  EXPECT_NEAR(std::abs(sd.right(0, 0)), 1, 1e-14);
  EXPECT_NEAR(std::abs(sd.right(1, 1)), 1, 1e-14);
  EXPECT_LE((sd.left * sd.right - Matrix::Identity(2, 2)).norm(), 1e-9);
}

TEST(Spectral, PSystemGammaTwo) {
  models::PSystemParams p;
  p.gamma = 2;
  const SpectralData sd = eigen_decompose(models::p_system(p), vec({1, 0}));
  EXPECT_NEAR(sd.eigenvalues[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(sd.eigenvalues[1], std::sqrt(2.0), 1e-12);
}

TEST(Spectral, ComplexPairIsNonHyperbolic) {
  try {
    eigen_decompose_matrix(mat2(0, -1, 1, 0));
    FAIL() << "expected NonHyperbolic";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonHyperbolic);
  }
}

TEST(Spectral, FdJacobianMatchesAnalytic) {
  const auto sys = models::p_system();
  const State u = vec({1.2, 0.3});
  const Matrix a = sys.jacobian(u), f = sys.fd_jacobian(u);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_LE(std::abs(a(i, j) - f(i, j)), 1e-6 * std::max(1.0, std::abs(a(i, j))));
}

TEST(Hypotheses, BurgersAlphaOne) {
  const HypothesisReport r = check_hypotheses(models::burgers(), {});
  EXPECT_TRUE(r.all_ok());
  EXPECT_LE(r.entropy_residual, 1e-12);
  EXPECT_NEAR(r.alpha, 1.0, 1e-12);
}

TEST(Hypotheses, PSystemPasses) {
  const HypothesisReport r = check_hypotheses(models::p_system(), {});
  EXPECT_TRUE(r.all_ok());
  EXPECT_GT(r.alpha, 0.0);
}

TEST(Hypotheses, NegativeViscosityFails) {
  const auto sys = models::p_system().with_constant_viscosity(-Matrix::Identity(2, 2));
  const HypothesisReport r = check_hypotheses(sys, {});
  EXPECT_FALSE(r.dissipative_ok);
  EXPECT_LE(r.alpha, -1.0 + 1e-12);
}

TEST(Signature, IdentityViscosity) {
  EXPECT_TRUE(eigen_signature_compare(models::p_system(), vec({1, 0})).consistent());
}

TEST(Signature, DiagonalWithCoupledViscosity) {
  const SignatureCounts c = eigen_signature_compare(mat2(-1, 0, 0, 1), mat2(2, 1, 1, 2));
  EXPECT_EQ(c.neg_df, 1);
  EXPECT_EQ(c.neg_binv_df, 1);
  EXPECT_EQ(c.pos_df, 1);
  EXPECT_EQ(c.pos_binv_df, 1);
}

TEST(Signature, PSystemDiagonalViscosity) {
  const auto sys = models::p_system().with_constant_viscosity(mat2(1, 0, 0, 2));
  const SignatureCounts c = eigen_signature_compare(sys, vec({1, 0}));
  EXPECT_EQ(c.neg_df, 1);
  EXPECT_EQ(c.pos_binv_df, 1);
  EXPECT_TRUE(c.consistent());
}

TEST(Signature, ZeroEigenvalueIsNearSingular) {
  try {
    eigen_signature_compare(models::burgers(), vec({0.0}));
    FAIL() << "expected NearSingular";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NearSingular);
  }
}

TEST(Signature, NonDissipativeViscosityCanDisagree) {
  // B^-1 flips the sign of the negative eigenvalue
  const SignatureCounts c = eigen_signature_compare(mat2(-1, 0, 0, 1), mat2(-1, 0, 0, 1));
  EXPECT_FALSE(c.consistent());
}

TEST(Classify, Regimes) {
  const auto lin = models::linear2(mat2(-1, 0, 0, 1), Matrix::Identity(2, 2));
  const BoundaryRegime a = classify_boundary(lin, lin.region());
  ASSERT_FALSE(a.characteristic());
  EXPECT_EQ(a.p(), 1);

  const auto bu = models::burgers();
  const BoundaryRegime b = classify_boundary(bu, make_box(vec({-0.05}), vec({0.05})));
  ASSERT_TRUE(b.characteristic());
  EXPECT_EQ(b.k(), 1);

  const auto ps = models::p_system();
  const BoundaryRegime c = classify_boundary(ps, make_box(vec({0.9, -0.1}), vec({1.1, 0.1})));
  ASSERT_FALSE(c.characteristic());
  EXPECT_EQ(c.p(), 1);
  EXPECT_GT(c.c, 0.9);
}

TEST(Classify, TwoSlowFieldsAreAmbiguous) {
  const auto sys = models::linear2(mat2(1e-5, 0, 0, -1e-5), Matrix::Identity(2, 2));
  try {
    classify_boundary(sys, sys.region());
    FAIL() << "expected Ambiguous";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Ambiguous);
  }
}

TEST(Models, FactoryByName) {
  models::ModelSpec spec;
  spec.name = "p-system";
  spec.scalars["gamma"] = 2.0;
  const auto sys = models::make(spec);
  EXPECT_EQ(sys.dim(), 2);
  EXPECT_NEAR(sys.flux(vec({1, 0}))[1], 1.0, 1e-14);
  EXPECT_EQ(models::dimension_of("burgers"), 1);
  spec.name = "nope";
  EXPECT_THROW(models::make(spec), Error);
}
