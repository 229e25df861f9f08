#include <brp/envelope.hpp>
#include <brp/error.hpp>

#include <brp/suite/oracles.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace brp;

namespace {

SampledFunction sample(const std::function<double(double)>& f, double a, double b, int m) {
  SampledFunction s;
  for (int i = 0; i < m; ++i) {
    const double t = a + (b - a) * i / (m - 1);
    s.grid.push_back(t);
    s.values.push_back(f(t));
  }
  return s;
}

double well(double t) { return t * t * t * t - t * t; }

}  // namespace

TEST(Convex, AlreadyConvex) {
  const auto f = sample([](double t) { return std::abs(t); }, -1, 1, 41);
  const auto env = convex_envelope(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(env.values[i], f.values[i]);
    EXPECT_TRUE(env.contact[i]);
  }
}

TEST(Convex, ConcaveInputGivesChord) {
  const auto f = sample([](double t) { return -t * t; }, -1, 0, 21);
  const auto env = convex_envelope(f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(env.values[i], f.grid[i], 1e-15);
  EXPECT_TRUE(env.contact.front());
  EXPECT_TRUE(env.contact.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) EXPECT_FALSE(env.contact[i]);
  const StepFunction sigma = envelope_derivative(env);
  for (double v : sigma.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Convex, DoubleWellAgainstBruteForce) {
  const auto f = sample(well, -1, 1, 201);
  const auto env = convex_envelope(f);
  const auto brute = oracle::brute_convex(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(env.values[i], brute[i], 1e-14);
    if (std::abs(f.grid[i]) < 0.69) EXPECT_NEAR(env.values[i], -0.25, 1e-3);
  }
  const StepFunction sigma = envelope_derivative(env);
  EXPECT_TRUE(std::is_sorted(sigma.values.begin(), sigma.values.end()));
}

TEST(Convex, SubIntervalAndErrors) {
  const auto f = sample(well, -1, 1, 21);
  const auto env = convex_envelope(f, -0.5, 0.5);
  EXPECT_EQ(env.size(), 11u);
  EXPECT_THROW(convex_envelope(f, 0.5, 0.5), Error);
  try {
    convex_envelope(f, 0.5, -0.5);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyInterval);
  }
}

TEST(Concave, SimpleCases) {
  const auto a = sample([](double t) { return -std::abs(t); }, -1, 1, 41);
  const auto ea = concave_envelope(a);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(ea.values[i], a.values[i]);
  const auto b = sample([](double t) { return t * t; }, 0, 1, 21);
  const auto eb = concave_envelope(b);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(eb.values[i], b.grid[i], 1e-15);
}

TEST(Concave, DualityIsExact) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    SampledFunction f = oracle::random_pl(rng, 50);
    SampledFunction g = f;
    for (double& v : g.values) v = -v;
    const auto conc = concave_envelope(f);
    const auto conv = convex_envelope(g);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(conc.values[i], -conv.values[i]);
  }
}

TEST(MonotoneConvex, SpliceCases) {
  const auto a = sample([](double t) { return t * t; }, -1, 0, 21);
  const auto ea = monotone_convex_envelope(a);
  for (double v : ea.values) EXPECT_EQ(v, 0.0);
  for (double v : envelope_derivative(ea).values) EXPECT_EQ(v, 0.0);

  const auto b = sample([](double t) { return t * t; }, 0, 1, 21);
  const auto eb = monotone_convex_envelope(b);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(eb.values[i], b.values[i]);

  const auto c = sample(well, -1, 1, 201);
  const auto ec = monotone_convex_envelope(c);
  const auto conv = convex_envelope(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.grid[i] <= 0.69) EXPECT_NEAR(ec.values[i], -0.25, 1e-3);
    if (c.grid[i] >= 0.72) EXPECT_EQ(ec.values[i], conv.values[i]);
    EXPECT_LE(ec.values[i], conv.values[i]);
  }
}

TEST(MonotoneConvex, RandomAgainstBruteForce) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const SampledFunction f = oracle::random_pl(rng, 60);
    const auto env = monotone_convex_envelope(f);
    const auto brute = oracle::brute_monotone_convex(f);
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_EQ(env.values[i], brute[i]) << "trial " << t << " node " << i;
  }
}

TEST(Envelope, Idempotent) {
  std::mt19937_64 rng(3);
  const SampledFunction f = oracle::random_pl(rng, 80);
  const auto once = convex_envelope(f);
  SampledFunction g{f.grid, once.values};
  const auto twice = convex_envelope(g);
  EXPECT_EQ(once.values, twice.values);
  EXPECT_EQ(once.breakpoints, twice.breakpoints);
}

TEST(Envelope, GridRefinementIsSecondOrder) {
  const auto coarse = convex_envelope(sample(well, -1, 1, 101));
  const auto fine = convex_envelope(sample(well, -1, 1, 201));
  double worst = 0;
  for (std::size_t i = 0; i < coarse.size(); ++i) worst = std::max(worst, std::abs(coarse.values[i] - fine.values[2 * i]));
  EXPECT_LE(worst, 10 * 0.02 * 0.02);
}
