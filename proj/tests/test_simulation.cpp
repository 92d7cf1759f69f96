#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bivex/dependence.hpp"
#include "bivex/error.hpp"
#include "bivex/simulation.hpp"
#include "oracles.hpp"

namespace bivex {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected bivex::Error";
  return ErrorCode::ConfigError;
}

TEST(SamplePolar, SupportAndSize) {
  const auto [xs, ys] = sample_polar(PolarModel::uniform(), 20000, 5);
  ASSERT_EQ(xs.size(), 20000u);
  ASSERT_EQ(ys.size(), 20000u);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs.values()[i];
    const double y = ys.values()[i];
    ASSERT_GE(x, 0.0);
    ASSERT_GE(y, 0.0);
    ASSERT_GE(std::hypot(x, y), 1.0 - 1e-12);
  }
}

TEST(SamplePolar, MarginTailFrequency) {
  const auto [xs, ys] = sample_polar(PolarModel::uniform(), 1000000, 123);
  std::size_t above = 0;
  for (double x : xs.values()) above += x > 10.0;
  EXPECT_NEAR(static_cast<double>(above) / 1e6, 2.0 / std::numbers::pi / 10.0, 0.0008);
}

TEST(SamplePolar, DeterministicPerSeed) {
  const auto a = sample_polar(PolarModel::uniform(), 1000, 77);
  const auto b = sample_polar(PolarModel::uniform(), 1000, 77);
  const auto c = sample_polar(PolarModel::uniform(), 1000, 78);
  EXPECT_TRUE(std::ranges::equal(a.first.values(), b.first.values()));
  EXPECT_TRUE(std::ranges::equal(a.second.values(), b.second.values()));
  EXPECT_FALSE(std::ranges::equal(a.first.values(), c.first.values()));
  EXPECT_EQ(replicate_seed(10, 3), 13u);
}

TEST(SamplePolar, Errors) {
  EXPECT_EQ(code_of([] { sample_polar(PolarModel::uniform(), 0, 1); }), ErrorCode::BadN);
  EXPECT_EQ(code_of([] { PolarModel::beta(0.5, 2.0); }), ErrorCode::ConfigError);
}

TEST(TrueP, Examples) {
  const auto m = PolarModel::uniform();
  EXPECT_NEAR(true_p_halfplane(m, 1.0, 1.0, 1000.0), 4.0 / (1000.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(true_p_halfplane(m, 1.0, 0.0, 100.0), 2.0 / std::numbers::pi / 100.0, 1e-15);
  EXPECT_NEAR(true_p_halfplane(m, 1.0, 1.0, 6366.19772367581), 2e-4, 1e-15);
  EXPECT_NEAR(true_p_halfplane(m, 1.0, 1.0, 2546.47908947033), 5e-4, 1e-15);
  EXPECT_EQ(code_of([&] { true_p_halfplane(m, 1.0, 1.0, 1.0); }), ErrorCode::RetentionTooSmall);
}

TEST(TrueNu, Rectangle) {
  const auto m = PolarModel::uniform();
  EXPECT_NEAR(true_nu_rectangle(m, 1.0, 1.0), 2.0 - std::numbers::sqrt2, 1e-14);
  // b -> 0 leaves the first margin alone: nu((a, inf) x (0, inf)) = 1/a.
  EXPECT_NEAR(true_nu_rectangle(m, 2.0, 1e-12), 0.5, 1e-9);
  for (double t : {0.5, 2.0, 7.0}) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.0}, std::pair{4.0, 0.7}}) {
      EXPECT_NEAR(true_nu_rectangle(m, t * a, t * b), true_nu_rectangle(m, a, b) / t, 1e-12);
    }
  }
  EXPECT_EQ(code_of([&] { true_nu_rectangle(m, 0.0, 1.0); }), ErrorCode::BadRect);
}

TEST(TrueNu, BetaMatchesSimpsonQuadrature) {
  const auto m = PolarModel::beta(2.0, 3.0);
  const double hp = std::numbers::pi / 2.0;
  const double ec = testing::simpson([&](double th) { return std::cos(th) * m.angle_density(th); }, 0.0, hp, 4000);
  const double es = testing::simpson([&](double th) { return std::sin(th) * m.angle_density(th); }, 0.0, hp, 4000);
  const double mass = testing::simpson([&](double th) { return m.angle_density(th); }, 0.0, hp, 4000);
  EXPECT_NEAR(mass, 1.0, 1e-10);
  EXPECT_NEAR(m.mean_cos(), ec, 1e-10);
  EXPECT_NEAR(m.mean_sin(), es, 1e-10);
  // nu((a,inf) x (b,inf)) = E min(cos/(E cos a), sin/(E sin b))
  const double a = 1.3, b = 0.8;
  const double nu = testing::simpson(
      [&](double th) {
        return std::min(std::cos(th) / (ec * a), std::sin(th) / (es * b)) * m.angle_density(th);
      },
      0.0, hp, 20000);
  EXPECT_NEAR(true_nu_rectangle(m, a, b), nu, 1e-7);
  EXPECT_NEAR(true_p_halfplane(m, 1.0, 2.0, 50.0), (ec + 2.0 * es) / 50.0, 1e-12);
}

TEST(MonteCarlo, AgreesWithClosedForm) {
  const auto m = PolarModel::uniform();
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  const auto res = monte_carlo_p(m, set, 10000000, 31337);
  ASSERT_TRUE(res.p_true.has_value());
  EXPECT_EQ(res.n_draws, 10000000);
  EXPECT_GT(res.mc_stderr, 0.0);
  EXPECT_LE(std::abs(res.p_mc - *res.p_true), 4.0 * res.mc_stderr);
  EXPECT_EQ(monte_carlo_p(m, set, 1000, 4), monte_carlo_p(m, set, 1000, 4));
}

TEST(MonteCarlo, EmptySetAndErrors) {
  const auto m = PolarModel::uniform();
  const auto never = FailureSet::increasing([](double, double) { return false; });
  const auto res = monte_carlo_p(m, never, 1000, 1);
  EXPECT_EQ(res.p_mc, 0.0);
  EXPECT_EQ(res.mc_stderr, 0.0);
  EXPECT_FALSE(res.p_true.has_value());
  EXPECT_EQ(code_of([&] { monte_carlo_p(m, never, 99, 1); }), ErrorCode::BadN);
}

TEST(TrueMarginFit, StandardizesExactly) {
  for (const auto& m : {PolarModel::uniform(), PolarModel::beta(2.0, 1.5)}) {
    for (int c : {1, 2}) {
      const auto fit = true_margin_fit(m, c, 10, 1000);
      const double mean = c == 1 ? m.mean_cos() : m.mean_sin();
      for (double x : {2.0, 10.0, 100.0}) {
        EXPECT_NEAR(u_inverse(fit, x), x / mean, 1e-12 * x / mean);
      }
    }
  }
}

TEST(PowerTransform, Values) {
  const std::vector<double> v{1.0, 4.0, 9.0};
  const auto out = power_transform(v, 0.5);
  EXPECT_DOUBLE_EQ(out[0], 1.0);
  EXPECT_DOUBLE_EQ(out[1], 2.0);
  EXPECT_DOUBLE_EQ(out[2], 3.0);
}

struct OracleCase {
  double a1, a2, r;
  bool beta;
};

class OracleSelfConsistency : public ::testing::TestWithParam<OracleCase> {};

TEST_P(OracleSelfConsistency, MonteCarloWithinFourStderr) {
  const auto c = GetParam();
  const auto m = c.beta ? PolarModel::beta(2.0, 2.0) : PolarModel::uniform();
  const auto res = monte_carlo_p(m, FailureSet::halfplane(c.a1, c.a2, c.r), 2000000, 99);
  ASSERT_TRUE(res.p_true.has_value());
  EXPECT_NEAR(*res.p_true, true_p_halfplane(m, c.a1, c.a2, c.r), 1e-15);
  EXPECT_LE(std::abs(res.p_mc - *res.p_true), 4.0 * res.mc_stderr);
}

INSTANTIATE_TEST_SUITE_P(Configs, OracleSelfConsistency,
                         ::testing::Values(OracleCase{1.0, 1.0, 100.0, false},
                                           OracleCase{1.0, 0.5, 40.0, false},
                                           OracleCase{0.3, 2.0, 60.0, true}));

}  // namespace
}  // namespace bivex
