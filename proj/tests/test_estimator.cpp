#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bivex/error.hpp"
#include "bivex/estimator.hpp"
#include "bivex/simulation.hpp"
#include "oracles.hpp"

namespace bivex {
namespace {

const GpdTailFit kIdentity{1.0, 1.0, 1.0, 2, 5};

StandardizedSample micro4() {
  const std::vector<StandardizedPoint> pts{{100, 50}, {300, 400}, {5, 2}, {1000, 900}};
  return StandardizedSample(pts);
}

StandardizedSample micro5() {
  const std::vector<StandardizedPoint> pts{{100, 50}, {300, 400}, {5, 2}, {1000, 900}, {60, 38}};
  return StandardizedSample(pts);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected bivex::Error";
  return ErrorCode::ConfigError;
}

TEST(EstimateP, HandCount) {
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  EXPECT_EQ(estimate_p(micro4(), set, kIdentity, kIdentity, 4, 40.0), 3.0 / 40.0);
  EXPECT_EQ(estimate_p(micro4(), set, kIdentity, kIdentity, 4, 40.0), 0.075);
  for (auto [k, e] : {std::pair{4L, 10.0}, std::pair{8L, 5.0}, std::pair{2L, 20.0}}) {
    EXPECT_EQ(estimate_p(micro4(), set, kIdentity, kIdentity, 4, TuningParams::from_factors(k, e).ke),
              0.075);
  }
  EXPECT_EQ(estimate_p(micro4(), FailureSet::halfplane(1.0, 1.0, 1e9), kIdentity, kIdentity, 4, 40.0),
            0.0);
}

TEST(EstimateP, Errors) {
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  EXPECT_EQ(code_of([&] { estimate_p(micro4(), set, kIdentity, kIdentity, 4, 0.0); }),
            ErrorCode::BadTuning);
  EXPECT_EQ(code_of([&] { estimate_p(micro4(), set, kIdentity, kIdentity, 5, 40.0); }),
            ErrorCode::LengthMismatch);
}

TEST(EstimateI, HandCount) {
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  // S^-: 4 points, S^+: 3 points; (4 - 3) / (2 * 0.1 * 50).
  EXPECT_EQ(estimate_I(micro5(), set, kIdentity, kIdentity, 5, 50.0, 0.1, 2), 0.1);
  EXPECT_EQ(estimate_I(micro5(), set, kIdentity, kIdentity, 5, 50.0, 0.1, 1), 0.1);
  EXPECT_EQ(code_of([&] { estimate_I(micro5(), set, kIdentity, kIdentity, 5, 50.0, 0.5, 2); }),
            ErrorCode::BadTuning);
  EXPECT_EQ(code_of([&] { estimate_I(micro5(), set, kIdentity, kIdentity, 5, 50.0, 0.1, 3); }),
            ErrorCode::BadTuning);
}

TEST(EstimateI, ZeroAwayFromBoundary) {
  const std::vector<StandardizedPoint> pts{{1, 1}, {2, 1}, {1e6, 1e6}, {5e5, 3}};
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  for (int c : {1, 2}) {
    EXPECT_EQ(estimate_I(StandardizedSample(pts), set, kIdentity, kIdentity, 4, 40.0, 0.1, c), 0.0);
  }
}

// Counts Ŝ^- \ Ŝ^+ minus Ŝ^+ \ Ŝ^- with the set transformed to the
// standardized scale instead of the points mapped forward.
TEST(EstimateI, PolarModelMatchesSetDifferenceOracle) {
  const auto model = PolarModel::uniform();
  const long n = 100000;
  const auto [xs, ys] = sample_polar(model, n, 8675309);
  const auto fit1 = true_margin_fit(model, 1, 1000, n);
  const auto fit2 = true_margin_fit(model, 2, 1000, n);
  const auto points = standardize(xs, ys, fit1, fit2);
  const double r = 1000.0;
  const double ke = 5e5;
  const double ell = 0.1;
  const auto set = FailureSet::halfplane(1.0, 1.0, r);
  const testing::InflatedHalfplaneBoundary boundary{fit1, fit2, 1.0, 1.0, r,
                                                     static_cast<double>(n) / ke};
  for (int c : {1, 2}) {
    const double minus_s1 = c == 1 ? 1.0 - ell : 1.0;
    const double minus_s2 = c == 2 ? 1.0 - ell : 1.0;
    const double plus_s1 = c == 1 ? 1.0 + ell : 1.0;
    const double plus_s2 = c == 2 ? 1.0 + ell : 1.0;
    long only_minus = 0;
    long only_plus = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const bool in_minus = boundary.contains(points.z1()[i], points.z2()[i], minus_s1, minus_s2);
      const bool in_plus = boundary.contains(points.z1()[i], points.z2()[i], plus_s1, plus_s2);
      only_minus += in_minus && !in_plus;
      only_plus += in_plus && !in_minus;
    }
    const double oracle = static_cast<double>(only_minus - only_plus) / (2.0 * ell * ke);
    EXPECT_EQ(estimate_I(points, set, fit1, fit2, n, ke, ell, c), oracle);
    EXPECT_GT(only_minus, 10);
    EXPECT_EQ(only_plus, 0);
  }
}

TEST(Covariance, HandCount) {
  EXPECT_EQ(covariance_term(micro5(), kIdentity, kIdentity, 5, 50.0, 1.0), 50.0);
  EXPECT_EQ(covariance_term(micro5(), kIdentity, kIdentity, 5, 50.0, 0.5), 100.0);
  const std::vector<StandardizedPoint> low{{0.5, 0.5}, {1, 0.9}};
  EXPECT_EQ(covariance_term(StandardizedSample(low), kIdentity, kIdentity, 2, 50.0, 1.0), 0.0);
  EXPECT_EQ(code_of([&] { covariance_term(micro5(), kIdentity, kIdentity, 5, 50.0, 0.0); }),
            ErrorCode::BadTuning);
}

TEST(SigmaHat, Arithmetic) {
  EXPECT_EQ(sigma_hat(0.0, 0.0, 3.0, 50.0, 2.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(sigma_hat(0.1, 0.0, 123.0, 50.0, 2.0, 7.0), 0.5);
  EXPECT_DOUBLE_EQ(sigma_hat(0.0, 0.2, 9.0, 100.0, std::numeric_limits<double>::infinity(), 4.0), 1.0);
  // Negative I values only enter squared; the cross term is floored.
  EXPECT_DOUBLE_EQ(sigma_hat(-0.1, 0.1, 50.0, 50.0, 2.0, 2.0), std::sqrt(0.5));
  EXPECT_EQ(code_of([] { sigma_hat(0.1, 0.1, 1.0, 0.0, 2.0, 2.0); }), ErrorCode::BadTuning);
}

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

TEST(NormalQuantile, AgreesWithBisectionOfErfc) {
  for (double p : {1e-10, 1e-6, 0.001, 0.01, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.975, 0.995, 1 - 1e-7}) {
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (phi(mid) < p ? lo : hi) = mid;
    }
    EXPECT_NEAR(normal_quantile(p), 0.5 * (lo + hi), 1e-8) << p;
  }
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(ConfidenceInterval, PaperAnchor) {
  // sigma back-solved from the published half-width 6.6e-4:
  // 6.6e-4 / ((2e5)^(-1/2) log(2e5/3976) z_0.975).
  const double sigma = 6.6e-4 / (std::log(2e5 / 3976.0) / std::sqrt(2e5) * 1.959963984540054);
  EXPECT_NEAR(sigma, 0.0384363250436378, 1e-12);
  const auto [lo, hi] = confidence_interval(8.8e-4, sigma, 2e5, 3976, 0.95);
  EXPECT_NEAR(lo, 2.2e-4, 0.005e-4);
  EXPECT_NEAR(hi, 1.54e-3, 0.005e-3);
}

TEST(ConfidenceInterval, DegenerateAndErrors) {
  const auto [lo, hi] = confidence_interval(0.01, 0.0, 100.0, 10, 0.95);
  EXPECT_EQ(lo, 0.01);
  EXPECT_EQ(hi, 0.01);
  EXPECT_EQ(code_of([] { confidence_interval(0.01, 1.0, 10.0, 10, 0.95); }), ErrorCode::BadTuning);
  EXPECT_EQ(code_of([] { confidence_interval(0.01, 1.0, 100.0, 10, 1.0); }), ErrorCode::BadTuning);
  // Lower end floored at zero.
  EXPECT_EQ(confidence_interval(1e-6, 10.0, 100.0, 10, 0.95).first, 0.0);
}

TuningParams micro_tuning() {
  TuningParams t;
  t.ke = 50.0;
  return t;
}

TEST(EstimateFull, MicroDataset) {
  const std::vector<double> xs{100, 300, 5, 1000, 60};
  const std::vector<double> ys{50, 400, 2, 900, 38};
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  const auto est = estimate_full(xs, ys, kIdentity, kIdentity, set, micro_tuning());
  EXPECT_EQ(est.count_in_inflated, 3u);
  EXPECT_EQ(est.p_hat, 0.06);
  EXPECT_EQ(est.i_hat_1, 0.1);
  EXPECT_EQ(est.i_hat_2, 0.1);
  EXPECT_EQ(est.cov_term, 50.0);
  EXPECT_EQ(est.n, 5);
  EXPECT_EQ(est.ke, 50.0);
  // (50/2) 0.01 + (50/2) 0.01 + 2 * 50 * 0.01 = 1.5
  EXPECT_DOUBLE_EQ(est.sigma_hat, std::sqrt(1.5));
  const double half = std::log(10.0) / std::sqrt(50.0) * std::sqrt(1.5) * 1.959963984540054;
  EXPECT_EQ(est.ci_lower, 0.0);
  EXPECT_NEAR(est.ci_upper, 0.06 + half, 1e-12);
  EXPECT_FALSE(est.diagnostics.unstable);
}

TEST(EstimateFull, ZeroObservationsInInflatedSet) {
  const std::vector<double> xs{100, 300, 5, 1000, 60};
  const std::vector<double> ys{50, 400, 2, 900, 38};
  const auto est = estimate_full(xs, ys, kIdentity, kIdentity, FailureSet::halfplane(1.0, 1.0, 1e9),
                                 micro_tuning());
  EXPECT_EQ(est.p_hat, 0.0);
  EXPECT_EQ(est.ci_lower, 0.0);
  EXPECT_GE(est.ci_upper, 0.0);
  EXPECT_EQ(est.ci_upper, est.p_hat + est.sigma_hat * std::log(10.0) / std::sqrt(50.0) * 1.959963984540054);
}

TEST(EstimateFull, GeneralSetMatchesEquivalentHalfplane) {
  const auto model = PolarModel::uniform();
  const long n = 5000;
  const auto [xs, ys] = sample_polar(model, n, 3);
  const auto fit1 = true_margin_fit(model, 1, 100, n);
  const auto fit2 = true_margin_fit(model, 2, 100, n);
  TuningParams t;
  t.ke = 10.0 * n;
  const auto a = estimate_full(xs.values(), ys.values(), fit1, fit2, FailureSet::halfplane(1, 2, 800), t);
  const auto b = estimate_full(xs.values(), ys.values(), fit1, fit2,
                               FailureSet::increasing([](double x, double y) { return x + 2 * y > 800; }), t);
  EXPECT_EQ(a.count_in_inflated, b.count_in_inflated);
  EXPECT_EQ(a.diagnostics.count_minus_1, b.diagnostics.count_minus_1);
  EXPECT_EQ(a.diagnostics.count_plus_2, b.diagnostics.count_plus_2);
  EXPECT_GT(a.count_in_inflated, 0u);
}

TEST(StabilityScan, ShapeAndDeterminism) {
  const std::vector<double> xs{100, 300, 5, 1000, 60};
  const std::vector<double> ys{50, 400, 2, 900, 38};
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  const std::vector<double> grid{10.0, 20.0, 40.0};
  const auto curve = stability_scan(xs, ys, kIdentity, kIdentity, set, micro_tuning(), grid);
  ASSERT_EQ(curve.rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(curve.rows[i].ke, grid[i]);
    EXPECT_EQ(curve.rows[i].estimate.ke, grid[i]);
  }
  const std::vector<double> other{20.0, 33.0};
  const auto curve2 = stability_scan(xs, ys, kIdentity, kIdentity, set, micro_tuning(), other);
  EXPECT_EQ(curve2.rows[0].estimate.p_hat, curve.rows[1].estimate.p_hat);
  EXPECT_EQ(curve2.rows[0].estimate.ci_upper, curve.rows[1].estimate.ci_upper);
  EXPECT_EQ(curve2.rows[0].estimate.sigma_hat, curve.rows[1].estimate.sigma_hat);
}

TEST(StabilityScan, PaperStyleGrid) {
  const auto grid = log_grid(1e4, 5e5, 40);
  ASSERT_EQ(grid.size(), 40u);
  EXPECT_EQ(grid.front(), 1e4);
  EXPECT_EQ(grid.back(), 5e5);
  const auto model = PolarModel::uniform();
  const auto [xs, ys] = sample_polar(model, 3976, 1);
  const auto fit1 = true_margin_fit(model, 1, 900, 3976);
  const auto fit2 = true_margin_fit(model, 2, 600, 3976);
  TuningParams t;
  t.ke = grid.front();
  const auto curve = stability_scan(xs.values(), ys.values(), fit1, fit2,
                                    FailureSet::halfplane(1.0, 0.5, 100.0), t, grid);
  ASSERT_EQ(curve.rows.size(), 40u);
  for (std::size_t i = 1; i < curve.rows.size(); ++i) {
    EXPECT_GT(curve.rows[i].ke, curve.rows[i - 1].ke);
  }
}

TEST(StabilityScan, BadGrid) {
  const std::vector<double> xs{100, 300, 5, 1000, 60};
  const std::vector<double> ys{50, 400, 2, 900, 38};
  const auto set = FailureSet::halfplane(1.0, 1.0, 1000.0);
  for (const std::vector<double>& grid :
       {std::vector<double>{}, std::vector<double>{20.0, 10.0}, std::vector<double>{5.0, 10.0},
        std::vector<double>{10.0, 10.0}}) {
    EXPECT_EQ(code_of([&] { stability_scan(xs, ys, kIdentity, kIdentity, set, micro_tuning(), grid); }),
              ErrorCode::BadGrid);
  }
}

TEST(Properties, RetentionMonotoneAndIntegerCounts) {
  std::mt19937_64 rng(17);
  const auto model = PolarModel::uniform();
  const auto [xs, ys] = sample_polar(model, 2000, 99);
  const auto fit1 = true_margin_fit(model, 1, 40, 2000);
  const auto fit2 = true_margin_fit(model, 2, 40, 2000);
  const auto points = standardize(xs, ys, fit1, fit2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    const double r = 20.0 + 2000.0 * u(rng);
    const double ke = 2000.0 * (2.0 + 50.0 * u(rng));
    const double a2 = 0.2 + 2.0 * u(rng);
    const double p1 = estimate_p(points, FailureSet::halfplane(1.0, a2, r), fit1, fit2, 2000, ke);
    const double p2 = estimate_p(points, FailureSet::halfplane(1.0, a2, r * (1.0 + u(rng))), fit1, fit2, 2000, ke);
    EXPECT_GE(p1, p2);
    const double count = p1 * ke;
    EXPECT_NEAR(count, std::round(count), 1e-9 * std::max(1.0, count));
    EXPECT_GE(p1, 0.0);
    EXPECT_LE(p1, 2000.0 / ke);
  }
}

}  // namespace
}  // namespace bivex
