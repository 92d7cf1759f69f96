#include "bivex/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "bivex/error.hpp"
#include "bivex/kernels.hpp"

namespace bivex {

namespace {

void check_points(const StandardizedSample& points, long n) {
  if (n < 1 || static_cast<std::size_t>(n) != points.size()) {
    throw Error(ErrorCode::LengthMismatch, "n = " + std::to_string(n) + " but " +
                                               std::to_string(points.size()) + " points given");
  }
}

void check_ke(double ke) {
  if (!(ke > 0.0) || !std::isfinite(ke)) {
    throw Error(ErrorCode::BadTuning, "ke must be positive and finite");
  }
}

void check_ell(double ell) {
  if (!(ell > 0.0 && ell < 0.5)) {
    throw Error(ErrorCode::BadTuning, "ell must lie in (0, 0.5)");
  }
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::BadTuning, "lambda must lie in (0, 1]");
  }
}

std::pair<double, double> stretches(int coordinate, double factor) {
  if (coordinate == 1) return {factor, 1.0};
  if (coordinate == 2) return {1.0, factor};
  throw Error(ErrorCode::BadTuning, "coordinate must be 1 or 2");
}

double finite_difference(std::size_t minus, std::size_t plus, double ell, double ke) {
  return (static_cast<double>(minus) - static_cast<double>(plus)) / (2.0 * ell * ke);
}

std::size_t joint_exceedances(const StandardizedSample& points, const GpdTailFit& fit1,
                              const GpdTailFit& fit2, long n, double lambda) {
  const double t1 = static_cast<double>(n) / (lambda * static_cast<double>(fit1.k_i));
  const double t2 = static_cast<double>(n) / (lambda * static_cast<double>(fit2.k_i));
  return kernels::active().count_rectangle(points.z1(), points.z2(), t1, t2);
}

double covariance_from_count(std::size_t count, const GpdTailFit& fit1, const GpdTailFit& fit2,
                             double ke, double lambda) {
  return ke / (lambda * static_cast<double>(fit1.k_i) * static_cast<double>(fit2.k_i)) *
         static_cast<double>(count);
}

}  // namespace

double estimate_p(const StandardizedSample& points, const FailureSet& set, const GpdTailFit& fit1,
                  const GpdTailFit& fit2, long n, double ke) {
  check_points(points, n);
  check_ke(ke);
  const InflatedCounter counter(points, set, fit1, fit2);
  return static_cast<double>(counter.count(ke)) / ke;
}

double estimate_I(const StandardizedSample& points, const FailureSet& set, const GpdTailFit& fit1,
                  const GpdTailFit& fit2, long n, double ke, double ell, int coordinate) {
  check_points(points, n);
  check_ke(ke);
  check_ell(ell);
  const InflatedCounter counter(points, set, fit1, fit2);
  const auto [m1, m2] = stretches(coordinate, 1.0 - ell);
  const auto [p1, p2] = stretches(coordinate, 1.0 + ell);
  return finite_difference(counter.count(ke, m1, m2), counter.count(ke, p1, p2), ell, ke);
}

double covariance_term(const StandardizedSample& points, const GpdTailFit& fit1,
                       const GpdTailFit& fit2, long n, double ke, double lambda) {
  check_points(points, n);
  check_ke(ke);
  check_lambda(lambda);
  return covariance_from_count(joint_exceedances(points, fit1, fit2, n, lambda), fit1, fit2, ke,
                               lambda);
}

double sigma_hat(double i1, double i2, double cov, double ke, double k1, double k2) {
  check_ke(ke);
  if (!(k1 >= 1.0) || !(k2 >= 1.0)) {
    throw Error(ErrorCode::BadTuning, "k1 and k2 must be at least 1");
  }
  const double cross = 2.0 * cov * std::max(i1, 0.0) * std::max(i2, 0.0);
  const double var = ke / k1 * i1 * i1 + ke / k2 * i2 * i2 + cross;
  return std::sqrt(std::max(var, 0.0));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::BadTuning, "normal quantile needs p in (0, 1)");
  }
  // Acklam's rational approximation (relative error below 1.2e-9) ...
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // ... polished by one Halley step on Phi(x) - p.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

std::pair<double, double> confidence_interval(double p_hat, double sigma, double ke, long n,
                                              double level) {
  if (!(ke > static_cast<double>(n)) || n < 1) {
    throw Error(ErrorCode::BadTuning, "confidence interval needs ke > n");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::BadTuning, "confidence level must lie in (0, 1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double half = std::log(ke / static_cast<double>(n)) / std::sqrt(ke) * sigma * z;
  return {std::max(0.0, p_hat - half), p_hat + half};
}

FailureEstimator::FailureEstimator(StandardizedSample points, FailureSet set, GpdTailFit fit1,
                                   GpdTailFit fit2)
    : fit1_(fit1), fit2_(fit2), counter_(std::move(points), std::move(set), fit1, fit2) {}

FailureProbabilityEstimate FailureEstimator::evaluate(const TuningParams& tuning) const {
  tuning.validate();
  const double ke = tuning.ke;
  const double ell = tuning.ell;
  const long n_points = n();

  FailureProbabilityEstimate est;
  est.ke = ke;
  est.n = n_points;
  est.count_in_inflated = counter_.count(ke);
  est.p_hat = static_cast<double>(est.count_in_inflated) / ke;

  auto& diag = est.diagnostics;
  diag.count_minus_1 = counter_.count(ke, 1.0 - ell, 1.0);
  diag.count_plus_1 = counter_.count(ke, 1.0 + ell, 1.0);
  diag.count_minus_2 = counter_.count(ke, 1.0, 1.0 - ell);
  diag.count_plus_2 = counter_.count(ke, 1.0, 1.0 + ell);
  est.i_hat_1 = finite_difference(diag.count_minus_1, diag.count_plus_1, ell, ke);
  est.i_hat_2 = finite_difference(diag.count_minus_2, diag.count_plus_2, ell, ke);

  diag.count_joint_exceed = joint_exceedances(counter_.points(), fit1_, fit2_, n_points, tuning.lambda);
  est.cov_term = covariance_from_count(diag.count_joint_exceed, fit1_, fit2_, ke, tuning.lambda);

  const double k1 = static_cast<double>(fit1_.k_i);
  const double k2 = static_cast<double>(fit2_.k_i);
  diag.sigma_sq_raw = ke / k1 * est.i_hat_1 * est.i_hat_1 + ke / k2 * est.i_hat_2 * est.i_hat_2 +
                      2.0 * est.cov_term * std::max(est.i_hat_1, 0.0) * std::max(est.i_hat_2, 0.0);
  diag.sigma_clamped = diag.sigma_sq_raw < 0.0;
  diag.unstable = est.i_hat_1 < 0.0 && est.i_hat_2 < 0.0;
  est.sigma_hat = diag.unstable
                      ? 0.0
                      : sigma_hat(est.i_hat_1, est.i_hat_2, est.cov_term, ke, k1, k2);

  std::tie(est.ci_lower, est.ci_upper) =
      confidence_interval(est.p_hat, est.sigma_hat, ke, n_points, tuning.level);
  return est;
}

FailureProbabilityEstimate estimate_full(std::span<const double> xs, std::span<const double> ys,
                                         const GpdTailFit& fit1, const GpdTailFit& fit2,
                                         const FailureSet& set, const TuningParams& tuning) {
  tuning.validate();
  const FailureEstimator estimator(standardize(xs, ys, fit1, fit2), set, fit1, fit2);
  return estimator.evaluate(tuning);
}

StabilityCurve stability_scan(std::span<const double> xs, std::span<const double> ys,
                              const GpdTailFit& fit1, const GpdTailFit& fit2,
                              const FailureSet& set, const TuningParams& tuning,
                              std::span<const double> ke_grid) {
  if (ke_grid.empty()) {
    throw Error(ErrorCode::BadGrid, "empty ke grid");
  }
  const auto n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < ke_grid.size(); ++i) {
    if (!(ke_grid[i] > n) || !std::isfinite(ke_grid[i])) {
      throw Error(ErrorCode::BadGrid, "grid value " + std::to_string(ke_grid[i]) +
                                          " is not above n");
    }
    if (i > 0 && !(ke_grid[i] > ke_grid[i - 1])) {
      throw Error(ErrorCode::BadGrid, "grid must be strictly increasing");
    }
  }
  const FailureEstimator estimator(standardize(xs, ys, fit1, fit2), set, fit1, fit2);
  StabilityCurve curve;
  curve.rows.reserve(ke_grid.size());
  for (double ke : ke_grid) {
    TuningParams row_tuning = tuning;
    row_tuning.ke = ke;
    curve.rows.push_back({ke, estimator.evaluate(row_tuning)});
  }
  return curve;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw Error(ErrorCode::BadGrid, "log grid needs 0 < lo < hi and at least two points");
  }
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace bivex
