#include "bivex/marginal_tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bivex/error.hpp"

namespace bivex {

namespace {

bool is_zero_gamma(double gamma) { return std::abs(gamma) < kGammaZeroThreshold; }

}  // namespace

MarginalSample::MarginalSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::BadN, "a marginal sample needs at least one value");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::NonFiniteValue, "value at index " + std::to_string(i) + " is not finite");
    }
  }
  sorted_ = values_;
  std::stable_sort(sorted_.begin(), sorted_.end());
}

double MarginalSample::order_statistic(std::size_t j) const {
  if (j < 1 || j > sorted_.size()) {
    throw Error(ErrorCode::BadK, "order statistic index " + std::to_string(j) + " out of range");
  }
  return sorted_[j - 1];
}

double hill_estimate(const MarginalSample& sample, long k) {
  const auto n = static_cast<long>(sample.size());
  if (k < 1 || k > n - 1) {
    throw Error(ErrorCode::BadK, "k = " + std::to_string(k) + " must lie in [1, n-1] with n = " +
                                     std::to_string(n));
  }
  const auto sorted = sample.sorted();
  const double threshold = sorted[static_cast<std::size_t>(n - k - 1)];
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::NonPositiveTail, "X_{n-k:n} must be positive for the Hill estimator");
  }
  double sum = 0.0;
  for (long i = 1; i <= k; ++i) {
    sum += std::log(sorted[static_cast<std::size_t>(n - i)] / threshold);
  }
  return sum / static_cast<double>(k);
}

GpdTailFit fit_marginal_hill(const MarginalSample& sample, long k) {
  const double gamma = hill_estimate(sample, k);
  if (k < 2) {
    throw Error(ErrorCode::BadK, "a tail fit needs k >= 2");
  }
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::NonPositiveGamma,
                "Hill estimate is not positive; supply the fit parameters explicitly");
  }
  const auto n = static_cast<long>(sample.size());
  const double threshold = sample.order_statistic(static_cast<std::size_t>(n - k));
  const double mu =
      threshold * std::pow(static_cast<double>(k) / static_cast<double>(n), gamma);
  return GpdTailFit{gamma, gamma * mu, mu, k, n};
}

GpdTailFit make_fit(double gamma, double sigma, double mu, long k_i, long n) {
  if (!std::isfinite(gamma) || !std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    throw Error(ErrorCode::InvalidFit, "sigma must be positive and all parameters finite");
  }
  if (k_i < 2 || k_i > n) {
    throw Error(ErrorCode::InvalidFit, "need 2 <= k_i <= n, got k_i = " + std::to_string(k_i) +
                                           ", n = " + std::to_string(n));
  }
  return GpdTailFit{gamma, sigma, mu, k_i, n};
}

double u_inverse(const GpdTailFit& fit, double x) noexcept {
  const double y = (x - fit.mu) / fit.sigma;
  if (is_zero_gamma(fit.gamma)) {
    return std::exp(y);
  }
  const double gy = fit.gamma * y;
  if (!(1.0 + gy > 0.0)) {
    return fit.gamma > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::exp(std::log1p(gy) / fit.gamma);
}

double u_forward(const GpdTailFit& fit, double t) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::NonPositiveArg, "u_forward needs t > 0");
  }
  const double log_t = std::log(t);
  if (is_zero_gamma(fit.gamma)) {
    return fit.mu + fit.sigma * log_t;
  }
  return fit.mu + fit.sigma * std::expm1(fit.gamma * log_t) / fit.gamma;
}

double validity_threshold(const GpdTailFit& fit) {
  return u_forward(fit, static_cast<double>(fit.n) / static_cast<double>(fit.k_i));
}

}  // namespace bivex
