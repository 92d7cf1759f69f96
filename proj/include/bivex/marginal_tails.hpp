#pragma once

// One-dimensional generalized Pareto tail fits and the standardization maps
//
//   u_inverse(x) = 1 / (1 - F(x)) = (1 + gamma (x - mu) / sigma)^(1/gamma)
//   u_forward(t) = mu + sigma (t^gamma - 1) / gamma
//
// that carry raw observations to the exponent-measure scale and back.

#include <cstddef>
#include <span>
#include <vector>

namespace bivex {

// Below this magnitude gamma is treated as exactly zero (exponential branch).
inline constexpr double kGammaZeroThreshold = 1e-10;

// Raw observations of one coordinate together with a sorted copy.
class MarginalSample {
 public:
  explicit MarginalSample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }

  // X_{j:n}, the j-th smallest value, 1-based.
  double order_statistic(std::size_t j) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

// GPD approximation F(x) = 1 - (1 + gamma (x - mu) / sigma)^(-1/gamma) of one
// marginal, fitted from the k_i largest of n observations.
struct GpdTailFit {
  double gamma = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  long k_i = 2;
  long n = 2;
};

double hill_estimate(const MarginalSample& sample, long k);

// Hill-based fit with 1 - F(x) = (k/n) (x / X_{n-k:n})^(-1/gamma), written in
// GPD form: mu = X_{n-k:n} (k/n)^gamma, sigma = gamma * mu.
GpdTailFit fit_marginal_hill(const MarginalSample& sample, long k);

GpdTailFit make_fit(double gamma, double sigma, double mu, long k_i, long n);

// Total on finite x: 0 below the lower endpoint when gamma > 0, +inf above the
// upper endpoint when gamma < 0.
double u_inverse(const GpdTailFit& fit, double x) noexcept;

double u_forward(const GpdTailFit& fit, double t);

// Raw level above which the fit is trusted, u_forward(fit, n / k_i).
double validity_threshold(const GpdTailFit& fit);

}  // namespace bivex
