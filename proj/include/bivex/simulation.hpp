#pragma once

// Polar heavy-tailed generator (X, Y) = R (cos Theta, sin Theta) with
// P(R > r) = 1/r for r >= 1 and Theta on [0, pi/2] independent of R. Its
// margins and exponent measure are known in closed form, which makes it the
// reference model for checking the estimator.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "bivex/failure_model.hpp"
#include "bivex/marginal_tails.hpp"

namespace bivex {

struct UniformAngle {};

// Theta = (pi/2) B with B ~ Beta(shape1, shape2); shapes >= 1 keep the angular
// density bounded.
struct BetaAngle {
  double shape1;
  double shape2;
};

class PolarModel {
 public:
  static PolarModel uniform() { return PolarModel(UniformAngle{}); }
  static PolarModel beta(double shape1, double shape2);

  const std::variant<UniformAngle, BetaAngle>& spectral() const noexcept { return spectral_; }
  bool is_uniform() const noexcept { return std::holds_alternative<UniformAngle>(spectral_); }

  // Density of Theta on [0, pi/2].
  double angle_density(double theta) const;

  // E cos(Theta) and E sin(Theta): P(X > x) = mean_cos() / x for x >= 1.
  double mean_cos() const;
  double mean_sin() const;

 private:
  explicit PolarModel(std::variant<UniformAngle, BetaAngle> spectral)
      : spectral_(std::move(spectral)) {}

  std::variant<UniformAngle, BetaAngle> spectral_;
};

struct OracleResult {
  std::optional<double> p_true;
  double p_mc = 0.0;
  double mc_stderr = 0.0;
  long n_draws = 0;

  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

// Seed of replicate `index` in a batch started from `base_seed`.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return base_seed + index;
}

std::pair<MarginalSample, MarginalSample> sample_polar(const PolarModel& model, long n,
                                                       std::uint64_t seed);

// P(alpha1 X + alpha2 Y > r) = E[alpha1 cos Theta + alpha2 sin Theta] / r,
// valid while r >= hypot(alpha1, alpha2).
double true_p_halfplane(const PolarModel& model, double alpha1, double alpha2, double r);

// Exponent measure of (a, inf) x (b, inf) after exact standardization of both
// margins to 1/(1 - F).
double true_nu_rectangle(const PolarModel& model, double a, double b);

OracleResult monte_carlo_p(const PolarModel& model, const FailureSet& set, long n_draws,
                           std::uint64_t seed);

// Exact standardizing fit of one margin: gamma = 1 and sigma = mu = E cos
// (coordinate 1) or E sin (coordinate 2), so u_inverse(x) = 1 / (1 - F(x)) for
// x >= 1. k_i only feeds the variance estimate.
GpdTailFit true_margin_fit(const PolarModel& model, int coordinate, long k_i, long n);

// x -> x^gamma coordinatewise. Turns the generator's gamma = 1 margins into
// margins with extreme value index gamma; increasing sets stay increasing.
std::vector<double> power_transform(std::span<const double> values, double gamma);

}  // namespace bivex
