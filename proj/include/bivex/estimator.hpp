#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bivex/dependence.hpp"
#include "bivex/failure_model.hpp"
#include "bivex/marginal_tails.hpp"

namespace bivex {

struct EstimateDiagnostics {
  std::size_t count_minus_1 = 0;  // points in S_1^-, first coordinate shrunk by (1 - ell)
  std::size_t count_plus_1 = 0;
  std::size_t count_minus_2 = 0;
  std::size_t count_plus_2 = 0;
  std::size_t count_joint_exceed = 0;  // points behind the covariance term
  double sigma_sq_raw = 0.0;           // before the floor at zero
  bool sigma_clamped = false;
  bool unstable = false;  // both I estimates negative
};

struct FailureProbabilityEstimate {
  double p_hat = 0.0;
  double sigma_hat = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double ke = 0.0;
  long n = 0;
  std::size_t count_in_inflated = 0;
  double i_hat_1 = 0.0;
  double i_hat_2 = 0.0;
  double cov_term = 0.0;
  EstimateDiagnostics diagnostics;
};

struct StabilityRow {
  double ke;
  FailureProbabilityEstimate estimate;
};

struct StabilityCurve {
  std::vector<StabilityRow> rows;
};

// (1/ke) #{i : z_i in (n/ke) U^<-(D)}
double estimate_p(const StandardizedSample& points, const FailureSet& set, const GpdTailFit& fit1,
                  const GpdTailFit& fit2, long n, double ke);

// Finite-difference estimate of the boundary integral along one coordinate,
// (#S^- - #S^+) / (2 ell ke). Reported raw, so it can be negative.
double estimate_I(const StandardizedSample& points, const FailureSet& set, const GpdTailFit& fit1,
                  const GpdTailFit& fit2, long n, double ke, double ell, int coordinate);

// (ke / (lambda k1 k2)) #{i : z1_i > n/(lambda k1), z2_i > n/(lambda k2)}
double covariance_term(const StandardizedSample& points, const GpdTailFit& fit1,
                       const GpdTailFit& fit2, long n, double ke, double lambda);

// k1 or k2 may be +inf, which drops that coordinate's terms.
double sigma_hat(double i1, double i2, double cov, double ke, double k1, double k2);

// Standard normal quantile.
double normal_quantile(double p);

// p_hat -/+ ke^(-1/2) log(ke/n) sigma z_{(1+level)/2}, lower end floored at 0.
std::pair<double, double> confidence_interval(double p_hat, double sigma, double ke, long n,
                                              double level);

// Standardizes once and evaluates any number of tunings on the same data.
class FailureEstimator {
 public:
  FailureEstimator(StandardizedSample points, FailureSet set, GpdTailFit fit1, GpdTailFit fit2);

  FailureProbabilityEstimate evaluate(const TuningParams& tuning) const;

  long n() const noexcept { return counter_.n(); }
  const StandardizedSample& points() const noexcept { return counter_.points(); }

 private:
  GpdTailFit fit1_;
  GpdTailFit fit2_;
  InflatedCounter counter_;
};

FailureProbabilityEstimate estimate_full(std::span<const double> xs, std::span<const double> ys,
                                         const GpdTailFit& fit1, const GpdTailFit& fit2,
                                         const FailureSet& set, const TuningParams& tuning);

// One estimate per grid value; the grid must be strictly increasing with
// every value above n.
StabilityCurve stability_scan(std::span<const double> xs, std::span<const double> ys,
                              const GpdTailFit& fit1, const GpdTailFit& fit2,
                              const FailureSet& set, const TuningParams& tuning,
                              std::span<const double> ke_grid);

// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace bivex
