#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bivex/dependence.hpp"
#include "bivex/kernels.hpp"
#include "bivex/marginal_tails.hpp"

namespace bivex {

// {(x, y) : alpha1 x + alpha2 y > retention}
struct LinearHalfplane {
  double alpha1;
  double alpha2;
  double retention;
};

// Any region that is increasing in both coordinates: if (x, y) is inside, so
// is every (x', y') with x' >= x and y' >= y. The predicate must honor that.
struct GeneralIncreasing {
  std::function<bool(double, double)> member;
  std::string name = "custom";
};

class FailureSet {
 public:
  static FailureSet halfplane(double alpha1, double alpha2, double retention);
  static FailureSet increasing(std::function<bool(double, double)> member,
                               std::string name = "custom");

  bool is_halfplane() const noexcept { return std::holds_alternative<LinearHalfplane>(shape_); }
  // Throws NotHalfplane for the general variant.
  const LinearHalfplane& as_halfplane() const;
  const std::variant<LinearHalfplane, GeneralIncreasing>& shape() const noexcept { return shape_; }

 private:
  explicit FailureSet(std::variant<LinearHalfplane, GeneralIncreasing> shape)
      : shape_(std::move(shape)) {}

  std::variant<LinearHalfplane, GeneralIncreasing> shape_;
};

// Tuning of the inflation and of the variance estimate. Only the product
// k * e_n enters the estimator; k is kept for reporting.
struct TuningParams {
  double ke = 0.0;
  std::optional<long> k_for_variance;
  double ell = 0.1;
  double lambda = 1.0;
  double level = 0.95;

  static TuningParams from_factors(long k, double e_n);

  // Throws BadTuning on any violated range.
  void validate() const;
};

bool contains(const FailureSet& set, double x, double y);

// Whether z lies in the stretched inflated set
// {(s1 u, s2 v) : (u, v) in (n/ke) U^<-(D)}, decided by mapping z forward.
bool inflated_contains(const FailureSet& set, const GpdTailFit& fit1, const GpdTailFit& fit2,
                       long n, double ke, const StandardizedPoint& z, double stretch1,
                       double stretch2);

// Forward image u_forward(fit, scale * z) with the sentinel rules for z = 0
// and z = +inf.
double forward_image(const GpdTailFit& fit, double z, double scale);

// min(k1 U1^<-(R/alpha1), k2 U2^<-(R/alpha2)); ke above this inflates the set
// into the range where the marginal fits are not validated.
double crude_ke_bound(const FailureSet& set, const GpdTailFit& fit1, const GpdTailFit& fit2);
std::pair<double, double> crude_ke_bound_components(const FailureSet& set, const GpdTailFit& fit1,
                                                    const GpdTailFit& fit2);

// The forward map t -> u_forward(fit, scale * t) is affine in a per-point
// transform w(z) that does not depend on scale:
//   gamma > 0:  w = z^gamma,   gamma < 0:  w = -z^gamma,   gamma = 0:  w = log z,
// with w = +inf whenever z = +inf.
double linearize(const GpdTailFit& fit, double z) noexcept;

struct ForwardLine {
  double offset;
  double slope;
};

ForwardLine forward_line(const GpdTailFit& fit, double scale) noexcept;

// Counts standardized points inside stretched inflated failure sets for any
// ke. Halfplanes run through the vector kernels on linearized coordinates;
// general sets evaluate inflated_contains point by point.
class InflatedCounter {
 public:
  InflatedCounter(StandardizedSample points, FailureSet set, GpdTailFit fit1,
                  GpdTailFit fit2);

  std::size_t count(double ke, double stretch1 = 1.0, double stretch2 = 1.0) const;

  long n() const noexcept { return static_cast<long>(points_.size()); }
  const StandardizedSample& points() const noexcept { return points_; }

 private:
  StandardizedSample points_;
  FailureSet set_;
  GpdTailFit fit1_;
  GpdTailFit fit2_;
  std::vector<double> w1_;
  std::vector<double> w2_;
};

}  // namespace bivex
