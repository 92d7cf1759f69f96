#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bivex/marginal_tails.hpp"

namespace bivex {

// An observation mapped to the exponent-measure scale, 1/(1 - F_j) per
// coordinate. Coordinates are >= 0 and may be +inf (clamped).
struct StandardizedPoint {
  double z1 = 0.0;
  double z2 = 0.0;

  friend bool operator==(const StandardizedPoint&, const StandardizedPoint&) = default;
};

// Standardized points stored column-wise so the counting kernels can stream
// each coordinate.
class StandardizedSample {
 public:
  StandardizedSample() = default;
  StandardizedSample(std::vector<double> z1, std::vector<double> z2);
  explicit StandardizedSample(std::span<const StandardizedPoint> points);

  std::size_t size() const noexcept { return z1_.size(); }
  bool empty() const noexcept { return z1_.empty(); }
  StandardizedPoint operator[](std::size_t i) const noexcept { return {z1_[i], z2_[i]}; }

  std::span<const double> z1() const noexcept { return z1_; }
  std::span<const double> z2() const noexcept { return z2_; }

  std::vector<StandardizedPoint> points() const;

 private:
  std::vector<double> z1_;
  std::vector<double> z2_;
};

// Element i is (u_inverse(fit1, xs_i), u_inverse(fit2, ys_i)).
StandardizedSample standardize(const MarginalSample& xs, const MarginalSample& ys,
                               const GpdTailFit& fit1, const GpdTailFit& fit2);
StandardizedSample standardize(std::span<const double> xs, std::span<const double> ys,
                               const GpdTailFit& fit1, const GpdTailFit& fit2);

// nu_hat(B) = (1/mass_scale) #{i : point_i in B}.
class EmpiricalExponentMeasure {
 public:
  EmpiricalExponentMeasure(StandardizedSample points, double mass_scale);

  // Rescales n-scale standardized points by k/n and gives each mass 1/k, the
  // usual estimator of the exponent measure from the k largest observations.
  static EmpiricalExponentMeasure from_top_k(const StandardizedSample& standardized, double k);

  const StandardizedSample& points() const noexcept { return points_; }
  double mass_scale() const noexcept { return mass_scale_; }

  double total_mass() const noexcept {
    return static_cast<double>(points_.size()) / mass_scale_;
  }

 private:
  StandardizedSample points_;
  double mass_scale_;
};

// Mass of the open rectangle (a, inf) x (b, inf).
double nu_hat_rectangle(const EmpiricalExponentMeasure& m, double a, double b);

double nu_hat_set(const EmpiricalExponentMeasure& m,
                  const std::function<bool(double, double)>& member);

}  // namespace bivex
