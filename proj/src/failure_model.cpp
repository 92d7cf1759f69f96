#include "bivex/failure_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bivex/error.hpp"

namespace bivex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_zero_gamma(double gamma) { return std::abs(gamma) < kGammaZeroThreshold; }

void check_stretch(double ke, double stretch1, double stretch2) {
  if (!(ke > 0.0) || !std::isfinite(ke)) {
    throw Error(ErrorCode::BadTuning, "ke must be positive and finite");
  }
  if (!(stretch1 > 0.0) || !(stretch2 > 0.0)) {
    throw Error(ErrorCode::BadTuning, "stretch factors must be positive");
  }
}

}  // namespace

FailureSet FailureSet::halfplane(double alpha1, double alpha2, double retention) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0) || !(retention > 0.0) || !std::isfinite(alpha1) ||
      !std::isfinite(alpha2) || !std::isfinite(retention)) {
    throw Error(ErrorCode::ConfigError, "halfplane needs alpha1, alpha2, retention > 0");
  }
  return FailureSet(LinearHalfplane{alpha1, alpha2, retention});
}

FailureSet FailureSet::increasing(std::function<bool(double, double)> member, std::string name) {
  if (!member) {
    throw Error(ErrorCode::ConfigError, "failure set predicate is empty");
  }
  return FailureSet(GeneralIncreasing{std::move(member), std::move(name)});
}

const LinearHalfplane& FailureSet::as_halfplane() const {
  if (const auto* h = std::get_if<LinearHalfplane>(&shape_)) {
    return *h;
  }
  throw Error(ErrorCode::NotHalfplane, "operation needs a linear halfplane failure set");
}

TuningParams TuningParams::from_factors(long k, double e_n) {
  TuningParams t;
  t.ke = static_cast<double>(k) * e_n;
  t.k_for_variance = k;
  return t;
}

void TuningParams::validate() const {
  if (!(ke > 0.0) || !std::isfinite(ke)) {
    throw Error(ErrorCode::BadTuning, "ke must be positive and finite");
  }
  if (!(ell > 0.0 && ell < 0.5)) {
    throw Error(ErrorCode::BadTuning, "ell must lie in (0, 0.5)");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::BadTuning, "lambda must lie in (0, 1]");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::BadTuning, "confidence level must lie in (0, 1)");
  }
  if (k_for_variance && *k_for_variance < 1) {
    throw Error(ErrorCode::BadTuning, "k must be positive");
  }
}

bool contains(const FailureSet& set, double x, double y) {
  return std::visit(
      [&](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, LinearHalfplane>) {
          return shape.alpha1 * x + shape.alpha2 * y > shape.retention;
        } else {
          return shape.member(x, y);
        }
      },
      set.shape());
}

double forward_image(const GpdTailFit& fit, double z, double scale) {
  if (z == kInf) {
    return kInf;
  }
  const double t = scale * z;
  if (t == kInf) {
    return u_forward(fit, t);
  }
  if (!(t > 0.0)) {
    // Limit of u_forward at 0+: finite only for gamma > 0.
    if (!is_zero_gamma(fit.gamma) && fit.gamma > 0.0) {
      return fit.mu - fit.sigma / fit.gamma;
    }
    return -kInf;
  }
  return u_forward(fit, t);
}

bool inflated_contains(const FailureSet& set, const GpdTailFit& fit1, const GpdTailFit& fit2,
                       long n, double ke, const StandardizedPoint& z, double stretch1,
                       double stretch2) {
  check_stretch(ke, stretch1, stretch2);
  if (n < 1) {
    throw Error(ErrorCode::BadN, "n must be positive");
  }
  const double base = ke / static_cast<double>(n);
  const double x = forward_image(fit1, z.z1, base / stretch1);
  const double y = forward_image(fit2, z.z2, base / stretch2);
  if (set.is_halfplane() && (x == kInf || y == kInf)) {
    return true;
  }
  return contains(set, x, y);
}

std::pair<double, double> crude_ke_bound_components(const FailureSet& set, const GpdTailFit& fit1,
                                                    const GpdTailFit& fit2) {
  const auto& h = set.as_halfplane();
  return {static_cast<double>(fit1.k_i) * u_inverse(fit1, h.retention / h.alpha1),
          static_cast<double>(fit2.k_i) * u_inverse(fit2, h.retention / h.alpha2)};
}

double crude_ke_bound(const FailureSet& set, const GpdTailFit& fit1, const GpdTailFit& fit2) {
  const auto [b1, b2] = crude_ke_bound_components(set, fit1, fit2);
  return std::min(b1, b2);
}

double linearize(const GpdTailFit& fit, double z) noexcept {
  if (z == kInf) {
    return kInf;
  }
  if (is_zero_gamma(fit.gamma)) {
    return std::log(z);
  }
  const double p = std::pow(z, fit.gamma);
  return fit.gamma > 0.0 ? p : -p;
}

ForwardLine forward_line(const GpdTailFit& fit, double scale) noexcept {
  if (is_zero_gamma(fit.gamma)) {
    return {fit.mu + fit.sigma * std::log(scale), fit.sigma};
  }
  return {fit.mu - fit.sigma / fit.gamma,
          fit.sigma * std::pow(scale, fit.gamma) / std::abs(fit.gamma)};
}

InflatedCounter::InflatedCounter(StandardizedSample points, FailureSet set, GpdTailFit fit1,
                                 GpdTailFit fit2)
    : points_(std::move(points)), set_(std::move(set)), fit1_(fit1), fit2_(fit2) {
  if (points_.empty()) {
    throw Error(ErrorCode::BadN, "no standardized points");
  }
  if (set_.is_halfplane()) {
    w1_.resize(points_.size());
    w2_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      w1_[i] = linearize(fit1_, points_.z1()[i]);
      w2_[i] = linearize(fit2_, points_.z2()[i]);
    }
  }
}

std::size_t InflatedCounter::count(double ke, double stretch1, double stretch2) const {
  check_stretch(ke, stretch1, stretch2);
  const long n_points = n();
  if (!set_.is_halfplane()) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      count += inflated_contains(set_, fit1_, fit2_, n_points, ke, points_[i], stretch1, stretch2)
                   ? 1
                   : 0;
    }
    return count;
  }
  const auto& h = set_.as_halfplane();
  const double base = ke / static_cast<double>(n_points);
  const ForwardLine line1 = forward_line(fit1_, base / stretch1);
  const ForwardLine line2 = forward_line(fit2_, base / stretch2);
  const kernels::HalfplaneCoeffs coeffs{h.alpha1,     line1.offset, line1.slope, h.alpha2,
                                        line2.offset, line2.slope,  h.retention};
  return kernels::active().count_halfplane(w1_, w2_, coeffs);
}

}  // namespace bivex
