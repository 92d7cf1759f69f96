#include "bivex/dependence.hpp"

#include <cmath>
#include <string>

#include "bivex/error.hpp"
#include "bivex/kernels.hpp"

namespace bivex {

StandardizedSample::StandardizedSample(std::vector<double> z1, std::vector<double> z2)
    : z1_(std::move(z1)), z2_(std::move(z2)) {
  if (z1_.size() != z2_.size()) {
    throw Error(ErrorCode::LengthMismatch, "coordinate columns differ in length");
  }
}

StandardizedSample::StandardizedSample(std::span<const StandardizedPoint> points) {
  z1_.reserve(points.size());
  z2_.reserve(points.size());
  for (const auto& p : points) {
    z1_.push_back(p.z1);
    z2_.push_back(p.z2);
  }
}

std::vector<StandardizedPoint> StandardizedSample::points() const {
  std::vector<StandardizedPoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.push_back((*this)[i]);
  }
  return out;
}

StandardizedSample standardize(std::span<const double> xs, std::span<const double> ys,
                               const GpdTailFit& fit1, const GpdTailFit& fit2) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::LengthMismatch, "got " + std::to_string(xs.size()) + " x values and " +
                                               std::to_string(ys.size()) + " y values");
  }
  std::vector<double> z1(xs.size());
  std::vector<double> z2(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    z1[i] = u_inverse(fit1, xs[i]);
    z2[i] = u_inverse(fit2, ys[i]);
  }
  return StandardizedSample(std::move(z1), std::move(z2));
}

StandardizedSample standardize(const MarginalSample& xs, const MarginalSample& ys,
                               const GpdTailFit& fit1, const GpdTailFit& fit2) {
  return standardize(xs.values(), ys.values(), fit1, fit2);
}

EmpiricalExponentMeasure::EmpiricalExponentMeasure(StandardizedSample points, double mass_scale)
    : points_(std::move(points)), mass_scale_(mass_scale) {
  if (!(mass_scale_ > 0.0) || !std::isfinite(mass_scale_)) {
    throw Error(ErrorCode::BadTuning, "mass scale must be positive and finite");
  }
}

EmpiricalExponentMeasure EmpiricalExponentMeasure::from_top_k(
    const StandardizedSample& standardized, double k) {
  if (!(k > 0.0) || standardized.empty()) {
    throw Error(ErrorCode::BadTuning, "need k > 0 and a non-empty sample");
  }
  const double scale = k / static_cast<double>(standardized.size());
  std::vector<double> z1(standardized.z1().begin(), standardized.z1().end());
  std::vector<double> z2(standardized.z2().begin(), standardized.z2().end());
  for (auto& v : z1) v *= scale;
  for (auto& v : z2) v *= scale;
  return EmpiricalExponentMeasure(StandardizedSample(std::move(z1), std::move(z2)), k);
}

double nu_hat_rectangle(const EmpiricalExponentMeasure& m, double a, double b) {
  const auto& pts = m.points();
  const std::size_t count = kernels::active().count_rectangle(pts.z1(), pts.z2(), a, b);
  return static_cast<double>(count) / m.mass_scale();
}

double nu_hat_set(const EmpiricalExponentMeasure& m,
                  const std::function<bool(double, double)>& member) {
  const auto& pts = m.points();
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    count += member(pts.z1()[i], pts.z2()[i]) ? 1 : 0;
  }
  return static_cast<double>(count) / m.mass_scale();
}

}  // namespace bivex
