#include "bivex/simulation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bivex/error.hpp"

namespace bivex {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuadTolerance = 1e-12;

// 53-bit uniforms from a 64-bit engine: [0, 1) and (0, 1].
double uniform_closed_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double beta_pdf(double u, const BetaAngle& b) {
  if (u < 0.0 || u > 1.0) {
    return 0.0;
  }
  const double log_norm =
      std::lgamma(b.shape1 + b.shape2) - std::lgamma(b.shape1) - std::lgamma(b.shape2);
  // Shapes >= 1, so the density stays finite at both endpoints.
  if (u == 0.0) return b.shape1 == 1.0 ? std::exp(log_norm) : 0.0;
  if (u == 1.0) return b.shape2 == 1.0 ? std::exp(log_norm) : 0.0;
  return std::exp(log_norm + (b.shape1 - 1.0) * std::log(u) + (b.shape2 - 1.0) * std::log1p(-u));
}

// E g(Theta) for Theta = (pi/2) B, integrating over [theta_lo, theta_hi].
template <class F>
double beta_expectation(const BetaAngle& b, F g, double theta_lo, double theta_hi) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double u) { return g(kHalfPi * u) * beta_pdf(u, b); };
  return gauss_kronrod<double, 61>::integrate(integrand, theta_lo / kHalfPi, theta_hi / kHalfPi,
                                              20, kQuadTolerance);
}

double draw_angle(const PolarModel& model, std::mt19937_64& rng) {
  if (const auto* b = std::get_if<BetaAngle>(&model.spectral())) {
    std::gamma_distribution<double> g1(b->shape1, 1.0);
    std::gamma_distribution<double> g2(b->shape2, 1.0);
    const double x = g1(rng);
    const double y = g2(rng);
    return kHalfPi * (x / (x + y));
  }
  return kHalfPi * uniform_closed_open(rng);
}

}  // namespace

PolarModel PolarModel::beta(double shape1, double shape2) {
  if (!(shape1 >= 1.0) || !(shape2 >= 1.0) || !std::isfinite(shape1) || !std::isfinite(shape2)) {
    throw Error(ErrorCode::ConfigError, "beta angle shapes must be finite and >= 1");
  }
  return PolarModel(BetaAngle{shape1, shape2});
}

double PolarModel::angle_density(double theta) const {
  if (theta < 0.0 || theta > kHalfPi) {
    return 0.0;
  }
  if (const auto* b = std::get_if<BetaAngle>(&spectral_)) {
    return beta_pdf(theta / kHalfPi, *b) / kHalfPi;
  }
  return 1.0 / kHalfPi;
}

double PolarModel::mean_cos() const {
  if (const auto* b = std::get_if<BetaAngle>(&spectral_)) {
    return beta_expectation(*b, [](double t) { return std::cos(t); }, 0.0, kHalfPi);
  }
  return 1.0 / kHalfPi;
}

double PolarModel::mean_sin() const {
  if (const auto* b = std::get_if<BetaAngle>(&spectral_)) {
    return beta_expectation(*b, [](double t) { return std::sin(t); }, 0.0, kHalfPi);
  }
  return 1.0 / kHalfPi;
}

std::pair<MarginalSample, MarginalSample> sample_polar(const PolarModel& model, long n,
                                                       std::uint64_t seed) {
  if (n < 1) {
    throw Error(ErrorCode::BadN, "need n >= 1 draws");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> ys(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double radius = 1.0 / uniform_open_closed(rng);
    const double theta = draw_angle(model, rng);
    xs[i] = radius * std::cos(theta);
    ys[i] = radius * std::sin(theta);
  }
  return {MarginalSample(std::move(xs)), MarginalSample(std::move(ys))};
}

double true_p_halfplane(const PolarModel& model, double alpha1, double alpha2, double r) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0) || (alpha1 == 0.0 && alpha2 == 0.0)) {
    throw Error(ErrorCode::ConfigError, "alphas must be non-negative and not both zero");
  }
  // sup over [0, pi/2] of alpha1 cos + alpha2 sin for non-negative alphas.
  if (!(r >= std::hypot(alpha1, alpha2))) {
    throw Error(ErrorCode::RetentionTooSmall,
                "retention " + std::to_string(r) + " is below hypot(alpha1, alpha2)");
  }
  return (alpha1 * model.mean_cos() + alpha2 * model.mean_sin()) / r;
}

double true_nu_rectangle(const PolarModel& model, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::BadRect, "rectangle corners must be positive and finite");
  }
  if (model.is_uniform()) {
    // (pi/2) E min(cos/a, sin/b) integrated piecewise around tan(theta) = b/a.
    const double h = std::hypot(a, b);
    return b / (h * (h + a)) + a / (h * (h + b));
  }
  const auto& beta = std::get<BetaAngle>(model.spectral());
  const double sa = model.mean_cos() * a;
  const double sb = model.mean_sin() * b;
  const double kink = std::atan2(sb, sa);
  const double below = beta_expectation(beta, [&](double t) { return std::sin(t) / sb; }, 0.0, kink);
  const double above =
      beta_expectation(beta, [&](double t) { return std::cos(t) / sa; }, kink, kHalfPi);
  return below + above;
}

OracleResult monte_carlo_p(const PolarModel& model, const FailureSet& set, long n_draws,
                           std::uint64_t seed) {
  if (n_draws < 100) {
    throw Error(ErrorCode::BadN, "Monte Carlo oracle needs at least 100 draws");
  }
  std::mt19937_64 rng(seed);
  long hits = 0;
  for (long i = 0; i < n_draws; ++i) {
    const double radius = 1.0 / uniform_open_closed(rng);
    const double theta = draw_angle(model, rng);
    hits += contains(set, radius * std::cos(theta), radius * std::sin(theta)) ? 1 : 0;
  }
  OracleResult out;
  out.n_draws = n_draws;
  out.p_mc = static_cast<double>(hits) / static_cast<double>(n_draws);
  out.mc_stderr = std::sqrt(out.p_mc * (1.0 - out.p_mc) / static_cast<double>(n_draws));
  if (set.is_halfplane()) {
    const auto& h = set.as_halfplane();
    if (h.retention >= std::hypot(h.alpha1, h.alpha2)) {
      out.p_true = true_p_halfplane(model, h.alpha1, h.alpha2, h.retention);
    }
  }
  return out;
}

GpdTailFit true_margin_fit(const PolarModel& model, int coordinate, long k_i, long n) {
  if (coordinate != 1 && coordinate != 2) {
    throw Error(ErrorCode::ConfigError, "coordinate must be 1 or 2");
  }
  const double scale = coordinate == 1 ? model.mean_cos() : model.mean_sin();
  return make_fit(1.0, scale, scale, k_i, n);
}

std::vector<double> power_transform(std::span<const double> values, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::ConfigError, "power transform needs gamma > 0");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) {
      throw Error(ErrorCode::NonFiniteValue, "power transform needs non-negative values");
    }
    out[i] = std::pow(values[i], gamma);
  }
  return out;
}

}  // namespace bivex
