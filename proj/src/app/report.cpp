#include "bivex/app/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace bivex::app {

Json fit_to_json(const GpdTailFit& fit, const FitSpec& spec) {
  Json j;
  j["source"] = describe(spec);
  j["gamma"] = fit.gamma;
  j["sigma"] = fit.sigma;
  j["mu"] = fit.mu;
  j["k"] = fit.k_i;
  j["n"] = fit.n;
  return j;
}

Json set_to_json(const SetSpec& spec) {
  Json j;
  j["kind"] = spec.kind;
  if (spec.kind == "halfplane") {
    j["alpha1"] = spec.alpha1;
    j["alpha2"] = spec.alpha2;
  }
  j["retention"] = spec.retention;
  return j;
}

Json tuning_to_json(const TuningParams& tuning) {
  Json j;
  j["ke"] = tuning.ke;
  if (tuning.k_for_variance) {
    j["k"] = *tuning.k_for_variance;
  }
  j["ell"] = tuning.ell;
  j["lambda"] = tuning.lambda;
  j["level"] = tuning.level;
  return j;
}

Json estimate_to_json(const FailureProbabilityEstimate& est) {
  const auto& d = est.diagnostics;
  Json j;
  j["ke"] = est.ke;
  j["n"] = est.n;
  j["p_hat"] = est.p_hat;
  j["sigma_hat"] = est.sigma_hat;
  j["ci"] = Json::array({est.ci_lower, est.ci_upper});
  j["counts"] = {{"inflated", est.count_in_inflated},
                 {"stretch1_minus", d.count_minus_1},
                 {"stretch1_plus", d.count_plus_1},
                 {"stretch2_minus", d.count_minus_2},
                 {"stretch2_plus", d.count_plus_2},
                 {"joint_exceedances", d.count_joint_exceed}};
  j["i_hat_1"] = est.i_hat_1;
  j["i_hat_2"] = est.i_hat_2;
  j["cov_term"] = est.cov_term;
  j["sigma_sq_raw"] = d.sigma_sq_raw;
  j["unstable"] = d.unstable;
  return j;
}

std::vector<std::string> estimate_warnings(const FailureProbabilityEstimate& est,
                                           std::optional<double> crude_bound,
                                           const std::string& prefix) {
  std::vector<std::string> out;
  std::ostringstream os;
  os << std::setprecision(6);
  if (crude_bound && est.ke > *crude_bound) {
    os << prefix << "ke = " << est.ke << " exceeds the crude bound " << *crude_bound
       << "; the inflated set reaches outside the validated range of the marginal fits";
    out.push_back(os.str());
    os.str({});
  }
  if (est.i_hat_1 < 0.0) {
    out.push_back(prefix + "negative boundary estimate i_hat_1 (noise); floored inside sigma_hat");
  }
  if (est.i_hat_2 < 0.0) {
    out.push_back(prefix + "negative boundary estimate i_hat_2 (noise); floored inside sigma_hat");
  }
  if (est.diagnostics.sigma_clamped) {
    out.push_back(prefix + "variance estimate was negative and has been clamped to 0");
  }
  if (est.diagnostics.unstable) {
    out.push_back(prefix + "both boundary estimates are negative; sigma_hat set to 0, estimate unstable");
  }
  if (est.count_in_inflated == 0) {
    out.push_back(prefix + "no observations in the inflated failure set");
  }
  return out;
}

void write_curve_csv(std::ostream& out, const StabilityCurve& curve) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "ke,p_hat,ci_lower,ci_upper\n";
  for (const auto& row : curve.rows) {
    out << row.ke << ',' << row.estimate.p_hat << ',' << row.estimate.ci_lower << ','
        << row.estimate.ci_upper << '\n';
  }
  out.precision(old_precision);
}

void write_curve_svg(std::ostream& out, const StabilityCurve& curve, const std::string& title) {
  constexpr double width = 720.0;
  constexpr double height = 420.0;
  constexpr double left = 80.0;
  constexpr double right = 20.0;
  constexpr double top = 40.0;
  constexpr double bottom = 50.0;
  if (curve.rows.empty()) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"420\"/>\n";
    return;
  }
  const double x_lo = std::log10(curve.rows.front().ke);
  const double x_hi = std::max(std::log10(curve.rows.back().ke), x_lo + 1e-9);
  double y_hi = 0.0;
  for (const auto& row : curve.rows) y_hi = std::max(y_hi, row.estimate.ci_upper);
  if (!(y_hi > 0.0)) y_hi = 1.0;

  auto px = [&](double ke) { return left + (std::log10(ke) - x_lo) / (x_hi - x_lo) * (width - left - right); };
  auto py = [&](double p) { return height - bottom - p / y_hi * (height - top - bottom); };
  auto polyline = [&](auto value, const char* style) {
    out << "  <polyline fill=\"none\" " << style << " points=\"";
    for (const auto& row : curve.rows) {
      out << px(row.ke) << ',' << py(value(row.estimate)) << ' ';
    }
    out << "\"/>\n";
  };

  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "  <text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
      << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  for (int decade = static_cast<int>(std::ceil(x_lo)); decade <= static_cast<int>(std::floor(x_hi));
       ++decade) {
    const double x = px(std::pow(10.0, decade));
    out << "  <text x=\"" << x << "\" y=\"" << height - bottom + 18
        << "\" text-anchor=\"middle\">1e" << decade << "</text>\n";
  }
  for (int tick = 0; tick <= 4; ++tick) {
    const double p = y_hi * tick / 4.0;
    out << "  <text x=\"" << left - 6 << "\" y=\"" << py(p) + 4 << "\" text-anchor=\"end\">" << p
        << "</text>\n";
  }
  out << "  <text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">ke (log scale)</text>\n";
  polyline([](const FailureProbabilityEstimate& e) { return e.ci_lower; },
           "stroke=\"black\" stroke-dasharray=\"5,4\"");
  polyline([](const FailureProbabilityEstimate& e) { return e.ci_upper; },
           "stroke=\"black\" stroke-dasharray=\"5,4\"");
  polyline([](const FailureProbabilityEstimate& e) { return e.p_hat; },
           "stroke=\"blue\" stroke-width=\"2\"");
  out << "</svg>\n";
}

}  // namespace bivex::app
