#pragma once

// Result documents are JSON objects with a fixed key order:
//
//   command        "estimate" | "scan" | "simulate" | "oracle" | "bound"
//   generated_at   UTC timestamp, omitted under --no-timestamp
//   input          data source, rows read and rows kept after filtering
//   fits           [fit1, fit2]: gamma, sigma, mu, k, n, source
//   failure_set    kind plus its parameters
//   tuning         ke, ell, lambda, level (and k when given)
//   crude_ke_bound min(k_i U_i^<-(R/alpha_i)) with both components, halfplanes only
//   estimate       p_hat, sigma_hat, ci [lower, upper], counts, i_hat_1, i_hat_2,
//                  cov_term, unstable
//   curve          scan only: one object per ke
//   warnings       array of strings, always present

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bivex/app/run_config.hpp"
#include "bivex/estimator.hpp"

namespace bivex::app {

using Json = nlohmann::ordered_json;

Json fit_to_json(const GpdTailFit& fit, const FitSpec& spec);
Json set_to_json(const SetSpec& spec);
Json tuning_to_json(const TuningParams& tuning);
Json estimate_to_json(const FailureProbabilityEstimate& est);

// Diagnostics worth surfacing for one estimate; `prefix` tags scan rows.
std::vector<std::string> estimate_warnings(const FailureProbabilityEstimate& est,
                                           std::optional<double> crude_bound,
                                           const std::string& prefix = "");

// ke,p_hat,ci_lower,ci_upper
void write_curve_csv(std::ostream& out, const StabilityCurve& curve);

// p_hat and confidence band against log10(ke).
void write_curve_svg(std::ostream& out, const StabilityCurve& curve, const std::string& title);

}  // namespace bivex::app
