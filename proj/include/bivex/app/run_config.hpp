#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bivex/failure_model.hpp"
#include "bivex/marginal_tails.hpp"
#include "bivex/simulation.hpp"

namespace bivex::app {

// How one margin is fitted:
//   hill:k=900
//   manual:gamma=0.57,sigma=0.54,mu=0.91,k=900
//   true:k=200            (exact margin of the simulation model)
struct FitSpec {
  enum class Kind { Hill, Manual, True };
  Kind kind = Kind::Hill;
  long k = 0;
  double gamma = 0.0;
  double sigma = 0.0;
  double mu = 0.0;
};

// halfplane:a1=1,a2=0.5,r=100 | max:r=100 | min:r=100
struct SetSpec {
  std::string kind = "halfplane";
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double retention = 0.0;

  FailureSet build() const;
};

struct RunConfig {
  FitSpec fit1;
  FitSpec fit2;
  SetSpec failure_set;
  TuningParams tuning;
  std::optional<std::vector<double>> ke_grid;
  double filter_threshold = 1.0;
  std::optional<std::uint64_t> seed;
};

FitSpec parse_fit_spec(const std::string& text);
SetSpec parse_set_spec(const std::string& text);

// lo:hi:Nlog, lo:hi:Nlin, or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// uniform | beta:a=2,b=3
PolarModel parse_model_spec(const std::string& text);

// Flat `key = value` lines; '#' starts a comment. Keys are the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);

std::string describe(const FitSpec& spec);
std::string describe(const SetSpec& spec);

}  // namespace bivex::app
