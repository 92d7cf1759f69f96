#include "bivex/app/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "bivex/app/claims.hpp"
#include "bivex/app/report.hpp"
#include "bivex/app/run_config.hpp"
#include "bivex/error.hpp"
#include "bivex/estimator.hpp"
#include "bivex/simulation.hpp"

namespace bivex::app {

namespace {

// Raw option values shared by the estimation subcommands.
struct EstimationOptions {
  std::string data;
  std::string model;
  long n = 0;
  std::string fit1;
  std::string fit2;
  std::string set;
  double ke = 0.0;
  long k = 0;
  double ell = 0.1;
  double lambda = 1.0;
  double level = 0.95;
  double filter = 1.0;
  std::string grid;
  std::uint64_t seed = 0;
  std::string out;
  std::string curve_csv;
  std::string svg;
  bool no_timestamp = false;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json header(const std::string& command, bool no_timestamp) {
  Json doc;
  doc["command"] = command;
  if (!no_timestamp) {
    doc["generated_at"] = utc_timestamp();
  }
  return doc;
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) {
    throw Error(ErrorCode::ConfigError, "cannot write " + path);
  }
  file << doc.dump(2) << '\n';
}

void add_estimation_options(CLI::App& cmd, EstimationOptions& o, bool needs_ke) {
  cmd.add_option("--data", o.data, "Claims CSV (building,contents,profits)");
  cmd.add_option("--model", o.model, "Simulate the data instead: uniform | beta:a=..,b=..");
  cmd.add_option("--n", o.n, "Sample size when simulating");
  cmd.add_option("--seed", o.seed, "Seed when simulating");
  cmd.add_option("--fit1", o.fit1, "Building margin: hill:k=.. | manual:gamma=..,sigma=..,mu=..,k=.. | true:k=..")
      ->required();
  cmd.add_option("--fit2", o.fit2, "Contents margin, same syntax as --fit1")->required();
  cmd.add_option("--set", o.set, "Failure set: halfplane:a1=..,a2=..,r=.. | max:r=.. | min:r=..")
      ->required();
  auto* ke = cmd.add_option("--ke", o.ke, "Product k * e_n");
  if (needs_ke) ke->required();
  cmd.add_option("--k", o.k, "Optional k of the factorization, reported only");
  cmd.add_option("--ell", o.ell, "Relative stretch for the boundary estimates")->capture_default_str();
  cmd.add_option("--lambda", o.lambda, "Threshold factor of the covariance estimate")->capture_default_str();
  cmd.add_option("--level", o.level, "Confidence level")->capture_default_str();
  cmd.add_option("--filter", o.filter, "Keep claims whose largest component exceeds this")
      ->capture_default_str();
  cmd.add_option("--out", o.out, "Result document path (default stdout)");
  cmd.add_flag("--no-timestamp", o.no_timestamp, "Omit generated_at from the document");
}

struct LoadedData {
  std::vector<double> xs;
  std::vector<double> ys;
  std::optional<PolarModel> model;
  Json input;
};

LoadedData load_data(const EstimationOptions& o) {
  LoadedData loaded;
  if (!o.data.empty() && !o.model.empty()) {
    throw Error(ErrorCode::ConfigError, "give either --data or --model, not both");
  }
  ClaimsData claims;
  if (!o.data.empty()) {
    claims = ingest_claims_csv(std::filesystem::path(o.data), o.filter);
    loaded.input["source"] = "csv";
    loaded.input["path"] = o.data;
  } else if (!o.model.empty()) {
    if (o.n < 1) throw Error(ErrorCode::ConfigError, "--n is required with --model");
    loaded.model = parse_model_spec(o.model);
    const auto [xs, ys] = sample_polar(*loaded.model, o.n, o.seed);
    std::stringstream csv;
    std::vector<ClaimsRecord> records;
    records.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      records.push_back({xs.values()[i], ys.values()[i], 0.0});
    }
    write_claims_csv(csv, records);
    claims = ingest_claims_csv(csv, o.filter);
    loaded.input["source"] = "simulation";
    loaded.input["model"] = o.model;
    loaded.input["seed"] = o.seed;
  } else {
    throw Error(ErrorCode::ConfigError, "one of --data or --model is required");
  }
  loaded.input["rows_read"] = claims.rows_read;
  loaded.input["rows_used"] = claims.records.size();
  loaded.input["filter_threshold"] = o.filter;
  loaded.xs = claims.buildings();
  loaded.ys = claims.contents();
  return loaded;
}

GpdTailFit build_fit(const FitSpec& spec, std::span<const double> values,
                     const std::optional<PolarModel>& model, int coordinate) {
  const auto n = static_cast<long>(values.size());
  switch (spec.kind) {
    case FitSpec::Kind::Hill:
      return fit_marginal_hill(MarginalSample(std::vector<double>(values.begin(), values.end())),
                               spec.k);
    case FitSpec::Kind::Manual:
      return make_fit(spec.gamma, spec.sigma, spec.mu, spec.k, n);
    case FitSpec::Kind::True:
      if (!model) {
        throw Error(ErrorCode::ConfigError, "true:k=.. fits need a simulation --model");
      }
      return true_margin_fit(*model, coordinate, spec.k, n);
  }
  throw Error(ErrorCode::ConfigError, "unknown fit kind");
}

TuningParams build_tuning(const EstimationOptions& o) {
  TuningParams t;
  t.ke = o.ke;
  if (o.k > 0) t.k_for_variance = o.k;
  t.ell = o.ell;
  t.lambda = o.lambda;
  t.level = o.level;
  return t;
}

struct Prepared {
  LoadedData data;
  FitSpec spec1;
  FitSpec spec2;
  SetSpec set_spec;
  GpdTailFit fit1;
  GpdTailFit fit2;
  std::optional<double> crude_bound;
  Json doc;
};

Prepared prepare(const std::string& command, const EstimationOptions& o) {
  Prepared p;
  p.spec1 = parse_fit_spec(o.fit1);
  p.spec2 = parse_fit_spec(o.fit2);
  p.set_spec = parse_set_spec(o.set);
  p.data = load_data(o);
  p.fit1 = build_fit(p.spec1, p.data.xs, p.data.model, 1);
  p.fit2 = build_fit(p.spec2, p.data.ys, p.data.model, 2);
  p.doc = header(command, o.no_timestamp);
  p.doc["input"] = p.data.input;
  p.doc["fits"] = Json::array({fit_to_json(p.fit1, p.spec1), fit_to_json(p.fit2, p.spec2)});
  p.doc["failure_set"] = set_to_json(p.set_spec);
  if (p.set_spec.kind == "halfplane") {
    const auto set = p.set_spec.build();
    const auto [b1, b2] = crude_ke_bound_components(set, p.fit1, p.fit2);
    p.crude_bound = std::min(b1, b2);
    p.doc["crude_ke_bound"] = {{"value", *p.crude_bound}, {"components", Json::array({b1, b2})}};
  } else {
    p.doc["crude_ke_bound"] = nullptr;
  }
  return p;
}

void run_estimate(const EstimationOptions& o, std::ostream& out) {
  auto p = prepare("estimate", o);
  const auto tuning = build_tuning(o);
  const auto est = estimate_full(p.data.xs, p.data.ys, p.fit1, p.fit2, p.set_spec.build(), tuning);
  p.doc["tuning"] = tuning_to_json(tuning);
  p.doc["estimate"] = estimate_to_json(est);
  p.doc["warnings"] = estimate_warnings(est, p.crude_bound);
  emit(p.doc, o.out, out);
}

void run_scan(const EstimationOptions& o, std::ostream& out) {
  if (o.grid.empty()) {
    throw Error(ErrorCode::ConfigError, "scan needs --grid");
  }
  auto p = prepare("scan", o);
  auto tuning = build_tuning(o);
  const auto grid = parse_grid(o.grid);
  tuning.ke = grid.front();
  const auto curve =
      stability_scan(p.data.xs, p.data.ys, p.fit1, p.fit2, p.set_spec.build(), tuning, grid);

  Json tuning_json = tuning_to_json(tuning);
  tuning_json.erase("ke");
  p.doc["tuning"] = tuning_json;
  Json rows = Json::array();
  Json warnings = Json::array();
  for (const auto& row : curve.rows) {
    rows.push_back(estimate_to_json(row.estimate));
    std::ostringstream prefix;
    prefix << std::setprecision(6) << "ke = " << row.ke << ": ";
    for (auto& w : estimate_warnings(row.estimate, p.crude_bound, prefix.str())) {
      warnings.push_back(std::move(w));
    }
  }
  p.doc["curve"] = std::move(rows);
  p.doc["warnings"] = std::move(warnings);
  emit(p.doc, o.out, out);

  if (!o.curve_csv.empty()) {
    std::ofstream csv(o.curve_csv);
    if (!csv) throw Error(ErrorCode::ConfigError, "cannot write " + o.curve_csv);
    write_curve_csv(csv, curve);
  }
  if (!o.svg.empty()) {
    std::ofstream svg(o.svg);
    if (!svg) throw Error(ErrorCode::ConfigError, "cannot write " + o.svg);
    write_curve_svg(svg, curve, "p_hat and confidence band versus ke");
  }
}

struct SimulateOptions {
  std::string model = "uniform";
  long n = 0;
  std::uint64_t seed = 0;
  std::string csv;
  std::string out;
  bool no_timestamp = false;
};

void run_simulate(const SimulateOptions& o, std::ostream& out) {
  const auto model = parse_model_spec(o.model);
  const auto [xs, ys] = sample_polar(model, o.n, o.seed);
  std::vector<ClaimsRecord> records;
  records.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    records.push_back({xs.values()[i], ys.values()[i], 0.0});
  }
  std::ofstream csv(o.csv);
  if (!csv) throw Error(ErrorCode::ConfigError, "cannot write " + o.csv);
  write_claims_csv(csv, records);

  Json doc = header("simulate", o.no_timestamp);
  doc["model"] = o.model;
  doc["n"] = o.n;
  doc["seed"] = o.seed;
  doc["csv"] = o.csv;
  doc["margins"] = {{"gamma", 1.0}, {"scale1", model.mean_cos()}, {"scale2", model.mean_sin()}};
  doc["warnings"] = Json::array();
  emit(doc, o.out, out);
}

struct OracleOptions {
  std::string model = "uniform";
  std::string set;
  long draws = 1000000;
  std::uint64_t seed = 0;
  std::vector<double> rect;
  std::string out;
  bool no_timestamp = false;
};

void run_oracle(const OracleOptions& o, std::ostream& out) {
  const auto model = parse_model_spec(o.model);
  Json doc = header("oracle", o.no_timestamp);
  doc["model"] = o.model;
  Json warnings = Json::array();
  if (!o.set.empty()) {
    const auto spec = parse_set_spec(o.set);
    const auto result = monte_carlo_p(model, spec.build(), o.draws, o.seed);
    doc["failure_set"] = set_to_json(spec);
    doc["p_true"] = result.p_true ? Json(*result.p_true) : Json(nullptr);
    doc["p_mc"] = result.p_mc;
    doc["mc_stderr"] = result.mc_stderr;
    doc["n_draws"] = result.n_draws;
    doc["seed"] = o.seed;
    if (result.p_true && std::abs(result.p_mc - *result.p_true) > 6.0 * result.mc_stderr) {
      warnings.push_back("Monte Carlo estimate deviates from the closed form by more than 6 standard errors");
    }
  }
  if (!o.rect.empty()) {
    if (o.rect.size() != 2) throw Error(ErrorCode::ConfigError, "--rect needs two values a,b");
    doc["nu_rectangle"] = {{"a", o.rect[0]}, {"b", o.rect[1]},
                           {"value", true_nu_rectangle(model, o.rect[0], o.rect[1])}};
  }
  doc["warnings"] = std::move(warnings);
  emit(doc, o.out, out);
}

struct BoundOptions {
  std::string fit1;
  std::string fit2;
  std::string set;
  long n = 0;
  std::string out;
  bool no_timestamp = false;
};

void run_bound(const BoundOptions& o, std::ostream& out) {
  const auto spec1 = parse_fit_spec(o.fit1);
  const auto spec2 = parse_fit_spec(o.fit2);
  if (spec1.kind != FitSpec::Kind::Manual || spec2.kind != FitSpec::Kind::Manual) {
    throw Error(ErrorCode::ConfigError, "bound takes manual fits; use estimate for fitted data");
  }
  const auto set_spec = parse_set_spec(o.set);
  const auto fit1 = make_fit(spec1.gamma, spec1.sigma, spec1.mu, spec1.k, o.n);
  const auto fit2 = make_fit(spec2.gamma, spec2.sigma, spec2.mu, spec2.k, o.n);
  const auto [b1, b2] = crude_ke_bound_components(set_spec.build(), fit1, fit2);
  Json doc = header("bound", o.no_timestamp);
  doc["fits"] = Json::array({fit_to_json(fit1, spec1), fit_to_json(fit2, spec2)});
  doc["failure_set"] = set_to_json(set_spec);
  doc["crude_ke_bound"] = {{"value", std::min(b1, b2)}, {"components", Json::array({b1, b2})}};
  doc["warnings"] = Json::array();
  emit(doc, o.out, out);
}

// Appends `--key=value` for every config-file key not already given on the
// command line, so flags override the file.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::vector<std::string> merged;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      continue;
    }
    merged.push_back(args[i]);
  }
  if (config_path.empty()) {
    return merged;
  }
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : merged) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  for (const auto& [key, value] : read_config_file(config_path)) {
    if (given(key)) continue;
    if (value == "true") {
      merged.push_back("--" + key);
    } else if (value != "false") {
      merged.push_back("--" + key + "=" + value);
    }
  }
  return merged;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return kExitConfig;
    case ErrorKind::Data: return kExitData;
    case ErrorKind::Numeric: return kExitNumeric;
  }
  return kExitNumeric;
}

void report_error(std::ostream& err, const std::string& code, const std::string& message) {
  Json e;
  e["error"] = {{"code", code}, {"message", message}};
  err << e.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rare-event probabilities for bivariate heavy-tailed data", "bivex"};
  app.require_subcommand(1);

  EstimationOptions est_opts;
  auto* estimate = app.add_subcommand("estimate", "Estimate the failure probability at one ke");
  add_estimation_options(*estimate, est_opts, true);

  EstimationOptions scan_opts;
  auto* scan = app.add_subcommand("scan", "Estimate over a ke grid (stability plot)");
  add_estimation_options(*scan, scan_opts, false);
  scan->add_option("--grid", scan_opts.grid, "lo:hi:Nlog | lo:hi:Nlin | comma list");
  scan->add_option("--curve-csv", scan_opts.curve_csv, "Write ke,p_hat,ci_lower,ci_upper here");
  scan->add_option("--svg", scan_opts.svg, "Write an SVG plot of the curve here");

  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Draw a polar-model sample as claims CSV");
  simulate->add_option("--model", sim_opts.model, "uniform | beta:a=..,b=..")->capture_default_str();
  simulate->add_option("--n", sim_opts.n, "Number of draws")->required();
  simulate->add_option("--seed", sim_opts.seed, "Seed")->required();
  simulate->add_option("--csv", sim_opts.csv, "Output CSV path")->required();
  simulate->add_option("--out", sim_opts.out, "Summary document path (default stdout)");
  simulate->add_flag("--no-timestamp", sim_opts.no_timestamp);

  OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Closed-form and Monte Carlo reference values");
  oracle->add_option("--model", oracle_opts.model, "uniform | beta:a=..,b=..")->capture_default_str();
  oracle->add_option("--set", oracle_opts.set, "Failure set for p_true / p_mc");
  oracle->add_option("--draws", oracle_opts.draws, "Monte Carlo draws")->capture_default_str();
  oracle->add_option("--seed", oracle_opts.seed, "Seed")->capture_default_str();
  oracle->add_option("--rect", oracle_opts.rect, "a,b for the exponent measure of (a,inf)x(b,inf)")
      ->delimiter(',');
  oracle->add_option("--out", oracle_opts.out, "Result document path (default stdout)");
  oracle->add_flag("--no-timestamp", oracle_opts.no_timestamp);

  BoundOptions bound_opts;
  auto* bound = app.add_subcommand("bound", "Crude upper bound on ke for manual fits");
  bound->add_option("--fit1", bound_opts.fit1)->required();
  bound->add_option("--fit2", bound_opts.fit2)->required();
  bound->add_option("--set", bound_opts.set)->required();
  bound->add_option("--n", bound_opts.n, "Sample size behind the fits")->required();
  bound->add_option("--out", bound_opts.out);
  bound->add_flag("--no-timestamp", bound_opts.no_timestamp);

  try {
    auto merged = merge_config(args);
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "ConfigError", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    report_error(err, to_string(e.code()), e.what());
    return exit_code_for(kind_of(e.code()));
  }

  try {
    if (*estimate) run_estimate(est_opts, out);
    else if (*scan) run_scan(scan_opts, out);
    else if (*simulate) run_simulate(sim_opts, out);
    else if (*oracle) run_oracle(oracle_opts, out);
    else if (*bound) run_bound(bound_opts, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.code()), e.what());
    return exit_code_for(kind_of(e.code()));
  } catch (const std::exception& e) {
    report_error(err, "NumericFailure", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace bivex::app
