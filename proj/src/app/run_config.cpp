#include "bivex/app/run_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bivex/error.hpp"
#include "bivex/estimator.hpp"

namespace bivex::app {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::ConfigError, what);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& text, const std::string& context) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    config_error("cannot parse '" + text + "' in " + context);
  }
  return value;
}

long to_long(const std::string& text, const std::string& context) {
  const double v = to_double(text, context);
  if (v != std::floor(v) || std::abs(v) > 1e15) {
    config_error("expected an integer, got '" + text + "' in " + context);
  }
  return static_cast<long>(v);
}

// "kind:key=value,key=value" -> kind, {key: value}
std::pair<std::string, std::map<std::string, std::string>> split_spec(const std::string& text) {
  const auto colon = text.find(':');
  std::string kind = trim(text.substr(0, colon));
  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      if (trim(item).empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        config_error("expected key=value, got '" + item + "' in '" + text + "'");
      }
      params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
  }
  return {kind, params};
}

const std::string& require(const std::map<std::string, std::string>& params,
                           const std::string& key, const std::string& text) {
  const auto it = params.find(key);
  if (it == params.end()) {
    config_error("missing '" + key + "' in '" + text + "'");
  }
  return it->second;
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    std::initializer_list<const char*> known, const std::string& text) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) config_error("unknown key '" + key + "' in '" + text + "'");
  }
}

}  // namespace

FitSpec parse_fit_spec(const std::string& text) {
  const auto [kind, params] = split_spec(text);
  FitSpec spec;
  if (kind == "hill" || kind == "true") {
    reject_unknown(params, {"k"}, text);
    spec.kind = kind == "hill" ? FitSpec::Kind::Hill : FitSpec::Kind::True;
    spec.k = to_long(require(params, "k", text), text);
  } else if (kind == "manual") {
    reject_unknown(params, {"gamma", "sigma", "mu", "k"}, text);
    spec.kind = FitSpec::Kind::Manual;
    spec.gamma = to_double(require(params, "gamma", text), text);
    spec.sigma = to_double(require(params, "sigma", text), text);
    spec.mu = to_double(require(params, "mu", text), text);
    spec.k = to_long(require(params, "k", text), text);
  } else {
    config_error("unknown fit kind '" + kind + "' (expected hill, manual or true)");
  }
  if (spec.k < 2) {
    config_error("fit needs k >= 2 in '" + text + "'");
  }
  return spec;
}

SetSpec parse_set_spec(const std::string& text) {
  const auto [kind, params] = split_spec(text);
  SetSpec spec;
  spec.kind = kind;
  if (kind == "halfplane") {
    reject_unknown(params, {"a1", "a2", "r"}, text);
    spec.alpha1 = to_double(require(params, "a1", text), text);
    spec.alpha2 = to_double(require(params, "a2", text), text);
    spec.retention = to_double(require(params, "r", text), text);
  } else if (kind == "max" || kind == "min") {
    reject_unknown(params, {"r"}, text);
    spec.retention = to_double(require(params, "r", text), text);
  } else {
    config_error("unknown failure set '" + kind + "' (expected halfplane, max or min)");
  }
  spec.build();  // validates
  return spec;
}

FailureSet SetSpec::build() const {
  if (kind == "halfplane") {
    return FailureSet::halfplane(alpha1, alpha2, retention);
  }
  const double r = retention;
  if (kind == "max") {
    return FailureSet::increasing([r](double x, double y) { return x > r || y > r; }, "max");
  }
  if (kind == "min") {
    return FailureSet::increasing([r](double x, double y) { return x > r && y > r; }, "min");
  }
  config_error("unknown failure set '" + kind + "'");
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.find(':') != std::string::npos) {
    std::stringstream ss(t);
    std::string lo, hi, count;
    std::getline(ss, lo, ':');
    std::getline(ss, hi, ':');
    std::getline(ss, count);
    std::string mode = "log";
    std::size_t digits = 0;
    while (digits < count.size() && std::isdigit(static_cast<unsigned char>(count[digits]))) {
      ++digits;
    }
    if (digits < count.size()) mode = count.substr(digits);
    const long n = to_long(count.substr(0, digits), text);
    const double a = to_double(lo, text);
    const double b = to_double(hi, text);
    if (n < 2) config_error("grid needs at least 2 points: '" + text + "'");
    if (mode == "log") {
      return log_grid(a, b, static_cast<std::size_t>(n));
    }
    if (mode == "lin") {
      if (!(b > a)) config_error("grid needs lo < hi: '" + text + "'");
      std::vector<double> grid(static_cast<std::size_t>(n));
      for (long i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
      }
      grid.back() = b;
      return grid;
    }
    config_error("unknown grid spacing '" + mode + "' (expected log or lin)");
  }
  std::vector<double> grid;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    grid.push_back(to_double(item, text));
  }
  if (grid.empty()) config_error("empty grid");
  return grid;
}

PolarModel parse_model_spec(const std::string& text) {
  const auto [kind, params] = split_spec(text);
  if (kind == "uniform") {
    reject_unknown(params, {}, text);
    return PolarModel::uniform();
  }
  if (kind == "beta") {
    reject_unknown(params, {"a", "b"}, text);
    return PolarModel::beta(to_double(require(params, "a", text), text),
                            to_double(require(params, "b", text), text));
  }
  config_error("unknown model '" + kind + "' (expected uniform or beta)");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    config_error("cannot open config file " + path);
  }
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string content = trim(line.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      config_error(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(content.substr(0, eq));
    std::string value = trim(content.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    out[key] = value;
  }
  return out;
}

std::string describe(const FitSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case FitSpec::Kind::Hill: os << "hill"; break;
    case FitSpec::Kind::Manual: os << "manual"; break;
    case FitSpec::Kind::True: os << "true"; break;
  }
  return os.str();
}

std::string describe(const SetSpec& spec) { return spec.kind; }

}  // namespace bivex::app
