#include "bivex/app/claims.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "bivex/error.hpp"

namespace bivex::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    parse_error(line, "cannot parse '" + std::string(field) + "' as a number");
  }
  if (!std::isfinite(value) || value < 0.0) {
    parse_error(line, "values must be finite and non-negative");
  }
  return value;
}

}  // namespace

std::vector<double> ClaimsData::buildings() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.building);
  return out;
}

std::vector<double> ClaimsData::contents() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.contents);
  return out;
}

ClaimsData ingest_claims_csv(std::istream& in, double filter_threshold) {
  if (!(filter_threshold >= 0.0)) {
    throw Error(ErrorCode::ConfigError, "filter threshold must be non-negative");
  }
  ClaimsData data;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    if (!header_seen) {
      std::string header(content);
      header.erase(std::remove_if(header.begin(), header.end(),
                                  [](char c) { return c == ' ' || c == '\t'; }),
                   header.end());
      if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
      if (header != "building,contents,profits") {
        parse_error(line_no, "expected header 'building,contents,profits'");
      }
      header_seen = true;
      continue;
    }
    std::array<std::string_view, 3> fields;
    std::size_t start = 0;
    for (std::size_t f = 0; f < 3; ++f) {
      const auto comma = content.find(',', start);
      if (f < 2 && comma == std::string_view::npos) {
        parse_error(line_no, "expected 3 comma-separated fields");
      }
      if (f == 2 && comma != std::string_view::npos) {
        parse_error(line_no, "expected 3 comma-separated fields");
      }
      fields[f] = content.substr(start, f < 2 ? comma - start : std::string_view::npos);
      start = comma + 1;
    }
    const ClaimsRecord record{parse_field(fields[0], line_no), parse_field(fields[1], line_no),
                              parse_field(fields[2], line_no)};
    ++data.rows_read;
    if (std::max({record.building, record.contents, record.profits}) > filter_threshold) {
      data.records.push_back(record);
    }
  }
  if (!header_seen) {
    parse_error(line_no == 0 ? 1 : line_no, "missing header");
  }
  if (data.records.empty()) {
    throw Error(ErrorCode::EmptyAfterFilter,
                "no claims exceed the filter threshold " + std::to_string(filter_threshold));
  }
  return data;
}

ClaimsData ingest_claims_csv(const std::filesystem::path& path, double filter_threshold) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  }
  return ingest_claims_csv(in, filter_threshold);
}

void write_claims_csv(std::ostream& out, const std::vector<ClaimsRecord>& records) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "building,contents,profits\n";
  for (const auto& r : records) {
    out << r.building << ',' << r.contents << ',' << r.profits << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bivex::app
