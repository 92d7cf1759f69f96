#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace bivex::app {

// One fire claim, in millions of currency units.
struct ClaimsRecord {
  double building = 0.0;
  double contents = 0.0;
  double profits = 0.0;

  friend bool operator==(const ClaimsRecord&, const ClaimsRecord&) = default;
};

struct ClaimsData {
  std::vector<ClaimsRecord> records;
  std::size_t rows_read = 0;  // data rows before filtering

  std::vector<double> buildings() const;
  std::vector<double> contents() const;
};

// Reads `building,contents,profits` CSV and keeps rows whose largest
// component exceeds filter_threshold, in file order. Throws ParseError
// (with the 1-based line number) or EmptyAfterFilter.
ClaimsData ingest_claims_csv(const std::filesystem::path& path, double filter_threshold);
ClaimsData ingest_claims_csv(std::istream& in, double filter_threshold);

void write_claims_csv(std::ostream& out, const std::vector<ClaimsRecord>& records);

}  // namespace bivex::app
