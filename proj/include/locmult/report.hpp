#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace locmult {

struct ReportRow {
  std::string suite;
  std::string check;
  std::uint64_t instance_id = 0;
  bool passed = false;
  std::string witness;  ///< empty for plain passes
};

struct Report {
  std::vector<ReportRow> rows;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  void append(const Report& other);
  /// Flat JSON array of {suite, check, instance_id, passed, witness}.
  std::string to_json() const;
};

/// Writes the JSON report, throwing std::runtime_error when the file
/// cannot be written.
void write_report(const Report& report, const std::string& path);

}  // namespace locmult
