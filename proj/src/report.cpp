#include "locmult/report.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace locmult {

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.passed; }));
}

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::string Report::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    arr.push_back({{"suite", r.suite},
                   {"check", r.check},
                   {"instance_id", r.instance_id},
                   {"passed", r.passed},
                   {"witness", r.witness}});
  }
  return arr.dump(1) + "\n";
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << report.to_json();
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace locmult
