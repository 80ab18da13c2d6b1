#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "locmult/report.hpp"

namespace locmult {

/// Invalid suite name or run parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  int count = 100;     ///< instances per randomized check
  int depth = 3;       ///< generate_G depth and monster tower depth
  unsigned threads = 0;  ///< 0 picks the hardware concurrency
};

/// lattice, group, monoid, riesz, intervals, localization, monster.
const std::vector<std::string>& suite_names();

/// Checks of one suite in report order. Throws ConfigError for unknown names.
std::vector<std::string> check_names(const std::string& suite);

/// Throws ConfigError when count or depth is below 1.
void validate(const SuiteConfig& cfg);

/// One check of one suite. Randomized checks run cfg.count instances, each
/// drawing from its own stream derived from (seed, suite.check, instance).
/// Rows come back in instance order whatever the thread count.
Report run_check(const std::string& suite, const std::string& check, const SuiteConfig& cfg);

/// Every check of the suite, or of all suites for "all".
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace locmult
