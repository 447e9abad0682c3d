#ifndef TSHIFT_VERIFICATION_HPP
#define TSHIFT_VERIFICATION_HPP

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tshift/report.hpp"

namespace tshift {

struct CheckResult {
  std::string id;
  std::string criterion;  // "AC1".."AC11", empty for supplementary checks
  std::string title;
  bool passed = false;
  std::string expected;
  std::string actual;
  nlohmann::json witness;  // reproducible payload, always set on failure
};

struct VerificationCheck {
  std::string id;
  std::string criterion;
  std::string title;
  std::string expected;
  std::function<CheckResult(const RunConfig&)> run;
};

const std::vector<VerificationCheck>& verification_checks();
bool is_known_check(const std::string& id);

// Runs the named checks in registry order ("all" selects every check).
// Throws std::invalid_argument on an unknown id.
std::vector<CheckResult> run_checks(const std::vector<std::string>& ids, const RunConfig& config);

nlohmann::json to_json(const CheckResult& r);

}  // namespace tshift

#endif  // TSHIFT_VERIFICATION_HPP
