#ifndef TSHIFT_REPORT_HPP
#define TSHIFT_REPORT_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

#include "tshift/classifiers.hpp"
#include "tshift/decomposition.hpp"
#include "tshift/grws.hpp"

namespace tshift {

inline constexpr const char* kSchemaVersion = "1";

enum class OutputFormat { kJson, kCsv, kText };

struct RunConfig {
  std::size_t founder_bound = Decomposition::kDefaultFounderBound;
  std::size_t n_max = 30;      // Hankel checks for k >= 2
  std::size_t n_max_k1 = 200;  // monotonicity / k = 1
  std::size_t k_max = 3;
  std::size_t window = 50;     // alternation and hyperexpansivity
  std::size_t m_max = 8;
  std::size_t preview = 10;    // weights listed per orbit
  unsigned precision = kDefaultDigits;
  unsigned log_tolerance_exponent = 20;
  unsigned mid_tolerance_exponent = 25;
  unsigned berger_tolerance_exponent = 9;
  bool mid_sampling = false;   // run Schur-power sampling in classify
  OutputFormat format = OutputFormat::kJson;
  std::uint64_t seed = 20240601;

  // Throws std::invalid_argument when a bound is zero or the precision is
  // below 30 digits.
  void validate() const;
  nlohmann::json header() const;
};

OutputFormat parse_format(const std::string& name);

nlohmann::json to_json(const Description& d);
nlohmann::json sqrt_json(const Rational& value_sq);  // {"sq": "p/q"}
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const KProfile& p);
nlohmann::json to_json(const Sector& s);
nlohmann::json to_json(const AtomicMeasure& m);
nlohmann::json to_json(const ContractivityReport& r);

nlohmann::json decomposition_report(const Decomposition& dec, const RunConfig& config);
nlohmann::json classification_report(const Decomposition& dec, const RunConfig& config);
// Runs the classifiers on a GRWS and compares them with every predicted
// property of its sector. The result carries "consistent": true unless some
// computed outcome contradicts a prediction.
nlohmann::json sector_corroboration(const GrwsParams& params, const Sector& sector,
                                    const RunConfig& config);
nlohmann::json sector_report(const GrwsParams& params, const RunConfig& config, bool corroborate);

// Wraps a payload with "schema_version" and the config header.
nlohmann::json envelope(const std::string& command, nlohmann::json payload, const RunConfig& config);

// Canonical rendering: sorted keys, two-space indent, trailing newline.
std::string render(const nlohmann::json& report, OutputFormat format);
std::string render_json(const nlohmann::json& report);
// One "path,value" line per leaf.
std::string render_csv(const nlohmann::json& report);
std::string render_text(const nlohmann::json& report);

}  // namespace tshift

#endif  // TSHIFT_REPORT_HPP
