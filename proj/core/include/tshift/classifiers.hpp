#ifndef TSHIFT_CLASSIFIERS_HPP
#define TSHIFT_CLASSIFIERS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "tshift/decomposition.hpp"
#include "tshift/linalg.hpp"
#include "tshift/numeric.hpp"
#include "tshift/sequence.hpp"

namespace tshift {

// Every verdict is finite evidence: `holds` means holds on `range`.
struct Verdict {
  bool holds = true;
  bool indeterminate = false;  // passed only inside the tolerance band around 0
  nlohmann::json witness;      // concrete violation when !holds
  nlohmann::json range;        // checked ranges and tolerances
};

struct HankelMatrix {
  std::size_t n = 0;
  std::size_t k = 0;
  Matrix<Rational> entries;  // (i, j) -> gamma_{n+i+j}
};

// Throws std::out_of_range if gamma stops before n + 2k.
HankelMatrix hankel_matrix(const MomentSeq& gamma, std::size_t n, std::size_t k);

struct PsdResult {
  bool psd = true;
  std::vector<std::size_t> subset;  // first violating principal subset
  Rational minor;                   // its determinant
};

// Exact test; PSD iff every principal minor is >= 0. Sizes up to 7 (k <= 6).
PsdResult is_psd_exact(const Matrix<Rational>& m);
inline PsdResult is_psd_exact(const HankelMatrix& h) { return is_psd_exact(h.entries); }

struct KLevel {
  std::size_t k = 0;
  Verdict verdict;
};

struct KProfile {
  std::vector<KLevel> levels;  // k = 1..k_max
  std::size_t n_max = 0;
  bool k1_matches_monotonicity = true;

  // Largest k such that levels 1..k all hold (0 if k = 1 fails).
  std::size_t max_k_holding() const;
};

// M_gamma(n, k) PSD for n <= n_max, k <= k_max, with exact minors.
KProfile k_hyponormality_profile(const SqWeightSeq& w, std::size_t k_max = 5,
                                 std::size_t n_max = 200);

struct OrderVerdict {
  std::size_t m = 0;
  Verdict verdict;
};

// Order m holds iff (nabla^m a)_k <= 0 for k <= window, for m = 1..m_max.
std::vector<OrderVerdict> alternating_test(std::span<const Rational> a, std::size_t m_max,
                                           std::size_t window);
std::vector<OrderVerdict> alternating_test(std::span<const Real> a, std::size_t m_max,
                                           std::size_t window, const Real& tolerance);

struct LogTestOptions {
  std::size_t m_max = 8;
  std::size_t window = 50;
  unsigned digits = kDefaultDigits;
  unsigned tolerance_exponent = 20;
};

// Alternation of ln w(n), in high precision.
std::vector<OrderVerdict> log_alternating_test(const SqWeightSeq& w,
                                               const LogTestOptions& options = {});

// sum_{i=0}^n (-1)^i C(n,i) gamma_{i+j} <= 0 for 1 <= n <= n_max, j <= j_max.
Verdict hyperexpansive_test(const MomentSeq& gamma, std::size_t n_max, std::size_t j_max);

// sum_{i=0}^m (-1)^(m-i) C(m,i) gamma_{i+j} >= 0 for j <= j_max.
Verdict m_alt_hyperexpansive_test(const MomentSeq& gamma, std::size_t m, std::size_t j_max);

struct MidOptions {
  std::vector<Rational> s_grid = {Rational(1, 4), Rational(1, 2), Rational(1),
                                  Rational(3, 2), Rational(2),    Rational(3)};
  std::size_t k_max = 3;
  std::size_t n_max = 30;
  unsigned digits = kDefaultDigits;
  unsigned tolerance_exponent = 25;
};

// Hankel PSD of every sampled Schur power: necessary evidence for MID only.
Verdict mid_sampling_test(const SqWeightSeq& w, const MidOptions& options = {});

struct ContractivityReport {
  bool contractive = false;
  bool expansive = false;
  Rational sup;
  Rational inf;
  bool exact = false;  // both bounds from closed forms
  nlohmann::json evidence;

  const char* verdict() const;  // "contractive", "expansive", "isometric" or "neither"
};

ContractivityReport contractivity(const SqWeightSeq& w, std::size_t scan_limit = 1000);
ContractivityReport contractivity(const Decomposition& dec, std::size_t scan_limit = 1000);

}  // namespace tshift

#endif  // TSHIFT_CLASSIFIERS_HPP
