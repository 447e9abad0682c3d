#ifndef TSHIFT_GRWS_HPP
#define TSHIFT_GRWS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tshift/numeric.hpp"
#include "tshift/sequence.hpp"

namespace tshift {

// Geometrically regular weights: w(n) = (p^n + N) / (p^n + D).
struct GrwsParams {
  Rational p;
  Rational N;
  Rational D;

  // Throws std::invalid_argument unless p > 1, N > -1, D > -1.
  void validate() const;
};

// Homographic weights: w(n) = (a n + b) / (c n + d), all parameters positive.
struct HomographicParams {
  Rational a;
  Rational b;
  Rational c;
  Rational d;

  void validate() const;
  bool mid_certified() const { return a * d - b * c > 0; }
};

Rational grws_weight_sq(const GrwsParams& params, std::size_t n);
Rational homographic_weight_sq(const HomographicParams& params, std::size_t n);

// Closed-form sequences with kinds "grws" and "homographic".
SqWeightSeq grws_sequence(const GrwsParams& params);
SqWeightSeq homographic_sequence(const HomographicParams& params);

enum class SectorTag {
  kDiagonal,
  kI,
  kII,
  kIII,
  kIVSpecialLine,
  kIVBand,
  kV,
  kVI,
  kVII,
  kVIII,
  kVIIIA,
  kAboveIII,
  kExtendedSpecialLine,
  kExtendedBand,
  kUnclassified,
};

enum class Claim {
  kUnweighted,
  kMid,
  kBernsteinWeights,  // weights squared interpolated by a Bernstein function
  kCompletelyHyperexpansive,
  kSubnormal,
  kFinitelyAtomicBerger,
  kNotMid,
  kKHyponormal,     // order = k
  kNotKHyponormal,  // order = k + 1
};

struct PredictedProperty {
  Claim claim;
  int order = 0;
  std::string basis;  // which part of the magic-square classification it rests on

  std::string name() const;
};

struct Sector {
  SectorTag tag = SectorTag::kUnclassified;
  int k = 0;  // for special lines and bands
  std::vector<PredictedProperty> predicted;

  std::string name() const;  // e.g. "IV_SpecialLine(1)"
  bool claims(Claim c) const;
};

Sector locate_sector(const GrwsParams& params);

// ---- Berger measures ------------------------------------------------------

struct AtomicMeasure {
  std::vector<Real> atoms;
  std::vector<Real> masses;
  // Present when every atom and mass is known as an exact rational.
  std::optional<std::vector<Rational>> exact_atoms;
  std::optional<std::vector<Rational>> exact_masses;

  static AtomicMeasure from_rationals(std::vector<Rational> atoms, std::vector<Rational> masses);
  std::size_t size() const { return atoms.size(); }
  bool is_exact() const { return exact_atoms.has_value() && exact_masses.has_value(); }
};

class BergerFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Residual {
  bool exact = false;
  Rational exact_value;  // valid when exact
  Real value;

  std::string str() const;
};

struct BergerFitOptions {
  unsigned digits = kDefaultDigits;
  unsigned tolerance_exponent = 9;  // residual must be below 10^-e
  unsigned max_denominator = 64;    // rational snapping bound
};

struct BergerFit {
  AtomicMeasure raw;
  Real raw_residual;
  std::optional<AtomicMeasure> snapped;  // exact measure when snapping helped
  std::optional<Rational> snapped_residual;

  const AtomicMeasure& best() const { return snapped ? *snapped : raw; }
};

// Recovers an r-atomic representing measure from moments gamma_0..gamma_{2r-1}
// (Prony / Hankel kernel) and measures the residual on every available moment.
// Throws BergerFitError when no r-atomic measure fits within tolerance.
BergerFit berger_fit(const MomentSeq& gamma, std::size_t r, const BergerFitOptions& options = {});

// max_{n <= n_max} |gamma_n - sum_i m_i t_i^n|, exact for rational measures.
Residual berger_verify(const AtomicMeasure& measure, const MomentSeq& gamma, std::size_t n_max,
                       unsigned digits = kDefaultDigits);

}  // namespace tshift

#endif  // TSHIFT_GRWS_HPP
