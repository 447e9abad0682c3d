#ifndef TSHIFT_DECOMPOSITION_HPP
#define TSHIFT_DECOMPOSITION_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tshift/numeric.hpp"
#include "tshift/sequence.hpp"

namespace tshift {

enum class SpaceKind { kBergmanHToeplitz, kWeightedBergman, kGenDerivHardy };

struct Space {
  SpaceKind kind = SpaceKind::kBergmanHToeplitz;
  Rational alpha;  // weighted Bergman: alpha > -1; derivative Hardy: positive integer
  Rational beta;   // derivative Hardy only

  static Space bergman_h() { return {}; }
  static Space weighted_bergman(const Rational& alpha);
  static Space gen_deriv_hardy(const Rational& alpha, const Rational& beta);

  void validate() const;
  std::string name() const;  // "bergman-h", "wbergman:alpha=1/2", "gdhardy:alpha=1,beta=2"
  friend bool operator==(const Space& a, const Space& b) {
    return a.kind == b.kind && a.alpha == b.alpha && a.beta == b.beta;
  }
};

// coef * z^t * zbar^s
struct Monomial {
  ComplexCoef coef = ComplexCoef(Rational(1));
  unsigned t = 0;
  unsigned s = 0;
};

struct SymbolSpec {
  Space space;
  std::vector<Monomial> terms;

  std::string str() const;
};

class IncompatibleSymbols : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// m -> multiplier * m + offset on the index set {start, start+1, ...}.
// Multiplier 2 covers the H-Toeplitz families, multiplier 1 the Bergman and
// Hardy families (offset = d).
struct AffineIndexMap {
  unsigned multiplier = 2;
  long long offset = 0;
  std::size_t start = 0;

  std::size_t apply(std::size_t m) const;
  std::optional<std::size_t> preimage(std::size_t m) const;
  bool in_domain(std::size_t m) const { return m >= start; }
  bool is_founder(std::size_t m) const { return in_domain(m) && !preimage(m); }
  // n-th orbit element of founder j, in closed form.
  std::size_t element(std::size_t founder, std::size_t n) const;
  std::vector<std::size_t> orbit(std::size_t founder, std::size_t count) const;
  // (founder, position) of an index in the domain.
  std::pair<std::size_t, std::size_t> locate(std::size_t m) const;
  // Founders j <= bound.
  std::vector<std::size_t> founders(std::size_t bound) const;
  std::string formula() const;  // closed form of the orbit elements
};

// weight = sqrt(radicand) * amplitude. Compatible terms share the radicand, so
// sums stay exact.
struct CoherentValue {
  Rational radicand;
  ComplexCoef amplitude;

  Rational value_sq() const { return radicand * amplitude.norm_sq(); }
  // The value itself when it is rational.
  std::optional<Rational> exact_value() const;
};

struct CoherentSeq {
  SqWeightSeq radicand;
  std::vector<CoherentTerm> terms;

  SqWeightSeq value() const;
};

struct BlockEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  CoherentValue value;
};

struct FiniteBlock {
  std::size_t first = 0;  // basis index of the first block coordinate
  std::size_t dim = 0;
  std::vector<BlockEntry> entries;  // basis indices, column = preimage
};

struct DiagonalPart {
  std::size_t index = 0;
  CoherentValue value;
};

// Infinite diagonal (normal) part on indices start, start+1, ...; the value at
// basis index m is values(m - start).
struct DiagonalTail {
  std::size_t start = 0;
  CoherentSeq form;
  SqWeightSeq values;
};

struct OrbitShift {
  std::size_t founder = 0;
  AffineIndexMap index_map;
  SqWeightSeq weights;  // weights(n): squared weight from orbit element n to n+1
  std::vector<SqWeightSeq> factorization;  // empty for merged sums
  CoherentSeq form;

  std::size_t index(std::size_t n) const { return index_map.element(founder, n); }
};

enum class ComponentKind { kBlock, kDiagonal, kDiagonalTail, kOrbit };

struct Component {
  ComponentKind kind;
  std::size_t founder = 0;   // orbit only
  std::size_t position = 0;  // orbit: position in the orbit; block: row offset
};

namespace detail {
struct TermForms;
}

class Decomposition {
 public:
  static constexpr std::size_t kDefaultFounderBound = 64;

  const SymbolSpec& provenance() const { return provenance_; }
  // Compatibility key: space plus difference parameter.
  const std::string& family_key() const { return key_; }
  const std::optional<FiniteBlock>& block() const { return block_; }
  const std::vector<DiagonalPart>& diagonal_parts() const { return diagonal_; }
  const std::optional<DiagonalTail>& diagonal_tail() const { return tail_; }
  bool has_shifts() const { return map_.has_value(); }
  const std::optional<AffineIndexMap>& orbit_map() const { return map_; }

  std::vector<std::size_t> founders(std::size_t bound = kDefaultFounderBound) const;
  std::vector<OrbitShift> shifts(std::size_t founder_bound = kDefaultFounderBound) const;
  // Throws std::invalid_argument if `founder` is not a founder.
  OrbitShift shift(std::size_t founder) const;

  // Squared weight of the edge e_m -> e_{f(m)} for every orbit index m, as a
  // sequence in k = m - edge_start(). Its supremum bounds all orbit shifts.
  std::optional<SqWeightSeq> edge_weights() const;
  std::size_t edge_start() const { return map_ ? map_->start : 0; }

  Component component_of(std::size_t index) const;

  // Sum of |coef| (upper bound |re| + |im|) over terms dropped by truncation.
  const Rational& truncation_error() const { return truncation_error_; }
  std::size_t dropped_terms() const { return dropped_terms_; }

  bool shift_only() const { return !block_ && diagonal_.empty() && !tail_; }

 private:
  friend Decomposition build_decomposition(const SymbolSpec&, std::size_t);

  SymbolSpec provenance_;
  std::string key_;
  std::optional<FiniteBlock> block_;
  std::vector<DiagonalPart> diagonal_;
  std::optional<DiagonalTail> tail_;
  std::optional<AffineIndexMap> map_;
  std::vector<std::pair<ComplexCoef, std::shared_ptr<const detail::TermForms>>> terms_;
  Rational truncation_error_;
  std::size_t dropped_terms_ = 0;
};

// Single monomials. The exponents follow the symbol z^t zbar^s.
Decomposition decompose_htoeplitz_analytic(unsigned t, unsigned s);    // s >= t
Decomposition decompose_htoeplitz_coanalytic(unsigned t, unsigned s);  // t > s
// T_{zbar^s z^(s+d)} on the weighted Bergman space A^2_alpha.
Decomposition decompose_weighted_bergman(unsigned s, unsigned d, const Rational& alpha);
// T_{z^(t+d) zbar^t} on the generalized derivative Hardy space. d = 0 gives the
// diagonal operator T_{|z|^(2t)}.
Decomposition decompose_gen_deriv_hardy(unsigned t, unsigned d, const Rational& alpha,
                                        const Rational& beta);

// Any symbol; sums must be compatible (same space and difference parameter).
// Only the first `max_terms` terms are used; the rest count towards the
// truncation error. Throws IncompatibleSymbols naming the offending terms.
Decomposition decompose(const SymbolSpec& spec, std::size_t max_terms = 1024);

struct WeightedSymbol {
  ComplexCoef coef;
  SymbolSpec spec;
};
Decomposition sum_decompositions(const std::vector<WeightedSymbol>& terms,
                                 std::size_t max_terms = 1024);

struct CommutatorDiagonal {
  std::vector<Rational> entries;  // block coordinates first..first+dim-1
  bool normal = false;
  bool hyponormal = false;
  bool cohyponormal = false;
};

// Diagonal of B*B - BB* on the block, where column m of the block is B* e_m:
// entry m = ||B e_m||^2 - ||B* e_m||^2. Throws std::logic_error if a row or
// column holds more than one entry.
CommutatorDiagonal block_commutator_diagonal(const FiniteBlock& block);

struct NormSq {
  Rational value;
  bool exact = false;     // from closed forms (otherwise a finite scan)
  bool attained = false;  // false when only approached in a limit
  std::string where;      // component achieving the supremum
};

// sup over components of the squared operator norm.
NormSq operator_norm_sq(const Decomposition& dec, std::size_t scan_limit = 1000);

}  // namespace tshift

#endif  // TSHIFT_DECOMPOSITION_HPP
