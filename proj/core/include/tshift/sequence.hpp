#ifndef TSHIFT_SEQUENCE_HPP
#define TSHIFT_SEQUENCE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tshift/numeric.hpp"

namespace tshift {

class SqWeightSeq;

enum class Monotonicity { kConstant, kIncreasing, kDecreasing };

// The sequence is strictly monotone (or constant) for all n >= start.
struct TailBehavior {
  std::size_t start = 0;
  Monotonicity direction = Monotonicity::kConstant;
};

// Structural description of a closed-form sequence, used for reporting and for
// structural equality between descriptors.
struct Description {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<SqWeightSeq> children;
};

// A closed-form rule n -> value. Implementations must be immutable and
// deterministic; SqWeightSeq memoizes on top of them.
class SeqDescriptor {
 public:
  virtual ~SeqDescriptor() = default;
  virtual Rational value(std::size_t n) const = 0;
  virtual Description describe() const = 0;
  // Eventual monotonicity when it follows from the closed form.
  virtual std::optional<TailBehavior> tail() const { return std::nullopt; }
  // Exact limit as n -> infinity when finite and known.
  virtual std::optional<Rational> limit() const { return std::nullopt; }
};

// Lazily evaluated, memoized sequence n -> alpha_n^2 (weights are stored
// squared so that everything downstream stays rational). Cheap to copy; copies
// share the cache.
class SqWeightSeq {
 public:
  // The unweighted shift: every value 1.
  SqWeightSeq();
  explicit SqWeightSeq(std::shared_ptr<const SeqDescriptor> descriptor);

  // Throws std::domain_error if the closed form yields a non-positive value.
  Rational operator()(std::size_t n) const;
  std::vector<Rational> values(std::size_t count) const;

  Description describe() const { return descriptor_->describe(); }
  std::string kind() const { return describe().kind; }
  std::optional<TailBehavior> tail() const { return descriptor_->tail(); }
  // Monotonicity over all n >= 0, when known from the closed form.
  std::optional<Monotonicity> monotonicity() const;
  std::optional<Rational> limit() const { return descriptor_->limit(); }
  const SeqDescriptor& descriptor() const { return *descriptor_; }

  // Recursive equality of descriptions (kind, parameters, children).
  bool same_form(const SqWeightSeq& other) const;

 private:
  struct Cache;
  std::shared_ptr<const SeqDescriptor> descriptor_;
  std::shared_ptr<Cache> cache_;
};

// ---- generic closed forms -------------------------------------------------

SqWeightSeq constant_sequence(const Rational& value);

// value_n = scale * prod_k (slope_k * x_n + intercept_k)^exponent_k, with
// x_n = n (kind "gamma-ratio-product") or x_n = ratio^n (kind
// "ratio-of-affine-in-2^n", ratio > 1). Requires scale > 0, slope >= 0 and a
// positive factor at n = 0. `label` replaces the reported kind and parameters.
struct AffineFactor {
  Rational slope;
  Rational intercept;
  int exponent = 1;
};
struct AffineBase {
  bool geometric = false;
  Rational ratio = Rational(2);

  static AffineBase linear() { return {false, Rational(1)}; }
  static AffineBase geometric_in(const Rational& p) { return {true, p}; }
};
SqWeightSeq affine_product(const AffineBase& base, std::vector<AffineFactor> factors,
                           const Rational& scale = Rational(1),
                           std::optional<Description> label = std::nullopt);

SqWeightSeq explicit_sequence(std::vector<Rational> values);

// value_n = scale * base_n^exponent.
SqWeightSeq power_scaled(const SqWeightSeq& base, int exponent,
                         const Rational& scale = Rational(1));

// ---- complex coefficients -------------------------------------------------

struct ComplexCoef {
  Rational re;
  Rational im;

  ComplexCoef() = default;
  ComplexCoef(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

  Rational norm_sq() const { return re * re + im * im; }
  ComplexCoef conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_nonnegative_real() const { return im == 0 && re >= 0; }

  friend ComplexCoef operator+(const ComplexCoef& a, const ComplexCoef& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexCoef operator*(const ComplexCoef& a, const ComplexCoef& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexCoef operator*(const Rational& a, const ComplexCoef& b) {
    return {a * b.re, a * b.im};
  }
  friend bool operator==(const ComplexCoef& a, const ComplexCoef& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const ComplexCoef& c);

// One summand of a coherent sum: a coefficient, the rational amplitude
// sequence, and the full squared weight radicand * amplitude^2 of the summand.
struct CoherentTerm {
  ComplexCoef coef;
  SqWeightSeq amplitude;
  SqWeightSeq full;
};

// value_n = radicand_n * |sum_i coef_i * amplitude_i(n)|^2. Weights that share
// an irrational radical combine exactly this way.
SqWeightSeq coherent_sum(const SqWeightSeq& radicand, std::vector<CoherentTerm> terms);

// ---- extrema --------------------------------------------------------------

struct Extremum {
  Rational value;
  bool exact = false;          // derived from the closed form, not a scan
  bool attained = false;       // false when the value is only a limit
  std::optional<std::size_t> index;  // where attained
  std::size_t scanned = 0;     // indices 0..scanned-1 evaluated
};

// sup / inf over all n >= 0. Exact when the descriptor reports a tail and a
// limit; otherwise the extremum over 0..scan_limit with exact = false. sup is
// nullopt when the sequence is increasing without a known finite limit.
std::optional<Extremum> supremum(const SqWeightSeq& w, std::size_t scan_limit = 1000);
std::optional<Extremum> infimum(const SqWeightSeq& w, std::size_t scan_limit = 1000);

// ---- operations -----------------------------------------------------------

struct MomentSeq {
  SqWeightSeq source;
  std::vector<Rational> values;  // gamma_0 .. gamma_{n_max}

  const Rational& operator[](std::size_t n) const { return values.at(n); }
  std::size_t size() const { return values.size(); }
};

// gamma_0 = 1, gamma_{n+1} = gamma_n * w(n).
MomentSeq moments(const SqWeightSeq& w, std::size_t n_max);

SqWeightSeq schur_product(const SqWeightSeq& a, const SqWeightSeq& b);
SqWeightSeq schur_product(std::vector<SqWeightSeq> factors);

// w(n)^s for n = 0..n_max, relative error below 10^(1 - digits). The exponent
// applies to the stored squared weight, which is the same as raising the
// weights or the moments. Throws std::invalid_argument for s <= 0.
std::vector<Real> schur_power(const SqWeightSeq& w, const Rational& s, std::size_t n_max,
                              unsigned digits = kDefaultDigits);

// (nabla^m a)_k = sum_i (-1)^i C(m,i) a_{k+i} for k = 0..window.
std::vector<Rational> forward_difference(std::span<const Rational> seq, std::size_t order,
                                         std::size_t window);
std::vector<Real> forward_difference(std::span<const Real> seq, std::size_t order,
                                     std::size_t window);

struct CombinedShift {
  std::vector<Real> weight_sq;  // |sum_i a_i sqrt(w_i(n))|^2, n = 0..n_max
  bool re_ab_nonneg = false;    // Re(a_i conj(a_j)) >= 0 for all pairs
};

// Weights of sum_i a_i W_i in high precision. Throws std::invalid_argument on
// empty, mismatched or all-zero input.
CombinedShift combine_shifts(std::span<const ComplexCoef> coefs,
                             std::span<const SqWeightSeq> shifts, std::size_t n_max,
                             unsigned digits = kDefaultDigits);

}  // namespace tshift

#endif  // TSHIFT_SEQUENCE_HPP
