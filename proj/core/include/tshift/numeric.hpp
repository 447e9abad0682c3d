#ifndef TSHIFT_NUMERIC_HPP
#define TSHIFT_NUMERIC_HPP

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace tshift {

// Exact arithmetic is GMP-backed; expression templates are disabled so that
// `auto` never captures an unevaluated expression.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
// Variable-precision MPFR float. The working precision is process-wide in
// Boost 1.74, so every high-precision section runs under a PrecisionScope.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 50;

// Sets the MPFR working precision (decimal digits) for the lifetime of the
// object. Scopes nest; high-precision work is serialized process-wide.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned digits() const { return digits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_;
  unsigned digits_;
};

Rational make_rational(long long num, long long den = 1);

// Parses "p", "-p", "p/q" (no decimals). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

Rational pow(const Rational& base, std::size_t exponent);
Rational pow(const Rational& base, long exponent);

// Exact rational square root when the argument is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);

// Converts at the current working precision.
Real to_real(const Rational& q);
Real to_real(const Integer& z);

// Binomial coefficient C(n, k) from a cached Pascal triangle.
Integer binomial(std::size_t n, std::size_t k);

// Smallest-|error| rational p/q with 1 <= q <= max_den; ties go to smaller q.
Rational nearest_rational(const Real& x, unsigned max_den);

// Decimal rendering with `digits` significant digits.
std::string to_string(const Real& x, unsigned digits = 20);

// 10^(-exponent) at the current working precision.
Real pow10_neg(unsigned exponent);

}  // namespace tshift

#endif  // TSHIFT_NUMERIC_HPP
