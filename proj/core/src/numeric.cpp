#include "tshift/numeric.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <gmp.h>
#include <mpfr.h>

namespace tshift {
namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned digits10)
    : lock_(precision_mutex()),
      saved_(Real::default_precision()),
      digits_(digits10) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(Integer(num), Integer(den));
}

Rational parse_rational(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty rational");
  std::string_view body = t;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational: '" + t + "'");
  }
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  const Integer num = numerator(q);
  const Integer den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational pow(const Rational& base, std::size_t exponent) {
  Integer num = numerator(base);
  Integer den = denominator(base);
  Integer rn;
  Integer rd;
  mpz_pow_ui(rn.backend().data(), num.backend().data(), exponent);
  mpz_pow_ui(rd.backend().data(), den.backend().data(), exponent);
  return Rational(rn, rd);
}

Rational pow(const Rational& base, long exponent) {
  if (exponent >= 0) return pow(base, static_cast<std::size_t>(exponent));
  if (base == 0) throw std::domain_error("zero to a negative power");
  return Rational(1) / pow(base, static_cast<std::size_t>(-exponent));
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer num = numerator(q);
  const Integer den = denominator(q);
  if (!mpz_perfect_square_p(num.backend().data()) ||
      !mpz_perfect_square_p(den.backend().data())) {
    return std::nullopt;
  }
  Integer rn;
  Integer rd;
  mpz_sqrt(rn.backend().data(), num.backend().data());
  mpz_sqrt(rd.backend().data(), den.backend().data());
  return Rational(rn, rd);
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
  return r;
}

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return Integer(0);
  static std::mutex m;
  static std::vector<std::vector<Integer>> rows{{Integer(1)}};
  std::lock_guard<std::mutex> guard(m);
  while (rows.size() <= n) {
    const auto& prev = rows.back();
    std::vector<Integer> next(prev.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t i = 1; i + 1 < next.size(); ++i) next[i] = prev[i - 1] + prev[i];
    rows.push_back(std::move(next));
  }
  return rows[n][k];
}

Rational nearest_rational(const Real& x, unsigned max_den) {
  if (max_den == 0) throw std::invalid_argument("max_den must be positive");
  Rational best;
  Real best_err = -1;
  for (unsigned q = 1; q <= max_den; ++q) {
    const Real scaled = x * q;
    Integer p;
    Real rounded = boost::multiprecision::round(scaled);
    mpfr_get_z(p.backend().data(), rounded.backend().data(), MPFR_RNDN);
    const Rational cand(p, Integer(q));
    const Real err = boost::multiprecision::abs(x - to_real(cand));
    if (best_err < 0 || err < best_err) {
      best = cand;
      best_err = err;
    }
  }
  return best;
}

std::string to_string(const Real& x, unsigned digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Real pow10_neg(unsigned exponent) {
  Real ten = 10;
  return Real(1) / boost::multiprecision::pow(ten, Real(exponent));
}

}  // namespace tshift
