#include "tshift/sequence.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <mpfr.h>

namespace tshift {

struct SqWeightSeq::Cache {
  std::mutex mutex;
  std::vector<std::optional<Rational>> values;
};

SqWeightSeq::SqWeightSeq(std::shared_ptr<const SeqDescriptor> descriptor)
    : descriptor_(std::move(descriptor)), cache_(std::make_shared<Cache>()) {
  if (!descriptor_) throw std::invalid_argument("null sequence descriptor");
}

SqWeightSeq::SqWeightSeq() : SqWeightSeq(constant_sequence(Rational(1))) {}

Rational SqWeightSeq::operator()(std::size_t n) const {
  {
    std::lock_guard<std::mutex> guard(cache_->mutex);
    if (n < cache_->values.size() && cache_->values[n]) return *cache_->values[n];
  }
  Rational v = descriptor_->value(n);
  if (v <= 0) {
    throw std::domain_error("non-positive weight at n=" + std::to_string(n) + ": " +
                            to_string(v));
  }
  std::lock_guard<std::mutex> guard(cache_->mutex);
  if (cache_->values.size() <= n) cache_->values.resize(n + 1);
  cache_->values[n] = v;
  return v;
}

std::vector<Rational> SqWeightSeq::values(std::size_t count) const {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back((*this)(n));
  return out;
}

std::optional<Monotonicity> SqWeightSeq::monotonicity() const {
  auto t = tail();
  if (t && t->start == 0) return t->direction;
  return std::nullopt;
}

bool SqWeightSeq::same_form(const SqWeightSeq& other) const {
  if (descriptor_ == other.descriptor_) return true;
  const Description a = describe();
  const Description b = other.describe();
  if (a.kind != b.kind || a.params != b.params || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!a.children[i].same_form(b.children[i])) return false;
  }
  return true;
}

namespace {

Monotonicity flip(Monotonicity m) {
  switch (m) {
    case Monotonicity::kIncreasing:
      return Monotonicity::kDecreasing;
    case Monotonicity::kDecreasing:
      return Monotonicity::kIncreasing;
    default:
      return m;
  }
}

// Combines tails of positive sequences whose product (or positive sum) is
// taken: constant parts are neutral, opposite directions give no information.
std::optional<TailBehavior> combine_tails(const std::vector<std::optional<TailBehavior>>& tails) {
  TailBehavior out;
  for (const auto& t : tails) {
    if (!t) return std::nullopt;
    out.start = std::max(out.start, t->start);
    if (t->direction == Monotonicity::kConstant) continue;
    if (out.direction == Monotonicity::kConstant) {
      out.direction = t->direction;
    } else if (out.direction != t->direction) {
      return std::nullopt;
    }
  }
  return out;
}

class ConstantDescriptor final : public SeqDescriptor {
 public:
  explicit ConstantDescriptor(Rational v) : v_(std::move(v)) {}
  Rational value(std::size_t) const override { return v_; }
  Description describe() const override { return {"constant", {{"value", to_string(v_)}}, {}}; }
  std::optional<TailBehavior> tail() const override {
    return TailBehavior{0, Monotonicity::kConstant};
  }
  std::optional<Rational> limit() const override { return v_; }

 private:
  Rational v_;
};

using Poly = std::vector<Rational>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void poly_add(Poly& acc, const Poly& b, const Rational& scale) {
  if (acc.size() < b.size()) acc.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) acc[i] += scale * b[i];
}

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// p(x0 + y) as a polynomial in y.
Poly taylor_shift(const Poly& p, const Rational& x0) {
  Poly out;
  for (std::size_t i = p.size(); i-- > 0;) {
    out = poly_mul(out, Poly{x0, Rational(1)});
    if (out.empty()) out.push_back(Rational(0));
    out[0] += p[i];
  }
  poly_trim(out);
  return out;
}

class AffineDescriptor final : public SeqDescriptor {
 public:
  AffineDescriptor(AffineBase base, std::vector<AffineFactor> factors, Rational scale,
                   std::optional<Description> label)
      : base_(std::move(base)),
        factors_(std::move(factors)),
        scale_(std::move(scale)),
        label_(std::move(label)) {
    if (base_.geometric && base_.ratio <= 1) {
      throw std::invalid_argument("geometric base needs ratio > 1");
    }
    if (scale_ <= 0) throw std::invalid_argument("affine product scale must be positive");
    const Rational x0 = base_.geometric ? Rational(1) : Rational(0);
    for (const auto& f : factors_) {
      if (f.slope < 0) throw std::invalid_argument("affine factor slope must be >= 0");
      if (f.slope * x0 + f.intercept <= 0) {
        throw std::invalid_argument("affine factor not positive at n=0");
      }
    }
    tail_ = analyze_tail();
  }

  Rational value(std::size_t n) const override {
    const Rational x = base_.geometric ? pow(base_.ratio, n) : Rational(static_cast<long long>(n));
    Rational v = scale_;
    for (const auto& f : factors_) v *= pow(f.slope * x + f.intercept, static_cast<long>(f.exponent));
    return v;
  }

  Description describe() const override {
    if (label_) return *label_;
    Description d;
    d.kind = base_.geometric ? "ratio-of-affine-in-2^n" : "gamma-ratio-product";
    if (base_.geometric) d.params.emplace_back("ratio", to_string(base_.ratio));
    d.params.emplace_back("scale", to_string(scale_));
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      d.params.emplace_back("factor" + std::to_string(i),
                            to_string(f.slope) + "*x+" + to_string(f.intercept) + "^" +
                                std::to_string(f.exponent));
    }
    return d;
  }

  std::optional<TailBehavior> tail() const override { return tail_; }

  std::optional<Rational> limit() const override {
    long degree = 0;
    Rational lead = scale_;
    for (const auto& f : factors_) {
      if (f.slope > 0) {
        degree += f.exponent;
        lead *= pow(f.slope, static_cast<long>(f.exponent));
      } else {
        lead *= pow(f.intercept, static_cast<long>(f.exponent));
      }
    }
    if (degree > 0) return std::nullopt;
    if (degree < 0) return Rational(0);
    return lead;
  }

 private:
  // Sign of d/dx log f = sum e_i a_i / L_i(x), cleared of the positive
  // denominators, on x >= x0. A Cauchy bound on the roots of the shifted
  // numerator gives the start of the monotone tail.
  std::optional<TailBehavior> analyze_tail() const {
    Poly numerator;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].slope == 0 || factors_[i].exponent == 0) continue;
      Poly term{Rational(factors_[i].exponent) * factors_[i].slope};
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (j == i || factors_[j].slope == 0 || factors_[j].exponent == 0) continue;
        term = poly_mul(term, Poly{factors_[j].intercept, factors_[j].slope});
      }
      poly_add(numerator, term, Rational(1));
    }
    poly_trim(numerator);
    if (numerator.empty()) return TailBehavior{0, Monotonicity::kConstant};
    const Rational x0 = base_.geometric ? Rational(1) : Rational(0);
    const Poly shifted = taylor_shift(numerator, x0);
    const Monotonicity dir =
        shifted.back() > 0 ? Monotonicity::kIncreasing : Monotonicity::kDecreasing;
    bool same_sign = true;
    Rational bound(0);
    for (std::size_t i = 0; i + 1 < shifted.size(); ++i) {
      if (shifted[i] != 0 && (shifted[i] > 0) != (shifted.back() > 0)) same_sign = false;
      bound = std::max(bound, abs(shifted[i] / shifted.back()));
    }
    if (same_sign) return TailBehavior{0, dir};
    // Roots in y satisfy |y| < 1 + bound, so x >= x0 + 1 + bound is root-free.
    const Rational x_free = x0 + 1 + bound;
    std::size_t n = 0;
    if (base_.geometric) {
      Rational x(1);
      while (x < x_free) {
        x *= base_.ratio;
        ++n;
      }
    } else {
      const Integer c = numerator_ceil(x_free);
      n = static_cast<std::size_t>(c.convert_to<unsigned long long>());
    }
    return TailBehavior{n, dir};
  }

  static Integer numerator_ceil(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer fl = num / den;
    if (fl * den != num && q > 0) fl += 1;
    return fl;
  }

  AffineBase base_;
  std::vector<AffineFactor> factors_;
  Rational scale_;
  std::optional<Description> label_;
  std::optional<TailBehavior> tail_;
};

class ExplicitDescriptor final : public SeqDescriptor {
 public:
  explicit ExplicitDescriptor(std::vector<Rational> values) : values_(std::move(values)) {}
  Rational value(std::size_t n) const override {
    if (n >= values_.size()) {
      throw std::out_of_range("explicit sequence has " + std::to_string(values_.size()) +
                              " entries; index " + std::to_string(n));
    }
    return values_[n];
  }
  Description describe() const override {
    Description d{"explicit-list", {{"length", std::to_string(values_.size())}}, {}};
    return d;
  }

 private:
  std::vector<Rational> values_;
};

class SchurDescriptor final : public SeqDescriptor {
 public:
  explicit SchurDescriptor(std::vector<SqWeightSeq> factors) : factors_(std::move(factors)) {}
  Rational value(std::size_t n) const override {
    Rational v(1);
    for (const auto& f : factors_) v *= f(n);
    return v;
  }
  Description describe() const override { return {"schur-product", {}, factors_}; }
  std::optional<TailBehavior> tail() const override {
    std::vector<std::optional<TailBehavior>> tails;
    for (const auto& f : factors_) tails.push_back(f.tail());
    return combine_tails(tails);
  }
  std::optional<Rational> limit() const override {
    Rational v(1);
    for (const auto& f : factors_) {
      auto l = f.limit();
      if (!l) return std::nullopt;
      v *= *l;
    }
    return v;
  }

 private:
  std::vector<SqWeightSeq> factors_;
};

class PowerDescriptor final : public SeqDescriptor {
 public:
  PowerDescriptor(SqWeightSeq base, int exponent, Rational scale)
      : base_(std::move(base)), exponent_(exponent), scale_(std::move(scale)) {
    if (scale_ <= 0) throw std::invalid_argument("power scale must be positive");
  }
  Rational value(std::size_t n) const override {
    return scale_ * pow(base_(n), static_cast<long>(exponent_));
  }
  Description describe() const override {
    return {"power-scaled",
            {{"exponent", std::to_string(exponent_)}, {"scale", to_string(scale_)}},
            {base_}};
  }
  std::optional<TailBehavior> tail() const override {
    auto t = base_.tail();
    if (!t) return std::nullopt;
    if (exponent_ == 0) return TailBehavior{0, Monotonicity::kConstant};
    if (exponent_ < 0) t->direction = flip(t->direction);
    return t;
  }
  std::optional<Rational> limit() const override {
    auto l = base_.limit();
    if (!l) return std::nullopt;
    if (*l == 0 && exponent_ < 0) return std::nullopt;
    return scale_ * pow(*l, static_cast<long>(exponent_));
  }

 private:
  SqWeightSeq base_;
  int exponent_;
  Rational scale_;
};

class CoherentDescriptor final : public SeqDescriptor {
 public:
  CoherentDescriptor(SqWeightSeq radicand, std::vector<CoherentTerm> terms)
      : radicand_(std::move(radicand)), terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("coherent sum needs at least one term");
  }
  Rational value(std::size_t n) const override {
    ComplexCoef acc;
    for (const auto& t : terms_) acc = acc + t.amplitude(n) * t.coef;
    return radicand_(n) * acc.norm_sq();
  }
  Description describe() const override {
    Description d{"coherent-sum", {}, {radicand_}};
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      d.params.emplace_back("coef" + std::to_string(i), to_string(terms_[i].coef));
      d.children.push_back(terms_[i].full);
    }
    return d;
  }
  // With nonnegative real coefficients the weight is a positive combination of
  // the summands' weights, so common monotonicity carries over.
  std::optional<TailBehavior> tail() const override {
    std::vector<std::optional<TailBehavior>> tails;
    for (const auto& t : terms_) {
      if (!t.coef.is_nonnegative_real()) return std::nullopt;
      if (t.coef.is_zero()) continue;
      tails.push_back(t.full.tail());
    }
    return combine_tails(tails);
  }
  std::optional<Rational> limit() const override {
    auto r = radicand_.limit();
    if (!r) return std::nullopt;
    ComplexCoef acc;
    for (const auto& t : terms_) {
      auto l = t.amplitude.limit();
      if (!l) return std::nullopt;
      acc = acc + *l * t.coef;
    }
    return *r * acc.norm_sq();
  }

 private:
  SqWeightSeq radicand_;
  std::vector<CoherentTerm> terms_;
};

std::optional<Extremum> extremum(const SqWeightSeq& w, std::size_t scan_limit, bool sup) {
  auto better = [sup](const Rational& a, const Rational& b) { return sup ? a > b : a < b; };
  auto scan = [&](std::size_t count) {
    Extremum e;
    e.attained = true;
    for (std::size_t n = 0; n < count; ++n) {
      Rational v = w(n);
      if (n == 0 || better(v, e.value)) {
        e.value = v;
        e.index = n;
      }
    }
    e.scanned = count;
    return e;
  };
  constexpr std::size_t kMaxTailScan = 100000;
  const auto tail = w.tail();
  if (tail && tail->start <= kMaxTailScan) {
    Extremum e = scan(tail->start + 1);
    e.exact = true;
    const bool toward = (sup && tail->direction == Monotonicity::kIncreasing) ||
                        (!sup && tail->direction == Monotonicity::kDecreasing);
    if (!toward) return e;
    const auto lim = w.limit();
    if (!lim) return sup ? std::nullopt : std::optional<Extremum>(e);
    if (better(*lim, e.value)) {
      e.value = *lim;
      e.attained = false;
      e.index.reset();
    }
    return e;
  }
  return scan(scan_limit + 1);
}

}  // namespace

SqWeightSeq constant_sequence(const Rational& value) {
  return SqWeightSeq(std::make_shared<ConstantDescriptor>(value));
}

SqWeightSeq affine_product(const AffineBase& base, std::vector<AffineFactor> factors,
                           const Rational& scale, std::optional<Description> label) {
  return SqWeightSeq(std::make_shared<AffineDescriptor>(base, std::move(factors), scale,
                                                        std::move(label)));
}

SqWeightSeq explicit_sequence(std::vector<Rational> values) {
  return SqWeightSeq(std::make_shared<ExplicitDescriptor>(std::move(values)));
}

SqWeightSeq power_scaled(const SqWeightSeq& base, int exponent, const Rational& scale) {
  return SqWeightSeq(std::make_shared<PowerDescriptor>(base, exponent, scale));
}

SqWeightSeq coherent_sum(const SqWeightSeq& radicand, std::vector<CoherentTerm> terms) {
  return SqWeightSeq(std::make_shared<CoherentDescriptor>(radicand, std::move(terms)));
}

std::string to_string(const ComplexCoef& c) {
  if (c.im == 0) return to_string(c.re);
  if (c.re == 0) return to_string(c.im) + "i";
  return to_string(c.re) + (c.im > 0 ? "+" : "") + to_string(c.im) + "i";
}

std::optional<Extremum> supremum(const SqWeightSeq& w, std::size_t scan_limit) {
  return extremum(w, scan_limit, true);
}

std::optional<Extremum> infimum(const SqWeightSeq& w, std::size_t scan_limit) {
  return extremum(w, scan_limit, false);
}

MomentSeq moments(const SqWeightSeq& w, std::size_t n_max) {
  MomentSeq m{w, {}};
  m.values.reserve(n_max + 1);
  m.values.emplace_back(1);
  for (std::size_t n = 0; n < n_max; ++n) m.values.push_back(m.values.back() * w(n));
  return m;
}

SqWeightSeq schur_product(const SqWeightSeq& a, const SqWeightSeq& b) {
  return schur_product(std::vector<SqWeightSeq>{a, b});
}

SqWeightSeq schur_product(std::vector<SqWeightSeq> factors) {
  if (factors.empty()) return constant_sequence(Rational(1));
  return SqWeightSeq(std::make_shared<SchurDescriptor>(std::move(factors)));
}

std::vector<Real> schur_power(const SqWeightSeq& w, const Rational& s, std::size_t n_max,
                              unsigned digits) {
  if (s <= 0) throw std::invalid_argument("Schur power exponent must be positive");
  if (digits < 15) throw std::invalid_argument("Schur power needs at least 15 digits");
  PrecisionScope scope(digits + 10);
  const Real exponent = to_real(s);
  std::vector<Real> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.push_back(boost::multiprecision::exp(exponent * boost::multiprecision::log(to_real(w(n)))));
  }
  return out;
}

std::vector<Rational> forward_difference(std::span<const Rational> seq, std::size_t order,
                                         std::size_t window) {
  if (seq.size() < window + order + 1) {
    throw std::out_of_range("forward difference needs " + std::to_string(window + order + 1) +
                            " terms, got " + std::to_string(seq.size()));
  }
  std::vector<Rational> out(window + 1, Rational(0));
  for (std::size_t i = 0; i <= order; ++i) {
    Rational c(binomial(order, i));
    if (i % 2 == 1) c = -c;
    for (std::size_t k = 0; k <= window; ++k) out[k] += c * seq[k + i];
  }
  return out;
}

std::vector<Real> forward_difference(std::span<const Real> seq, std::size_t order,
                                     std::size_t window) {
  if (seq.size() < window + order + 1) {
    throw std::out_of_range("forward difference needs " + std::to_string(window + order + 1) +
                            " terms, got " + std::to_string(seq.size()));
  }
  std::vector<Real> out(window + 1, Real(0));
  for (std::size_t i = 0; i <= order; ++i) {
    Real c = to_real(binomial(order, i));
    if (i % 2 == 1) c = -c;
    for (std::size_t k = 0; k <= window; ++k) out[k] += c * seq[k + i];
  }
  return out;
}

CombinedShift combine_shifts(std::span<const ComplexCoef> coefs,
                             std::span<const SqWeightSeq> shifts, std::size_t n_max,
                             unsigned digits) {
  if (coefs.empty() || coefs.size() != shifts.size()) {
    throw std::invalid_argument("combine_shifts needs equal-length nonempty lists");
  }
  if (std::all_of(coefs.begin(), coefs.end(), [](const ComplexCoef& c) { return c.is_zero(); })) {
    throw std::invalid_argument("combine_shifts needs a nonzero coefficient");
  }
  CombinedShift out;
  out.re_ab_nonneg = true;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    for (std::size_t j = i + 1; j < coefs.size(); ++j) {
      if ((coefs[i] * coefs[j].conj()).re < 0) out.re_ab_nonneg = false;
    }
  }
  PrecisionScope scope(digits + 10);
  out.weight_sq.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    Real re = 0;
    Real im = 0;
    for (std::size_t i = 0; i < coefs.size(); ++i) {
      const Real w = boost::multiprecision::sqrt(to_real(shifts[i](n)));
      re += to_real(coefs[i].re) * w;
      im += to_real(coefs[i].im) * w;
    }
    out.weight_sq.push_back(re * re + im * im);
  }
  return out;
}

}  // namespace tshift
