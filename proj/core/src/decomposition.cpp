#include "tshift/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "tshift/grws.hpp"

namespace tshift {

// ---- spaces and symbols ---------------------------------------------------

Space Space::weighted_bergman(const Rational& alpha) {
  Space s{SpaceKind::kWeightedBergman, alpha, Rational(0)};
  s.validate();
  return s;
}

Space Space::gen_deriv_hardy(const Rational& alpha, const Rational& beta) {
  Space s{SpaceKind::kGenDerivHardy, alpha, beta};
  s.validate();
  return s;
}

void Space::validate() const {
  switch (kind) {
    case SpaceKind::kBergmanHToeplitz:
      return;
    case SpaceKind::kWeightedBergman:
      if (alpha <= -1) throw std::invalid_argument("weighted Bergman needs alpha > -1");
      return;
    case SpaceKind::kGenDerivHardy:
      if (denominator(alpha) != 1 || denominator(beta) != 1 || alpha <= 0 || beta <= 0) {
        throw std::invalid_argument("derivative Hardy needs positive integer alpha, beta");
      }
      if (alpha >= beta) throw std::invalid_argument("derivative Hardy needs alpha < beta");
      return;
  }
}

std::string Space::name() const {
  switch (kind) {
    case SpaceKind::kBergmanHToeplitz:
      return "bergman-h";
    case SpaceKind::kWeightedBergman:
      return "wbergman:alpha=" + to_string(alpha);
    case SpaceKind::kGenDerivHardy:
      return "gdhardy:alpha=" + to_string(alpha) + ",beta=" + to_string(beta);
  }
  return "?";
}

std::string SymbolSpec::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) os << " + ";
    const auto& m = terms[i];
    if (!(m.coef == ComplexCoef(Rational(1)))) {
      if (m.coef.im != 0) {
        os << "(" << to_string(m.coef) << ")*";
      } else {
        os << to_string(m.coef.re) << "*";
      }
    }
    os << "z^" << m.t << " zbar^" << m.s;
  }
  return os.str();
}

// ---- index maps -----------------------------------------------------------

std::size_t AffineIndexMap::apply(std::size_t m) const {
  return static_cast<std::size_t>(static_cast<long long>(multiplier * m) + offset);
}

std::optional<std::size_t> AffineIndexMap::preimage(std::size_t m) const {
  const long long diff = static_cast<long long>(m) - offset;
  if (diff < 0 || diff % multiplier != 0) return std::nullopt;
  const auto p = static_cast<std::size_t>(diff / multiplier);
  if (p < start) return std::nullopt;
  return p;
}

std::size_t AffineIndexMap::element(std::size_t founder, std::size_t n) const {
  if (multiplier == 1) return founder + n * static_cast<std::size_t>(offset);
  // f(m) = 2m + c has fixed point -c, so f^n(j) = 2^n (j + c) - c.
  const long long base = static_cast<long long>(founder) + offset;
  return static_cast<std::size_t>((base << n) - offset);
}

std::vector<std::size_t> AffineIndexMap::orbit(std::size_t founder, std::size_t count) const {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(element(founder, n));
  return out;
}

std::pair<std::size_t, std::size_t> AffineIndexMap::locate(std::size_t m) const {
  if (!in_domain(m)) throw std::out_of_range("index outside the orbit domain");
  std::size_t steps = 0;
  if (multiplier == 1) {
    const auto d = static_cast<std::size_t>(offset);
    steps = (m - start) / d;
    return {m - steps * d, steps};
  }
  while (auto p = preimage(m)) {
    m = *p;
    ++steps;
  }
  return {m, steps};
}

std::vector<std::size_t> AffineIndexMap::founders(std::size_t bound) const {
  std::vector<std::size_t> out;
  if (multiplier == 1) {
    for (std::size_t j = start; j < start + static_cast<std::size_t>(offset) && j <= bound; ++j) {
      out.push_back(j);
    }
    return out;
  }
  for (std::size_t m = start; m <= bound; ++m) {
    if (is_founder(m)) out.push_back(m);
  }
  return out;
}

std::string AffineIndexMap::formula() const {
  if (multiplier == 1) return "j+" + std::to_string(offset) + "n";
  if (offset == 0) return "2^n*j";
  const std::string c = std::to_string(offset < 0 ? -offset : offset);
  if (offset < 0) return "2^n*(j-" + c + ")+" + c;
  return "2^n*(j+" + c + ")-" + c;
}

// ---- coherent values ------------------------------------------------------

std::optional<Rational> CoherentValue::exact_value() const {
  if (amplitude.im != 0) return std::nullopt;
  auto r = exact_sqrt(radicand);
  if (!r) return std::nullopt;
  return *r * amplitude.re;
}

SqWeightSeq CoherentSeq::value() const {
  if (terms.size() == 1 && terms[0].coef == ComplexCoef(Rational(1))) return terms[0].full;
  return coherent_sum(radicand, terms);
}

// ---- per-monomial forms ---------------------------------------------------

namespace detail {

// prod (slope*m + intercept)^exponent * scale, as a function of the basis index.
struct AffineForm {
  std::vector<AffineFactor> factors;
  Rational scale = Rational(1);

  // Substitutes m = a*x + b.
  AffineForm substitute(const Rational& a, const Rational& b) const {
    AffineForm out{{}, scale};
    for (const auto& f : factors) out.factors.push_back({f.slope * a, f.slope * b + f.intercept, f.exponent});
    return out;
  }
  Rational at(const Rational& m) const {
    Rational v = scale;
    for (const auto& f : factors) v *= pow(f.slope * m + f.intercept, static_cast<long>(f.exponent));
    return v;
  }
};

AffineForm times_square(const AffineForm& r, const AffineForm& q) {
  AffineForm out = r;
  out.scale *= q.scale * q.scale;
  for (auto f : q.factors) {
    f.exponent *= 2;
    out.factors.push_back(f);
  }
  return out;
}

struct TermForms {
  std::string key;
  std::optional<FiniteBlock> block;
  std::vector<DiagonalPart> diagonal;
  std::optional<std::pair<AffineForm, AffineForm>> tail;  // (R, Q) in m, tail from 0
  std::optional<AffineIndexMap> map;
  AffineForm edge_r;
  AffineForm edge_q;
  std::function<std::vector<SqWeightSeq>(std::size_t)> factors;
};

}  // namespace detail

namespace {

using detail::AffineForm;
using detail::TermForms;

Rational q(long long v) { return Rational(v); }
AffineFactor lin(const Rational& c, int e = 1) { return {Rational(1), c, e}; }

SqWeightSeq sequence_of(const AffineForm& f, const AffineBase& base) {
  return affine_product(base, f.factors, f.scale);
}

CoherentValue constant_value(const Rational& radicand, const Rational& amplitude) {
  return {radicand, ComplexCoef(amplitude)};
}

TermForms htoeplitz_analytic(unsigned t, unsigned s) {
  if (s < t) throw std::invalid_argument("analytic H-Toeplitz case needs s >= t");
  const long long d = static_cast<long long>(s) - t;
  TermForms f;
  f.key = "bergman-h:s>=t:d=" + std::to_string(d);
  if (d == 0) {
    f.diagonal.push_back({0, constant_value(q(1), Rational(1) / (s + 1))});
    f.map = AffineIndexMap{2, 0, 1};
  } else {
    f.map = AffineIndexMap{2, 2 * d, 0};
  }
  f.edge_r = {{lin(q(d + 1)), lin(q(1), -1)}, Rational(1)};
  f.edge_q = {{lin(q(1)), lin(q(s + 1), -1)}, Rational(1)};
  f.factors = [d, s](std::size_t j) {
    const Rational u = q(2 * d + static_cast<long long>(j));
    const Rational den = (q(1) + s - 2 * d) / u;
    return std::vector<SqWeightSeq>{grws_sequence({q(2), (q(1) - 2 * d) / u, den}),
                                    grws_sequence({q(2), (q(1) - d) / u, den})};
  };
  return f;
}

TermForms htoeplitz_coanalytic(unsigned t, unsigned s) {
  if (t <= s) throw std::invalid_argument("co-analytic H-Toeplitz case needs t > s");
  const long long delta = static_cast<long long>(t) - s;
  TermForms f;
  f.key = "bergman-h:t>s:delta=" + std::to_string(delta);
  FiniteBlock block;
  block.first = 0;
  block.dim = static_cast<std::size_t>(2 * delta);
  for (long long m = 0; m < 2 * delta; ++m) {
    BlockEntry e;
    e.col = static_cast<std::size_t>(m);
    if (m < delta) {
      e.row = static_cast<std::size_t>(2 * (delta - m) - 1);
      e.value = constant_value(q((m + 1) * (delta - m + 1)), Rational(1) / (delta + s + 1));
    } else {
      e.row = static_cast<std::size_t>(2 * (m - delta));
      e.value = constant_value(q((m + 1) * (m - delta + 1)), Rational(1) / (m + s + 1));
    }
    block.entries.push_back(e);
  }
  f.block = block;
  f.diagonal.push_back({static_cast<std::size_t>(2 * delta),
                        constant_value(q((2 * delta + 1) * (delta + 1)),
                                       Rational(1) / (2 * delta + s + 1))});
  f.map = AffineIndexMap{2, -2 * delta, static_cast<std::size_t>(2 * delta + 1)};
  f.edge_r = {{lin(q(1 - delta)), lin(q(1), -1)}, Rational(1)};
  f.edge_q = {{lin(q(1)), lin(q(s + 1), -1)}, Rational(1)};
  f.factors = [delta, s](std::size_t j) {
    const Rational u = q(static_cast<long long>(j) - 2 * delta);
    const Rational den = q(2 * delta + s + 1) / u;
    return std::vector<SqWeightSeq>{grws_sequence({q(2), q(2 * delta + 1) / u, den}),
                                    grws_sequence({q(2), q(delta + 1) / u, den})};
  };
  return f;
}

TermForms weighted_bergman(unsigned s, unsigned d, const Rational& alpha) {
  if (alpha <= -1) throw std::invalid_argument("weighted Bergman needs alpha > -1");
  TermForms f;
  f.key = "wbergman:alpha=" + to_string(alpha) + ":d=" + std::to_string(d);
  AffineForm r;
  AffineForm qf;
  for (unsigned k = 1; k <= d; ++k) {
    r.factors.push_back(lin(q(k)));
    r.factors.push_back(lin(alpha + k + 1, -1));
  }
  for (unsigned j = 1; j <= s; ++j) {
    qf.factors.push_back(lin(q(d + j)));
    qf.factors.push_back(lin(alpha + d + j + 1, -1));
  }
  if (d == 0) {
    f.tail = std::make_pair(r, qf);
    return f;
  }
  f.map = AffineIndexMap{1, static_cast<long long>(d), 0};
  f.edge_r = r;
  f.edge_q = qf;
  f.factors = [s, d, alpha](std::size_t i) {
    const Rational dd = q(d);
    std::vector<SqWeightSeq> out;
    for (unsigned k = 1; k <= d; ++k) {
      out.push_back(homographic_sequence({dd, q(k + i), dd, alpha + k + i + 1}));
    }
    for (unsigned j = 1; j <= s; ++j) {
      const HomographicParams h{dd, q(j + i + d), dd, alpha + j + i + d + 1};
      out.push_back(homographic_sequence(h));
      out.push_back(homographic_sequence(h));
    }
    return out;
  };
  return f;
}

TermForms gen_deriv_hardy(unsigned t, unsigned d, const Rational& alpha, const Rational& beta) {
  Space::gen_deriv_hardy(alpha, beta);
  TermForms f;
  f.key = "gdhardy:alpha=" + to_string(alpha) + ",beta=" + to_string(beta) +
          ":d=" + std::to_string(d);
  AffineForm r{{lin(alpha + d), lin(beta + d), lin(alpha, -1), lin(beta, -1)}, Rational(1)};
  AffineForm qf{{lin(alpha + t + d), lin(beta + t + d), lin(alpha + d, -1), lin(beta + d, -1)},
                Rational(1)};
  if (d == 0) {
    f.tail = std::make_pair(AffineForm{}, qf);
    return f;
  }
  f.map = AffineIndexMap{1, static_cast<long long>(d), 0};
  f.edge_r = r;
  f.edge_q = qf;
  f.factors = [t, d, alpha, beta](std::size_t i) {
    const Rational dd = q(d);
    std::vector<SqWeightSeq> out;
    for (const Rational& a : {alpha, beta}) {
      const Rational top = a + i + t + d;
      out.push_back(homographic_sequence({dd, top, dd, a + i + d}));
      out.push_back(homographic_sequence({dd, top, dd, a + i}));
    }
    return out;
  };
  return f;
}

TermForms forms_for(const Space& space, const Monomial& m) {
  switch (space.kind) {
    case SpaceKind::kBergmanHToeplitz:
      return m.s >= m.t ? htoeplitz_analytic(m.t, m.s) : htoeplitz_coanalytic(m.t, m.s);
    case SpaceKind::kWeightedBergman:
      if (m.t < m.s) {
        throw std::invalid_argument("weighted Bergman symbols need the z exponent >= zbar exponent");
      }
      return weighted_bergman(m.s, m.t - m.s, space.alpha);
    case SpaceKind::kGenDerivHardy:
      if (m.t < m.s) {
        throw std::invalid_argument("derivative Hardy symbols need the z exponent >= zbar exponent");
      }
      return gen_deriv_hardy(m.s, m.t - m.s, space.alpha, space.beta);
  }
  throw std::logic_error("unknown space");
}

// Orbit substitution: m = a*x + b with x = 2^n or x = n.
std::pair<Rational, Rational> orbit_substitution(const AffineIndexMap& map, std::size_t founder) {
  if (map.multiplier == 1) return {q(map.offset), q(static_cast<long long>(founder))};
  return {q(static_cast<long long>(founder) + map.offset), q(-map.offset)};
}

AffineBase orbit_base(const AffineIndexMap& map) {
  return map.multiplier == 1 ? AffineBase::linear() : AffineBase::geometric_in(q(2));
}

Rational abs_bound(const ComplexCoef& c) { return abs(c.re) + abs(c.im); }

}  // namespace

Decomposition build_decomposition(const SymbolSpec& spec, std::size_t max_terms) {
  spec.space.validate();
  if (spec.terms.empty()) throw std::invalid_argument("symbol has no terms");
  if (max_terms == 0) throw std::invalid_argument("max_terms must be positive");
  Decomposition dec;
  dec.provenance_ = spec;
  dec.truncation_error_ = Rational(0);

  std::vector<std::pair<ComplexCoef, std::shared_ptr<const TermForms>>> terms;
  std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const TermForms>> cache;
  std::optional<std::size_t> first_index;
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    const Monomial& m = spec.terms[i];
    if (i >= max_terms) {
      dec.truncation_error_ += abs_bound(m.coef);
      ++dec.dropped_terms_;
      continue;
    }
    auto& forms = cache[{m.t, m.s}];
    if (!forms) forms = std::make_shared<TermForms>(forms_for(spec.space, m));
    if (!first_index) {
      first_index = i;
      dec.key_ = forms->key;
    } else if (forms->key != dec.key_) {
      const Monomial& a = spec.terms[*first_index];
      throw IncompatibleSymbols("incompatible terms: z^" + std::to_string(a.t) + " zbar^" +
                                std::to_string(a.s) + " (" + dec.key_ + ") and z^" +
                                std::to_string(m.t) + " zbar^" + std::to_string(m.s) + " (" +
                                forms->key + ")");
    }
    if (!m.coef.is_zero()) terms.emplace_back(m.coef, forms);
  }
  if (terms.empty()) throw std::invalid_argument("all coefficients are zero");

  const TermForms& lead = *terms.front().second;
  const bool shift_only = !lead.block && lead.diagonal.empty() && !lead.tail;
  for (const auto& [c, forms] : terms) {
    if (!c.is_nonnegative_real() && !shift_only) {
      throw std::invalid_argument(
          "complex or negative coefficients need a decomposition without block or diagonal "
          "parts");
    }
  }

  if (lead.block) {
    FiniteBlock b = *lead.block;
    for (std::size_t e = 0; e < b.entries.size(); ++e) {
      ComplexCoef acc;
      for (const auto& [c, forms] : terms) acc = acc + c * forms->block->entries[e].value.amplitude;
      b.entries[e].value.amplitude = acc;
    }
    dec.block_ = b;
  }
  for (std::size_t k = 0; k < lead.diagonal.size(); ++k) {
    DiagonalPart p = lead.diagonal[k];
    ComplexCoef acc;
    for (const auto& [c, forms] : terms) acc = acc + c * forms->diagonal[k].value.amplitude;
    p.value.amplitude = acc;
    dec.diagonal_.push_back(p);
  }
  if (lead.tail) {
    const AffineBase base = AffineBase::linear();
    CoherentSeq form{sequence_of(lead.tail->first, base), {}};
    for (const auto& [c, forms] : terms) {
      form.terms.push_back({c, sequence_of(forms->tail->second, base),
                            sequence_of(detail::times_square(forms->tail->first, forms->tail->second),
                                        base)});
    }
    dec.tail_ = DiagonalTail{0, form, form.value()};
  }
  dec.map_ = lead.map;
  dec.terms_ = std::move(terms);
  return dec;
}

std::vector<std::size_t> Decomposition::founders(std::size_t bound) const {
  if (!map_) return {};
  return map_->founders(bound);
}

std::vector<OrbitShift> Decomposition::shifts(std::size_t founder_bound) const {
  std::vector<OrbitShift> out;
  for (std::size_t j : founders(founder_bound)) out.push_back(shift(j));
  return out;
}

OrbitShift Decomposition::shift(std::size_t founder) const {
  if (!map_ || !map_->is_founder(founder)) {
    throw std::invalid_argument(std::to_string(founder) + " is not a founder");
  }
  const auto [a, b] = orbit_substitution(*map_, founder);
  const AffineBase base = orbit_base(*map_);
  OrbitShift sh;
  sh.founder = founder;
  sh.index_map = *map_;
  const TermForms& lead = *terms_.front().second;
  sh.form.radicand = sequence_of(lead.edge_r.substitute(a, b), base);
  for (const auto& [c, forms] : terms_) {
    const SqWeightSeq amplitude = sequence_of(forms->edge_q.substitute(a, b), base);
    sh.form.terms.push_back({c, amplitude, schur_product(forms->factors(founder))});
  }
  if (terms_.size() == 1 && terms_.front().first == ComplexCoef(Rational(1))) {
    sh.factorization = lead.factors(founder);
    sh.weights = schur_product(sh.factorization);
    sh.form.terms.front().full = sh.weights;
  } else {
    sh.weights = sh.form.value();
  }
  return sh;
}

std::optional<SqWeightSeq> Decomposition::edge_weights() const {
  if (!map_) return std::nullopt;
  const Rational start = q(static_cast<long long>(map_->start));
  const AffineBase base = AffineBase::linear();
  const TermForms& lead = *terms_.front().second;
  CoherentSeq form{sequence_of(lead.edge_r.substitute(q(1), start), base), {}};
  for (const auto& [c, forms] : terms_) {
    const AffineForm qf = forms->edge_q.substitute(q(1), start);
    const AffineForm rf = forms->edge_r.substitute(q(1), start);
    form.terms.push_back({c, sequence_of(qf, base), sequence_of(detail::times_square(rf, qf), base)});
  }
  return form.value();
}

Component Decomposition::component_of(std::size_t index) const {
  if (block_ && index >= block_->first && index < block_->first + block_->dim) {
    return {ComponentKind::kBlock, 0, index - block_->first};
  }
  for (const auto& p : diagonal_) {
    if (p.index == index) return {ComponentKind::kDiagonal, 0, 0};
  }
  if (tail_ && index >= tail_->start) return {ComponentKind::kDiagonalTail, 0, index - tail_->start};
  if (map_ && map_->in_domain(index)) {
    const auto [founder, pos] = map_->locate(index);
    return {ComponentKind::kOrbit, founder, pos};
  }
  throw std::logic_error("index " + std::to_string(index) + " belongs to no component");
}

Decomposition decompose_htoeplitz_analytic(unsigned t, unsigned s) {
  if (s < t) throw std::invalid_argument("analytic H-Toeplitz case needs s >= t");
  return decompose({Space::bergman_h(), {{ComplexCoef(Rational(1)), t, s}}});
}

Decomposition decompose_htoeplitz_coanalytic(unsigned t, unsigned s) {
  if (t <= s) throw std::invalid_argument("co-analytic H-Toeplitz case needs t > s");
  return decompose({Space::bergman_h(), {{ComplexCoef(Rational(1)), t, s}}});
}

Decomposition decompose_weighted_bergman(unsigned s, unsigned d, const Rational& alpha) {
  return decompose({Space::weighted_bergman(alpha), {{ComplexCoef(Rational(1)), s + d, s}}});
}

Decomposition decompose_gen_deriv_hardy(unsigned t, unsigned d, const Rational& alpha,
                                        const Rational& beta) {
  return decompose({Space::gen_deriv_hardy(alpha, beta), {{ComplexCoef(Rational(1)), t + d, t}}});
}

Decomposition decompose(const SymbolSpec& spec, std::size_t max_terms) {
  return build_decomposition(spec, max_terms);
}

Decomposition sum_decompositions(const std::vector<WeightedSymbol>& terms, std::size_t max_terms) {
  if (terms.empty()) throw std::invalid_argument("empty sum");
  SymbolSpec merged{terms.front().spec.space, {}};
  for (const auto& w : terms) {
    if (!(w.spec.space == merged.space)) {
      throw IncompatibleSymbols("incompatible spaces: " + merged.space.name() + " and " +
                                w.spec.space.name());
    }
    for (const auto& m : w.spec.terms) merged.terms.push_back({w.coef * m.coef, m.t, m.s});
  }
  return decompose(merged, max_terms);
}

CommutatorDiagonal block_commutator_diagonal(const FiniteBlock& block) {
  std::vector<int> row_count(block.dim, 0);
  std::vector<int> col_count(block.dim, 0);
  CommutatorDiagonal out;
  out.entries.assign(block.dim, Rational(0));
  for (const auto& e : block.entries) {
    const std::size_t r = e.row - block.first;
    const std::size_t c = e.col - block.first;
    if (r >= block.dim || c >= block.dim) throw std::logic_error("block entry out of range");
    if (++row_count[r] > 1 || ++col_count[c] > 1) {
      throw std::logic_error("block has two nonzeros in row " + std::to_string(e.row) +
                             " or column " + std::to_string(e.col));
    }
    const Rational v = e.value.value_sq();
    out.entries[r] += v;
    out.entries[c] -= v;
  }
  out.hyponormal = std::all_of(out.entries.begin(), out.entries.end(),
                               [](const Rational& x) { return x >= 0; });
  out.cohyponormal = std::all_of(out.entries.begin(), out.entries.end(),
                                 [](const Rational& x) { return x <= 0; });
  // With one entry per row and column both Gram matrices are diagonal, so a
  // zero diagonal means the block commutes with its adjoint.
  out.normal = out.hyponormal && out.cohyponormal;
  return out;
}

NormSq operator_norm_sq(const Decomposition& dec, std::size_t scan_limit) {
  NormSq best;
  best.exact = true;
  bool any = false;
  auto offer = [&](const Rational& v, bool exact, bool attained, const std::string& where) {
    best.exact = best.exact && exact;
    if (!any || v > best.value) {
      best.value = v;
      best.attained = attained;
      best.where = where;
      any = true;
    }
  };
  if (const auto& b = dec.block()) {
    for (const auto& e : b->entries) {
      offer(e.value.value_sq(), true, true,
            "block(" + std::to_string(e.row) + "," + std::to_string(e.col) + ")");
    }
  }
  for (const auto& p : dec.diagonal_parts()) {
    offer(p.value.value_sq(), true, true, "diagonal(" + std::to_string(p.index) + ")");
  }
  auto offer_seq = [&](const SqWeightSeq& w, std::size_t start, const std::string& what) {
    auto sup = supremum(w, scan_limit);
    if (!sup) throw std::runtime_error(what + " weights are unbounded");
    std::string where = what;
    if (sup->index) where += "(index " + std::to_string(*sup->index + start) + ")";
    else where += "(limit)";
    offer(sup->value, sup->exact, sup->attained, where);
  };
  if (const auto& t = dec.diagonal_tail()) offer_seq(t->values, t->start, "diagonal-tail");
  if (auto edges = dec.edge_weights()) offer_seq(*edges, dec.edge_start(), "shift-edge");
  if (!any) throw std::logic_error("empty decomposition");
  return best;
}

}  // namespace tshift
