#include "tshift/grws.hpp"

#include <algorithm>
#include <memory>

#include "tshift/linalg.hpp"

namespace tshift {

void GrwsParams::validate() const {
  if (p <= 1) throw std::invalid_argument("GRWS needs p > 1, got " + to_string(p));
  if (N <= -1) throw std::invalid_argument("GRWS needs N > -1, got " + to_string(N));
  if (D <= -1) throw std::invalid_argument("GRWS needs D > -1, got " + to_string(D));
}

void HomographicParams::validate() const {
  if (a <= 0 || b <= 0 || c <= 0 || d <= 0) {
    throw std::invalid_argument("homographic parameters must be positive");
  }
}

Rational grws_weight_sq(const GrwsParams& params, std::size_t n) {
  params.validate();
  const Rational x = pow(params.p, n);
  return (x + params.N) / (x + params.D);
}

Rational homographic_weight_sq(const HomographicParams& params, std::size_t n) {
  params.validate();
  const Rational x(static_cast<long long>(n));
  return (params.a * x + params.b) / (params.c * x + params.d);
}

SqWeightSeq grws_sequence(const GrwsParams& params) {
  params.validate();
  Description label{"grws",
                    {{"p", to_string(params.p)}, {"N", to_string(params.N)},
                     {"D", to_string(params.D)}},
                    {}};
  return affine_product(AffineBase::geometric_in(params.p),
                        {{Rational(1), params.N, 1}, {Rational(1), params.D, -1}}, Rational(1),
                        std::move(label));
}

SqWeightSeq homographic_sequence(const HomographicParams& params) {
  params.validate();
  Description label{"homographic",
                    {{"a", to_string(params.a)}, {"b", to_string(params.b)},
                     {"c", to_string(params.c)}, {"d", to_string(params.d)}},
                    {}};
  return affine_product(AffineBase::linear(),
                        {{params.a, params.b, 1}, {params.c, params.d, -1}}, Rational(1),
                        std::move(label));
}

// ---- sectors --------------------------------------------------------------

std::string PredictedProperty::name() const {
  switch (claim) {
    case Claim::kUnweighted:
      return "unweighted";
    case Claim::kMid:
      return "MID";
    case Claim::kBernsteinWeights:
      return "weights-squared-Bernstein-interpolated";
    case Claim::kCompletelyHyperexpansive:
      return "completely-hyperexpansive";
    case Claim::kSubnormal:
      return "subnormal";
    case Claim::kFinitelyAtomicBerger:
      return "finitely-atomic-Berger-measure";
    case Claim::kNotMid:
      return "not-MID";
    case Claim::kKHyponormal:
      return std::to_string(order) + "-hyponormal";
    case Claim::kNotKHyponormal:
      return "not-" + std::to_string(order) + "-hyponormal";
  }
  return "?";
}

std::string Sector::name() const {
  switch (tag) {
    case SectorTag::kDiagonal:
      return "Diagonal";
    case SectorTag::kI:
      return "I";
    case SectorTag::kII:
      return "II";
    case SectorTag::kIII:
      return "III";
    case SectorTag::kIVSpecialLine:
      return "IV_SpecialLine(" + std::to_string(k) + ")";
    case SectorTag::kIVBand:
      return "IV_Band(" + std::to_string(k) + ")";
    case SectorTag::kV:
      return "V";
    case SectorTag::kVI:
      return "VI";
    case SectorTag::kVII:
      return "VII";
    case SectorTag::kVIII:
      return "VIII";
    case SectorTag::kVIIIA:
      return "VIIIA";
    case SectorTag::kAboveIII:
      return "AboveIII";
    case SectorTag::kExtendedSpecialLine:
      return "ExtendedSpecialLine(" + std::to_string(k) + ")";
    case SectorTag::kExtendedBand:
      return "ExtendedBand(" + std::to_string(k) + ")";
    case SectorTag::kUnclassified:
      return "Unclassified";
  }
  return "?";
}

bool Sector::claims(Claim c) const {
  return std::any_of(predicted.begin(), predicted.end(),
                     [c](const PredictedProperty& p) { return p.claim == c; });
}

namespace {

// For N > 0 and D > N: the k >= 1 with p^{k-1} N < D <= p^k N, and whether
// D lies on the line.
std::pair<int, bool> band_index(const GrwsParams& g) {
  Rational lo = g.N;
  int k = 1;
  while (true) {
    const Rational hi = lo * g.p;
    if (g.D <= hi) return {k, g.D == hi};
    lo = hi;
    ++k;
  }
}

void fill_line_or_band(Sector& s, int k, bool on_line, bool extended) {
  s.k = k;
  const std::string where = extended ? "exterior extension, " : "";
  if (on_line) {
    s.tag = extended ? SectorTag::kExtendedSpecialLine : SectorTag::kIVSpecialLine;
    const std::string basis = where + "special line D = p^" + std::to_string(k) + " N";
    s.predicted = {{Claim::kSubnormal, 0, basis},
                   {Claim::kFinitelyAtomicBerger, 0, basis},
                   {Claim::kNotMid, 0, basis}};
  } else {
    s.tag = extended ? SectorTag::kExtendedBand : SectorTag::kIVBand;
    const std::string basis = where + "band p^" + std::to_string(k - 1) + " N < D < p^" +
                              std::to_string(k) + " N, determinant calculations";
    s.predicted = {{Claim::kKHyponormal, k, basis}, {Claim::kNotKHyponormal, k + 1, basis}};
  }
}

}  // namespace

Sector locate_sector(const GrwsParams& g) {
  g.validate();
  Sector s;
  const Rational& N = g.N;
  const Rational& D = g.D;
  if (N == D) {
    s.tag = SectorTag::kDiagonal;
    const std::string basis = "diagonal N = D: all weights 1";
    s.predicted = {{Claim::kUnweighted, 0, basis},
                   {Claim::kMid, 0, basis},
                   {Claim::kCompletelyHyperexpansive, 0, basis}};
    return s;
  }
  const bool inside = N < 1 && D < 1;
  if (!inside) {
    if (D >= 1 && N <= 0) {
      s.tag = SectorTag::kAboveIII;
      s.predicted = {{Claim::kSubnormal, 0, "exterior extension above sector III"}};
    } else if (N > 0 && D > N) {
      const auto [k, on_line] = band_index(g);
      fill_line_or_band(s, k, on_line, true);
    }
    return s;
  }
  if (N > 0) {
    if (D > N) {
      const auto [k, on_line] = band_index(g);
      fill_line_or_band(s, k, on_line, false);
    } else if (D >= 0) {
      s.tag = SectorTag::kV;
    } else if (D >= -N) {
      s.tag = SectorTag::kVI;
    } else {
      s.tag = SectorTag::kVII;
    }
    return s;
  }
  // N <= 0
  if (D > N) {
    if (D <= 0) {
      s.tag = SectorTag::kI;
      s.predicted = {{Claim::kMid, 0, "sector I"}, {Claim::kBernsteinWeights, 0, "sector I"}};
    } else if (D <= -N) {
      s.tag = SectorTag::kII;
      s.predicted = {{Claim::kMid, 0, "sector II"}};
    } else {
      s.tag = SectorTag::kIII;
      s.predicted = {{Claim::kSubnormal, 0, "sector III"}};
    }
    return s;
  }
  if (D >= g.p * N) {
    s.tag = SectorTag::kVIIIA;
    s.predicted = {{Claim::kCompletelyHyperexpansive, 0, "sector VIIIA: p N <= D < N"}};
  } else {
    s.tag = SectorTag::kVIII;
  }
  return s;
}

// ---- Berger measures ------------------------------------------------------

AtomicMeasure AtomicMeasure::from_rationals(std::vector<Rational> atoms,
                                            std::vector<Rational> masses) {
  if (atoms.size() != masses.size()) throw std::invalid_argument("atom/mass size mismatch");
  AtomicMeasure m;
  for (const auto& a : atoms) m.atoms.push_back(to_real(a));
  for (const auto& w : masses) m.masses.push_back(to_real(w));
  m.exact_atoms = std::move(atoms);
  m.exact_masses = std::move(masses);
  return m;
}

std::string Residual::str() const { return exact ? to_string(exact_value) : to_string(value, 6); }

namespace {

using RealPoly = std::vector<Real>;  // ascending

Real eval(const RealPoly& p, const Real& x) {
  Real v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

RealPoly derivative(const RealPoly& p) {
  RealPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  return d;
}

Real bisect(const RealPoly& p, Real lo, Real hi, unsigned iterations) {
  Real flo = eval(p, lo);
  for (unsigned it = 0; it < iterations; ++it) {
    const Real mid = (lo + hi) / 2;
    const Real fm = eval(p, mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

// Real roots of p inside [-bound, bound], found between consecutive critical
// points. Roots of even multiplicity are missed, which is fine here: a
// representing measure has simple atoms.
std::vector<Real> real_roots(const RealPoly& p, const Real& bound, unsigned iterations) {
  if (p.size() <= 1) return {};
  if (p.size() == 2) return {-p[0] / p[1]};
  std::vector<Real> cuts{-bound};
  for (const Real& c : real_roots(derivative(p), bound, iterations)) {
    if (c > -bound && c < bound) cuts.push_back(c);
  }
  cuts.push_back(bound);
  std::vector<Real> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Real fa = eval(p, cuts[i]);
    const Real fb = eval(p, cuts[i + 1]);
    if (fa == 0) {
      if (roots.empty() || roots.back() != cuts[i]) roots.push_back(cuts[i]);
    } else if ((fa < 0) != (fb < 0) && fb != 0) {
      roots.push_back(bisect(p, cuts[i], cuts[i + 1], iterations));
    }
  }
  if (eval(p, cuts.back()) == 0) roots.push_back(cuts.back());
  return roots;
}

Real residual_real(const std::vector<Real>& atoms, const std::vector<Real>& masses,
                   const MomentSeq& gamma, std::size_t n_max) {
  Real worst = 0;
  std::vector<Real> powers(atoms.size(), Real(1));
  for (std::size_t n = 0; n <= n_max; ++n) {
    Real s = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      s += masses[i] * powers[i];
      powers[i] *= atoms[i];
    }
    worst = std::max(worst, Real(abs(to_real(gamma[n]) - s)));
  }
  return worst;
}

Rational residual_exact(const std::vector<Rational>& atoms, const std::vector<Rational>& masses,
                        const MomentSeq& gamma, std::size_t n_max) {
  Rational worst(0);
  std::vector<Rational> powers(atoms.size(), Rational(1));
  for (std::size_t n = 0; n <= n_max; ++n) {
    Rational s(0);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      s += masses[i] * powers[i];
      powers[i] *= atoms[i];
    }
    worst = std::max(worst, Rational(abs(gamma[n] - s)));
  }
  return worst;
}

std::optional<std::vector<Rational>> exact_masses(const std::vector<Rational>& atoms,
                                                   const MomentSeq& gamma) {
  const std::size_t r = atoms.size();
  Matrix<Rational> v(r, std::vector<Rational>(r));
  std::vector<Rational> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) v[i][j] = pow(atoms[j], i);
    rhs[i] = gamma[i];
  }
  std::vector<Rational> m;
  if (!solve(v, rhs, m)) return std::nullopt;
  return m;
}

}  // namespace

BergerFit berger_fit(const MomentSeq& gamma, std::size_t r, const BergerFitOptions& options) {
  if (r == 0) throw std::invalid_argument("berger_fit needs r >= 1");
  if (gamma.size() < 2 * r) {
    throw std::invalid_argument("berger_fit needs " + std::to_string(2 * r) + " moments, got " +
                                std::to_string(gamma.size()));
  }
  PrecisionScope scope(options.digits);
  const Real tolerance = pow10_neg(options.tolerance_exponent);
  const Real pivot_floor = pow10_neg(options.digits - 10);
  const std::size_t n_max = gamma.size() - 1;

  // Monic kernel polynomial t^r + c_{r-1} t^{r-1} + ... + c_0 annihilating the
  // moment recurrence.
  Matrix<Real> h(r, std::vector<Real>(r));
  std::vector<Real> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) h[i][j] = to_real(gamma[i + j]);
    rhs[i] = -to_real(gamma[i + r]);
  }
  std::vector<Real> c;
  if (!solve(h, rhs, c, pivot_floor)) {
    throw BergerFitError("no " + std::to_string(r) + "-atomic representation: singular Hankel kernel");
  }
  RealPoly poly(c.begin(), c.end());
  poly.emplace_back(1);

  Real bound = 1;
  for (const Real& ci : c) bound = std::max(bound, Real(1 + abs(ci)));
  const unsigned iterations = static_cast<unsigned>(options.digits * 34 / 10 + 40);
  std::vector<Real> atoms = real_roots(poly, bound, iterations);
  if (atoms.size() != r) {
    throw BergerFitError("no " + std::to_string(r) + "-atomic representation: kernel polynomial has " +
                         std::to_string(atoms.size()) + " real roots");
  }
  std::sort(atoms.begin(), atoms.end());
  if (atoms.front() < -tolerance) {
    throw BergerFitError("no " + std::to_string(r) + "-atomic representation: negative atom " +
                         to_string(atoms.front(), 10));
  }

  Matrix<Real> v(r, std::vector<Real>(r));
  std::vector<Real> g(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) v[i][j] = pow(atoms[j], static_cast<long>(i));
    g[i] = to_real(gamma[i]);
  }
  std::vector<Real> masses;
  if (!solve(v, g, masses, pivot_floor)) {
    throw BergerFitError("no " + std::to_string(r) + "-atomic representation: coincident atoms");
  }
  for (const Real& m : masses) {
    if (m <= 0) {
      throw BergerFitError("no " + std::to_string(r) +
                           "-atomic representation: nonpositive mass " + to_string(m, 10));
    }
  }

  BergerFit fit;
  fit.raw.atoms = atoms;
  fit.raw.masses = masses;
  fit.raw_residual = residual_real(atoms, masses, gamma, n_max);
  if (fit.raw_residual >= tolerance) {
    throw BergerFitError("no " + std::to_string(r) + "-atomic representation: residual " +
                         to_string(fit.raw_residual, 6) + " exceeds tolerance");
  }

  std::vector<Rational> snapped;
  for (const Real& a : atoms) snapped.push_back(nearest_rational(a, options.max_denominator));
  const bool distinct = std::adjacent_find(snapped.begin(), snapped.end()) == snapped.end();
  if (distinct) {
    if (auto m = exact_masses(snapped, gamma)) {
      const bool positive = std::all_of(m->begin(), m->end(), [](const Rational& x) { return x > 0; });
      if (positive) {
        Rational res = residual_exact(snapped, *m, gamma, n_max);
        if (to_real(res) <= fit.raw_residual) {
          fit.snapped = AtomicMeasure::from_rationals(snapped, *m);
          fit.snapped_residual = res;
        }
      }
    }
  }
  return fit;
}

Residual berger_verify(const AtomicMeasure& measure, const MomentSeq& gamma, std::size_t n_max,
                       unsigned digits) {
  if (n_max >= gamma.size()) {
    throw std::out_of_range("berger_verify: only " + std::to_string(gamma.size()) + " moments");
  }
  Residual out;
  if (measure.is_exact()) {
    out.exact = true;
    out.exact_value = residual_exact(*measure.exact_atoms, *measure.exact_masses, gamma, n_max);
    PrecisionScope scope(digits);
    out.value = to_real(out.exact_value);
    return out;
  }
  PrecisionScope scope(digits);
  out.value = residual_real(measure.atoms, measure.masses, gamma, n_max);
  return out;
}

}  // namespace tshift
