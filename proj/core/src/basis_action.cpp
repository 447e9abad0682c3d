#include "tshift/basis_action.hpp"

#include <stdexcept>

namespace tshift {
namespace {

// x (x+1) ... (x+k-1)
Rational rising(const Rational& x, std::size_t k) {
  Rational v(1);
  for (std::size_t i = 0; i < k; ++i) v *= x + Rational(static_cast<long long>(i));
  return v;
}

Rational factorial(std::size_t n) { return rising(Rational(1), n); }

struct HarmonicMonomial {
  bool analytic;     // z^k when true, zbar^k otherwise
  std::size_t k;
  Rational coef;
};

// Harmonic Bergman projection of z^a zbar^b.
HarmonicMonomial harmonic_projection(std::size_t a, std::size_t b) {
  if (a >= b) return {true, a - b, Rational(static_cast<long long>(a - b + 1), static_cast<long long>(a + 1))};
  return {false, b - a, Rational(static_cast<long long>(b - a + 1), static_cast<long long>(b + 1))};
}

}  // namespace

BasisImage htoeplitz_adjoint_action(unsigned t, unsigned s, std::size_t m) {
  // e_m = sqrt(m+1) z^m; multiplying by conj(z^t zbar^s) gives z^(m+s) zbar^t.
  const HarmonicMonomial h = harmonic_projection(m + s, t);
  // K* sends sqrt(k+1) z^k to e_{2k} and sqrt(k+1) zbar^k to e_{2k-1}.
  BasisImage out;
  if (h.analytic) {
    out.target = 2 * h.k;
  } else {
    if (h.k == 0) throw std::logic_error("co-analytic image of degree 0");
    out.target = 2 * h.k - 1;
  }
  out.coef_sq = Rational(static_cast<long long>(m + 1)) * h.coef * h.coef /
                Rational(static_cast<long long>(h.k + 1));
  return out;
}

BasisImage weighted_bergman_action(unsigned s, unsigned d, const Rational& alpha, std::size_t n) {
  if (alpha <= -1) throw std::invalid_argument("alpha must exceed -1");
  // ||z^n||^{-2} in A^2_alpha.
  auto c_sq = [&](std::size_t k) { return rising(alpha + 2, k) / factorial(k); };
  // P(zbar^s z^S) = Gamma(S+1) Gamma(S-s+alpha+2) / (Gamma(S+alpha+2) Gamma(S-s+1)) z^(S-s).
  const std::size_t big_s = s + d + n;
  const Rational p = rising(Rational(static_cast<long long>(big_s - s + 1)), s) /
                     rising(alpha + Rational(static_cast<long long>(big_s - s + 2)), s);
  return {n + d, c_sq(n) * p * p / c_sq(n + d)};
}

BasisImage gen_deriv_hardy_action(unsigned t, unsigned d, const Rational& alpha,
                                  const Rational& beta, std::size_t m) {
  auto c_sq = [&](std::size_t k) {
    const Rational kk(static_cast<long long>(k));
    return alpha * beta / ((kk + alpha) * (kk + beta));
  };
  // P(zbar^t z^S) = (S+alpha)(S+beta) / ((S-t+alpha)(S-t+beta)) z^(S-t).
  const Rational big_s(static_cast<long long>(m + t + d));
  const Rational p = (big_s + alpha) * (big_s + beta) / ((big_s - t + alpha) * (big_s - t + beta));
  return {m + d, c_sq(m) * p * p / c_sq(m + d)};
}

BasisImage basis_action(const Space& space, const Monomial& term, std::size_t m) {
  switch (space.kind) {
    case SpaceKind::kBergmanHToeplitz:
      return htoeplitz_adjoint_action(term.t, term.s, m);
    case SpaceKind::kWeightedBergman:
      if (term.t < term.s) throw std::invalid_argument("z exponent below zbar exponent");
      return weighted_bergman_action(term.s, term.t - term.s, space.alpha, m);
    case SpaceKind::kGenDerivHardy:
      if (term.t < term.s) throw std::invalid_argument("z exponent below zbar exponent");
      return gen_deriv_hardy_action(term.s, term.t - term.s, space.alpha, space.beta, m);
  }
  throw std::logic_error("unknown space");
}

}  // namespace tshift
