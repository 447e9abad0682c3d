#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "tshift/classifiers.hpp"
#include "tshift/grws.hpp"

using namespace tshift;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

GrwsParams g(const Rational& n, const Rational& d) { return {q(2), n, d}; }

}  // namespace

TEST_SUITE("grws") {
  TEST_CASE("weight values") {
    for (std::size_t n = 0; n < 10; ++n) CHECK(grws_weight_sq(g(q(1, 7), q(1, 7)), n) == 1);
    CHECK(grws_weight_sq(g(q(2), q(4)), 0) == q(3, 5));
    CHECK(grws_weight_sq(g(q(-1, 3), q(2, 3)), 1) == q(5, 8));
    CHECK_THROWS_AS(grws_weight_sq({q(1), q(0), q(0)}, 0), std::invalid_argument);
    CHECK_THROWS_AS(grws_weight_sq(g(q(-1), q(0)), 0), std::invalid_argument);
  }

  TEST_CASE("homographic values") {
    for (std::size_t n = 0; n < 10; ++n) {
      const Rational x(static_cast<long long>(n));
      CHECK(homographic_weight_sq({q(1), q(1), q(1), q(2)}, n) == (x + 1) / (x + 2));
      CHECK(homographic_weight_sq({q(1), q(1), q(1), q(1)}, n) == 1);
    }
    CHECK_FALSE(HomographicParams{q(1), q(2), q(1), q(1)}.mid_certified());
    CHECK(HomographicParams{q(1), q(1), q(1), q(2)}.mid_certified());
    CHECK_THROWS_AS(homographic_weight_sq({q(0), q(1), q(1), q(1)}, 0), std::invalid_argument);
  }

  TEST_CASE("monotone and bounded for random parameters") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-9, 30);
    for (int trial = 0; trial < 25; ++trial) {
      const GrwsParams p{q(2 + trial % 3), q(num(rng), 10), q(num(rng), 10)};
      const SqWeightSeq w = grws_sequence(p);
      const Rational edge = (1 + p.N) / (1 + p.D);
      const Rational lo = edge < 1 ? edge : Rational(1);
      const Rational hi = edge < 1 ? Rational(1) : edge;
      const auto v = w.values(1001);
      for (std::size_t n = 0; n < 1000; ++n) {
        if (p.N < p.D) REQUIRE(v[n + 1] > v[n]);
        if (p.N > p.D) REQUIRE(v[n + 1] < v[n]);
        if (p.N == p.D) REQUIRE(v[n] == 1);
        if (p.N != p.D) {
          REQUIRE(v[n + 1] > lo);
          REQUIRE(v[n + 1] < hi);
        }
      }
    }
  }

  TEST_CASE("sector location") {
    CHECK(locate_sector(g(q(1, 3), q(2, 3))).name() == "IV_SpecialLine(1)");
    CHECK(locate_sector(g(q(1, 3), q(1, 2))).name() == "IV_Band(1)");
    CHECK(locate_sector(g(q(1, 4), q(1, 4))).name() == "Diagonal");
    CHECK(locate_sector(g(q(0), q(0))).name() == "Diagonal");
    CHECK(locate_sector(g(q(2), q(4))).name() == "ExtendedSpecialLine(1)");
    CHECK(locate_sector(g(q(1, 5), q(4, 5))).name() == "IV_SpecialLine(2)");
    CHECK(locate_sector(g(q(1, 5), q(3, 5))).name() == "IV_Band(2)");
    CHECK(locate_sector(g(q(-1, 2), q(-5, 8))).name() == "VIIIA");
    const Sector special = locate_sector(g(q(1, 3), q(2, 3)));
    CHECK(special.claims(Claim::kSubnormal));
    CHECK(special.claims(Claim::kFinitelyAtomicBerger));
    CHECK(special.claims(Claim::kNotMid));
    const Sector diag = locate_sector(g(q(1, 4), q(1, 4)));
    CHECK(diag.claims(Claim::kUnweighted));
    CHECK(diag.claims(Claim::kMid));
    CHECK(diag.claims(Claim::kCompletelyHyperexpansive));
  }

  TEST_CASE("diagonal prediction holds exactly") {
    const SqWeightSeq w = grws_sequence(g(q(1, 4), q(1, 4)));
    for (std::size_t n = 0; n <= 200; ++n) CHECK(w(n) == 1);
  }

  TEST_CASE("Berger fit on the special line") {
    const MomentSeq gamma = moments(grws_sequence(g(q(2), q(4))), 40);
    const BergerFit fit = berger_fit(gamma, 2);
    REQUIRE(fit.snapped.has_value());
    REQUIRE(fit.snapped->is_exact());
    std::vector<std::pair<Rational, Rational>> am;
    for (std::size_t i = 0; i < 2; ++i) am.emplace_back((*fit.snapped->exact_atoms)[i], (*fit.snapped->exact_masses)[i]);
    std::sort(am.begin(), am.end());
    CHECK(am[0].first == q(1, 2));
    CHECK(am[0].second == q(4, 5));
    CHECK(am[1].first == 1);
    CHECK(am[1].second == q(1, 5));
    const Residual r = berger_verify(*fit.snapped, gamma, 30);
    CHECK(r.exact);
    CHECK(r.exact_value == 0);
  }

  TEST_CASE("Berger fit corroborates special lines") {
    PrecisionScope scope(50);
    for (std::size_t k = 1; k <= 3; ++k) {
      const Rational n = q(1, 3);
      const SqWeightSeq w = grws_sequence({q(2), n, n * pow(q(2), k)});
      const MomentSeq gamma = moments(w, 40);
      const BergerFit fit = berger_fit(gamma, k + 1);
      CHECK(fit.raw_residual < pow10_neg(9));
      CHECK(k_hyponormality_profile(w, 4, 30).max_k_holding() == 4);
    }
  }

  TEST_CASE("Berger fit trivial and failing cases") {
    const MomentSeq flat = moments(SqWeightSeq(), 20);
    const BergerFit fit = berger_fit(flat, 1);
    REQUIRE(fit.best().is_exact());
    CHECK((*fit.best().exact_atoms)[0] == 1);
    CHECK((*fit.best().exact_masses)[0] == 1);
    const MomentSeq bergman = moments(homographic_sequence({q(1), q(1), q(1), q(2)}), 20);
    CHECK_THROWS_AS(berger_fit(bergman, 1), BergerFitError);
  }

  TEST_CASE("Berger verify residuals") {
    const AtomicMeasure dirac = AtomicMeasure::from_rationals({q(1)}, {q(1)});
    const Residual flat = berger_verify(dirac, moments(SqWeightSeq(), 10), 10);
    CHECK(flat.exact);
    CHECK(flat.exact_value == 0);
    const Residual off = berger_verify(dirac, moments(homographic_sequence({q(1), q(1), q(1), q(2)}), 1), 1);
    CHECK(off.exact_value == q(1, 2));
  }
}
