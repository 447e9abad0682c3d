#include <random>

#include "doctest.h"

#include "tshift/classifiers.hpp"
#include "tshift/grws.hpp"

using namespace tshift;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

SqWeightSeq bergman() { return homographic_sequence({q(1), q(1), q(1), q(2)}); }
SqWeightSeq dirichlet() { return homographic_sequence({q(1), q(2), q(1), q(1)}); }
SqWeightSeq band1() { return grws_sequence({q(2), q(1, 3), q(1, 2)}); }

bool all_hold(const std::vector<OrderVerdict>& v) {
  for (const auto& o : v) {
    if (!o.verdict.holds) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("classifiers") {
  TEST_CASE("Hankel matrices") {
    const HankelMatrix flat = hankel_matrix(moments(SqWeightSeq(), 4), 0, 1);
    CHECK(flat.entries == Matrix<Rational>{{q(1), q(1)}, {q(1), q(1)}});
    CHECK(determinant(flat.entries) == 0);
    const HankelMatrix g = hankel_matrix(moments(grws_sequence({q(2), q(2), q(4)}), 4), 0, 1);
    CHECK(g.entries == Matrix<Rational>{{q(1), q(3, 5)}, {q(3, 5), q(2, 5)}});
    CHECK(determinant(g.entries) == q(1, 25));
    const HankelMatrix b = hankel_matrix(moments(bergman(), 4), 0, 1);
    CHECK(determinant(b.entries) == q(1, 12));
    CHECK_THROWS_AS(hankel_matrix(moments(bergman(), 3), 1, 2), std::out_of_range);
  }

  TEST_CASE("exact PSD test") {
    CHECK(is_psd_exact(Matrix<Rational>{{q(1), q(1)}, {q(1), q(1)}}).psd);
    CHECK(is_psd_exact(Matrix<Rational>{{q(1), q(3, 5)}, {q(3, 5), q(2, 5)}}).psd);
    const PsdResult bad = is_psd_exact(Matrix<Rational>{{q(1), q(2)}, {q(2), q(1)}});
    CHECK_FALSE(bad.psd);
    CHECK(bad.subset == std::vector<std::size_t>{0, 1});
    CHECK(bad.minor == -3);
    // Singular with a negative 2x2 minor hidden behind a zero pivot.
    const PsdResult hidden = is_psd_exact(Matrix<Rational>{{q(0), q(1)}, {q(1), q(0)}});
    CHECK_FALSE(hidden.psd);
  }

  TEST_CASE("exact PSD test agrees with eigenvalues") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    PrecisionScope scope(60);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = sz(rng);
      // Random Hankel matrix; half the trials use a Gram form so PSD cases occur.
      std::vector<Rational> h(2 * n - 1);
      for (auto& x : h) x = q(num(rng), den(rng));
      Matrix<Rational> m(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = h[i + j];
      }
      if (trial % 2 == 0) {
        Matrix<Rational> gram(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) gram[i][j] += m[i][k] * m[j][k];
          }
        }
        m = gram;
      }
      Matrix<Real> r(n, std::vector<Real>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) r[i][j] = to_real(m[i][j]);
      }
      const auto ev = symmetric_eigenvalues(r, pow10_neg(50));
      bool eig_psd = true;
      for (const auto& e : ev) eig_psd = eig_psd && e >= -pow10_neg(30);
      REQUIRE(is_psd_exact(m).psd == eig_psd);
    }
  }

  TEST_CASE("k-hyponormality profiles") {
    const KProfile b = k_hyponormality_profile(bergman(), 5, 40);
    CHECK(b.max_k_holding() == 5);
    CHECK(k_hyponormality_profile(SqWeightSeq(), 5, 40).max_k_holding() == 5);
    const KProfile band = k_hyponormality_profile(band1(), 2, 10);
    CHECK(band.levels[0].verdict.holds);
    REQUIRE_FALSE(band.levels[1].verdict.holds);
    const auto& w = band.levels[1].verdict.witness;
    CHECK(w["n"].get<std::size_t>() <= 10);
    CHECK(parse_rational(w["minor"].get<std::string>()) < 0);
  }

  TEST_CASE("k = 1 agrees with monotonicity on random GRWS") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> num(-9, 20);
    for (int trial = 0; trial < 30; ++trial) {
      const SqWeightSeq w = grws_sequence({q(2), q(num(rng), 10), q(num(rng), 10)});
      const KProfile p = k_hyponormality_profile(w, 1, 200);
      CHECK(p.k1_matches_monotonicity);
    }
  }

  TEST_CASE("alternation of sequences") {
    std::vector<Rational> lin;
    std::vector<Rational> sign;
    for (int j = 0; j < 70; ++j) {
      lin.push_back(q(j));
      sign.push_back(q(j % 2 == 0 ? 1 : -1));
    }
    CHECK(alternating_test(lin, 1, 50)[0].verdict.holds);
    const auto s = alternating_test(sign, 1, 50);
    CHECK_FALSE(s[0].verdict.holds);
    // (nabla a)_0 = a_0 - a_1 = 2 is already positive.
    CHECK(s[0].verdict.witness["k"] == 0);
    CHECK(all_hold(alternating_test(bergman().values(60), 8, 50)));
  }

  TEST_CASE("log alternation") {
    CHECK(all_hold(log_alternating_test(SqWeightSeq())));
    CHECK(all_hold(log_alternating_test(bergman())));
    CHECK_FALSE(all_hold(log_alternating_test(band1())));
  }

  TEST_CASE("complete hyperexpansivity") {
    CHECK(hyperexpansive_test(moments(dirichlet(), 60), 8, 50).holds);
    CHECK(hyperexpansive_test(moments(SqWeightSeq(), 60), 8, 50).holds);
    const Verdict b = hyperexpansive_test(moments(bergman(), 60), 8, 50);
    CHECK_FALSE(b.holds);
    CHECK(b.witness["n"] == 1);
    CHECK(b.witness["j"] == 0);
  }

  TEST_CASE("first differences agree with 1-expansivity") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> num(1, 9);
    for (int trial = 0; trial < 30; ++trial) {
      const SqWeightSeq w = homographic_sequence({q(num(rng)), q(num(rng)), q(num(rng)), q(num(rng))});
      const MomentSeq g = moments(w, 60);
      const auto alt = alternating_test(g.values, 1, 20);
      const Verdict he = hyperexpansive_test(g, 1, 20);
      // (nabla gamma)_j <= 0 everywhere iff gamma_j - gamma_{j+1} <= 0 everywhere.
      REQUIRE(alt[0].verdict.holds == he.holds);
      if (!he.holds) REQUIRE(alt[0].verdict.witness["k"] == he.witness["j"]);
    }
  }

  TEST_CASE("m-alternating hyperexpansivity thresholds") {
    CHECK(m_alt_hyperexpansive_test(moments(SqWeightSeq(), 60), 3, 50).holds);
    const MomentSeq g = moments(homographic_sequence({q(1), q(5, 2), q(1), q(1)}), 60);
    CHECK(m_alt_hyperexpansive_test(g, 2, 50).holds);
    CHECK_FALSE(m_alt_hyperexpansive_test(g, 3, 50).holds);
  }

  TEST_CASE("MID sampling") {
    CHECK(mid_sampling_test(bergman()).holds);
    CHECK(mid_sampling_test(SqWeightSeq()).holds);
    CHECK_FALSE(mid_sampling_test(band1()).holds);
  }

  TEST_CASE("contractivity") {
    const ContractivityReport b = contractivity(bergman());
    CHECK(b.contractive);
    CHECK(b.sup == 1);
    CHECK(b.exact);
    const ContractivityReport h = contractivity(homographic_sequence({q(1), q(3), q(1), q(1)}));
    CHECK(h.expansive);
    CHECK_FALSE(h.contractive);
    const ContractivityReport u = contractivity(SqWeightSeq());
    CHECK(u.contractive);
    CHECK(u.expansive);
    CHECK(std::string(u.verdict()) == "isometric");
  }

  TEST_CASE("increasing homographic shifts bounded by 1 are contractive") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(1, 12);
    int checked = 0;
    while (checked < 30) {
      const HomographicParams p{q(num(rng)), q(num(rng)), q(num(rng)), q(num(rng))};
      if (!p.mid_certified() || p.b > p.d || p.a > p.c) continue;
      ++checked;
      CHECK(contractivity(homographic_sequence(p)).contractive);
    }
  }
}
