#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "tshift/grws.hpp"
#include "tshift/sequence.hpp"

using namespace tshift;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

SqWeightSeq bergman() { return homographic_sequence({q(1), q(1), q(1), q(2)}); }

}  // namespace

TEST_SUITE("sequence") {
  TEST_CASE("moments of the unweighted and Bergman shifts") {
    const MomentSeq flat = moments(SqWeightSeq(), 20);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(flat[n] == 1);
    const MomentSeq b = moments(bergman(), 50);
    for (std::size_t n = 0; n <= 50; ++n) CHECK(b[n] == q(1, static_cast<long long>(n + 1)));
  }

  TEST_CASE("GRWS(2,2,4) moments follow the two-atom measure") {
    const MomentSeq g = moments(grws_sequence({q(2), q(2), q(4)}), 30);
    CHECK(g[1] == q(3, 5));
    CHECK(g[2] == q(2, 5));
    for (std::size_t n = 0; n <= 30; ++n) {
      CHECK(g[n] == (4 * pow(q(1, 2), n) + 1) / 5);
    }
  }

  TEST_CASE("schur product") {
    const SqWeightSeq a = grws_sequence({q(2), q(2), q(4)});
    const SqWeightSeq b = grws_sequence({q(2), q(3), q(4)});
    CHECK(schur_product(a, b)(0) == q(12, 25));
    const SqWeightSeq with_one = schur_product(a, SqWeightSeq());
    const SqWeightSeq square = schur_product(a, a);
    for (std::size_t n = 0; n < 40; ++n) {
      CHECK(with_one(n) == a(n));
      CHECK(square(n) == a(n) * a(n));
    }
  }

  TEST_CASE("moments are multiplicative under schur products") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(1, 9);
    for (int trial = 0; trial < 10; ++trial) {
      const SqWeightSeq a = grws_sequence({q(2), q(num(rng), 10), q(num(rng), 10)});
      const SqWeightSeq b = homographic_sequence({q(num(rng)), q(num(rng)), q(num(rng)), q(num(rng))});
      const MomentSeq ga = moments(a, 100);
      const MomentSeq gb = moments(b, 100);
      const MomentSeq gab = moments(schur_product(a, b), 100);
      for (std::size_t n = 0; n <= 100; ++n) REQUIRE(gab[n] == ga[n] * gb[n]);
    }
  }

  TEST_CASE("schur power") {
    PrecisionScope scope(60);
    const SqWeightSeq a = grws_sequence({q(2), q(2), q(4)});
    const auto half = schur_power(a, q(1, 2), 0);
    CHECK(abs(half[0] - Real("0.77459666924148337703585307995647992216658434105831816531751475")) <
          pow10_neg(48));
    const auto one = schur_power(a, q(1), 20);
    const auto two = schur_power(a, q(2), 20);
    for (std::size_t n = 0; n <= 20; ++n) {
      CHECK(abs(one[n] - to_real(a(n))) < pow10_neg(48));
      CHECK(abs(two[n] - to_real(a(n) * a(n))) < pow10_neg(48));
    }
    // s = 2/3 against the cube root of the exact square.
    const auto frac = schur_power(a, q(2, 3), 10);
    for (std::size_t n = 0; n <= 10; ++n) {
      const Real cube = frac[n] * frac[n] * frac[n];
      CHECK(abs(cube - to_real(a(n) * a(n))) < pow10_neg(45));
    }
    CHECK_THROWS_AS(schur_power(a, q(0), 5), std::invalid_argument);
    CHECK_THROWS_AS(schur_power(a, q(-1), 5), std::invalid_argument);
  }

  TEST_CASE("forward differences") {
    const std::vector<Rational> c(20, q(3));
    for (const auto& v : forward_difference(c, 1, 10)) CHECK(v == 0);
    std::vector<Rational> lin;
    for (int j = 0; j < 20; ++j) lin.push_back(q(j));
    for (const auto& v : forward_difference(lin, 2, 10)) CHECK(v == 0);
    for (const auto& v : forward_difference(lin, 1, 10)) CHECK(v == -1);
    std::vector<Rational> recip;
    for (int j = 0; j < 20; ++j) recip.push_back(q(1, j + 1));
    CHECK(forward_difference(recip, 1, 0)[0] == q(1, 2));
    CHECK_THROWS_AS(forward_difference(recip, 5, 15), std::out_of_range);
  }

  TEST_CASE("forward difference is linear") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 20);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> a;
      std::vector<Rational> b;
      std::vector<Rational> mix;
      const Rational x = q(num(rng), den(rng));
      const Rational y = q(num(rng), den(rng));
      for (int j = 0; j < 16; ++j) {
        a.push_back(q(num(rng), den(rng)));
        b.push_back(q(num(rng), den(rng)));
        mix.push_back(x * a.back() + y * b.back());
      }
      const auto da = forward_difference(a, 4, 10);
      const auto db = forward_difference(b, 4, 10);
      const auto dm = forward_difference(mix, 4, 10);
      for (std::size_t k = 0; k <= 10; ++k) REQUIRE(dm[k] == x * da[k] + y * db[k]);
    }
  }

  TEST_CASE("values are positive and deterministic") {
    const SqWeightSeq w = grws_sequence({q(3), q(-1, 2), q(7, 3)});
    const auto first = w.values(300);
    const SqWeightSeq copy = w;
    for (std::size_t n = 0; n < 300; ++n) {
      CHECK(first[n] > 0);
      CHECK(copy(n) == first[n]);
    }
    CHECK(w(10000) > 0);
  }

  TEST_CASE("explicit sequences are bounded") {
    const SqWeightSeq e = explicit_sequence({q(1), q(2)});
    CHECK(e(1) == 2);
    CHECK_THROWS_AS(e(2), std::out_of_range);
  }

  TEST_CASE("closed-form tails give exact extrema") {
    const auto sup = supremum(bergman());
    REQUIRE(sup.has_value());
    CHECK(sup->value == 1);
    CHECK(sup->exact);
    CHECK_FALSE(sup->attained);
    const auto inf = infimum(bergman());
    REQUIRE(inf.has_value());
    CHECK(inf->value == q(1, 2));
    CHECK(inf->attained);
    CHECK(bergman().monotonicity() == Monotonicity::kIncreasing);
    CHECK(grws_sequence({q(2), q(3), q(1)}).monotonicity() == Monotonicity::kDecreasing);
  }

  TEST_CASE("combining shifts") {
    PrecisionScope scope(50);
    const SqWeightSeq flat;
    const std::vector<SqWeightSeq> two = {flat, flat};
    const std::vector<ComplexCoef> ones = {ComplexCoef(q(1)), ComplexCoef(q(1))};
    for (const auto& v : combine_shifts(ones, two, 10).weight_sq) CHECK(abs(v - 4) < pow10_neg(45));
    const std::vector<ComplexCoef> rot = {ComplexCoef(q(1)), ComplexCoef(q(0), q(1))};
    const CombinedShift c = combine_shifts(rot, two, 10);
    for (const auto& v : c.weight_sq) CHECK(abs(v - 2) < pow10_neg(45));
    CHECK(c.re_ab_nonneg);

    // A unit-modulus rotation leaves the weight moduli unchanged.
    const SqWeightSeq b = bergman();
    const std::vector<SqWeightSeq> one = {b};
    const std::vector<ComplexCoef> unit = {ComplexCoef(q(3, 5), q(4, 5))};
    const CombinedShift r = combine_shifts(unit, one, 30);
    for (std::size_t n = 0; n <= 30; ++n) CHECK(abs(r.weight_sq[n] - to_real(b(n))) < pow10_neg(45));

    const std::vector<ComplexCoef> none;
    const std::vector<SqWeightSeq> empty;
    CHECK_THROWS_AS(combine_shifts(none, empty, 5), std::invalid_argument);
    const std::vector<ComplexCoef> zeros = {ComplexCoef(q(0)), ComplexCoef(q(0))};
    CHECK_THROWS_AS(combine_shifts(zeros, two, 5), std::invalid_argument);
    const std::vector<SqWeightSeq> mixed = {flat, b};
    const std::vector<ComplexCoef> opposed = {ComplexCoef(q(1)), ComplexCoef(q(-1, 2))};
    CHECK_FALSE(combine_shifts(opposed, mixed, 3).re_ab_nonneg);
  }
}
