#include <algorithm>
#include <stdexcept>

#include "doctest.h"

#include "tshift/linalg.hpp"
#include "tshift/numeric.hpp"

using namespace tshift;

TEST_SUITE("numeric") {
  TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/6") == make_rational(1, 2));
    CHECK(parse_rational("-4") == make_rational(-4));
    CHECK(to_string(make_rational(6, 4)) == "3/2");
    CHECK(to_string(make_rational(-5)) == "-5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  }

  TEST_CASE("powers, square roots, binomials") {
    CHECK(pow(make_rational(2, 3), std::size_t{3}) == make_rational(8, 27));
    CHECK(pow(make_rational(2, 3), -2L) == make_rational(9, 4));
    CHECK(exact_sqrt(make_rational(9, 4)) == make_rational(3, 2));
    CHECK_FALSE(exact_sqrt(make_rational(2)).has_value());
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(60, 30) == Integer("118264581564861424"));
    CHECK(binomial(5, 7) == 0);
  }

  TEST_CASE("precision scope restores the default") {
    const auto before = Real::default_precision();
    {
      PrecisionScope scope(80);
      CHECK(Real::default_precision() == 80);
      const Real third = to_real(make_rational(1, 3));
      CHECK(nearest_rational(third, 64) == make_rational(1, 3));
    }
    CHECK(Real::default_precision() == before);
  }

  TEST_CASE("nearest rational with bounded denominator") {
    PrecisionScope scope(50);
    CHECK(nearest_rational(to_real(make_rational(22, 7)), 10) == make_rational(22, 7));
    CHECK(nearest_rational(Real("0.4999999999999999999"), 64) == make_rational(1, 2));
  }

  TEST_CASE("exact determinant and solve") {
    Matrix<Rational> m = {{make_rational(1), make_rational(2)}, {make_rational(2), make_rational(1)}};
    CHECK(determinant(m) == -3);
    std::vector<Rational> x;
    REQUIRE(solve(m, {make_rational(3), make_rational(3)}, x));
    CHECK(x[0] == 1);
    CHECK(x[1] == 1);
    Matrix<Rational> singular = {{make_rational(1), make_rational(1)}, {make_rational(1), make_rational(1)}};
    CHECK(determinant(singular) == 0);
    CHECK_FALSE(solve(singular, {make_rational(1), make_rational(2)}, x));
  }

  TEST_CASE("subset enumeration order") {
    std::vector<std::vector<std::size_t>> seen;
    for_each_subset(3, [&](const std::vector<std::size_t>& s) {
      seen.push_back(s);
      return true;
    });
    REQUIRE(seen.size() == 7);
    CHECK(seen[0] == std::vector<std::size_t>{0});
    CHECK(seen[3] == std::vector<std::size_t>{0, 1});
    CHECK(seen[6] == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("Jacobi eigenvalues") {
    PrecisionScope scope(50);
    Matrix<Real> m = {{Real(2), Real(1)}, {Real(1), Real(2)}};
    auto ev = symmetric_eigenvalues(m, pow10_neg(40));
    std::sort(ev.begin(), ev.end());
    CHECK(abs(ev[0] - 1) < pow10_neg(30));
    CHECK(abs(ev[1] - 3) < pow10_neg(30));
  }
}
