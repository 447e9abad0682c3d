#include <random>
#include <stdexcept>

#include "doctest.h"

#include "tshift/basis_action.hpp"
#include "tshift/decomposition.hpp"
#include "tshift/symbol_parser.hpp"

using namespace tshift;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

Decomposition parse(const char* symbol, const char* space = "bergman-h") {
  return decompose(parse_symbol_spec(symbol, space));
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("orbit maps") {
    const AffineIndexMap f{2, -2, 3};  // m -> 2(m-1) on m >= 3
    CHECK(f.orbit(3, 5) == std::vector<std::size_t>{3, 4, 6, 10, 18});
    CHECK(f.orbit(5, 4) == std::vector<std::size_t>{5, 8, 14, 26});
    CHECK(f.is_founder(3));
    CHECK_FALSE(f.is_founder(4));
    const AffineIndexMap g{2, 2, 0};  // m -> 2(m+1)
    CHECK(g.orbit(1, 4) == std::vector<std::size_t>{1, 4, 10, 22});
    for (const AffineIndexMap& m : {f, g, AffineIndexMap{2, 0, 1}, AffineIndexMap{1, 3, 0},
                                    AffineIndexMap{2, -6, 7}}) {
      for (std::size_t j : m.founders(200)) {
        std::size_t x = j;
        for (std::size_t n = 0; n <= 20; ++n) {
          REQUIRE(m.element(j, n) == x);
          REQUIRE(m.locate(x) == std::pair{j, n});
          x = m.apply(x);
        }
      }
    }
  }

  TEST_CASE("analytic case d = 0") {
    const Decomposition dec = decompose_htoeplitz_analytic(1, 1);
    REQUIRE(dec.diagonal_parts().size() == 1);
    CHECK(dec.diagonal_parts()[0].index == 0);
    CHECK(dec.diagonal_parts()[0].value.value_sq() == q(1, 4));
    CHECK_FALSE(dec.block().has_value());
    CHECK(dec.shift(1).weights(0) == q(4, 9));
    CHECK_THROWS_AS(decompose_htoeplitz_analytic(2, 1), std::invalid_argument);
  }

  TEST_CASE("analytic case d = 1") {
    const Decomposition dec = decompose_htoeplitz_analytic(0, 1);
    CHECK(dec.diagonal_parts().empty());
    const OrbitShift sh = dec.shift(1);
    CHECK(sh.weights(0) == q(2, 3));
    REQUIRE(sh.factorization.size() == 2);
    CHECK(sh.factorization[0].kind() == "grws");
  }

  TEST_CASE("co-analytic case delta = 1") {
    const Decomposition dec = decompose_htoeplitz_coanalytic(2, 1);
    REQUIRE(dec.block().has_value());
    CHECK(dec.block()->dim == 2);
    for (const auto& e : dec.block()->entries) CHECK(e.value.value_sq() == q(2, 9));
    CHECK(dec.diagonal_parts()[0].value.value_sq() == q(3, 8));
    const OrbitShift sh = dec.shift(3);
    CHECK(sh.weights(0) == q(12, 25));
    CHECK_THROWS_AS(dec.shift(4), std::invalid_argument);
    CHECK_THROWS_AS(decompose_htoeplitz_coanalytic(1, 1), std::invalid_argument);
  }

  TEST_CASE("block commutator closed values") {
    const CommutatorDiagonal a = block_commutator_diagonal(*decompose_htoeplitz_coanalytic(2, 0).block());
    CHECK(a.entries[3] == q(-1, 6));
    CHECK_FALSE(a.hyponormal);
    const CommutatorDiagonal b = block_commutator_diagonal(*decompose_htoeplitz_coanalytic(5, 1).block());
    CHECK(b.entries[6] == q(347, 5184));
    CHECK_FALSE(b.cohyponormal);
    for (unsigned s = 0; s <= 5; ++s) {
      CHECK(block_commutator_diagonal(*decompose_htoeplitz_coanalytic(s + 1, s).block()).normal);
    }
  }

  TEST_CASE("block invariant: one entry per row and column") {
    for (unsigned delta = 1; delta <= 6; ++delta) {
      const Decomposition dec = decompose_htoeplitz_coanalytic(delta + 2, 2);
      const FiniteBlock& b = *dec.block();
      std::vector<int> rows(b.dim, 0);
      std::vector<int> cols(b.dim, 0);
      for (const auto& e : b.entries) {
        ++rows[e.row - b.first];
        ++cols[e.col - b.first];
      }
      for (std::size_t i = 0; i < b.dim; ++i) {
        CHECK(rows[i] == 1);
        CHECK(cols[i] == 1);
      }
    }
  }

  TEST_CASE("block entries match the basis action") {
    for (unsigned delta = 1; delta <= 5; ++delta) {
      for (unsigned s = 0; s <= 3; ++s) {
        const Decomposition dec = decompose_htoeplitz_coanalytic(s + delta, s);
        for (const auto& e : dec.block()->entries) {
          const BasisImage img = htoeplitz_adjoint_action(s + delta, s, e.col);
          CHECK(img.target == e.row);
          CHECK(img.coef_sq == e.value.value_sq());
        }
        const auto& d = dec.diagonal_parts().front();
        const BasisImage img = htoeplitz_adjoint_action(s + delta, s, d.index);
        CHECK(img.target == d.index);
        CHECK(img.coef_sq == d.value.value_sq());
      }
    }
  }

  TEST_CASE("weighted Bergman") {
    const Decomposition bergman = decompose_weighted_bergman(0, 1, q(0));
    for (std::size_t n = 0; n < 20; ++n) {
      const Rational x(static_cast<long long>(n));
      CHECK(bergman.shift(0).weights(n) == (x + 1) / (x + 2));
    }
    const Decomposition id = decompose_weighted_bergman(0, 0, q(3, 2));
    CHECK_FALSE(id.has_shifts());
    for (std::size_t n = 0; n < 20; ++n) CHECK(id.diagonal_tail()->values(n) == 1);
    CHECK(decompose_weighted_bergman(1, 1, q(0)).shift(0).weights(0) == q(2, 9));
    CHECK_THROWS_AS(decompose_weighted_bergman(1, 1, q(-1)), std::invalid_argument);
  }

  TEST_CASE("derivative Hardy") {
    const Decomposition dec = decompose_gen_deriv_hardy(0, 1, q(1), q(2));
    for (std::size_t n = 0; n < 20; ++n) {
      const Rational x(static_cast<long long>(n));
      CHECK(dec.shift(0).weights(n) == (x + 3) / (x + 1));
    }
    CHECK(dec.shift(0).factorization.size() == 4);
    CHECK(operator_norm_sq(dec).value == 3);
    CHECK_THROWS_AS(decompose_gen_deriv_hardy(0, 1, q(2), q(2)), std::invalid_argument);
    CHECK_THROWS_AS(decompose_gen_deriv_hardy(0, 1, q(1, 2), q(2)), std::invalid_argument);
    const Decomposition diag = decompose_gen_deriv_hardy(2, 0, q(1), q(2));
    CHECK_FALSE(diag.has_shifts());
  }

  TEST_CASE("factorizations reproduce the weights") {
    std::vector<Decomposition> decs = {
        decompose_htoeplitz_analytic(1, 3),   decompose_htoeplitz_analytic(2, 2),
        decompose_htoeplitz_coanalytic(4, 1), decompose_weighted_bergman(2, 2, q(1, 2)),
        decompose_gen_deriv_hardy(2, 2, q(1), q(3)),
    };
    for (const auto& dec : decs) {
      for (const auto& sh : dec.shifts(12)) {
        REQUIRE_FALSE(sh.factorization.empty());
        for (std::size_t n = 0; n <= 100; ++n) {
          Rational prod(1);
          for (const auto& f : sh.factorization) prod *= f(n);
          REQUIRE(prod == sh.weights(n));
        }
      }
    }
  }

  TEST_CASE("weights agree with the basis action for n <= 30") {
    const std::vector<std::pair<Monomial, Space>> cases = {
        {{ComplexCoef(q(1)), 1, 3}, Space::bergman_h()},
        {{ComplexCoef(q(1)), 4, 1}, Space::bergman_h()},
        {{ComplexCoef(q(1)), 3, 1}, Space::weighted_bergman(q(1, 2))},
        {{ComplexCoef(q(1)), 4, 1}, Space::gen_deriv_hardy(q(2), q(5))},
    };
    for (const auto& [term, space] : cases) {
      const Decomposition dec = decompose({space, {term}});
      for (const auto& sh : dec.shifts(10)) {
        // Geometric orbits overflow the index type well before n = 60.
        const std::size_t top = dec.orbit_map()->multiplier == 2 ? 30 : 60;
        for (std::size_t n = 0; n <= top; ++n) {
          const BasisImage img = basis_action(space, term, sh.index(n));
          REQUIRE(img.target == sh.index(n + 1));
          REQUIRE(img.coef_sq == sh.weights(n));
        }
      }
    }
  }

  TEST_CASE("sums") {
    const Decomposition sum = parse("1/2 z zbar + 1/2 z^2 zbar^2");
    CHECK(sum.diagonal_parts()[0].value.exact_value() == q(5, 12));
    const Decomposition single = parse("1 z zbar");
    const Decomposition plain = decompose_htoeplitz_analytic(1, 1);
    for (std::size_t n = 0; n < 20; ++n) CHECK(single.shift(3).weights(n) == plain.shift(3).weights(n));
    CHECK_THROWS_AS(parse("z zbar^2 + z zbar"), IncompatibleSymbols);
    CHECK_THROWS_AS(parse("z^2 zbar + z zbar"), IncompatibleSymbols);
    try {
      parse("z zbar^2 + z zbar");
    } catch (const IncompatibleSymbols& e) {
      CHECK(std::string(e.what()).find("z^1 zbar^1") != std::string::npos);
    }
  }

  TEST_CASE("sum splitting is exact") {
    // (a X) + (b X) merged term by term equals the concatenated sum.
    const SymbolSpec x = parse_symbol_spec("z^3 zbar^1", "bergman-h");
    const Decomposition joined = sum_decompositions({{ComplexCoef(q(1, 3)), x}, {ComplexCoef(q(1, 6)), x}});
    const Decomposition direct = sum_decompositions({{ComplexCoef(q(1, 2)), x}});
    for (const auto& e : joined.block()->entries) {
      bool found = false;
      for (const auto& f : direct.block()->entries) {
        if (f.row == e.row && f.col == e.col) {
          found = true;
          CHECK(f.value.value_sq() == e.value.value_sq());
        }
      }
      CHECK(found);
    }
    for (std::size_t n = 0; n < 15; ++n) CHECK(joined.shift(5).weights(n) == direct.shift(5).weights(n));
  }

  TEST_CASE("truncated sums report the dropped mass") {
    const Decomposition dec = decompose(parse_symbol_spec("1/2 z zbar + 1/4 z^2 zbar^2 + 1/8 z^3 zbar^3", "bergman-h"), 2);
    CHECK(dec.dropped_terms() == 1);
    CHECK(dec.truncation_error() == q(1, 8));
  }

  TEST_CASE("operator norms") {
    // The orbit weights increase towards 1 without reaching it.
    const NormSq m = operator_norm_sq(decompose_htoeplitz_coanalytic(2, 1));
    CHECK(m.value == 1);
    CHECK(m.exact);
    CHECK_FALSE(m.attained);
    CHECK(operator_norm_sq(decompose_weighted_bergman(0, 0, q(1))).value == 1);
  }

  TEST_CASE("partition of the basis") {
    for (const auto& dec : {decompose_htoeplitz_coanalytic(5, 2), decompose_htoeplitz_analytic(0, 0),
                            decompose_weighted_bergman(1, 3, q(0)), decompose_gen_deriv_hardy(1, 0, q(1), q(2))}) {
      for (std::size_t m = 0; m <= 2000; ++m) {
        const Component c = dec.component_of(m);
        if (c.kind == ComponentKind::kOrbit) {
          REQUIRE(dec.orbit_map()->element(c.founder, c.position) == m);
        }
      }
    }
  }
}
