#include <stdexcept>

#include "doctest.h"

#include "tshift/report.hpp"
#include "tshift/symbol_parser.hpp"
#include "tshift/verification.hpp"

using namespace tshift;
using nlohmann::json;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

Decomposition parse(const char* symbol, const char* space = "bergman-h") {
  return decompose(parse_symbol_spec(symbol, space));
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("symbol grammar") {
    const auto one = parse_symbol("z^2 zbar^1");
    REQUIRE(one.size() == 1);
    CHECK(one[0].t == 2);
    CHECK(one[0].s == 1);
    const auto sum = parse_symbol(" 1/2*z zbar + 1/4 z^2zbar^2 ");
    REQUIRE(sum.size() == 2);
    CHECK(sum[0].coef.re == q(1, 2));
    CHECK(sum[1].coef.re == q(1, 4));
    CHECK(sum[1].t == 2);
    const auto co = parse_symbol("zbar^3");
    CHECK(co[0].t == 0);
    CHECK(co[0].s == 3);
    for (const char* bad : {"", "z^", "z z", "zbar zbar", "2", "z + ", "z^2 y", "1/ z", "z^1234567"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_symbol(bad), SyntaxError);
    }
  }

  TEST_CASE("space grammar") {
    CHECK(parse_space("bergman-h") == Space::bergman_h());
    CHECK(parse_space("wbergman:alpha=1/2") == Space::weighted_bergman(q(1, 2)));
    CHECK(parse_space("gdhardy:alpha=1,beta=2") == Space::gen_deriv_hardy(q(1), q(2)));
    CHECK(parse_space("gdhardy: beta=2, alpha=1") == Space::gen_deriv_hardy(q(1), q(2)));
    for (const char* bad : {"hardy", "wbergman", "wbergman:alpha", "wbergman:alpha=1,gamma=2", "wbergman:alpha=x"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_space(bad), SyntaxError);
    }
  }

  TEST_CASE("run config") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.founder_bound = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.precision = 20;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(parse_format("csv") == OutputFormat::kCsv);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
    CHECK(RunConfig{}.header()["founder_bound"] == 64);
  }

  TEST_CASE("decomposition report") {
    RunConfig c;
    const json r = decomposition_report(parse("z^2 zbar^1"), c);
    CHECK(r["block"]["entries"].size() == 2);
    CHECK(r["block"]["entries"][0]["value_sq"] == "2/9");
    CHECK(r["block"]["entries"][0]["value"]["sq"] == "2/9");
    CHECK(r["block"]["normal"] == true);
    CHECK(r["diagonal"][0]["index"] == 2);
    CHECK(r["diagonal"][0]["value_sq"] == "3/8");
    CHECK(r["orbits"]["founders"][0] == 3);
    CHECK(r["orbits"]["shifts"][0]["weights_sq"][0] == "12/25");
    CHECK(r["orbits"]["shifts"][0]["weights_sq"].size() == 10);
    CHECK(r["orbits"]["shifts"][0]["indices"][3] == 10);
    CHECK(r["orbits"]["map"]["orbit_formula"].is_string());

    const json id = decomposition_report(parse("z^0 zbar^0", "wbergman:alpha=0"), c);
    for (const auto& v : id["diagonal_tail"]["values_sq"]) CHECK(v == "1");
    const json h = decomposition_report(parse("z^1 zbar^0", "gdhardy:alpha=1,beta=2"), c);
    CHECK(h["orbits"]["shifts"][0]["weights_sq"][0] == "3");
    CHECK(h["orbits"]["shifts"][0]["weights_sq"][1] == "2");
  }

  TEST_CASE("canonical JSON round trip") {
    RunConfig c;
    const std::string text = render_json(envelope("decompose", decomposition_report(parse("z^3 zbar^1"), c), c));
    const json back = json::parse(text);
    CHECK(render_json(back) == text);
    CHECK(back["schema_version"] == "1");
  }

  TEST_CASE("csv and text rendering") {
    const json j = {{"a", {{"b", "1/2"}, {"c", json::array({1, 2})}}}, {"d", "x,y"}};
    CHECK(render_csv(j) == "path,value\na/b,1/2\na/c/0,1\na/c/1,2\nd,\"x,y\"\n");
    CHECK(render_text(j) == "a/b = 1/2\na/c/0 = 1\na/c/1 = 2\nd = x,y\n");
  }

  TEST_CASE("classification of diagonal symbols") {
    RunConfig c;
    c.founder_bound = 6;
    c.k_max = 4;
    const json sub = classification_report(parse("z^3 zbar^3"), c);
    for (const auto& sh : sub["shifts"]) CHECK(sh["k_profile"]["max_k_holding"] == 4);
    CHECK(sub["adjoint"]["hyponormal"] == false);

    c.k_max = 3;
    const json two = classification_report(parse("z^2 zbar^2"), c);
    for (const auto& sh : two["shifts"]) {
      CHECK(sh["hyponormal"]["verdict"] == "holds-on-checked-range");
      for (const auto& f : sh["factors"]) CHECK(f["k_profile"]["max_k_holding"] == 2);
    }
  }

  TEST_CASE("classification of a co-analytic symbol") {
    RunConfig c;
    c.founder_bound = 8;
    const json r = classification_report(parse("z^1 zbar^2"), c);
    for (const auto& sh : r["shifts"]) CHECK(sh["k_profile"]["max_k_holding"] == 3);
    CHECK(r["adjoint"]["hyponormal"] == false);
    CHECK(r["operator"]["contractivity"]["contractive"] == true);
  }

  TEST_CASE("sector reports") {
    RunConfig c;
    const json special = sector_report({q(2), q(1, 3), q(2, 3)}, c, true);
    CHECK(special["sector"]["tag"] == "IV_SpecialLine(1)");
    CHECK(special["corroboration"]["consistent"] == true);
    CHECK(sector_report({q(2), q(0), q(0)}, c, false)["sector"]["tag"] == "Diagonal");
    CHECK(sector_report({q(2), q(2), q(4)}, c, false)["sector"]["tag"] == "ExtendedSpecialLine(1)");
    const json band = sector_report({q(2), q(1, 3), q(1, 2)}, c, true);
    CHECK(band["corroboration"]["consistent"] == true);
  }

  TEST_CASE("verification registry") {
    CHECK(is_known_check("all"));
    CHECK(is_known_check("vp-commutator-signs"));
    CHECK_FALSE(is_known_check("vp-nothing"));
    CHECK_THROWS_AS(run_checks({"vp-nothing"}, RunConfig{}), std::invalid_argument);
    const auto r = run_checks({"vp-berger-specialline", "vp-commutator-signs"}, RunConfig{});
    REQUIRE(r.size() == 2);
    CHECK(r[0].passed);
    CHECK(r[1].passed);
    CHECK(to_json(r[0])["criterion"] == "AC2");
  }

  TEST_CASE("verification is deterministic for a seed") {
    RunConfig c;
    c.seed = 99;
    const auto a = run_checks({"vp-weight-oracle", "vp-partition"}, c);
    const auto b = run_checks({"vp-weight-oracle", "vp-partition"}, c);
    CHECK(to_json(a[0]).dump() == to_json(b[0]).dump());
    CHECK(to_json(a[1]).dump() == to_json(b[1]).dump());
  }
}
