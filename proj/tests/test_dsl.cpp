#include "doctest.h"

#include <random>

#include "lpm/dsl.hpp"
#include "support.hpp"

using namespace lpm;

TEST_CASE("parse_table") {
  SUBCASE("the two-element file") {
    auto m = parse_table(builtin_source("z2"));
    CHECK(m.size() == 2);
    CHECK(m.unit() == 0);
    CHECK(m.mul_table() == std::vector<std::vector<Element>>{{0, 1}, {1, 0}});
    CHECK(m.ldiv_table() == std::vector<std::vector<Element>>{{0, 1}, {1, 0}});
  }
  SUBCASE("one-element file") {
    auto m = parse_table("lpm-table v1\nname t\nsize 1\nunit 0\nmul\n0\nldiv\n0\n");
    CHECK(m.size() == 1);
  }
  SUBCASE("comments and loose whitespace are fine") {
    auto m = parse_table(
        "# a comment\nlpm-table v1\nname t # trailing\nsize 2\nunit 0\n"
        "mul\n0 1\n1 0\nldiv\n0 1  1 0\n");
    CHECK(m.size() == 2);
  }
  SUBCASE("entry out of range is positioned") {
    try {
      parse_table("lpm-table v1\nname t\nsize 2\nunit 0\nmul\n0 1\n1 2\nldiv\n0 1\n1 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 7);
      CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
  }
  SUBCASE("wrong magic") {
    CHECK_THROWS_AS(parse_table("lpm-rules v1\n"), ParseError);
  }
  SUBCASE("short table") {
    CHECK_THROWS_AS(
        parse_table("lpm-table v1\nname t\nsize 2\nunit 0\nmul\n0 1\nldiv\n"),
        ParseError);
  }
  SUBCASE("unit out of range") {
    CHECK_THROWS_AS(parse_table("lpm-table v1\nname t\nsize 2\nunit 2\nmul\n"),
                    ParseError);
  }
}

TEST_CASE("parse_rules") {
  SUBCASE("builtin clause counts") {
    auto wp = parse_rules(builtin_source("wp-Z"));
    CHECK(wp.ldiv_clauses().size() == 6);
    CHECK(wp.mul_clauses().size() == 6);
    auto nwp = parse_rules(builtin_source("nwp-N"));
    CHECK(nwp.ldiv_clauses().size() == 2);
    CHECK(nwp.mul_clauses().size() == 3);
  }
  SUBCASE("malformed guard is positioned") {
    try {
      parse_rules("lpm-rules v1\nname t\ncarrier N\nldiv\n  x ** 0 -> y\nmul\n  x == 0 -> y\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 5);
    }
  }
  SUBCASE("missing mul section") {
    const std::string div_only =
        "lpm-rules v1\nname t\ncarrier N\nldiv\n  x == 0 -> y\n";
    CHECK_THROWS_AS(parse_rules(div_only), ParseError);
    auto m = parse_rules(div_only, /*require_mul=*/false);
    CHECK(m.mul_clauses().empty());
  }
  SUBCASE("duplicate section") {
    CHECK_THROWS_AS(
        parse_rules("lpm-rules v1\nname t\ncarrier N\nldiv\n  x == 0 -> y\n"
                    "ldiv\n  x == 0 -> y\n"),
        ParseError);
  }
  SUBCASE("guards only compare against 0 or the other variable") {
    CHECK_THROWS_AS(
        parse_rules("lpm-rules v1\nname t\ncarrier N\nldiv\n  x > 1 -> y\n"
                    "mul\n  x == 0 -> y\n"),
        ParseError);
  }
  SUBCASE("non-affine results are rejected") {
    CHECK_THROWS_AS(
        parse_rules("lpm-rules v1\nname t\ncarrier N\nldiv\n  x == 0 -> x * y\n"
                    "mul\n  x == 0 -> y\n"),
        ParseError);
  }
}

TEST_CASE("round-trips") {
  SUBCASE("builtins") {
    for (const auto& name : builtin_names()) {
      auto m = builtin(name);
      std::string printed = print_magma(*m);
      auto re = parse_magma(printed);
      if (auto* f = dynamic_cast<const FiniteMagma*>(m.get()))
        CHECK(*f == dynamic_cast<const FiniteMagma&>(*re));
      else
        CHECK(dynamic_cast<const RuleMagma&>(*m) ==
              dynamic_cast<const RuleMagma&>(*re));
      // printing is canonical: print(parse(print(m))) == print(m)
      CHECK(print_magma(*re) == printed);
    }
  }
  SUBCASE("random tables") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<Element> size(1, 6);
    for (int i = 0; i < 1000; ++i) {
      FiniteMagma m = lpm::testing::random_table(rng, size(rng));
      auto re = parse_table(print_magma(m));
      CHECK(re == m);
    }
  }
}

TEST_CASE("builtin registry") {
  CHECK(builtin("triv")->size() == 1);
  CHECK(builtin_names() ==
        std::vector<std::string>{"nwp-N", "pnl-N", "triv", "wp-Z", "z2"});
  try {
    builtin("zz");
    FAIL("expected error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("wp-Z") != std::string::npos);
  }
}

TEST_CASE("builtin fidelity spot checks") {
  // transcribed straight from the piecewise definitions
  auto wp = builtin("wp-Z");
  CHECK(wp->ldiv(0, 7) == 7);
  CHECK(wp->ldiv(3, 4) == 5);
  CHECK(wp->ldiv(3, -2) == -2);
  CHECK(wp->ldiv(-2, -3) == -6);
  CHECK(wp->mul(-3, 6) == 3);
  CHECK(wp->mul(4, -5) == -5);
  auto pnl = builtin("pnl-N");
  CHECK(pnl->ldiv(4, 4) == 0);
  CHECK(pnl->ldiv(2, 5) == 6);
  CHECK(pnl->mul(2, 7) == 6);
  auto nwp = builtin("nwp-N");
  CHECK(nwp->ldiv(7, 7) == 8);
  CHECK(nwp->mul(5, 9) == 8);
}
