#include "cfs/compilers.hpp"
#include "cfs/error.hpp"
#include "cfs/model_format.hpp"
#include "helpers.hpp"
#include "support/generators.hpp"

using namespace cfs;
using unit::q;

TEST_SUITE("formats") {
  TEST_CASE("fixtures round-trip") {
    for (auto name : fixture_names()) {
      CAPTURE(name);
      auto doc = parse_space(*fixture_text(name));
      auto again = parse_space(serialize_space(doc));
      CHECK(again == doc);
      CHECK(serialize_space(again) == serialize_space(doc));
    }
  }

  TEST_CASE("random spaces round-trip") {
    testing::Rng rng(7);
    for (int i = 0; i < 40; ++i) {
      auto s = testing::random_space(rng, 64);
      auto doc = document_of(s, "r" + std::to_string(i));
      auto back = parse_space(serialize_space(doc));
      CHECK(back.space() == s);
    }
  }

  TEST_CASE("mirror declarations") {
    auto doc = parse_space(*fixture_text("exam"));
    REQUIRE(doc.mirror);
    CHECK(doc.mirror->first == "F");
    CHECK(doc.mirror->second == "CF");
    CHECK(doc.schema->coord(3).labels == std::vector<std::string>{"P", "F"});
  }

  TEST_CASE("weights must sum to one") {
    const char* text = "space s\nworld W { component a { 0 1 } }\nmeasure {\n  (W.a=0) = 1/2\n  (W.a=1) = 49/100\n}\n";
    try {
      parse_space(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("shortfall 1/100") != std::string::npos);
    }
  }

  TEST_CASE("document errors") {
    CHECK_THROWS_AS(parse_space("space s\nworld W { component a { 0 1 } }\nmeasure { (W.a=2) = 1 }\n"), ParseError);
    CHECK_THROWS_AS(parse_space("space s\nworld W { component a { 0 1 } }\nmeasure { (W.b=0) = 1 }\n"), ParseError);
    CHECK_THROWS_AS(parse_space("space s\nworld W { component a { 0 1 }\n"), ParseError);
    CHECK_THROWS_AS(parse_space("space s\nworld W { component a { 0 1 } }\n"), ParseError);
    CHECK_THROWS_AS(parse_space("space s\nworld W { component a { 0 1 } }\nmeasure { default = 1/2 }\nbogus\n"),
                    ParseError);
  }

  TEST_CASE("scm documents") {
    auto doc = parse_scm(R"(
      model m
      exogenous { U { 0 1 } }
      noise uniform
      endogenous { X { a b } }
      equation X noise {U} { (U=0) -> a  (U=1) -> b }
    )");
    CHECK(doc.name == "m");
    CHECK(doc.model.noise == std::vector<Rational>{q(1, 2), q(1, 2)});
    CHECK_FALSE(doc.coupling);
    CHECK(check_axioms(compile_scm(doc.model, doc.options())).ok());
    CHECK_THROWS_AS(parse_scm("model m\nexogenous { U { 0 1 } }\nnoise uniform\nendogenous { X { a b } }\n"
                              "equation X noise {U} { (U=0) -> c  (U=1) -> b }\n"),
                    ParseError);
  }

  TEST_CASE("po documents") {
    CHECK_THROWS_AS(parse_po("model p\nunits { a }\nprior { a = 1/2 }\nendogenous { X { 0 1 } }\n"
                             "observed X { a -> 0 }\n"),
                    ParseError);
  }
}
