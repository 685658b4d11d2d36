#include <stdexcept>

#include "helpers.hpp"

using namespace cfs;

TEST_SUITE("rational") {
  TEST_CASE("decimals are exact fractions") {
    CHECK(parse_rational("0.32") == unit::q(8, 25));
    CHECK(parse_rational("1/3") == unit::q(1, 3));
    CHECK(parse_rational("2/4") == unit::q(1, 2));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational(".5") == unit::q(1, 2));
  }

  TEST_CASE("rendering") {
    CHECK(to_string(unit::q(6, 8)) == "3/4");
    CHECK(to_string(Rational(1)) == "1");
    CHECK(to_decimal(unit::q(4, 17)) == "0.235294");
    CHECK(to_decimal(unit::q(2, 3)) == "0.666667");
    CHECK(to_decimal(unit::q(1, 8), 2) == "0.13");
    CHECK(to_decimal(Rational(0)) == "0.000000");
  }

  TEST_CASE("malformed text") {
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  }
}
