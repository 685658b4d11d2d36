#include "cfs/error.hpp"
#include "helpers.hpp"

using namespace cfs;
using unit::q;

TEST_SUITE("measure") {
  TEST_CASE("weights must be nonnegative and sum to one") {
    auto s = unit::binary_schema(1);
    CHECK_NOTHROW(Measure(s, {q(1, 3), q(2, 3)}));
    CHECK_THROWS_AS(Measure(s, {q(1, 2), q(1, 3)}), MeasureError);
    CHECK_THROWS_AS(Measure(s, {q(3, 2), q(-1, 2)}), MeasureError);
    CHECK_THROWS_AS(Measure(s, {Rational(1)}), MeasureError);
  }

  TEST_CASE("additivity on disjoint events") {
    auto s = unit::binary_schema(3);
    Measure p(s, {q(1, 16), q(1, 8), q(1, 16), q(1, 4), q(1, 16), q(1, 16), q(1, 8), q(1, 4)});
    auto a = cylinder(s, Assignment{{0, 0}});
    auto b = cylinder(s, Assignment{{0, 1}, {1, 1}});
    CHECK(prob(p, a | b) == prob(p, a) + prob(p, b));
    CHECK(prob(p, Event::all(s)) == 1);
    CHECK(prob(p, Event::none(s)) == 0);
    CHECK(prob(p, a) + prob(p, ~a) == 1);
  }

  TEST_CASE("conditioning twice is conditioning on the intersection") {
    auto s = unit::fixture("exam");
    const auto& p = s.measure();
    auto g = unit::ev(s, {{"F.class", "N"}});
    auto h = unit::ev(s, {{"F.exam", "F"}});
    CHECK(condition_event(condition_event(p, g), h) == condition_event(p, g & h));
    CHECK(prob(condition_event(p, g & h), unit::ev(s, {{"CF.exam", "P"}})) == q(3, 17));
  }

  TEST_CASE("zero-mass conditioning is undefined") {
    auto s = unit::fixture("exam");
    auto g = unit::ev(s, {{"F.class", "Y"}}) & unit::ev(s, {{"F.class", "N"}});
    CHECK_THROWS_AS(condition_event(s.measure(), g), ConditioningUndefined);
  }

  TEST_CASE("sigma conditioning flags null atoms") {
    auto s = unit::binary_schema(2);
    Measure p(s, {q(1, 2), q(1, 2), Rational(0), Rational(0)});
    auto c = condition_sigma(p, CoordSet{0});
    REQUIRE(c.null_atom.size() == 2);
    CHECK_FALSE(c.null_atom[0]);
    CHECK(c.null_atom[1]);
    CHECK(prob(c.table[0], cylinder(s, Assignment{{1, 1}})) == q(1, 2));
  }

  TEST_CASE("marginal lives on the restricted schema") {
    auto s = unit::fixture("exam");
    auto m = marginal(s.measure(), CoordSet{0, 1});
    CHECK(m.schema().coord_count() == 2);
    CHECK(m.weight(0) == q(43, 100));
  }

  TEST_CASE("independence and synchronisation") {
    auto s = unit::binary_schema(2);
    auto uniform = Measure::uniform(s);
    CHECK(independent_sigmas(uniform, CoordSet{0}, CoordSet{1}));
    CHECK_FALSE(synchronized(uniform, CoordSet{0}, CoordSet{1}));
    Measure diag(s, {q(1, 2), Rational(0), Rational(0), q(1, 2)});
    CHECK_FALSE(independent_sigmas(diag, CoordSet{0}, CoordSet{1}));
    CHECK(synchronized(diag, CoordSet{0}, CoordSet{1}));
    CHECK(as_equal(diag, cylinder(s, Assignment{{0, 1}}), cylinder(s, Assignment{{1, 1}})));
    CHECK(independent_given(diag, cylinder(s, Assignment{{0, 1}}), cylinder(s, Assignment{{1, 1}}),
                            cylinder(s, Assignment{{0, 1}})));
  }

  TEST_CASE("dirac on a coordinate subset") {
    auto s = unit::binary_schema(2);
    auto d = dirac(*s, CoordSet{1}, 1);
    CHECK(d.schema().coord_count() == 1);
    CHECK(d.weight(1) == 1);
  }
}
