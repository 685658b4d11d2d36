#include "cfs/counterfactual.hpp"
#include "cfs/error.hpp"
#include "helpers.hpp"

using namespace cfs;
using unit::q;

TEST_SUITE("counterfactual") {
  TEST_CASE("event classes") {
    auto s = unit::fixture("exam");
    CHECK(classify_event(Event::all(s.schema_ptr())).kind == EventClass::AllWorlds);
    CHECK(classify_event(Event::none(s.schema_ptr())).kind == EventClass::AllWorlds);
    auto f = classify_event(unit::ev(s, {{"F.exam", "P"}}));
    CHECK(f.kind == EventClass::SingleWorld);
    CHECK(f.world == std::optional<std::size_t>(0));
    auto cf = classify_event(unit::ev(s, {{"CF.exam", "P"}}) | unit::ev(s, {{"CF.class", "N"}}));
    CHECK(cf.kind == EventClass::SingleWorld);
    CHECK(cf.world == std::optional<std::size_t>(1));
    CHECK(classify_event(unit::ev(s, {{"F.exam", "P"}, {"CF.exam", "P"}})).kind == EventClass::CrossWorld);
  }

  TEST_CASE("mirror construction") {
    auto s = unit::fixture("exam");
    WorldMirror m(s.schema_ptr(), "F", "CF");
    CHECK(m.image(std::size_t{0}) == 2);
    CHECK(m.image(CoordSet{1}) == CoordSet{3});
    auto o = s.schema().encode(std::vector<std::size_t>{0, 1, 1, 0});
    CHECK(m.swap(o) == s.schema().encode(std::vector<std::size_t>{1, 0, 0, 1}));
    CHECK_THROWS_AS(WorldMirror(s.schema_ptr(), "F", "F"), SchemaError);
    CHECK_THROWS_AS(WorldMirror(s.schema_ptr(), "F", "X"), SchemaError);
    auto odd = make_schema({{"F", "a", {"0", "1"}}, {"CF", "a", {"0", "1", "2"}}});
    CHECK_THROWS_AS(WorldMirror(odd, "F", "CF"), SchemaError);
    auto other = make_schema({{"F", "a", {"0", "1"}}, {"CF", "b", {"0", "1"}}});
    CHECK_THROWS_AS(WorldMirror(other, "F", "CF"), SchemaError);
  }

  TEST_CASE("symmetry") {
    auto d = unit::fixture("disease");
    CHECK(is_symmetric(d, WorldMirror(d.schema_ptr(), "F", "CF")).ok());
    auto a = unit::fixture("disease-asym");
    auto r = is_symmetric(a, WorldMirror(a.schema_ptr(), "F", "CF"));
    CHECK_FALSE(r.measure_symmetric);
    CHECK(r.measure_witness.has_value());
    // Only CF kernels: their F images are absent and cannot be compared.
    auto e = unit::fixture("exam");
    auto er = is_symmetric(e, WorldMirror(e.schema_ptr(), "F", "CF"));
    CHECK_FALSE(er.uncheckable.empty());
  }

  TEST_CASE("symmetric intervention keeps symmetry") {
    auto d = unit::fixture("disease");
    WorldMirror m(d.schema_ptr(), "F", "CF");
    auto t = intervene(d, CoordSet{}, trivial_measure(d.schema()));
    CHECK(is_symmetric(t, m).ok());
  }

  TEST_CASE("marginalize pushes kernels forward") {
    auto s = unit::fixture("exam");
    auto keep = CoordSet{0, 2, 3};
    auto m = marginalize(s, keep);
    CHECK(m.schema().coord_count() == 3);
    CHECK(compress(CoordSet{2}, keep) == CoordSet{1});
    auto u = compress(CoordSet{2}, keep);
    REQUIRE(m.mechanism().contains(u));
    auto yes = m.schema().require_label(1, "Y");
    CHECK(prob(m.mechanism().at(u).at(yes), cylinder(m.schema_ptr(), {{"CF.exam", "P"}})) == q(16, 25));
    CHECK(check_axioms(m).ok());
  }

  TEST_CASE("dropping a world needs the flag") {
    auto s = unit::fixture("exam");
    CHECK_THROWS_AS(marginalize(s, CoordSet{2, 3}), SchemaError);
    auto m = marginalize(s, CoordSet{2, 3}, true);
    CHECK(m.schema().worlds() == std::vector<std::string>{"CF"});
    CHECK(m.measure().weight(0) == q(43, 100));
  }

  TEST_CASE("n-way spaces") {
    std::vector<WorldSpec> worlds = {{"A", {{"x", {"0", "1"}}}}, {"B", {{"x", {"0", "1"}}}},
                                     {"C", {{"x", {"0", "1"}}}}};
    auto schema = nway_schema(worlds);
    CHECK(schema->worlds() == std::vector<std::string>{"A", "B", "C"});
    CHECK(schema->outcome_count() == 8);
    std::vector<Rational> w(8, Rational(0));
    w[0] = q(1, 2);
    w[7] = q(1, 2);
    auto s = build_nway(worlds, w);
    CHECK(check_axioms(s).ok());
    CHECK(synchronized(s.measure(), CoordSet{0}, CoordSet{2}));
    CHECK_THROWS_AS(build_nway({}, {Rational(1)}), SchemaError);
  }

  TEST_CASE("cross-world check flags a factual effect") {
    auto s = unit::fixture("exam");
    // A CF kernel that also reshuffles the factual world.
    auto u = CoordSet{2};
    Mechanism m;
    Kernel k(s.schema_ptr(), u);
    for (std::size_t e = 0; e < 2; ++e) {
      std::vector<Rational> w(16, Rational(0));
      w[s.schema().encode(std::vector<std::size_t>{0, 0, e, 0})] = 1;
      k.set(e, Measure(s.schema_ptr(), w));
    }
    m.add(k);
    CfSpace bad(s.measure(), m);
    auto r = check_cross_world(bad);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(describe(bad.schema(), r.violations.front()).empty());
  }
}
